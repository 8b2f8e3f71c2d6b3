#pragma once

// Simply-laced root systems A_l, D_l and E_6 in simple-root coordinates.

#include <Eigen/Core>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chevtwist/error.hpp"

namespace chevtwist {

enum class RootType { A, D, E };

using Root = Eigen::VectorXi;

// Positive roots come first, sorted by height and then by coordinates in
// decreasing lexicographic order (so the simple roots are roots 0..l-1 in
// order); root |Phi+| + i is the negative of root i.
class RootSystem {
 public:
  // (A, l >= 1), (D, l >= 4) or (E, 6); anything else is UnsupportedType.
  static RootSystem build(RootType type, int rank);
  // "A2", "D4", "E6".
  static RootSystem parse(std::string_view name);

  RootType type() const noexcept { return type_; }
  int rank() const noexcept { return rank_; }
  std::string name() const;
  const Eigen::MatrixXi& cartan() const noexcept { return cartan_; }

  int size() const noexcept { return static_cast<int>(roots_.size()); }
  int positive_count() const noexcept { return size() / 2; }
  const std::vector<Root>& roots() const noexcept { return roots_; }
  const Root& root(int i) const { return roots_.at(static_cast<std::size_t>(i)); }
  bool is_positive(int i) const noexcept { return i < positive_count(); }
  int height(int i) const { return root(i).sum(); }

  std::optional<int> find(const Root& r) const;
  int index_of(const Root& r) const;  // ForeignRoot if absent
  int negative(int i) const { return i < positive_count() ? i + positive_count() : i - positive_count(); }
  // Index of root(i) + root(j), if it is a root.
  std::optional<int> sum(int i, int j) const;

  // <beta, alpha> = 2(beta, alpha)/(alpha, alpha).
  int pairing(const Root& beta, const Root& alpha) const;
  int pairing(int beta, int alpha) const;
  // w_alpha(beta) = beta - <beta, alpha> alpha.
  Root reflect(const Root& alpha, const Root& beta) const;
  int reflect(int alpha, int beta) const;

  // "a1+2a2", "-(a1+a2)", "-a3".
  std::string label(int i) const;
  int parse_root(std::string_view text) const;

 private:
  RootType type_ = RootType::A;
  int rank_ = 0;
  Eigen::MatrixXi cartan_;
  std::vector<Root> roots_;
  std::map<std::vector<int>, int> index_;
};

// Permutation of the simple roots (0-based) preserving the Dynkin diagram.
struct DiagramSymmetry {
  std::vector<int> perm;
  bool is_identity() const;
};

DiagramSymmetry identity_symmetry(const RootSystem& system);
// A_l flip, D_l swap of the last two nodes, E_6 flip. A_1 has only the identity.
DiagramSymmetry standard_symmetry(const RootSystem& system);
// Checks that perm is an involution preserving the Cartan matrix.
void validate(const RootSystem& system, const DiagramSymmetry& rho);
Root extend_symmetry(const DiagramSymmetry& rho, const Root& beta);
// rho on root indices.
std::vector<int> root_permutation(const RootSystem& system, const DiagramSymmetry& rho);

}  // namespace chevtwist
