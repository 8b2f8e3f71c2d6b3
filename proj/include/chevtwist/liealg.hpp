#pragma once

// Chevalley basis of the simple Lie algebra of a simply-laced root system.
//
// Slot order: e_beta for every root in root order (slot i <-> root i), then
// h_1..h_l for the simple coroots (slot |Phi| + k).
//
// Signs: N(alpha, beta) comes from the Frenkel-Kac cocycle
// eps(a, b) = (-1)^(sum a_i b_i + sum_{i<j, A_ij=-1} a_i b_j), rescaled so that
// N(alpha_i, xi - alpha_i) = +1 for every non-simple positive xi, where alpha_i
// is the first simple root with xi - alpha_i positive (extraspecial pairs).
// [e_alpha, e_-alpha] = h_alpha = sum a_i h_i and [h_k, e_beta] = <beta, alpha_k> e_beta.

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "chevtwist/matrix.hpp"
#include "chevtwist/rootsys.hpp"

namespace chevtwist {

inline constexpr const char* kSignConvention =
    "frenkel-kac cocycle; extraspecial pairs positive; positive roots by height then reverse-lex";

struct Term {
  int slot;
  int coeff;
};

class ChevalleyBasis {
 public:
  explicit ChevalleyBasis(RootSystem system);

  const RootSystem& system() const noexcept { return system_; }
  int dimension() const noexcept { return dim_; }
  int root_slot(int root) const noexcept { return root; }
  int cartan_slot(int k) const noexcept { return system_.size() + k; }
  bool is_cartan_slot(int slot) const noexcept { return slot >= system_.size(); }

  // N(alpha, beta) for root indices; 0 when alpha + beta is not a root.
  int structure_constant(int alpha, int beta) const;
  // [slot i, slot j] as a sparse integer combination.
  const std::vector<Term>& bracket(int i, int j) const;
  Vector bracket(const Vector& x, const Vector& y) const;

  // Matrix of ad(slot): column j holds [slot, slot j].
  Eigen::MatrixXi ad_matrix(int slot) const;
  // ad(e_alpha)^k / k! for k = 0 .. nilpotency_index(alpha) - 1.
  const std::vector<Eigen::MatrixXi>& exp_terms(int alpha) const;
  // Smallest m with ad(e_alpha)^m = 0.
  int nilpotency_index(int alpha) const { return static_cast<int>(exp_terms(alpha).size()); }

 private:
  RootSystem system_;
  int dim_ = 0;
  std::vector<int> n_;                       // |Phi| x |Phi|
  std::vector<std::vector<Term>> table_;     // dim x dim
  std::vector<std::vector<Eigen::MatrixXi>> exp_;  // per root
};

using BasisPtr = std::shared_ptr<const ChevalleyBasis>;
BasisPtr make_basis(const RootSystem& system);

// Versioned structure-constant table: roots, convention, N entries and a
// 64-bit FNV-1a checksum over the canonical entry text.
std::string structure_table_json(const ChevalleyBasis& basis);
// Parses a table file and checks it against `basis`: ChecksumMismatch when the
// checksum does not match its content, BasisMismatch when it disagrees with basis.
void verify_structure_table(std::string_view text, const ChevalleyBasis& basis);

}  // namespace chevtwist
