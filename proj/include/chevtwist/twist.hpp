#pragma once

// sigma = rho_bar o f: graph automorphism realized on the Chevalley basis,
// composed with an entrywise field automorphism of order at most 2.

#include <vector>

#include "chevtwist/chevgroup.hpp"

namespace chevtwist {

// Signed slot permutation P with P e_alpha = eps_alpha e_rho(alpha) and
// P h_k = h_rho(k), eps = +1 on simple roots and their negatives.
// SignObstruction if no consistent signs exist.
struct GraphAutomorphism {
  std::vector<int> root_perm;  // rho on root indices
  std::vector<int> signs;      // eps per root
  Eigen::MatrixXi matrix;      // P
};
GraphAutomorphism build_graph_automorphism(const ChevalleyBasis& basis, const DiagramSymmetry& rho);

class Twist {
 public:
  // f must have order 1 or 2.
  Twist(ChevalleyGroup group, DiagramSymmetry rho, FieldAutomorphism f);

  const ChevalleyGroup& group() const noexcept { return group_; }
  const DiagramSymmetry& symmetry() const noexcept { return rho_; }
  const FieldAutomorphism& field_automorphism() const noexcept { return f_; }
  const GraphAutomorphism& graph() const noexcept { return graph_; }
  int sign(int root) const { return graph_.signs.at(static_cast<std::size_t>(root)); }
  int rho(int root) const { return graph_.root_perm.at(static_cast<std::size_t>(root)); }

  // P x P^T
  Matrix graph_apply(const Matrix& x) const;
  // P f(x) P^T
  Matrix sigma(const Matrix& x) const;
  bool is_fixed(const Matrix& x) const { return equal(sigma(x), x); }

  // rho-orbits on positive (or negative) roots, each listed from its smallest index.
  std::vector<std::vector<int>> orbits(bool positive) const;
  // A sigma-fixed element of the root subgroups of the orbit, built from seed s.
  // NoSolution when the correction equation has no root in the field.
  GroupElement fixed_unipotent(const std::vector<int>& orbit, const Scalar& seed) const;
  // Fixed unipotents for every orbit and seed (U' for positive, V' for negative).
  std::vector<GroupElement> fixed_generators(bool positive, const std::vector<Scalar>& seeds) const;

 private:
  ChevalleyGroup group_;
  DiagramSymmetry rho_;
  FieldAutomorphism f_;
  GraphAutomorphism graph_;
  Matrix p_, pt_;
};

// Every element of a finite field, in code order.
std::vector<Scalar> field_elements(const FieldDescriptor& field);

}  // namespace chevtwist
