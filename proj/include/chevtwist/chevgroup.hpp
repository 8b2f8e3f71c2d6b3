#pragma once

// Adjoint Chevalley group elements as exact matrices on the Chevalley basis.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chevtwist/liealg.hpp"
#include "chevtwist/matrix.hpp"

namespace chevtwist {

struct GroupElement {
  Matrix matrix;
  std::string word;  // display only; equality is matrix equality
};

GroupElement operator*(const GroupElement& a, const GroupElement& b);
inline bool operator==(const GroupElement& a, const GroupElement& b) { return equal(a.matrix, b.matrix); }

class ChevalleyGroup {
 public:
  ChevalleyGroup(BasisPtr basis, const FieldDescriptor& field);

  const ChevalleyBasis& basis() const noexcept { return *basis_; }
  const BasisPtr& basis_ptr() const noexcept { return basis_; }
  const RootSystem& system() const noexcept { return basis_->system(); }
  const FieldDescriptor& field() const noexcept { return *field_; }
  int dimension() const noexcept { return basis_->dimension(); }

  Scalar scalar(long v) const { return Scalar::in(*field_, v); }
  Scalar parse(std::string_view text) const { return parse_scalar(text, *field_); }

  GroupElement identity() const;
  // exp(t ad e_alpha), summed up to the computed nilpotency index.
  GroupElement x(int alpha, const Scalar& t) const;
  // x_alpha(t) x_-alpha(-1/t) x_alpha(t); ZeroParameter for t = 0.
  GroupElement n(int alpha, const Scalar& t) const;
  // n_alpha(t) n_alpha(-1).
  GroupElement h(int alpha, const Scalar& t) const;
  // Diagonal: chi(beta) on e_beta, 1 on Cartan slots; chi given on the simple roots.
  GroupElement h_chi(const std::vector<Scalar>& chi) const;
  Scalar character_value(const std::vector<Scalar>& chi, int beta) const;
  // chi_{alpha,t}(beta) = t^<beta,alpha> on the simple roots.
  std::vector<Scalar> root_character(int alpha, const Scalar& t) const;

  GroupElement inverse(const GroupElement& g) const;

  // Word grammar: "x a1 2; n -a2 1/3; h a1+a2 5; d 2,3" (d = h_chi with chi on
  // the simple roots), factors multiplied left to right.
  GroupElement evaluate_word(std::string_view word) const;

  // g[e_i, e_j] == [g e_i, g e_j] for every pair of basis slots.
  bool preserves_bracket(const Matrix& g) const;
  bool preserves_bracket(const Matrix& g, const std::vector<std::pair<int, int>>& pairs) const;

  // Generators of U, V, H or N for the given parameters.
  std::vector<GroupElement> subgroup_generators(char label, const std::vector<Scalar>& params) const;

  // n_alpha(1) h_beta(t) n_alpha(1)^-1 == h_{w_alpha(beta)}(t).
  bool weyl_conjugation_check(int alpha, int beta, const Scalar& t) const;

 private:
  BasisPtr basis_;
  const FieldDescriptor* field_;
};

// x^-1 y^-1 x y
Matrix commutator(const Matrix& x, const Matrix& y, const Matrix& x_inv, const Matrix& y_inv);

struct CommutatorConstant {
  int alpha;
  int beta;
  int gamma;  // alpha + beta
  long c;     // [x_beta(s), x_alpha(t)] = x_gamma(c (-t) s)
};

struct RelationReport {
  int trials = 0;
  int checks = 0;
  std::vector<CommutatorConstant> constants;  // nonzero ones; all other pairs commute
};

// Extracts C from (t, s) = (1, 1), confirms it at (1, 2), then checks R1-R3 on
// `trials` random root pairs and random nonzero parameters. RelationViolation on failure.
RelationReport check_steinberg_relations(const ChevalleyGroup& group, int trials, std::uint64_t seed);

// A random nonzero element of the group's field with small height.
Scalar random_scalar(const FieldDescriptor& field, std::mt19937_64& rng, bool nonzero = true);

// The fundamental picture of A_1: 2x2 matrices and their adjoint action on (e, f, h).
Matrix sl2_x(const Scalar& t);
Matrix sl2_x_lower(const Scalar& t);
Matrix sl2_n(const Scalar& t);
Matrix sl2_h(const Scalar& t);
// Ad(g) on the basis (E12, E21, diag(1,-1)) for g in SL_2.
Matrix sl2_adjoint(const Matrix& g);

}  // namespace chevtwist
