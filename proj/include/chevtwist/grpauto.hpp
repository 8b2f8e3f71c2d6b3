#pragma once

// Group automorphisms in the normal form  phi = f o d_h o i_g,
// phi(x) = f(m x m^-1) with m = h g, h diagonal and f acting entrywise.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chevtwist/chevgroup.hpp"

namespace chevtwist {

class GroupAutomorphism {
 public:
  // Identity on n x n matrices over `field`.
  GroupAutomorphism(int n, const FieldDescriptor& field);

  static GroupAutomorphism inner(const Matrix& g);
  static GroupAutomorphism diagonal(const Matrix& h);  // NotDiagonal unless h is diagonal
  static GroupAutomorphism field_map(const FieldAutomorphism& f, int n, const FieldDescriptor& field);

  const FieldAutomorphism& field_part() const noexcept { return f_; }
  const Matrix& diagonal_part() const noexcept { return h_; }
  const Matrix& inner_part() const noexcept { return g_; }
  const FieldDescriptor& field() const noexcept { return *field_; }
  int size() const noexcept { return static_cast<int>(h_.rows()); }

  Matrix apply(const Matrix& x) const;
  Matrix operator()(const Matrix& x) const { return apply(x); }

  // (*this) o other, renormalized.
  GroupAutomorphism compose(const GroupAutomorphism& other) const;
  GroupAutomorphism inverse() const;
  GroupAutomorphism pow(unsigned k) const;

  bool has_trivial_inner_part() const { return is_identity(g_); }
  std::string describe() const;

 private:
  FieldAutomorphism f_;
  Matrix h_, h_inv_, g_, g_inv_;
  const FieldDescriptor* field_;
};

// Smallest k <= cap, a multiple of the field part's order, with phi^k fixing
// every generator; nullopt reports "infinite/unknown".
std::optional<unsigned> power_order(const GroupAutomorphism& phi, const std::vector<Matrix>& generators,
                                    unsigned cap = 64);

// g^-1 phi(g) in the center for every listed g. `in_center` defaults to the
// identity test (adjoint groups are centerless).
bool is_central(const GroupAutomorphism& phi, const std::vector<Matrix>& elements,
                const std::function<bool(const Matrix&)>& in_center = {});

// Descriptor grammar: factors joined by '*', each one of
//   id | inner:[<word>] | diag:<chi_1>,...,<chi_l> | field:<field automorphism>
// composed right to left like maps.
GroupAutomorphism parse_automorphism(std::string_view text, const ChevalleyGroup& group);

// Same grammar for an arbitrary matrix group: `word` evaluates inner:[...]
// factors and `diagonal` turns a character list into a diagonal matrix.
struct AutomorphismContext {
  int size;
  const FieldDescriptor* field;
  std::function<Matrix(std::string_view)> word;
  std::function<Matrix(const std::vector<Scalar>&)> diagonal;
};
GroupAutomorphism parse_automorphism(std::string_view text, const AutomorphismContext& context);

}  // namespace chevtwist
