#pragma once

// Exhaustively enumerated finite groups: matrix groups over finite fields and
// abstract groups given by a multiplication table.

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "chevtwist/matrix.hpp"

namespace chevtwist {

class ChevalleyGroup;
class Twist;

inline constexpr std::size_t kDefaultBudget = 1'000'000;
// Largest order for which a full multiplication table is stored.
inline constexpr int kTableLimit = 4096;

struct CodeHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept;
};

class FiniteGroup {
 public:
  // Closure of the generators under multiplication. Elements are sorted by
  // their code vectors, so indices are deterministic. BudgetExceeded beyond budget.
  static FiniteGroup enumerate(const std::vector<Matrix>& generators, std::size_t budget = kDefaultBudget);
  // Abstract group: table[a * n + b] = index of a*b.
  static FiniteGroup from_table(std::vector<int> table, int n, std::vector<int> generators);

  int order() const noexcept { return order_; }
  int identity() const noexcept { return identity_; }
  int mul(int a, int b) const;
  int inverse(int a) const { return inverse_.at(static_cast<std::size_t>(a)); }
  const std::vector<int>& generators() const noexcept { return generators_; }
  bool has_table() const noexcept { return !table_.empty(); }

  bool is_matrix_group() const noexcept { return field_ != nullptr; }
  Matrix matrix(int i) const;
  std::optional<int> find(const Matrix& m) const;

  std::vector<int> center() const;
  bool commutes_with_all(int z) const;
  std::vector<std::vector<int>> conjugacy_classes() const;

  // Image permutation of an automorphism given on matrices.
  // AutomorphismEscapesGroup if some image lies outside the group.
  std::vector<int> permutation_of(const std::function<Matrix(const Matrix&)>& map) const;
  // Bijective and multiplicative on (all elements) x (generators).
  bool is_automorphism(const std::vector<int>& perm) const;
  std::vector<int> inner(int g) const;  // x -> g x g^-1

  // G/N for a normal subgroup N, with the projection G -> G/N.
  FiniteGroup quotient(const std::vector<int>& normal, std::vector<int>& projection) const;

 private:
  std::vector<std::uint32_t> code_mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const;
  void finish();

  int order_ = 0;
  int identity_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> generators_;
  // Matrix groups only.
  const FieldDescriptor* field_ = nullptr;
  int dim_ = 0;
  std::vector<std::vector<std::uint32_t>> codes_;
  std::unordered_map<std::vector<std::uint32_t>, int, CodeHash> index_;
};

// Standard finite instances.
// Adjoint Chevalley group: all x_alpha(s), s in F_q.
FiniteGroup enumerate_adjoint(const ChevalleyGroup& group, std::size_t budget = kDefaultBudget);
// Twisted group generated by U' and V' with every seed in F_q.
FiniteGroup enumerate_twisted(const Twist& twist, std::size_t budget = kDefaultBudget);
// SL_2(F_q) in the fundamental picture.
FiniteGroup enumerate_sl2(const FieldDescriptor& field, std::size_t budget = kDefaultBudget);

}  // namespace chevtwist
