#include "chevtwist/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "chevtwist/chevgroup.hpp"
#include "chevtwist/twist.hpp"

namespace chevtwist {

std::size_t CodeHash::operator()(const std::vector<std::uint32_t>& v) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (std::uint32_t x : v) {
    h ^= x;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::vector<std::uint32_t> FiniteGroup::code_mul(const std::vector<std::uint32_t>& a,
                                                 const std::vector<std::uint32_t>& b) const {
  const int n = dim_;
  std::vector<std::uint32_t> c(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      std::uint32_t x = a[static_cast<std::size_t>(i * n + k)];
      if (!x) continue;
      for (int j = 0; j < n; ++j) {
        std::uint32_t y = b[static_cast<std::size_t>(k * n + j)];
        if (!y) continue;
        auto& cell = c[static_cast<std::size_t>(i * n + j)];
        cell = field_->ff_add(cell, field_->ff_mul(x, y));
      }
    }
  return c;
}

FiniteGroup FiniteGroup::enumerate(const std::vector<Matrix>& generators, std::size_t budget) {
  if (generators.empty()) fail(ErrorCode::InvalidArgument, "need at least one generator");
  FiniteGroup g;
  const Matrix& first = generators.front();
  g.dim_ = static_cast<int>(first.rows());
  for (Eigen::Index i = 0; !g.field_ && i < first.size(); ++i) g.field_ = first.data()[i].field();
  if (!g.field_ || g.field_->kind() != FieldKind::Finite)
    fail(ErrorCode::InvalidArgument, "enumeration needs matrices over a finite field");

  std::vector<std::vector<std::uint32_t>> gens;
  for (const Matrix& m : generators) gens.push_back(finite_codes(normalized(m, *g.field_)));
  std::vector<std::uint32_t> id(static_cast<std::size_t>(g.dim_ * g.dim_), 0);
  for (int i = 0; i < g.dim_; ++i) id[static_cast<std::size_t>(i * g.dim_ + i)] = 1;

  std::unordered_map<std::vector<std::uint32_t>, int, CodeHash> seen;
  std::vector<std::vector<std::uint32_t>> elements{id};
  seen.emplace(id, 0);
  for (std::size_t head = 0; head < elements.size(); ++head)
    for (const auto& s : gens) {
      auto p = g.code_mul(elements[head], s);
      if (seen.contains(p)) continue;
      if (elements.size() >= budget)
        fail(ErrorCode::BudgetExceeded, "group order exceeds the enumeration budget of " + std::to_string(budget));
      seen.emplace(p, static_cast<int>(elements.size()));
      elements.push_back(std::move(p));
    }
  std::sort(elements.begin(), elements.end());
  g.codes_ = std::move(elements);
  g.order_ = static_cast<int>(g.codes_.size());
  for (int i = 0; i < g.order_; ++i) g.index_.emplace(g.codes_[static_cast<std::size_t>(i)], i);
  g.identity_ = g.index_.at(id);
  for (const auto& s : gens) g.generators_.push_back(g.index_.at(s));
  std::sort(g.generators_.begin(), g.generators_.end());
  g.generators_.erase(std::unique(g.generators_.begin(), g.generators_.end()), g.generators_.end());
  if (g.order_ <= kTableLimit) {
    g.table_.resize(static_cast<std::size_t>(g.order_) * static_cast<std::size_t>(g.order_));
    for (int a = 0; a < g.order_; ++a)
      for (int b = 0; b < g.order_; ++b)
        g.table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(g.order_) + static_cast<std::size_t>(b)] =
            g.index_.at(g.code_mul(g.codes_[static_cast<std::size_t>(a)], g.codes_[static_cast<std::size_t>(b)]));
  }
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::from_table(std::vector<int> table, int n, std::vector<int> generators) {
  if (n <= 0 || table.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    fail(ErrorCode::InvalidArgument, "multiplication table has the wrong size");
  FiniteGroup g;
  g.order_ = n;
  g.table_ = std::move(table);
  g.identity_ = -1;
  for (int e = 0; e < n && g.identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
    if (ok) g.identity_ = e;
  }
  if (g.identity_ < 0) fail(ErrorCode::InvalidArgument, "table has no identity");
  g.generators_ = std::move(generators);
  g.finish();
  return g;
}

void FiniteGroup::finish() {
  inverse_.assign(static_cast<std::size_t>(order_), -1);
  if (has_table()) {
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        if (mul(a, b) == identity_) {
          inverse_[static_cast<std::size_t>(a)] = b;
          break;
        }
  } else {
    // Walk the cyclic subgroup: a^(k-1) is the inverse when a^k = e.
    for (int a = 0; a < order_; ++a) {
      int prev = identity_, cur = a;
      while (cur != identity_) {
        prev = cur;
        cur = mul(cur, a);
      }
      inverse_[static_cast<std::size_t>(a)] = prev;
    }
  }
  for (int a = 0; a < order_; ++a)
    if (inverse_[static_cast<std::size_t>(a)] < 0) fail(ErrorCode::InvalidArgument, "table is not a group");
}

int FiniteGroup::mul(int a, int b) const {
  if (has_table()) return table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(order_) + static_cast<std::size_t>(b)];
  return index_.at(code_mul(codes_.at(static_cast<std::size_t>(a)), codes_.at(static_cast<std::size_t>(b))));
}

Matrix FiniteGroup::matrix(int i) const {
  if (!is_matrix_group()) fail(ErrorCode::InvalidArgument, "abstract group elements have no matrix");
  const auto& c = codes_.at(static_cast<std::size_t>(i));
  Matrix m(dim_, dim_);
  for (int r = 0; r < dim_; ++r)
    for (int s = 0; s < dim_; ++s) m(r, s) = Scalar::finite(*field_, c[static_cast<std::size_t>(r * dim_ + s)]);
  return m;
}

std::optional<int> FiniteGroup::find(const Matrix& m) const {
  if (!is_matrix_group() || m.rows() != dim_ || m.cols() != dim_) return std::nullopt;
  std::vector<std::uint32_t> c;
  c.reserve(static_cast<std::size_t>(m.size()));
  for (int r = 0; r < dim_; ++r)
    for (int s = 0; s < dim_; ++s) {
      Scalar x = m(r, s).promoted(*field_);
      c.push_back(x.finite_code());
    }
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool FiniteGroup::commutes_with_all(int z) const {
  for (int g : generators_)
    if (mul(z, g) != mul(g, z)) return false;
  return true;
}

std::vector<int> FiniteGroup::center() const {
  std::vector<int> out;
  for (int z = 0; z < order_; ++z)
    if (commutes_with_all(z)) out.push_back(z);
  return out;
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
  std::vector<int> cls(static_cast<std::size_t>(order_), -1);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < order_; ++x) {
    if (cls[static_cast<std::size_t>(x)] >= 0) continue;
    std::vector<int> members;
    for (int z = 0; z < order_; ++z) {
      int y = mul(mul(z, x), inverse(z));
      if (cls[static_cast<std::size_t>(y)] < 0) {
        cls[static_cast<std::size_t>(y)] = static_cast<int>(out.size());
        members.push_back(y);
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

std::vector<int> FiniteGroup::permutation_of(const std::function<Matrix(const Matrix&)>& map) const {
  std::vector<int> perm(static_cast<std::size_t>(order_));
  for (int i = 0; i < order_; ++i) {
    auto j = find(map(matrix(i)));
    if (!j) fail(ErrorCode::AutomorphismEscapesGroup, "automorphism maps element " + std::to_string(i) + " outside the group");
    perm[static_cast<std::size_t>(i)] = *j;
  }
  if (!is_automorphism(perm)) fail(ErrorCode::AutomorphismEscapesGroup, "map is not an automorphism of the group");
  return perm;
}

bool FiniteGroup::is_automorphism(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != order_) return false;
  std::vector<bool> hit(static_cast<std::size_t>(order_), false);
  for (int p : perm) {
    if (p < 0 || p >= order_ || hit[static_cast<std::size_t>(p)]) return false;
    hit[static_cast<std::size_t>(p)] = true;
  }
  for (int a = 0; a < order_; ++a)
    for (int g : generators_)
      if (perm[static_cast<std::size_t>(mul(a, g))] != mul(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(g)]))
        return false;
  return true;
}

std::vector<int> FiniteGroup::inner(int g) const {
  std::vector<int> perm(static_cast<std::size_t>(order_));
  int gi = inverse(g);
  for (int x = 0; x < order_; ++x) perm[static_cast<std::size_t>(x)] = mul(mul(g, x), gi);
  return perm;
}

FiniteGroup FiniteGroup::quotient(const std::vector<int>& normal, std::vector<int>& projection) const {
  projection.assign(static_cast<std::size_t>(order_), -1);
  std::vector<int> reps;
  for (int x = 0; x < order_; ++x) {
    if (projection[static_cast<std::size_t>(x)] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int z : normal) projection[static_cast<std::size_t>(mul(x, z))] = id;
  }
  const int m = static_cast<int>(reps.size());
  if (static_cast<long>(m) * static_cast<long>(normal.size()) != order_)
    fail(ErrorCode::InvalidArgument, "subset is not a subgroup");
  std::vector<int> table(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      table[static_cast<std::size_t>(a) * static_cast<std::size_t>(m) + static_cast<std::size_t>(b)] =
          projection[static_cast<std::size_t>(mul(reps[static_cast<std::size_t>(a)], reps[static_cast<std::size_t>(b)]))];
  // Well-definedness: the product class must not depend on the representatives.
  for (int x = 0; x < order_; ++x)
    for (int g : generators_) {
      int px = projection[static_cast<std::size_t>(x)], pg = projection[static_cast<std::size_t>(g)];
      if (projection[static_cast<std::size_t>(mul(x, g))] != table[static_cast<std::size_t>(px) * static_cast<std::size_t>(m) + static_cast<std::size_t>(pg)])
        fail(ErrorCode::InvalidArgument, "subgroup is not normal");
    }
  std::vector<int> gens;
  for (int g : generators_) gens.push_back(projection[static_cast<std::size_t>(g)]);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return from_table(std::move(table), m, std::move(gens));
}

FiniteGroup enumerate_adjoint(const ChevalleyGroup& group, std::size_t budget) {
  std::vector<Matrix> gens;
  for (int a = 0; a < group.system().size(); ++a)
    for (const Scalar& s : field_elements(group.field()))
      if (!s.is_zero()) gens.push_back(group.x(a, s).matrix);
  return FiniteGroup::enumerate(gens, budget);
}

FiniteGroup enumerate_twisted(const Twist& twist, std::size_t budget) {
  std::vector<Scalar> seeds = field_elements(twist.group().field());
  std::vector<Matrix> gens;
  for (bool positive : {true, false})
    for (const auto& u : twist.fixed_generators(positive, seeds)) gens.push_back(u.matrix);
  if (gens.empty()) fail(ErrorCode::NoSolution, "twist has no nontrivial fixed unipotents");
  return FiniteGroup::enumerate(gens, budget);
}

FiniteGroup enumerate_sl2(const FieldDescriptor& field, std::size_t budget) {
  std::vector<Matrix> gens;
  for (const Scalar& s : field_elements(field))
    if (!s.is_zero()) {
      gens.push_back(sl2_x(s));
      gens.push_back(sl2_x_lower(s));
    }
  return FiniteGroup::enumerate(gens, budget);
}

}  // namespace chevtwist
