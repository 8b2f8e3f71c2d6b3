#include "chevtwist/chevgroup.hpp"

#include <cctype>

namespace chevtwist {

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  std::string word = a.word.empty() ? b.word : b.word.empty() ? a.word : a.word + "; " + b.word;
  return {mul(a.matrix, b.matrix), std::move(word)};
}

ChevalleyGroup::ChevalleyGroup(BasisPtr basis, const FieldDescriptor& field)
    : basis_(std::move(basis)), field_(&field) {}

GroupElement ChevalleyGroup::identity() const { return {identity_matrix(dimension(), *field_), ""}; }

GroupElement ChevalleyGroup::x(int alpha, const Scalar& t) const {
  const auto& terms = basis_->exp_terms(alpha);
  Scalar tt = t.promoted(*field_);
  Matrix m = identity_matrix(dimension(), *field_);
  Scalar power = tt;
  for (std::size_t k = 1; k < terms.size(); ++k) {
    const Eigen::MatrixXi& p = terms[k];
    if (!power.is_zero())
      for (int j = 0; j < p.cols(); ++j)
        for (int i = 0; i < p.rows(); ++i)
          if (p(i, j)) m(i, j) += Scalar(p(i, j)) * power;
    power *= tt;
  }
  return {std::move(m), "x " + system().label(alpha) + " " + tt.to_string()};
}

GroupElement ChevalleyGroup::n(int alpha, const Scalar& t) const {
  Scalar tt = t.promoted(*field_);
  if (tt.is_zero()) fail(ErrorCode::ZeroParameter, "n_alpha(t) needs t != 0");
  GroupElement a = x(alpha, tt);
  GroupElement m = a * x(system().negative(alpha), -tt.inverse()) * a;
  m.word = "n " + system().label(alpha) + " " + tt.to_string();
  return m;
}

GroupElement ChevalleyGroup::h(int alpha, const Scalar& t) const {
  Scalar tt = t.promoted(*field_);
  if (tt.is_zero()) fail(ErrorCode::ZeroParameter, "h_alpha(t) needs t != 0");
  GroupElement m = n(alpha, tt) * n(alpha, scalar(-1));
  m.word = "h " + system().label(alpha) + " " + tt.to_string();
  return m;
}

Scalar ChevalleyGroup::character_value(const std::vector<Scalar>& chi, int beta) const {
  const Root& r = system().root(beta);
  Scalar v = scalar(1);
  for (int i = 0; i < system().rank(); ++i)
    if (r(i)) v *= chi[static_cast<std::size_t>(i)].pow(r(i));
  return v;
}

std::vector<Scalar> ChevalleyGroup::root_character(int alpha, const Scalar& t) const {
  std::vector<Scalar> chi;
  Scalar tt = t.promoted(*field_);
  for (int i = 0; i < system().rank(); ++i) chi.push_back(tt.pow(system().pairing(i, alpha)));
  return chi;
}

GroupElement ChevalleyGroup::h_chi(const std::vector<Scalar>& chi) const {
  if (static_cast<int>(chi.size()) != system().rank())
    fail(ErrorCode::InvalidArgument, "a character needs one value per simple root");
  std::vector<Scalar> values;
  std::string word = "d ";
  for (std::size_t i = 0; i < chi.size(); ++i) {
    Scalar v = chi[i].promoted(*field_);
    if (v.is_zero()) fail(ErrorCode::ZeroCharacterValue, "character values must be nonzero");
    values.push_back(v);
    word += (i ? "," : "") + v.to_string();
  }
  Matrix m = identity_matrix(dimension(), *field_);
  for (int b = 0; b < system().size(); ++b) m(b, b) = character_value(values, b);
  return {std::move(m), word};
}

GroupElement ChevalleyGroup::inverse(const GroupElement& g) const {
  return {chevtwist::inverse(g.matrix), g.word.empty() ? "" : "(" + g.word + ")^-1"};
}

GroupElement ChevalleyGroup::evaluate_word(std::string_view word) const {
  GroupElement out = identity();
  std::size_t start = 0;
  while (start <= word.size()) {
    std::size_t end = word.find(';', start);
    if (end == std::string_view::npos) end = word.size();
    std::string_view factor = word.substr(start, end - start);
    start = end + 1;
    while (!factor.empty() && std::isspace(static_cast<unsigned char>(factor.front()))) factor.remove_prefix(1);
    while (!factor.empty() && std::isspace(static_cast<unsigned char>(factor.back()))) factor.remove_suffix(1);
    if (factor.empty()) continue;
    char kind = factor[0];
    std::string_view rest = factor.substr(1);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) rest.remove_prefix(1);
    if (kind == 'd') {
      std::vector<Scalar> chi;
      std::size_t p = 0;
      while (p <= rest.size()) {
        std::size_t q = rest.find(',', p);
        if (q == std::string_view::npos) q = rest.size();
        chi.push_back(parse(rest.substr(p, q - p)));
        p = q + 1;
      }
      out = out * h_chi(chi);
      continue;
    }
    std::size_t space = rest.find(' ');
    if ((kind != 'x' && kind != 'n' && kind != 'h') || space == std::string_view::npos || factor.size() < 2 ||
        !std::isspace(static_cast<unsigned char>(factor[1])))
      fail(ErrorCode::ParseError, "bad word factor '" + std::string(factor) + "'");
    int root = system().parse_root(rest.substr(0, space));
    Scalar t = parse(rest.substr(space + 1));
    if (kind == 'x') out = out * x(root, t);
    else if (kind == 'n') out = out * n(root, t);
    else out = out * h(root, t);
  }
  return out;
}

namespace {

struct SparseColumn {
  std::vector<int> slots;
  std::vector<Scalar> values;
};

SparseColumn column(const Matrix& g, int j) {
  SparseColumn c;
  for (int i = 0; i < g.rows(); ++i)
    if (!g(i, j).is_zero()) {
      c.slots.push_back(i);
      c.values.push_back(g(i, j));
    }
  return c;
}

}  // namespace

bool ChevalleyGroup::preserves_bracket(const Matrix& g, const std::vector<std::pair<int, int>>& pairs) const {
  const int d = dimension();
  if (g.rows() != d || g.cols() != d) fail(ErrorCode::BasisMismatch, "matrix size does not match the basis");
  std::vector<SparseColumn> cols;
  cols.reserve(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) cols.push_back(column(g, j));
  Scalar zero = scalar(0);
  std::vector<Scalar> lhs(static_cast<std::size_t>(d)), rhs(static_cast<std::size_t>(d));
  for (auto [i, j] : pairs) {
    std::fill(lhs.begin(), lhs.end(), zero);
    std::fill(rhs.begin(), rhs.end(), zero);
    for (const Term& t : basis_->bracket(i, j)) {
      const SparseColumn& c = cols[static_cast<std::size_t>(t.slot)];
      for (std::size_t k = 0; k < c.slots.size(); ++k) lhs[static_cast<std::size_t>(c.slots[k])] += Scalar(t.coeff) * c.values[k];
    }
    const SparseColumn& a = cols[static_cast<std::size_t>(i)];
    const SparseColumn& b = cols[static_cast<std::size_t>(j)];
    for (std::size_t p = 0; p < a.slots.size(); ++p)
      for (std::size_t q = 0; q < b.slots.size(); ++q) {
        const auto& terms = basis_->bracket(a.slots[p], b.slots[q]);
        if (terms.empty()) continue;
        Scalar c = a.values[p] * b.values[q];
        for (const Term& t : terms) rhs[static_cast<std::size_t>(t.slot)] += Scalar(t.coeff) * c;
      }
    for (int k = 0; k < d; ++k)
      if (lhs[static_cast<std::size_t>(k)] != rhs[static_cast<std::size_t>(k)]) return false;
  }
  return true;
}

bool ChevalleyGroup::preserves_bracket(const Matrix& g) const {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < dimension(); ++i)
    for (int j = 0; j < dimension(); ++j) pairs.emplace_back(i, j);
  return preserves_bracket(g, pairs);
}

std::vector<GroupElement> ChevalleyGroup::subgroup_generators(char label, const std::vector<Scalar>& params) const {
  std::vector<GroupElement> out;
  const RootSystem& rs = system();
  switch (label) {
    case 'U':
    case 'V':
      for (int a = 0; a < rs.size(); ++a)
        if (rs.is_positive(a) == (label == 'U'))
          for (const auto& t : params) out.push_back(x(a, t));
      break;
    case 'N':
      for (int a = 0; a < rs.rank(); ++a) out.push_back(n(a, scalar(1)));
      [[fallthrough]];
    case 'H':
      for (int a = 0; a < rs.rank(); ++a)
        for (const auto& t : params)
          if (!t.is_zero()) out.push_back(h(a, t));
      break;
    default: fail(ErrorCode::InvalidArgument, std::string("unknown subgroup label '") + label + "'");
  }
  return out;
}

bool ChevalleyGroup::weyl_conjugation_check(int alpha, int beta, const Scalar& t) const {
  GroupElement lhs = n(alpha, scalar(1)) * h(beta, t) * n(alpha, scalar(-1));
  return lhs == h(system().reflect(alpha, beta), t);
}

Matrix commutator(const Matrix& x, const Matrix& y, const Matrix& x_inv, const Matrix& y_inv) {
  return mul(mul(x_inv, y_inv), mul(x, y));
}

namespace {

// Value v with m == x_gamma(v), if any.
std::optional<Scalar> unipotent_parameter(const ChevalleyGroup& g, int gamma, const Matrix& m) {
  const auto& terms = g.basis().exp_terms(gamma);
  for (int j = 0; j < g.dimension(); ++j)
    for (int i = 0; i < g.dimension(); ++i) {
      if (terms[1](i, j) == 0) continue;
      bool clean = true;
      for (std::size_t k = 2; k < terms.size(); ++k) clean = clean && terms[k](i, j) == 0;
      if (!clean || i == j) continue;
      Scalar v = m(i, j) / Scalar(terms[1](i, j));
      if (equal(g.x(gamma, v).matrix, m)) return v;
      return std::nullopt;
    }
  return std::nullopt;
}

[[noreturn]] void violation(const std::string& what) { fail(ErrorCode::RelationViolation, what); }

}  // namespace

Scalar random_scalar(const FieldDescriptor& field, std::mt19937_64& rng, bool nonzero) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
  while (true) {
    Scalar v;
    switch (field.kind()) {
      case FieldKind::Rationals: v = Scalar::in(field, Rational(num(rng), den(rng))); break;
      case FieldKind::Quadratic:
        v = Scalar::quadratic(field, Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
        break;
      case FieldKind::Finite:
        v = Scalar::finite(field, std::uniform_int_distribution<std::uint32_t>(0, field.size() - 1)(rng));
        break;
      case FieldKind::RationalFunctions:
        v = random_scalar(*field.base(), rng, false).promoted(field) +
            random_scalar(*field.base(), rng, false) * Scalar::generator(field);
        break;
    }
    if (!nonzero || !v.is_zero()) return v.promoted(field);
  }
}

RelationReport check_steinberg_relations(const ChevalleyGroup& group, int trials, std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be at least 1");
  const RootSystem& rs = group.system();
  RelationReport report;
  report.trials = trials;

  auto commutator_of = [&](int alpha, int beta, const Scalar& t, const Scalar& s) {
    Matrix xb = group.x(beta, s).matrix, xa = group.x(alpha, t).matrix;
    return commutator(xb, xa, group.x(beta, -s).matrix, group.x(alpha, -t).matrix);
  };

  for (int alpha = 0; alpha < rs.size(); ++alpha)
    for (int beta = 0; beta < rs.size(); ++beta) {
      auto gamma = rs.sum(alpha, beta);
      if (!gamma) continue;
      Matrix k11 = commutator_of(alpha, beta, group.scalar(1), group.scalar(1));
      auto v = unipotent_parameter(group, *gamma, k11);
      if (!v) violation("commutator of " + rs.label(beta) + ", " + rs.label(alpha) + " is not a root element");
      // Smallest integer c with x_gamma(-c) == K(1,1); works in every characteristic.
      std::optional<long> c;
      for (long cand : {1L, -1L, 2L, -2L, 3L, -3L})
        if (-*v == group.scalar(cand)) {
          c = cand;
          break;
        }
      if (!c)
        violation("commutator constant for " + rs.label(alpha) + ", " + rs.label(beta) + " is not a small integer");
      long cv = *c;
      Matrix k12 = commutator_of(alpha, beta, group.scalar(1), group.scalar(2));
      if (!equal(k12, group.x(*gamma, group.scalar(-2 * cv)).matrix))
        violation("commutator constant for " + rs.label(alpha) + ", " + rs.label(beta) + " is not stable");
      report.constants.push_back({alpha, beta, *gamma, cv});
      report.checks += 2;
    }

  auto constant = [&](int alpha, int beta) -> long {
    for (const auto& c : report.constants)
      if (c.alpha == alpha && c.beta == beta) return c.c;
    return 0;
  };

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, rs.size() - 1);
  const FieldDescriptor& f = group.field();
  for (int trial = 0; trial < trials; ++trial) {
    int alpha = pick(rng), beta = pick(rng);
    while (beta == alpha || beta == rs.negative(alpha)) beta = pick(rng);
    Scalar t = random_scalar(f, rng), s = random_scalar(f, rng);
    // R1
    if (!equal(mul(group.x(alpha, t).matrix, group.x(alpha, s).matrix), group.x(alpha, t + s).matrix))
      violation("x_" + rs.label(alpha) + "(t) x(s) != x(t+s) at t=" + t.to_string() + ", s=" + s.to_string());
    // R2
    Matrix k = commutator_of(alpha, beta, t, s);
    auto gamma = rs.sum(alpha, beta);
    Matrix expected = gamma ? group.x(*gamma, Scalar(constant(alpha, beta)) * (-t) * s).matrix
                            : identity_matrix(group.dimension(), f);
    if (!equal(k, expected))
      violation("commutator [x_" + rs.label(beta) + "(s), x_" + rs.label(alpha) + "(t)] mismatch at t=" +
                t.to_string() + ", s=" + s.to_string());
    // R3
    if (!equal(mul(group.h(alpha, t).matrix, group.h(alpha, s).matrix), group.h(alpha, t * s).matrix))
      violation("h_" + rs.label(alpha) + "(t) h(s) != h(ts) at t=" + t.to_string() + ", s=" + s.to_string());
    report.checks += 3;
  }
  return report;
}

namespace {
Scalar one_like(const Scalar& t) { return t.field() ? Scalar::in(*t.field(), 1) : Scalar(1); }
Matrix two_by_two(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}
}  // namespace

Matrix sl2_x(const Scalar& t) {
  Scalar one = one_like(t), zero = one - one;
  return two_by_two(one, t, zero, one);
}

Matrix sl2_x_lower(const Scalar& t) {
  Scalar one = one_like(t), zero = one - one;
  return two_by_two(one, zero, t, one);
}

Matrix sl2_n(const Scalar& t) {
  if (t.is_zero()) fail(ErrorCode::ZeroParameter, "n(t) needs t != 0");
  return mul(mul(sl2_x(t), sl2_x_lower(-t.inverse())), sl2_x(t));
}

Matrix sl2_h(const Scalar& t) { return mul(sl2_n(t), sl2_n(-one_like(t))); }

Matrix sl2_adjoint(const Matrix& g) {
  if (g.rows() != 2 || g.cols() != 2) fail(ErrorCode::InvalidArgument, "sl2_adjoint needs a 2x2 matrix");
  Matrix g_inv = inverse(g);
  Scalar one = one_like(g(0, 0) + g(0, 1)), zero = one - one;
  std::vector<Matrix> basis = {two_by_two(zero, one, zero, zero), two_by_two(zero, zero, one, zero),
                               two_by_two(one, zero, zero, -one)};
  Matrix out(3, 3);
  for (int j = 0; j < 3; ++j) {
    Matrix y = mul(mul(g, basis[static_cast<std::size_t>(j)]), g_inv);
    out(0, j) = y(0, 1);
    out(1, j) = y(1, 0);
    out(2, j) = y(0, 0);
  }
  return out;
}

}  // namespace chevtwist
