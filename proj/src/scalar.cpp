#include "chevtwist/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace chevtwist {

namespace {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_squarefree(long d) {
  unsigned long n = d < 0 ? static_cast<unsigned long>(-d) : static_cast<unsigned long>(d);
  for (unsigned long f = 2; f * f <= n; ++f)
    if (n % (f * f) == 0) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits "a,b" at the last comma that is not nested in parentheses.
std::pair<std::string_view, std::string_view> split_last_comma(std::string_view s) {
  int depth = 0;
  std::size_t at = std::string_view::npos;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == ',' && depth == 0) at = i;
  }
  if (at == std::string_view::npos) fail(ErrorCode::ParseError, "expected ',' in '" + std::string(s) + "'");
  return {trim(s.substr(0, at)), trim(s.substr(at + 1))};
}

long parse_long(std::string_view s) {
  s = trim(s);
  try {
    std::size_t used = 0;
    long v = std::stol(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "expected an integer, got '" + std::string(s) + "'");
  }
}

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_size(z.get_mpz_t())) * 0x9e3779b97f4a7c15ull;
  if (mpz_size(z.get_mpz_t()) > 0) h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), 0));
  if (sgn(z) < 0) h = ~h;
  return h;
}

std::size_t hash_combine(std::size_t a, std::size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
}

std::size_t hash_rational(const Rational& q) {
  return hash_combine(hash_mpz(q.get_num()), hash_mpz(q.get_den()));
}

}  // namespace

// ---------------------------------------------------------------------------
// Field registry

struct FieldRegistry {
  std::mutex mutex;
  std::map<std::string, std::unique_ptr<FieldDescriptor>> fields;

  static FieldRegistry& instance() {
    static FieldRegistry registry;
    return registry;
  }

  template <class Build>
  const FieldDescriptor& intern(const std::string& name, Build build) {
    std::lock_guard lock(mutex);
    auto it = fields.find(name);
    if (it != fields.end()) return *it->second;
    std::unique_ptr<FieldDescriptor> f(new FieldDescriptor());
    f->name_ = name;
    build(*f);
    auto& ref = *f;
    fields.emplace(name, std::move(f));
    return ref;
  }

  static void build_quadratic(FieldDescriptor& f, long d) {
    f.kind_ = FieldKind::Quadratic;
    f.d_ = d;
  }

  static void build_rational_functions(FieldDescriptor& f, const FieldDescriptor& base, std::string_view variable) {
    f.kind_ = FieldKind::RationalFunctions;
    f.base_ = &base;
    f.variable_ = std::string(variable);
  }

  static void build_finite(FieldDescriptor& f, unsigned p, unsigned e) {
    f.kind_ = FieldKind::Finite;
    f.p_ = p;
    f.e_ = e;
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
      f.pow_p_.push_back(static_cast<std::uint32_t>(q));
      q *= p;
    }
    f.q_ = static_cast<std::uint32_t>(q);
    const std::uint32_t units = f.q_ - 1;

    // Smallest monic polynomial (in counter order) whose root generates F_q^*.
    auto times_w = [&](std::uint32_t code, const std::vector<unsigned>& m) {
      std::vector<unsigned> d(e + 1, 0);
      for (unsigned i = 0; i < e; ++i) d[i + 1] = (code / f.pow_p_[i]) % p;
      unsigned top = d[e];
      std::uint32_t out = 0;
      for (unsigned i = 0; i < e; ++i) {
        long v = static_cast<long>(d[i]) - static_cast<long>(top) * m[i];
        v %= static_cast<long>(p);
        if (v < 0) v += p;
        out += static_cast<std::uint32_t>(v) * f.pow_p_[i];
      }
      return out;
    };
    for (std::uint32_t counter = 1; counter < f.q_; ++counter) {
      std::vector<unsigned> m(e);
      for (unsigned i = 0; i < e; ++i) m[i] = (counter / f.pow_p_[i]) % p;
      if (m[0] == 0) continue;
      std::vector<std::uint32_t> exp(units);
      std::uint32_t x = 1;
      bool ok = true;
      for (std::uint32_t k = 0; k < units; ++k) {
        if (k > 0 && x == 1) {
          ok = false;
          break;
        }
        exp[k] = x;
        x = times_w(x, m);
      }
      if (!ok || x != 1) continue;
      f.modulus_ = m;
      f.modulus_.push_back(1);
      f.exp_ = std::move(exp);
      f.log_.assign(f.q_, 0);
      for (std::uint32_t k = 0; k < units; ++k) f.log_[f.exp_[k]] = k;
      return;
    }
    if (units == 1) {  // F_2: w = 1
      f.modulus_ = {1, 1};
      f.exp_ = {1};
      f.log_ = {0, 0};
      return;
    }
    fail(ErrorCode::InvalidArgument, "no primitive polynomial found for F(" + std::to_string(p) + "," +
                                         std::to_string(e) + ")");
  }
};

unsigned FieldDescriptor::characteristic() const noexcept {
  switch (kind_) {
    case FieldKind::Finite: return p_;
    case FieldKind::RationalFunctions: return base_->characteristic();
    default: return 0;
  }
}

std::uint32_t FieldDescriptor::ff_add(std::uint32_t a, std::uint32_t b) const {
  if (p_ == 2) return a ^ b;
  if (e_ == 1) return (a + b) % p_;
  std::uint32_t out = 0;
  for (unsigned i = 0; i < e_; ++i) {
    std::uint32_t da = (a / pow_p_[i]) % p_, db = (b / pow_p_[i]) % p_;
    out += ((da + db) % p_) * pow_p_[i];
  }
  return out;
}

std::uint32_t FieldDescriptor::ff_neg(std::uint32_t a) const {
  if (p_ == 2) return a;
  std::uint32_t out = 0;
  for (unsigned i = 0; i < e_; ++i) {
    std::uint32_t da = (a / pow_p_[i]) % p_;
    out += ((p_ - da) % p_) * pow_p_[i];
  }
  return out;
}

std::uint32_t FieldDescriptor::ff_mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % (q_ - 1)];
}

std::uint32_t FieldDescriptor::ff_inv(std::uint32_t a) const {
  if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of 0 in " + name_);
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t FieldDescriptor::ff_pow_p(std::uint32_t a, unsigned r) const {
  if (a == 0) return 0;
  std::uint64_t k = log_[a];
  for (unsigned i = 0; i < r; ++i) k = (k * p_) % (q_ - 1);
  return exp_[k];
}

std::uint32_t FieldDescriptor::ff_from_integer(const Integer& n) const {
  Integer r = n % p_;
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t FieldDescriptor::ff_generator() const { return exp_.size() > 1 ? exp_[1] : 1; }

const FieldDescriptor& rationals() {
  return FieldRegistry::instance().intern("Q", [](FieldDescriptor&) {});
}

const FieldDescriptor& quadratic_field(long d) {
  if (d == 0 || d == 1 || !is_squarefree(d))
    fail(ErrorCode::InvalidArgument, "Q(sqrt," + std::to_string(d) + "): d must be squarefree, nonzero and not 1");
  std::string name = "Q(sqrt," + std::to_string(d) + ")";
  return FieldRegistry::instance().intern(name, [d](FieldDescriptor& f) { FieldRegistry::build_quadratic(f, d); });
}

const FieldDescriptor& finite_field(unsigned p, unsigned e) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "F(p,e): " + std::to_string(p) + " is not prime");
  if (e == 0) fail(ErrorCode::InvalidArgument, "F(p,e): exponent must be at least 1");
  double q = 1;
  for (unsigned i = 0; i < e; ++i) q *= p;
  if (q > (1u << 20)) fail(ErrorCode::InvalidArgument, "F(p,e): field too large for table arithmetic");
  std::string name = "F(" + std::to_string(p) + "," + std::to_string(e) + ")";
  return FieldRegistry::instance().intern(name, [p, e](FieldDescriptor& f) { FieldRegistry::build_finite(f, p, e); });
}

const FieldDescriptor& rational_functions(const FieldDescriptor& base, std::string_view variable) {
  if (base.kind() == FieldKind::RationalFunctions)
    fail(ErrorCode::InvalidArgument, "nested rational function fields are not supported");
  if (variable.empty() || !std::isalpha(static_cast<unsigned char>(variable[0])) || variable == "s" || variable == "w")
    fail(ErrorCode::InvalidArgument, "invalid variable name '" + std::string(variable) + "'");
  std::string name = "RF(" + base.name() + "," + std::string(variable) + ")";
  return FieldRegistry::instance().intern(
      name, [&base, variable](FieldDescriptor& f) { FieldRegistry::build_rational_functions(f, base, variable); });
}

const FieldDescriptor& parse_field(std::string_view text) {
  std::string_view s = trim(text);
  if (s == "Q") return rationals();
  auto inner = [&](std::string_view prefix) -> std::optional<std::string_view> {
    if (s.size() > prefix.size() + 1 && s.substr(0, prefix.size()) == prefix && s.back() == ')')
      return s.substr(prefix.size(), s.size() - prefix.size() - 1);
    return std::nullopt;
  };
  if (auto body = inner("Q(")) {
    auto [tag, d] = split_last_comma(*body);
    if (tag != "sqrt") fail(ErrorCode::ParseError, "expected Q(sqrt,d), got '" + std::string(s) + "'");
    return quadratic_field(parse_long(d));
  }
  if (auto body = inner("RF(")) {
    auto [base, var] = split_last_comma(*body);
    return rational_functions(parse_field(base), var);
  }
  if (auto body = inner("F(")) {
    auto [p, e] = split_last_comma(*body);
    long pv = parse_long(p), ev = parse_long(e);
    if (pv <= 0 || ev <= 0) fail(ErrorCode::ParseError, "F(p,e) needs positive integers");
    return finite_field(static_cast<unsigned>(pv), static_cast<unsigned>(ev));
  }
  fail(ErrorCode::ParseError, "unknown field descriptor '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Scalar arithmetic

struct ScalarOps {
  using RFPtr = std::shared_ptr<const RationalFunctionValue>;

  static const FieldDescriptor* common(const Scalar& a, const Scalar& b) {
    if (a.field_ == b.field_) return a.field_;
    if (!a.field_) return b.field_;
    if (!b.field_) return a.field_;
    if (a.field_->kind() == FieldKind::RationalFunctions && a.field_->base() == b.field_) return a.field_;
    if (b.field_->kind() == FieldKind::RationalFunctions && b.field_->base() == a.field_) return b.field_;
    fail(ErrorCode::FieldMismatch, "field mismatch: " + a.field_->name() + " vs " + b.field_->name());
  }

  static const RationalFunctionValue& rf(const Scalar& s) { return *std::get<RFPtr>(s.value_); }

  static Scalar make_rf(const FieldDescriptor* f, Polynomial num, Polynomial den) {
    if (den.is_zero()) fail(ErrorCode::DivisionByZero, "rational function with zero denominator");
    if (num.is_zero()) {
      return Scalar(f, std::make_shared<RationalFunctionValue>(
                           RationalFunctionValue{Polynomial(), Polynomial::constant(Scalar::in(*f->base(), 1))}));
    }
    if (den.degree() > 0) {
      Polynomial g = gcd(num, den);
      if (g.degree() > 0) {
        num = divmod(num, g).first;
        den = divmod(den, g).first;
      }
    }
    Scalar lc = den.leading();
    if (!lc.is_one()) {
      Scalar inv = lc.inverse();
      num = inv * num;
      den = inv * den;
    }
    return Scalar(f, std::make_shared<RationalFunctionValue>(RationalFunctionValue{std::move(num), std::move(den)}));
  }

  template <class Op>
  static Scalar binary(const Scalar& a, const Scalar& b, Op op) {
    if (a.field_ == b.field_) return op(a.field_, a, b);
    const FieldDescriptor* f = common(a, b);
    if (a.field_ == f) return op(f, a, b.promoted(*f));
    if (b.field_ == f) return op(f, a.promoted(*f), b);
    return op(f, a.promoted(*f), b.promoted(*f));
  }

  static Scalar add(const FieldDescriptor* f, const Scalar& a, const Scalar& b) {
    if (!f || f->kind() == FieldKind::Rationals)
      return Scalar(f, Rational(std::get<Rational>(a.value_) + std::get<Rational>(b.value_)));
    switch (f->kind()) {
      case FieldKind::Quadratic: {
        const auto& x = std::get<QuadraticValue>(a.value_);
        const auto& y = std::get<QuadraticValue>(b.value_);
        return Scalar(f, QuadraticValue{x.a + y.a, x.b + y.b});
      }
      case FieldKind::Finite:
        return Scalar(f, f->ff_add(std::get<std::uint32_t>(a.value_), std::get<std::uint32_t>(b.value_)));
      default: {
        const auto& x = rf(a);
        const auto& y = rf(b);
        if (x.num.is_zero()) return b;
        if (y.num.is_zero()) return a;
        if (x.den == y.den) return make_rf(f, x.num + y.num, x.den);
        return make_rf(f, x.num * y.den + y.num * x.den, x.den * y.den);
      }
    }
  }

  static Scalar mul(const FieldDescriptor* f, const Scalar& a, const Scalar& b) {
    if (!f || f->kind() == FieldKind::Rationals)
      return Scalar(f, Rational(std::get<Rational>(a.value_) * std::get<Rational>(b.value_)));
    switch (f->kind()) {
      case FieldKind::Quadratic: {
        const auto& x = std::get<QuadraticValue>(a.value_);
        const auto& y = std::get<QuadraticValue>(b.value_);
        Rational d(f->quadratic_d());
        return Scalar(f, QuadraticValue{x.a * y.a + d * x.b * y.b, x.a * y.b + x.b * y.a});
      }
      case FieldKind::Finite:
        return Scalar(f, f->ff_mul(std::get<std::uint32_t>(a.value_), std::get<std::uint32_t>(b.value_)));
      default: {
        const auto& x = rf(a);
        const auto& y = rf(b);
        if (x.num.is_zero()) return a;
        if (y.num.is_zero()) return b;
        Polynomial g1 = gcd(x.num, y.den), g2 = gcd(y.num, x.den);
        Polynomial n1 = g1.degree() > 0 ? divmod(x.num, g1).first : x.num;
        Polynomial d2 = g1.degree() > 0 ? divmod(y.den, g1).first : y.den;
        Polynomial n2 = g2.degree() > 0 ? divmod(y.num, g2).first : y.num;
        Polynomial d1 = g2.degree() > 0 ? divmod(x.den, g2).first : x.den;
        Polynomial num = n1 * n2, den = d1 * d2;
        Scalar lc = den.leading();
        if (!lc.is_one()) {
          Scalar inv = lc.inverse();
          num = inv * num;
          den = inv * den;
        }
        return Scalar(f, std::make_shared<RationalFunctionValue>(RationalFunctionValue{std::move(num), std::move(den)}));
      }
    }
  }

  static Scalar neg(const Scalar& a) {
    const FieldDescriptor* f = a.field_;
    if (!f || f->kind() == FieldKind::Rationals) return Scalar(f, Rational(-std::get<Rational>(a.value_)));
    switch (f->kind()) {
      case FieldKind::Quadratic: {
        const auto& x = std::get<QuadraticValue>(a.value_);
        return Scalar(f, QuadraticValue{-x.a, -x.b});
      }
      case FieldKind::Finite: return Scalar(f, f->ff_neg(std::get<std::uint32_t>(a.value_)));
      default: {
        const auto& x = rf(a);
        return Scalar(f, std::make_shared<RationalFunctionValue>(RationalFunctionValue{Scalar(-1) * x.num, x.den}));
      }
    }
  }

  static Scalar inv(const Scalar& a) {
    if (a.is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    const FieldDescriptor* f = a.field_;
    if (!f || f->kind() == FieldKind::Rationals) return Scalar(f, Rational(1 / std::get<Rational>(a.value_)));
    switch (f->kind()) {
      case FieldKind::Quadratic: {
        const auto& x = std::get<QuadraticValue>(a.value_);
        Rational norm = x.a * x.a - Rational(f->quadratic_d()) * x.b * x.b;
        return Scalar(f, QuadraticValue{x.a / norm, -x.b / norm});
      }
      case FieldKind::Finite: return Scalar(f, f->ff_inv(std::get<std::uint32_t>(a.value_)));
      default: {
        const auto& x = rf(a);
        Scalar lc = x.num.leading().inverse();
        return Scalar(f, std::make_shared<RationalFunctionValue>(RationalFunctionValue{lc * x.den, lc * x.num}));
      }
    }
  }
};

Scalar Scalar::in(const FieldDescriptor& field, const Rational& value) {
  return Scalar(value).promoted(field);
}

Scalar Scalar::quadratic(const FieldDescriptor& field, const Rational& a, const Rational& b) {
  if (field.kind() != FieldKind::Quadratic) fail(ErrorCode::FieldMismatch, field.name() + " is not a quadratic field");
  QuadraticValue v{a, b};
  v.a.canonicalize();
  v.b.canonicalize();
  return Scalar(&field, std::move(v));
}

Scalar Scalar::finite(const FieldDescriptor& field, std::uint32_t code) {
  if (field.kind() != FieldKind::Finite) fail(ErrorCode::FieldMismatch, field.name() + " is not a finite field");
  if (code >= field.size()) fail(ErrorCode::InvalidArgument, "finite field code out of range");
  return Scalar(&field, code);
}

Scalar Scalar::generator(const FieldDescriptor& field) {
  switch (field.kind()) {
    case FieldKind::Rationals: return Scalar::in(field, 1);
    case FieldKind::Quadratic: return quadratic(field, 0, 1);
    case FieldKind::Finite: return finite(field, field.ff_generator());
    default:
      return fraction(field, Polynomial::monomial(Scalar::in(*field.base(), 1), 1),
                      Polynomial::constant(Scalar::in(*field.base(), 1)));
  }
}

Scalar Scalar::fraction(const FieldDescriptor& field, Polynomial num, Polynomial den) {
  if (field.kind() != FieldKind::RationalFunctions) fail(ErrorCode::FieldMismatch, field.name() + " is not k(T)");
  const FieldDescriptor& base = *field.base();
  auto lift = [&](const Polynomial& p) {
    std::vector<Scalar> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) c.push_back(x.promoted(base));
    return Polynomial(std::move(c));
  };
  return ScalarOps::make_rf(&field, lift(num), lift(den));
}

Scalar Scalar::promoted(const FieldDescriptor& field) const {
  if (field_ == &field) return *this;
  if (field_) {
    if (field.kind() == FieldKind::RationalFunctions && field.base() == field_)
      return ScalarOps::make_rf(&field, Polynomial::constant(*this), Polynomial::constant(Scalar::in(*field_, 1)));
    fail(ErrorCode::FieldMismatch, "cannot move an element of " + field_->name() + " into " + field.name());
  }
  const Rational& q = std::get<Rational>(value_);
  switch (field.kind()) {
    case FieldKind::Rationals: return Scalar(&field, q);
    case FieldKind::Quadratic: return Scalar(&field, QuadraticValue{q, 0});
    case FieldKind::Finite: {
      std::uint32_t den = field.ff_from_integer(q.get_den());
      if (den == 0) fail(ErrorCode::DivisionByZero, "denominator vanishes in " + field.name());
      return Scalar(&field, field.ff_mul(field.ff_from_integer(q.get_num()), field.ff_inv(den)));
    }
    default: {
      Scalar c = promoted(*field.base());
      return ScalarOps::make_rf(&field, Polynomial::constant(c), Polynomial::constant(Scalar::in(*field.base(), 1)));
    }
  }
}

bool Scalar::is_zero() const {
  switch (value_.index()) {
    case 0: return sgn(std::get<Rational>(value_)) == 0;
    case 1: {
      const auto& x = std::get<QuadraticValue>(value_);
      return sgn(x.a) == 0 && sgn(x.b) == 0;
    }
    case 2: return std::get<std::uint32_t>(value_) == 0;
    default: return ScalarOps::rf(*this).num.is_zero();
  }
}

bool Scalar::is_one() const {
  switch (value_.index()) {
    case 0: return std::get<Rational>(value_) == 1;
    case 1: {
      const auto& x = std::get<QuadraticValue>(value_);
      return x.a == 1 && sgn(x.b) == 0;
    }
    case 2: return std::get<std::uint32_t>(value_) == 1;
    default: {
      const auto& x = ScalarOps::rf(*this);
      return x.den.degree() == 0 && x.num.degree() == 0 && x.num.leading().is_one();
    }
  }
}

Scalar Scalar::inverse() const { return ScalarOps::inv(*this); }

Scalar Scalar::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Scalar result = field_ ? Scalar::in(*field_, 1) : Scalar(1);
  Scalar base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

Scalar Scalar::involution() const {
  if (field_ && field_->kind() == FieldKind::Quadratic) {
    const auto& x = std::get<QuadraticValue>(value_);
    return Scalar(field_, QuadraticValue{x.a, -x.b});
  }
  if (field_ && field_->kind() == FieldKind::Finite && field_->degree() % 2 == 0)
    return Scalar(field_, field_->ff_pow_p(std::get<std::uint32_t>(value_), field_->degree() / 2));
  fail(ErrorCode::InvalidArgument, "involution is defined on Q(sqrt,d) and F(p,2m) only");
}

std::optional<Rational> Scalar::to_rational() const {
  switch (value_.index()) {
    case 0: return std::get<Rational>(value_);
    case 1: {
      const auto& x = std::get<QuadraticValue>(value_);
      if (sgn(x.b) != 0) return std::nullopt;
      return x.a;
    }
    case 2: return std::nullopt;
    default: {
      const auto& x = ScalarOps::rf(*this);
      if (x.den.degree() != 0 || x.num.degree() > 0) return std::nullopt;
      if (x.num.is_zero()) return Rational(0);
      return x.num.leading().to_rational();
    }
  }
}

const Rational& Scalar::rational() const {
  if (value_.index() != 0) fail(ErrorCode::NotRational, "scalar is not an element of Q");
  return std::get<Rational>(value_);
}

const QuadraticValue& Scalar::quadratic_value() const {
  if (value_.index() != 1) fail(ErrorCode::FieldMismatch, "scalar is not an element of a quadratic field");
  return std::get<QuadraticValue>(value_);
}

std::uint32_t Scalar::finite_code() const {
  if (value_.index() != 2) fail(ErrorCode::FieldMismatch, "scalar is not an element of a finite field");
  return std::get<std::uint32_t>(value_);
}

const Polynomial& Scalar::numerator() const {
  if (value_.index() != 3) fail(ErrorCode::FieldMismatch, "scalar is not a rational function");
  return ScalarOps::rf(*this).num;
}

const Polynomial& Scalar::denominator() const {
  if (value_.index() != 3) fail(ErrorCode::FieldMismatch, "scalar is not a rational function");
  return ScalarOps::rf(*this).den;
}

namespace {

std::string finite_to_string(const FieldDescriptor& f, std::uint32_t code) {
  if (f.degree() == 1) return std::to_string(code);
  std::string out;
  for (int i = static_cast<int>(f.degree()) - 1; i >= 0; --i) {
    unsigned digit = (code / [&] {
                       std::uint32_t v = 1;
                       for (int k = 0; k < i; ++k) v *= f.prime();
                       return v;
                     }()) %
                     f.prime();
    if (digit == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(digit);
      continue;
    }
    if (digit != 1) out += std::to_string(digit) + "*";
    out += "w";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

bool is_compound(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == '+' || s[i] == '-') return true;
  return false;
}

}  // namespace

std::string Scalar::to_string() const {
  switch (value_.index()) {
    case 0: return std::get<Rational>(value_).get_str();
    case 1: {
      const auto& x = std::get<QuadraticValue>(value_);
      if (sgn(x.b) == 0) return x.a.get_str();
      std::string b;
      if (x.b == 1) b = "s";
      else if (x.b == -1) b = "-s";
      else b = x.b.get_str() + "*s";
      if (sgn(x.a) == 0) return b;
      return x.a.get_str() + (b[0] == '-' ? "" : "+") + b;
    }
    case 2: return finite_to_string(*field_, std::get<std::uint32_t>(value_));
    default: {
      const auto& x = ScalarOps::rf(*this);
      const std::string& var = field_->variable();
      if (x.den.degree() == 0) return x.num.to_string(var);
      return "(" + x.num.to_string(var) + ")/(" + x.den.to_string(var) + ")";
    }
  }
}

std::size_t Scalar::hash() const {
  switch (value_.index()) {
    case 0: return hash_rational(std::get<Rational>(value_));
    case 1: {
      const auto& x = std::get<QuadraticValue>(value_);
      if (sgn(x.b) == 0) return hash_rational(x.a);
      return hash_combine(hash_rational(x.a), hash_rational(x.b));
    }
    case 2: return std::hash<std::uint32_t>{}(std::get<std::uint32_t>(value_));
    default: {
      const auto& x = ScalarOps::rf(*this);
      std::size_t h = 0x51ed27;
      for (const auto& c : x.num.coeffs()) h = hash_combine(h, c.hash());
      for (const auto& c : x.den.coeffs()) h = hash_combine(h, c.hash());
      return h;
    }
  }
}

Scalar& Scalar::operator+=(const Scalar& o) { return *this = *this + o; }
Scalar& Scalar::operator-=(const Scalar& o) { return *this = *this - o; }
Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }
Scalar& Scalar::operator/=(const Scalar& o) { return *this = *this / o; }
Scalar Scalar::operator-() const { return ScalarOps::neg(*this); }

Scalar operator+(const Scalar& a, const Scalar& b) { return ScalarOps::binary(a, b, ScalarOps::add); }
Scalar operator-(const Scalar& a, const Scalar& b) {
  return ScalarOps::binary(a, b, [](const FieldDescriptor* f, const Scalar& x, const Scalar& y) {
    return ScalarOps::add(f, x, ScalarOps::neg(y));
  });
}
Scalar operator*(const Scalar& a, const Scalar& b) { return ScalarOps::binary(a, b, ScalarOps::mul); }
Scalar operator/(const Scalar& a, const Scalar& b) {
  return ScalarOps::binary(a, b, [](const FieldDescriptor* f, const Scalar& x, const Scalar& y) {
    return ScalarOps::mul(f, x, ScalarOps::inv(y));
  });
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) {
    if (a.field_ && b.field_) {
      try {
        ScalarOps::common(a, b);
      } catch (const Error&) {
        return false;
      }
    }
    return ScalarOps::binary(a, b, [](const FieldDescriptor*, const Scalar& x, const Scalar& y) {
             return Scalar(x == y ? 1 : 0);
           }).is_one();
  }
  switch (a.value_.index()) {
    case 0: return std::get<Rational>(a.value_) == std::get<Rational>(b.value_);
    case 1: {
      const auto& x = std::get<QuadraticValue>(a.value_);
      const auto& y = std::get<QuadraticValue>(b.value_);
      return x.a == y.a && x.b == y.b;
    }
    case 2: return std::get<std::uint32_t>(a.value_) == std::get<std::uint32_t>(b.value_);
    default: {
      const auto& x = ScalarOps::rf(a);
      const auto& y = ScalarOps::rf(b);
      return x.num == y.num && x.den == y.den;
    }
  }
}

namespace {
int compare_poly(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (int i = a.degree(); i >= 0; --i) {
    int c = compare(a.coeffs()[i], b.coeffs()[i]);
    if (c) return c;
  }
  return 0;
}
}  // namespace

int compare(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) {
    if (a.field_ && b.field_ && a.field_->kind() != FieldKind::RationalFunctions &&
        b.field_->kind() != FieldKind::RationalFunctions)
      return a.field_->name() < b.field_->name() ? -1 : 1;
    return ScalarOps::binary(a, b, [](const FieldDescriptor*, const Scalar& x, const Scalar& y) {
             return Scalar(compare(x, y));
           }).rational().get_num().get_si();
  }
  switch (a.value_.index()) {
    case 0: return cmp(std::get<Rational>(a.value_), std::get<Rational>(b.value_)) < 0   ? -1
                   : cmp(std::get<Rational>(a.value_), std::get<Rational>(b.value_)) > 0 ? 1
                                                                                         : 0;
    case 1: {
      const auto& x = std::get<QuadraticValue>(a.value_);
      const auto& y = std::get<QuadraticValue>(b.value_);
      int c = cmp(x.a, y.a);
      if (c == 0) c = cmp(x.b, y.b);
      return (c > 0) - (c < 0);
    }
    case 2: {
      auto x = std::get<std::uint32_t>(a.value_), y = std::get<std::uint32_t>(b.value_);
      return (x > y) - (x < y);
    }
    default: {
      const auto& x = ScalarOps::rf(a);
      const auto& y = ScalarOps::rf(b);
      int c = compare_poly(x.num, y.num);
      return c ? c : compare_poly(x.den, y.den);
    }
  }
}

int rational_degree(const Scalar& f) {
  if (!f.field() || f.field()->kind() != FieldKind::RationalFunctions) return 0;
  return std::max(f.numerator().degree(), f.denominator().degree());
}

// ---------------------------------------------------------------------------
// Polynomials

Polynomial::Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Scalar& c) { return Polynomial(std::vector<Scalar>{c}); }

Polynomial Polynomial::monomial(const Scalar& c, int degree) {
  std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1, c.field() ? Scalar::in(*c.field(), 0) : Scalar(0));
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Scalar Polynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return Scalar(0);
  return coeffs_[static_cast<std::size_t>(i)];
}

const Scalar& Polynomial::leading() const {
  if (coeffs_.empty()) fail(ErrorCode::InvalidArgument, "leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Scalar Polynomial::operator()(const Scalar& x) const {
  Scalar r(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return leading().inverse() * *this;
}

Polynomial Polynomial::map_coefficients(const FieldAutomorphism& f) const {
  std::vector<Scalar> c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(f(x));
  return Polynomial(std::move(c));
}

Polynomial Polynomial::substitute_affine(const Scalar& a, const Scalar& b) const {
  Polynomial lin(std::vector<Scalar>{b, a});
  Polynomial r;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * lin + Polynomial::constant(*it);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Scalar(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Scalar(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Scalar> c(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(const Scalar& c, const Polynomial& p) {
  std::vector<Scalar> v;
  v.reserve(p.coeffs_.size());
  for (const auto& x : p.coeffs_) v.push_back(c * x);
  return Polynomial(std::move(v));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    if (a.coeffs_[i] != b.coeffs_[i]) return false;
  return true;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  Polynomial r = a;
  if (r.degree() < b.degree()) return {Polynomial(), r};
  std::vector<Scalar> q(static_cast<std::size_t>(r.degree() - b.degree() + 1), Scalar(0));
  Scalar lead_inv = b.leading().inverse();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int shift = r.degree() - b.degree();
    Scalar c = r.leading() * lead_inv;
    q[static_cast<std::size_t>(shift)] = c;
    for (int i = 0; i <= b.degree(); ++i)
      r.coeffs_[static_cast<std::size_t>(i + shift)] -= c * b.coeffs_[static_cast<std::size_t>(i)];
    r.coeffs_.pop_back();  // leading term cancels exactly
    r.trim();
  }
  return {Polynomial(std::move(q)), r};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string Polynomial::to_string(std::string_view variable) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Scalar& c = coeffs_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    std::string term;
    if (i == 0) {
      term = is_compound(cs) ? "(" + cs + ")" : cs;
    } else {
      std::string mono(variable);
      if (i > 1) mono += "^" + std::to_string(i);
      if (cs == "1") term = mono;
      else if (cs == "-1") term = "-" + mono;
      else term = (is_compound(cs) ? "(" + cs + ")" : cs) + "*" + mono;
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Expression parser

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const FieldDescriptor& field) : text_(text), field_(field) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v.promoted(field_);
  }

 private:
  [[noreturn]] void error(const std::string& what) {
    fail(ErrorCode::ParseError, "cannot parse scalar '" + std::string(text_) + "': " + what);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Scalar expr() {
    Scalar v = term();
    while (true) {
      if (eat('+')) v = v + term();
      else if (eat('-')) v = v - term();
      else return v;
    }
  }
  Scalar term() {
    Scalar v = unary();
    while (true) {
      if (eat('*')) v = v * unary();
      else if (eat('/')) v = v / unary();
      else return v;
    }
  }
  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Scalar power() {
    Scalar base = atom();
    if (eat('^')) {
      skip();
      bool negative = eat('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) error("expected integer exponent");
      long k = std::stol(std::string(text_.substr(start, pos_ - start)));
      return base.pow(negative ? -k : k);
    }
    return base;
  }
  Scalar atom() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!eat(')')) error("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Scalar(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return symbol(text_.substr(start, pos_ - start));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }
  Scalar symbol(std::string_view name) {
    const FieldDescriptor* coeff = field_.kind() == FieldKind::RationalFunctions ? field_.base() : &field_;
    if (field_.kind() == FieldKind::RationalFunctions && name == field_.variable()) return Scalar::generator(field_);
    if (name == "s" && coeff->kind() == FieldKind::Quadratic) return Scalar::generator(*coeff);
    if (name == "w" && coeff->kind() == FieldKind::Finite) return Scalar::generator(*coeff);
    error("unknown symbol '" + std::string(name) + "' for field " + field_.name());
  }

  std::string_view text_;
  const FieldDescriptor& field_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text, const FieldDescriptor& field) {
  return ExpressionParser(text, field).parse();
}

// ---------------------------------------------------------------------------
// Field automorphisms

FieldAutomorphism FieldAutomorphism::quadratic_conjugation(const FieldDescriptor& field) {
  if (field.kind() != FieldKind::Quadratic)
    fail(ErrorCode::FieldMismatch, "quadratic conjugation needs Q(sqrt,d), got " + field.name());
  FieldAutomorphism f;
  f.kind_ = Kind::QuadraticConjugation;
  f.field_ = &field;
  return f;
}

FieldAutomorphism FieldAutomorphism::frobenius(const FieldDescriptor& field, unsigned r) {
  if (field.kind() != FieldKind::Finite) fail(ErrorCode::FieldMismatch, "Frobenius needs a finite field");
  r %= field.degree();
  if (r == 0) return identity();
  FieldAutomorphism f;
  f.kind_ = Kind::FrobeniusPower;
  f.field_ = &field;
  f.frobenius_power_ = r;
  return f;
}

FieldAutomorphism FieldAutomorphism::coefficient_lift(const FieldDescriptor& field,
                                                      const FieldAutomorphism& base_automorphism) {
  if (field.kind() != FieldKind::RationalFunctions) fail(ErrorCode::FieldMismatch, "coefficient lift needs k(T)");
  if (base_automorphism.field_ && base_automorphism.field_ != field.base())
    fail(ErrorCode::FieldMismatch, "coefficient automorphism does not act on " + field.base()->name());
  if (base_automorphism.is_identity()) return identity();
  FieldAutomorphism f;
  f.kind_ = Kind::FunctionField;
  f.field_ = &field;
  f.coefficient_ = std::make_shared<FieldAutomorphism>(base_automorphism);
  f.a_ = Scalar::in(*field.base(), 1);
  f.b_ = Scalar::in(*field.base(), 0);
  return f;
}

FieldAutomorphism FieldAutomorphism::affine_substitution(const FieldDescriptor& field, const Scalar& a,
                                                         const Scalar& b) {
  if (field.kind() != FieldKind::RationalFunctions) fail(ErrorCode::FieldMismatch, "affine substitution needs k(T)");
  Scalar ab = a.promoted(*field.base()), bb = b.promoted(*field.base());
  if (ab.is_zero()) fail(ErrorCode::InvalidArgument, "affine substitution T -> a*T+b needs a != 0");
  if (ab.is_one() && bb.is_zero()) return identity();
  FieldAutomorphism f;
  f.kind_ = Kind::FunctionField;
  f.field_ = &field;
  f.coefficient_ = std::make_shared<FieldAutomorphism>();
  f.a_ = ab;
  f.b_ = bb;
  return f;
}

FieldAutomorphism FieldAutomorphism::involution_of(const FieldDescriptor& field) {
  switch (field.kind()) {
    case FieldKind::Quadratic: return quadratic_conjugation(field);
    case FieldKind::Finite:
      if (field.degree() % 2 == 0) return frobenius(field, field.degree() / 2);
      break;
    case FieldKind::RationalFunctions:
      if (field.base()->kind() != FieldKind::Rationals)
        return coefficient_lift(field, involution_of(*field.base()));
      break;
    default: break;
  }
  fail(ErrorCode::InvalidArgument, field.name() + " has no distinguished order-2 automorphism");
}


Scalar FieldAutomorphism::operator()(const Scalar& s) const {
  if (kind_ == Kind::Identity || !s.field()) return s;
  switch (kind_) {
    case Kind::QuadraticConjugation:
    case Kind::FrobeniusPower:
      if (s.field() != field_) {
        if (s.field()->kind() == FieldKind::RationalFunctions && s.field()->base() == field_)
          return coefficient_lift(*s.field(), *this)(s);
        fail(ErrorCode::FieldMismatch, "automorphism of " + field_->name() + " applied to " + s.field()->name());
      }
      if (kind_ == Kind::QuadraticConjugation) return s.involution();
      return Scalar::finite(*field_, field_->ff_pow_p(s.finite_code(), frobenius_power_));
    default: {
      if (s.field() == field_->base()) return (*coefficient_)(s);
      if (s.field() != field_)
        fail(ErrorCode::FieldMismatch, "automorphism of " + field_->name() + " applied to " + s.field()->name());
      Polynomial num = s.numerator().map_coefficients(*coefficient_).substitute_affine(*a_, *b_);
      Polynomial den = s.denominator().map_coefficients(*coefficient_).substitute_affine(*a_, *b_);
      return Scalar::fraction(*field_, std::move(num), std::move(den));
    }
  }
}

FieldAutomorphism FieldAutomorphism::compose(const FieldAutomorphism& other) const {
  if (is_identity()) return other;
  if (other.is_identity()) return *this;
  if (field_ != other.field_)
    fail(ErrorCode::FieldMismatch, "cannot compose automorphisms of " + field_->name() + " and " + other.field_->name());
  switch (kind_) {
    case Kind::QuadraticConjugation: return identity();
    case Kind::FrobeniusPower: return frobenius(*field_, frobenius_power_ + other.frobenius_power_);
    default: {
      // (c1,a1,b1) o (c2,a2,b2) = (c1 c2, c1(a2) a1, c1(a2) b1 + c1(b2))
      const FieldAutomorphism& c1 = *coefficient_;
      Scalar c1a2 = c1(*other.a_);
      FieldAutomorphism out;
      out.kind_ = Kind::FunctionField;
      out.field_ = field_;
      out.coefficient_ = std::make_shared<FieldAutomorphism>(c1.compose(*other.coefficient_));
      out.a_ = c1a2 * *a_;
      out.b_ = c1a2 * *b_ + c1(*other.b_);
      if (out.coefficient_->is_identity() && out.a_->is_one() && out.b_->is_zero()) return identity();
      return out;
    }
  }
}

FieldAutomorphism FieldAutomorphism::inverse() const {
  switch (kind_) {
    case Kind::Identity:
    case Kind::QuadraticConjugation: return *this;
    case Kind::FrobeniusPower: return frobenius(*field_, field_->degree() - frobenius_power_);
    default: {
      FieldAutomorphism ci = coefficient_->inverse();
      Scalar ca = ci(*a_), cb = ci(*b_);
      FieldAutomorphism out;
      out.kind_ = Kind::FunctionField;
      out.field_ = field_;
      out.coefficient_ = std::make_shared<FieldAutomorphism>(ci);
      out.a_ = ca.inverse();
      out.b_ = -cb / ca;
      return out;
    }
  }
}

FieldAutomorphism FieldAutomorphism::pow(unsigned k) const {
  FieldAutomorphism result, base = *this;
  while (k > 0) {
    if (k & 1) result = result.compose(base);
    k >>= 1;
    if (k) base = base.compose(base);
  }
  return result;
}

std::optional<unsigned> FieldAutomorphism::order() const {
  switch (kind_) {
    case Kind::Identity: return 1u;
    case Kind::QuadraticConjugation: return 2u;
    case Kind::FrobeniusPower: return field_->degree() / std::gcd(frobenius_power_, field_->degree());
    default: {
      // Finite orders are bounded: roots of unity in Q(sqrt d) have order at
      // most 6, and over a finite base everything is bounded by the size of
      // the semi-affine group.
      const FieldDescriptor& base = *field_->base();
      unsigned cap = 64;
      if (base.kind() == FieldKind::Finite) cap = std::max<unsigned>(cap, base.size() * (base.size() - 1) * base.degree());
      FieldAutomorphism power = *this;
      for (unsigned k = 1; k <= cap; ++k) {
        if (power.is_identity()) return k;
        power = power.compose(*this);
      }
      return std::nullopt;
    }
  }
}

std::string FieldAutomorphism::to_string() const {
  switch (kind_) {
    case Kind::Identity: return "id";
    case Kind::QuadraticConjugation: return "conj";
    case Kind::FrobeniusPower: return "frob" + std::to_string(frobenius_power_);
    default: {
      bool affine = !(a_->is_one() && b_->is_zero());
      if (!affine) return "lift(" + coefficient_->to_string() + ")";
      std::string aff = "affine(" + a_->to_string() + "," + b_->to_string() + ")";
      if (coefficient_->is_identity()) return aff;
      return "lift(" + coefficient_->to_string() + ")*" + aff;
    }
  }
}

bool operator==(const FieldAutomorphism& a, const FieldAutomorphism& b) {
  if (a.kind_ != b.kind_ || a.field_ != b.field_) return false;
  switch (a.kind_) {
    case FieldAutomorphism::Kind::FrobeniusPower: return a.frobenius_power_ == b.frobenius_power_;
    case FieldAutomorphism::Kind::FunctionField:
      return *a.coefficient_ == *b.coefficient_ && *a.a_ == *b.a_ && *a.b_ == *b.b_;
    default: return true;
  }
}

FieldAutomorphism parse_field_automorphism(std::string_view text, const FieldDescriptor& field) {
  std::string_view s = trim(text);
  // Composition "f*g" at top level.
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == '*' && depth == 0)
      return parse_field_automorphism(s.substr(0, i), field).compose(parse_field_automorphism(s.substr(i + 1), field));
  }
  if (s == "id") return FieldAutomorphism::identity();
  if (s == "conj") return FieldAutomorphism::involution_of(field);
  if (s.size() > 4 && s.substr(0, 4) == "frob") {
    long r = parse_long(s.substr(4));
    if (r < 0) fail(ErrorCode::ParseError, "negative Frobenius power");
    return FieldAutomorphism::frobenius(field, static_cast<unsigned>(r));
  }
  if (s.size() > 6 && s.substr(0, 5) == "lift(" && s.back() == ')') {
    if (field.kind() != FieldKind::RationalFunctions) fail(ErrorCode::FieldMismatch, "lift(...) needs k(T)");
    return FieldAutomorphism::coefficient_lift(field, parse_field_automorphism(s.substr(5, s.size() - 6), *field.base()));
  }
  if (s.size() > 8 && s.substr(0, 7) == "affine(" && s.back() == ')') {
    if (field.kind() != FieldKind::RationalFunctions) fail(ErrorCode::FieldMismatch, "affine(...) needs k(T)");
    auto [a, b] = split_last_comma(s.substr(7, s.size() - 8));
    return FieldAutomorphism::affine_substitution(field, parse_scalar(a, *field.base()), parse_scalar(b, *field.base()));
  }
  fail(ErrorCode::ParseError, "unknown field automorphism '" + std::string(s) + "'");
}

}  // namespace chevtwist
