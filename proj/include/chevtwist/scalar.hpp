#pragma once

// Exact field arithmetic: rationals, quadratic extensions of Q, finite fields
// and rational function fields k(T), behind one runtime-tagged value type.

#include <cstdint>
#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chevtwist/error.hpp"

namespace chevtwist {

using Integer = mpz_class;
using Rational = mpq_class;

enum class FieldKind { Rationals, Quadratic, Finite, RationalFunctions };

class Scalar;
class Polynomial;
class FieldAutomorphism;
struct RationalFunctionValue;

// Interned field descriptor. Instances live for the whole process and are
// compared by address, so obtain them only through the factory functions below.
class FieldDescriptor {
 public:
  FieldDescriptor(const FieldDescriptor&) = delete;
  FieldDescriptor& operator=(const FieldDescriptor&) = delete;

  FieldKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  long quadratic_d() const noexcept { return d_; }

  unsigned prime() const noexcept { return p_; }
  unsigned degree() const noexcept { return e_; }
  std::uint32_t size() const noexcept { return q_; }

  const FieldDescriptor* base() const noexcept { return base_; }
  const std::string& variable() const noexcept { return variable_; }

  // 0 for characteristic zero.
  unsigned characteristic() const noexcept;
  bool is_finite() const noexcept { return kind_ == FieldKind::Finite; }

  // Finite-field kernel on element codes. A code is the base-p digit vector of
  // the element written as a polynomial in the primitive generator w.
  std::uint32_t ff_add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t ff_neg(std::uint32_t a) const;
  std::uint32_t ff_mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t ff_inv(std::uint32_t a) const;
  std::uint32_t ff_pow_p(std::uint32_t a, unsigned r) const;  // a^(p^r)
  std::uint32_t ff_from_integer(const Integer& n) const;
  std::uint32_t ff_generator() const;
  // Coefficients of the minimal polynomial of w over F_p, low degree first.
  const std::vector<unsigned>& ff_modulus() const noexcept { return modulus_; }

 private:
  FieldDescriptor() = default;
  friend struct FieldRegistry;

  FieldKind kind_ = FieldKind::Rationals;
  std::string name_;
  long d_ = 0;
  unsigned p_ = 0;
  unsigned e_ = 0;
  std::uint32_t q_ = 0;
  const FieldDescriptor* base_ = nullptr;
  std::string variable_;
  std::vector<unsigned> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> pow_p_;  // place values p^i
};

const FieldDescriptor& rationals();
// d must be squarefree, nonzero and different from 1.
const FieldDescriptor& quadratic_field(long d);
const FieldDescriptor& finite_field(unsigned p, unsigned e);
const FieldDescriptor& rational_functions(const FieldDescriptor& base,
                                          std::string_view variable = "T");

// Grammar: "Q", "Q(sqrt,d)", "F(p,e)", "RF(<base>,<var>)".
const FieldDescriptor& parse_field(std::string_view text);

struct QuadraticValue {
  Rational a;  // a + b*sqrt(d)
  Rational b;
};

// A field element. A default-constructed or integer-constructed Scalar is an
// untagged literal of the prime ring; it is promoted into the field of the
// other operand on mixed arithmetic. Tagged scalars of different fields never
// mix (FieldMismatch).
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(int v) : value_(Rational(v)) {}
  Scalar(long v) : value_(Rational(v)) {}
  explicit Scalar(const Rational& v) : value_(v) { value_canonicalize(); }

  static Scalar in(const FieldDescriptor& field, const Rational& value);
  static Scalar in(const FieldDescriptor& field, long value) {
    return in(field, Rational(value));
  }
  static Scalar quadratic(const FieldDescriptor& field, const Rational& a,
                          const Rational& b);
  static Scalar finite(const FieldDescriptor& field, std::uint32_t code);
  // sqrt(d), the primitive element w, or the variable T.
  static Scalar generator(const FieldDescriptor& field);
  static Scalar fraction(const FieldDescriptor& field, Polynomial num,
                         Polynomial den);

  // nullptr for untagged literals.
  const FieldDescriptor* field() const noexcept { return field_; }
  Scalar promoted(const FieldDescriptor& field) const;

  bool is_zero() const;
  bool is_one() const;

  Scalar inverse() const;
  Scalar pow(long k) const;
  // The order-2 automorphism: sqrt(d) -> -sqrt(d), or x -> x^(p^(e/2)) on F(p,e) with e even.
  Scalar involution() const;

  // Defined when the element lies in the prime field Q (characteristic zero only).
  std::optional<Rational> to_rational() const;
  const Rational& rational() const;            // Q or literal only
  const QuadraticValue& quadratic_value() const;
  std::uint32_t finite_code() const;
  const Polynomial& numerator() const;
  const Polynomial& denominator() const;

  std::string to_string() const;
  std::size_t hash() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Total order on the canonical representation of one field.
  friend int compare(const Scalar& a, const Scalar& b);

 private:
  using Value = std::variant<Rational, QuadraticValue, std::uint32_t,
                             std::shared_ptr<const RationalFunctionValue>>;
  Scalar(const FieldDescriptor* field, Value v)
      : field_(field), value_(std::move(v)) {}
  void value_canonicalize() { std::get<Rational>(value_).canonicalize(); }

  friend struct ScalarOps;

  const FieldDescriptor* field_ = nullptr;
  Value value_;
};

struct ScalarLess {
  bool operator()(const Scalar& a, const Scalar& b) const { return compare(a, b) < 0; }
};

struct ScalarHash {
  std::size_t operator()(const Scalar& s) const { return s.hash(); }
};

// Dense univariate polynomial with Scalar coefficients, lowest degree first and
// without trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs);
  static Polynomial constant(const Scalar& c);
  static Polynomial monomial(const Scalar& c, int degree);

  // -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }
  Scalar coeff(int i) const;
  const Scalar& leading() const;

  Scalar operator()(const Scalar& x) const;
  Polynomial monic() const;
  Polynomial map_coefficients(const FieldAutomorphism& f) const;
  // p(a*T + b)
  Polynomial substitute_affine(const Scalar& a, const Scalar& b) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Scalar& c, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  // Euclidean division over the coefficient field.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  // Monic gcd (zero if both are zero).
  friend Polynomial gcd(Polynomial a, Polynomial b);

  std::string to_string(std::string_view variable = "x") const;

 private:
  void trim();
  std::vector<Scalar> coeffs_;
};

struct RationalFunctionValue {
  Polynomial num;
  Polynomial den;  // monic, coprime to num
};

// Degree of a rational function: max(deg num, deg den) of the reduced fraction.
int rational_degree(const Scalar& f);

// Parse an arithmetic expression (+ - * / ^, parentheses, integers, and the
// symbols s = sqrt(d), w = primitive element, and the variable of k(T)) into
// an element of the given field.
Scalar parse_scalar(std::string_view text, const FieldDescriptor& field);

class FieldAutomorphism {
 public:
  enum class Kind { Identity, QuadraticConjugation, FrobeniusPower, FunctionField };

  FieldAutomorphism() = default;  // identity on every field

  static FieldAutomorphism identity() { return {}; }
  static FieldAutomorphism quadratic_conjugation(const FieldDescriptor& field);
  // x -> x^(p^r); the involution of F(p, 2m) is frobenius(field, m).
  static FieldAutomorphism frobenius(const FieldDescriptor& field, unsigned r);
  // Applies base_automorphism to the coefficients of elements of k(T).
  static FieldAutomorphism coefficient_lift(const FieldDescriptor& field,
                                            const FieldAutomorphism& base_automorphism);
  // T -> a*T + b over k(T); a must be nonzero.
  static FieldAutomorphism affine_substitution(const FieldDescriptor& field,
                                               const Scalar& a, const Scalar& b);
  // The order-2 automorphism used for twisting: conjugation on Q(sqrt d),
  // x -> x^(p^(e/2)) on F(p, e), coefficient conjugation on k(T) over Q(sqrt d).
  static FieldAutomorphism involution_of(const FieldDescriptor& field);

  Kind kind() const noexcept { return kind_; }
  // nullptr for the identity, which acts on every field.
  const FieldDescriptor* field() const noexcept { return field_; }
  bool is_identity() const noexcept { return kind_ == Kind::Identity; }

  Scalar operator()(const Scalar& s) const;

  // (*this) o other
  FieldAutomorphism compose(const FieldAutomorphism& other) const;
  FieldAutomorphism inverse() const;
  FieldAutomorphism pow(unsigned k) const;
  // nullopt means infinite order.
  std::optional<unsigned> order() const;

  std::string to_string() const;

  friend bool operator==(const FieldAutomorphism& a, const FieldAutomorphism& b);

 private:
  Kind kind_ = Kind::Identity;
  const FieldDescriptor* field_ = nullptr;
  unsigned frobenius_power_ = 0;
  std::shared_ptr<const FieldAutomorphism> coefficient_;  // FunctionField only
  std::optional<Scalar> a_, b_;                            // FunctionField only
};

// Grammar: "id", "conj", "frob<r>", "lift(<aut>)", "affine(<a>,<b>)".
FieldAutomorphism parse_field_automorphism(std::string_view text,
                                           const FieldDescriptor& field);

}  // namespace chevtwist

template <>
struct std::hash<chevtwist::Scalar> {
  std::size_t operator()(const chevtwist::Scalar& s) const { return s.hash(); }
};
