#include <doctest.h>

#include <random>

#include "chevtwist/matrix.hpp"
#include "chevtwist/nu.hpp"
#include "chevtwist/scalar.hpp"

using namespace chevtwist;

namespace {

Scalar random_element(const FieldDescriptor& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-7, 7), den(1, 5);
  auto q = [&] { return Rational(num(rng), den(rng)); };
  switch (f.kind()) {
    case FieldKind::Rationals: return Scalar::in(f, q());
    case FieldKind::Quadratic: return Scalar::quadratic(f, q(), q());
    case FieldKind::Finite: return Scalar::finite(f, std::uniform_int_distribution<std::uint32_t>(0, f.size() - 1)(rng));
    case FieldKind::RationalFunctions: {
      const FieldDescriptor& k = *f.base();
      Polynomial n({Scalar::in(k, q()), Scalar::in(k, q()), Scalar::in(k, q())});
      Polynomial d({Scalar::in(k, q()), Scalar::in(k, 1)});
      return Scalar::fraction(f, n, d);
    }
  }
  return Scalar(0);
}

Scalar random_nonzero(const FieldDescriptor& f, std::mt19937_64& rng) {
  for (;;) {
    Scalar s = random_element(f, rng);
    if (!s.is_zero()) return s;
  }
}

// Base-p digits of a finite-field code, lowest first.
std::vector<unsigned> digits(std::uint32_t code, unsigned p, unsigned e) {
  std::vector<unsigned> d(e);
  for (unsigned i = 0; i < e; ++i, code /= p) d[i] = code % p;
  return d;
}

std::uint32_t undigits(const std::vector<unsigned>& d, unsigned p) {
  std::uint32_t c = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) c = c * p + *it;
  return c;
}

// Schoolbook product in F_p[w] reduced by the monic modulus.
std::vector<unsigned> poly_mulmod(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                                  const std::vector<unsigned>& mod, unsigned p) {
  const std::size_t e = mod.size() - 1;
  std::vector<unsigned> prod(2 * e, 0);
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (std::size_t k = prod.size(); k-- > e;) {
    unsigned c = prod[k];
    if (!c) continue;
    for (std::size_t i = 0; i <= e; ++i) prod[k - e + i] = (prod[k - e + i] + p * p - c * mod[i]) % p;
  }
  prod.resize(e);
  return prod;
}

std::set<Integer> trial_division_primes(Integer n) {
  std::set<Integer> out;
  if (n < 0) n = -n;
  for (Integer d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      out.insert(d);
      n /= d;
    }
  if (n > 1) out.insert(n);
  return out;
}

Rational leibniz_det(const std::vector<std::vector<Rational>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Rational det = 0;
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Rational term = sign;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace

TEST_CASE("finite field multiplication matches polynomial arithmetic mod the modulus") {
  for (auto [p, e] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {5, 1}, {7, 1}, {2, 4}}) {
    const FieldDescriptor& f = finite_field(p, e);
    CHECK(f.size() == static_cast<std::uint32_t>(std::pow(p, e)));
    const auto& mod = f.ff_modulus();
    REQUIRE(mod.size() == e + 1);
    CHECK(mod.back() == 1);
    // w must have multiplicative order q - 1.
    std::vector<unsigned> w(e, 0), acc(e, 0);
    if (e > 1) w[1] = 1;
    else w[0] = f.ff_generator();
    acc[0] = 1;
    std::uint32_t order = 0;
    do {
      acc = poly_mulmod(acc, w, mod, p);
      ++order;
    } while (undigits(acc, p) != 1);
    CHECK(order == f.size() - 1);

    for (std::uint32_t a = 0; a < f.size(); ++a)
      for (std::uint32_t b = 0; b < f.size(); ++b) {
        auto da = digits(a, p, e), db = digits(b, p, e), sum = da;
        for (unsigned i = 0; i < e; ++i) sum[i] = (da[i] + db[i]) % p;
        REQUIRE(f.ff_add(a, b) == undigits(sum, p));
        REQUIRE(f.ff_mul(a, b) == undigits(poly_mulmod(da, db, mod, p), p));
      }
  }
}

TEST_CASE("quadratic multiplication follows (a + b s)(c + e s) = ac + d be + (ae + bc) s") {
  std::mt19937_64 rng(1);
  for (long d : {-1L, 2L, 5L, -3L}) {
    const FieldDescriptor& f = quadratic_field(d);
    for (int k = 0; k < 50; ++k) {
      Scalar x = random_element(f, rng), y = random_element(f, rng);
      const auto& u = x.quadratic_value();
      const auto& v = y.quadratic_value();
      Scalar expect = Scalar::quadratic(f, u.a * v.a + Rational(d) * u.b * v.b, u.a * v.b + u.b * v.a);
      CHECK(x * y == expect);
    }
  }
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(2);
  std::vector<const FieldDescriptor*> fields = {&rationals(), &quadratic_field(-1), &quadratic_field(5),
                                                &finite_field(2, 2), &finite_field(3, 1), &finite_field(3, 2),
                                                &rational_functions(rationals()),
                                                &rational_functions(quadratic_field(-1))};
  for (const FieldDescriptor* f : fields) {
    CAPTURE(f->name());
    Scalar zero = Scalar::in(*f, 0), one = Scalar::in(*f, 1);
    for (int k = 0; k < 30; ++k) {
      Scalar a = random_element(*f, rng), b = random_element(*f, rng), c = random_element(*f, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a + zero == a);
      CHECK(a * one == a);
      CHECK(a - a == zero);
      if (!a.is_zero()) CHECK(a * a.inverse() == one);
    }
    CHECK_THROWS_AS(zero.inverse(), Error);
  }
}

TEST_CASE("finite field characteristic and Frobenius") {
  const FieldDescriptor& f = finite_field(3, 2);
  Scalar one = Scalar::in(f, 1);
  CHECK(one + one + one == Scalar::in(f, 0));
  FieldAutomorphism frob = FieldAutomorphism::frobenius(f, 1);
  for (const Scalar& x : {Scalar::generator(f), Scalar::generator(f) + one})
    CHECK(frob(x) == x * x * x);
  CHECK(frob.order() == 2u);
  CHECK(FieldAutomorphism::frobenius(finite_field(2, 3), 1).order() == 3u);
}

TEST_CASE("rational functions evaluate homomorphically") {
  std::mt19937_64 rng(3);
  const FieldDescriptor& kt = rational_functions(rationals());
  auto eval = [](const Scalar& f, const Scalar& t) { return f.numerator()(t) / f.denominator()(t); };
  for (int k = 0; k < 30; ++k) {
    Scalar f = random_element(kt, rng), g = random_element(kt, rng);
    for (int t : {11, -13, 17}) {
      Scalar tt = Scalar::in(rationals(), t);
      if (g.denominator()(tt).is_zero() || f.denominator()(tt).is_zero()) continue;
      CHECK(eval(f * g, tt) == eval(f, tt) * eval(g, tt));
      CHECK(eval(f + g, tt) == eval(f, tt) + eval(g, tt));
    }
    CHECK(f.denominator().leading().is_one());
    CHECK(gcd(f.numerator(), f.denominator()).degree() <= 0);
  }
}

TEST_CASE("untagged literals promote, base elements promote into k(T)") {
  const FieldDescriptor& q5 = quadratic_field(5);
  Scalar s = Scalar::generator(q5);
  CHECK((s + 1).field() == &q5);
  CHECK(s * s == Scalar::in(q5, 5));
  const FieldDescriptor& kt = rational_functions(rationals());
  Scalar t = Scalar::generator(kt);
  Scalar sum = t + Scalar::in(rationals(), 2);
  CHECK(sum.field() == &kt);
  CHECK_THROWS_AS(s + Scalar::in(rationals(), 1) + Scalar::generator(finite_field(2, 2)), Error);
}

TEST_CASE("parsing and serialization") {
  const FieldDescriptor& qi = parse_field("Q(sqrt,-1)");
  CHECK(&qi == &quadratic_field(-1));
  CHECK(parse_scalar("(1+2*s)/(3-s)", qi) == Scalar::quadratic(qi, Rational(1, 10), Rational(7, 10)));
  const FieldDescriptor& f4 = parse_field("F(2,2)");
  CHECK(parse_scalar("w^2+1", f4) == Scalar::generator(f4));
  CHECK(&parse_field("RF(Q(sqrt,-1),T)") == &rational_functions(qi));
  CHECK_THROWS_AS(parse_field("F(4,1)"), Error);
  CHECK_THROWS_AS(parse_field("Q(sqrt,4)"), Error);
  CHECK_THROWS_AS(parse_scalar("1/0", rationals()), Error);
  CHECK_THROWS_AS(parse_scalar("2*(3", rationals()), Error);

  std::mt19937_64 rng(4);
  for (const FieldDescriptor* f : {&rationals(), &qi, &f4, &finite_field(5, 2), &rational_functions(rationals()),
                                   &rational_functions(qi)})
    for (int k = 0; k < 20; ++k) {
      Scalar x = random_element(*f, rng);
      CAPTURE(x.to_string());
      CHECK(parse_scalar(x.to_string(), *f) == x);
    }
}

TEST_CASE("field automorphisms are ring homomorphisms with the right order") {
  std::mt19937_64 rng(5);
  const FieldDescriptor& qi = quadratic_field(-1);
  const FieldDescriptor& kt = rational_functions(qi);
  std::vector<std::pair<const FieldDescriptor*, FieldAutomorphism>> cases = {
      {&qi, FieldAutomorphism::quadratic_conjugation(qi)},
      {&finite_field(2, 2), FieldAutomorphism::frobenius(finite_field(2, 2), 1)},
      {&kt, FieldAutomorphism::coefficient_lift(kt, FieldAutomorphism::quadratic_conjugation(qi))},
      {&kt, FieldAutomorphism::affine_substitution(kt, Scalar::in(qi, 2), Scalar::in(qi, 1))},
      {&kt, parse_field_automorphism("affine(-1,0)", kt)}};
  for (const auto& [f, phi] : cases) {
    CAPTURE(phi.to_string());
    for (int k = 0; k < 20; ++k) {
      Scalar a = random_element(*f, rng), b = random_element(*f, rng);
      CHECK(phi(a + b) == phi(a) + phi(b));
      CHECK(phi(a * b) == phi(a) * phi(b));
      CHECK(phi.inverse()(phi(a)) == a);
      CHECK(phi.compose(phi)(a) == phi(phi(a)));
    }
  }
  CHECK(cases[0].second.order() == 2u);
  CHECK(cases[1].second.order() == 2u);
  CHECK(cases[2].second.order() == 2u);
  CHECK_FALSE(cases[3].second.order().has_value());
  CHECK(cases[4].second.order() == 2u);
  CHECK(parse_field_automorphism("affine(1,0)", kt).order() == 1u);
}

TEST_CASE("nu matches trial division") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<long> d(-100000, 100000);
  CHECK(nu(Rational(1)).empty());
  CHECK(nu(Rational(-1)).empty());
  CHECK_THROWS_AS(nu(Rational(0)), Error);
  for (int k = 0; k < 300; ++k) {
    long a = d(rng), b = d(rng);
    if (!a || !b) continue;
    Rational q(a, b);
    q.canonicalize();
    std::set<Integer> expect = trial_division_primes(q.get_num());
    for (const auto& p : trial_division_primes(q.get_den())) expect.insert(p);
    CHECK(nu(q) == expect);
  }
}

TEST_CASE("rational function value profile respects the degree bound") {
  const FieldDescriptor& kt = rational_functions(rationals());
  Scalar t = Scalar::generator(kt);
  Scalar f = t * t;
  std::vector<Scalar> sample;
  for (int i = -5; i <= 5; ++i) sample.push_back(Scalar::in(rationals(), i));
  auto profile = rational_function_profile(f, sample);
  CHECK(profile.at(Scalar::in(rationals(), 4)) == 2);
  CHECK(profile.at(Scalar::in(rationals(), 0)) == 1);
  CHECK(fiber_bound(f) == 2);
  CHECK_THROWS_AS(rational_function_profile(Scalar::in(kt, 3), sample), Error);
  CHECK_THROWS_AS(rational_function_profile(t.inverse(), sample), Error);
}

TEST_CASE("exact inverse and characteristic polynomial") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-4, 4);
  const FieldDescriptor& q = rationals();
  for (int k = 0; k < 10; ++k) {
    Matrix m(4, 4), p(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        m(i, j) = Scalar::in(q, Rational(d(rng), 1 + std::abs(d(rng))));
        p(i, j) = Scalar::in(q, d(rng));
      }
    Polynomial cp = charpoly(m);
    REQUIRE(cp.degree() == 4);
    CHECK(cp.leading().is_one());
    for (int lambda : {-2, 0, 1, 3, 7}) {
      std::vector<std::vector<Rational>> a(4, std::vector<Rational>(4));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a[i][j] = (i == j ? Rational(lambda) : Rational(0)) - m(i, j).rational();
      CHECK(cp(Scalar::in(q, lambda)).rational() == leibniz_det(a));
    }
    if (determinant(p).is_zero()) continue;
    Matrix pi = inverse(p);
    CHECK(is_identity(mul(p, pi)));
    CHECK(charpoly(mul(mul(p, m), pi)) == cp);
  }
  Matrix singular = from_integers((Eigen::MatrixXi(2, 2) << 1, 2, 2, 4).finished(), q);
  CHECK_THROWS_AS(inverse(singular), Error);

  const FieldDescriptor& f9 = finite_field(3, 2);
  Matrix m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Scalar::finite(f9, static_cast<std::uint32_t>((i * 3 + j * 5 + 1) % 9));
  Matrix p = identity_matrix(3, f9);
  p(0, 2) = Scalar::generator(f9);
  p(1, 0) = Scalar::in(f9, 2);
  CHECK(charpoly(mul(mul(p, m), inverse(p))) == charpoly(m));
}
