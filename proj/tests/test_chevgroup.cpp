#include <doctest.h>

#include <random>
#include <set>

#include "chevtwist/chevgroup.hpp"

using namespace chevtwist;

namespace {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

// Adjoint action on sl2 with basis E12, E21, diag(1,-1), computed directly:
// M = [[a, b], [c, -a]] has coordinates (b, c, a).
RationalMatrix adjoint_oracle(const RationalMatrix& g) {
  RationalMatrix gi(2, 2);
  Rational det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  gi << g(1, 1) / det, -g(0, 1) / det, -g(1, 0) / det, g(0, 0) / det;
  std::vector<RationalMatrix> basis(3, RationalMatrix::Zero(2, 2));
  basis[0](0, 1) = 1;
  basis[1](1, 0) = 1;
  basis[2](0, 0) = 1;
  basis[2](1, 1) = -1;
  RationalMatrix out(3, 3);
  for (int j = 0; j < 3; ++j) {
    RationalMatrix m = g * basis[j] * gi;
    out(0, j) = m(0, 1);
    out(1, j) = m(1, 0);
    out(2, j) = m(0, 0);
  }
  return out;
}

RationalMatrix to_rational(const Matrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = *m(i, j).to_rational();
  return out;
}

RationalMatrix two(Rational a, Rational b, Rational c, Rational d) {
  RationalMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// sum_k t^k ad^k / k!
RationalMatrix exp_oracle(const Eigen::MatrixXi& ad, const Rational& t) {
  const Eigen::Index n = ad.rows();
  RationalMatrix a = ad.cast<Rational>();
  RationalMatrix term = RationalMatrix::Identity(n, n), sum = term;
  for (int k = 1; k <= n; ++k) {
    term = (term * a) * (t / k);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("A1 adjoint matrices agree with conjugation on sl2") {
  ChevalleyGroup g(make_basis(RootSystem::parse("A1")), rationals());
  for (Rational t : {Rational(1), Rational(2), Rational(-3), Rational(1, 2)}) {
    CHECK(to_rational(g.x(0, Scalar(t)).matrix) == adjoint_oracle(two(1, t, 0, 1)));
    CHECK(to_rational(g.x(1, Scalar(t)).matrix) == adjoint_oracle(two(1, 0, t, 1)));
    CHECK(to_rational(g.n(0, Scalar(t)).matrix) == adjoint_oracle(two(0, t, -1 / t, 0)));
    CHECK(to_rational(g.h(0, Scalar(t)).matrix) == adjoint_oracle(two(t, 0, 0, 1 / t)));
    CHECK(to_rational(sl2_adjoint(sl2_n(Scalar(t)))) == adjoint_oracle(two(0, t, -1 / t, 0)));
  }
  Matrix x3 = g.x(0, Scalar(3)).matrix;
  CHECK(to_string(x3) == "[[1, -9, -6], [0, 1, 0], [0, 3, 1]]");
  CHECK(to_string(g.h(0, Scalar(2)).matrix) == "[[4, 0, 0], [0, 1/4, 0], [0, 0, 1]]");
}

TEST_CASE("x_alpha(t) is the truncated exponential of t ad e_alpha") {
  for (const char* name : {"A2", "D4"}) {
    ChevalleyGroup g(make_basis(RootSystem::parse(name)), rationals());
    for (int a = 0; a < g.system().size(); a += 3)
      for (Rational t : {Rational(5, 3), Rational(-2)})
        CHECK(to_rational(g.x(a, Scalar(t)).matrix) == exp_oracle(g.basis().ad_matrix(a), t));
  }
}

TEST_CASE("one-parameter subgroups, tori and Weyl elements") {
  ChevalleyGroup g(make_basis(RootSystem::parse("A3")), rationals());
  const RootSystem& rs = g.system();
  std::mt19937_64 rng(11);
  for (int a = 0; a < rs.size(); ++a) {
    Scalar t = random_scalar(rationals(), rng), u = random_scalar(rationals(), rng);
    CHECK(g.x(a, t) * g.x(a, u) == g.x(a, t + u));
    CHECK(is_identity(g.x(a, Scalar(0)).matrix));
    CHECK(g.inverse(g.x(a, t)) == g.x(a, -t));
    CHECK(is_identity(mul(g.x(a, t).matrix, g.inverse(g.x(a, t)).matrix)));
    CHECK(determinant(g.x(a, t).matrix).is_one());

    Matrix h = g.h(a, t).matrix;
    REQUIRE(is_diagonal(h));
    for (int b = 0; b < rs.size(); ++b) CHECK(h(b, b) == t.pow(rs.pairing(rs.root(b), rs.root(a))));
    for (int k = 0; k < rs.rank(); ++k) CHECK(h(rs.size() + k, rs.size() + k).is_one());
    CHECK(g.h(a, t) * g.h(a, u) == g.h(a, t * u));

    // n_alpha(t) permutes root slots along the reflection s_alpha.
    Matrix n = g.n(a, t).matrix;
    for (int b = 0; b < rs.size(); ++b) {
      int image = rs.reflect(a, b);
      for (int r = 0; r < rs.size(); ++r) CHECK(n(r, b).is_zero() == (r != image));
    }
    for (int b = 0; b < rs.rank(); ++b) CHECK(g.weyl_conjugation_check(a, b, t));
  }
  CHECK_THROWS_AS(g.n(0, Scalar(0)), Error);
  CHECK_THROWS_AS(g.h(0, Scalar(0)), Error);
}

TEST_CASE("h_chi is the diagonal character action") {
  ChevalleyGroup g(make_basis(RootSystem::parse("D4")), rationals());
  std::vector<Scalar> chi = {Scalar(2), Scalar(3), Scalar(Rational(1, 5)), Scalar(-1)};
  Matrix h = g.h_chi(chi).matrix;
  for (int b = 0; b < g.system().size(); ++b) {
    Scalar v(1);
    for (int k = 0; k < 4; ++k) v *= chi[k].pow(g.system().root(b)(k));
    CHECK(h(b, b) == v);
    CHECK(g.character_value(chi, b) == v);
  }
  // h_alpha(t) is the character beta -> t^<beta, alpha>.
  auto rc = g.root_character(0, Scalar(7));
  CHECK(g.h_chi(rc) == g.h(0, Scalar(7)));
  CHECK(g.preserves_bracket(h));
  CHECK_THROWS_AS(g.h_chi({Scalar(1), Scalar(0), Scalar(1), Scalar(1)}), Error);
}

TEST_CASE("words") {
  ChevalleyGroup g(make_basis(RootSystem::parse("A2")), rationals());
  GroupElement w = g.evaluate_word("x a1 2; n -a2 1/3; h a1+a2 5; d 2,3");
  GroupElement expect = g.x(0, Scalar(2)) * g.n(g.system().parse_root("-a2"), Scalar(Rational(1, 3))) *
                        g.h(2, Scalar(5)) * g.h_chi({Scalar(2), Scalar(3)});
  CHECK(w == expect);
  CHECK(g.preserves_bracket(w.matrix));
  CHECK_THROWS_AS(g.evaluate_word("y a1 2"), Error);
  CHECK_THROWS_AS(g.evaluate_word("x a3 2"), Error);
  CHECK_THROWS_AS(g.evaluate_word("x a1"), Error);

  Matrix bad = identity_matrix(g.dimension(), rationals());
  bad(0, 0) = Scalar::in(rationals(), 2);
  CHECK_FALSE(g.preserves_bracket(bad));
}

TEST_CASE("subgroup generators") {
  ChevalleyGroup g(make_basis(RootSystem::parse("A2")), rationals());
  std::vector<Scalar> params = {Scalar(1), Scalar(2)};
  CHECK(g.subgroup_generators('U', params).size() == 6);
  CHECK(g.subgroup_generators('V', params).size() == 6);
  for (const auto& u : g.subgroup_generators('U', params)) {
    // Upper unitriangular in the slot order: positive roots raise height.
    Matrix d = u.matrix;
    for (int i = 0; i < g.dimension(); ++i) CHECK(d(i, i).is_one());
  }
  for (char label : {'H', 'N'})
    for (const auto& e : g.subgroup_generators(label, params)) CHECK(g.preserves_bracket(e.matrix));
}

TEST_CASE("commutator constants are structure constants up to one global sign") {
  for (const char* name : {"A2", "A3", "D4"}) {
    ChevalleyGroup g(make_basis(RootSystem::parse(name)), rationals());
    const RootSystem& rs = g.system();
    RelationReport r = check_steinberg_relations(g, 10, 3);
    int pairs = 0;
    for (int a = 0; a < rs.size(); ++a)
      for (int b = 0; b < rs.size(); ++b)
        if (rs.find(rs.root(a) + rs.root(b))) ++pairs;
    CHECK(static_cast<int>(r.constants.size()) == pairs);
    std::set<long> ratio;
    for (const auto& c : r.constants) {
      CHECK(std::abs(c.c) == 1);
      CHECK(rs.root(c.gamma) == rs.root(c.alpha) + rs.root(c.beta));
      ratio.insert(c.c * g.basis().structure_constant(c.alpha, c.beta));
    }
    CHECK(ratio.size() == 1);
    CHECK(r.trials == 10);
  }
}

TEST_CASE("relations over a finite field") {
  ChevalleyGroup g(make_basis(RootSystem::parse("A2")), finite_field(3, 2));
  RelationReport r = check_steinberg_relations(g, 10, 5);
  CHECK(r.constants.size() == 12);
}
