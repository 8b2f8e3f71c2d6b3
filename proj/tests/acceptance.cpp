// Acceptance run: one PASS/FAIL line per criterion with wall time against its limit.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "chevtwist/nu.hpp"
#include "chevtwist/twconj.hpp"
#include "chevtwist/twist.hpp"

using namespace chevtwist;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures without stopping at the first one.
struct Checker {
  Outcome out;
  int checks = 0;
  void require(bool ok, const std::string& what) {
    ++checks;
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = "first failure: " + what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const Error& e) {
    r = {false, std::string("error ") + std::string(to_string(e.code())) + ": " + e.what()};
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.pass && secs > limit_seconds) r = {false, "exceeded time limit; " + r.detail};
  if (!r.pass) ++failures;
  std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << id << "  " << title << "  "
            << std::fixed << std::setprecision(3) << secs << " s (limit " << std::setprecision(0) << limit_seconds
            << " s)  " << r.detail << std::endl;
}

Matrix two(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// Ad(g) on sl2 with basis E12, E21, diag(1,-1), by direct conjugation.
Matrix adjoint_by_conjugation(const Matrix& g) {
  Matrix gi = inverse(g);
  Scalar z(0), o(1);
  std::vector<Matrix> basis = {two(z, o, z, z), two(z, z, o, z), two(o, z, z, -o)};
  Matrix out(3, 3);
  for (int j = 0; j < 3; ++j) {
    Matrix m = mul(mul(g, basis[j]), gi);
    out(0, j) = m(0, 1);
    out(1, j) = m(1, 0);
    out(2, j) = m(0, 0);
  }
  return out;
}

ChevalleyGroup group_of(const char* name, const FieldDescriptor& f) {
  return ChevalleyGroup(make_basis(RootSystem::parse(name)), f);
}

// A finite instance with the automorphisms exercised on it.
struct Instance {
  std::string name;
  FiniteGroup group;
  std::vector<std::string> labels;
  std::vector<GroupAutomorphism> automorphisms;
  std::vector<Permutation> permutations;
  bool has_field_automorphism = false;
};

void add(Instance& inst, const std::string& label, const GroupAutomorphism& phi) {
  inst.labels.push_back(label);
  inst.automorphisms.push_back(phi);
  inst.permutations.push_back(inst.group.permutation_of([&phi](const Matrix& x) { return phi(x); }));
  if (!phi.field_part().is_identity()) inst.has_field_automorphism = true;
}

std::vector<Instance>& instances() {
  static std::vector<Instance> all = [] {
    std::vector<Instance> out;
    {
      ChevalleyGroup g = group_of("A1", finite_field(5, 1));
      Instance inst{"adjoint A1/F5", enumerate_adjoint(g), {}, {}, {}};
      for (const char* d : {"id", "diag:2", "inner:[n a1 1]*diag:3"}) add(inst, d, parse_automorphism(d, g));
      out.push_back(std::move(inst));
    }
    {
      ChevalleyGroup g = group_of("A1", finite_field(2, 2));
      Instance inst{"adjoint A1/F4", enumerate_adjoint(g), {}, {}, {}};
      for (const char* d : {"id", "diag:w", "field:frob1"}) add(inst, d, parse_automorphism(d, g));
      out.push_back(std::move(inst));
    }
    {
      const FieldDescriptor& f4 = finite_field(2, 2);
      ChevalleyGroup g = group_of("A2", f4);
      Twist tw(g, standard_symmetry(g.system()), FieldAutomorphism::involution_of(f4));
      Instance inst{"twisted 2A2/F4", enumerate_twisted(tw), {}, {}, {}};
      for (const char* d : {"id", "diag:w,w^2", "field:frob1"}) add(inst, d, parse_automorphism(d, g));
      out.push_back(std::move(inst));
    }
    {
      const FieldDescriptor& f5 = finite_field(5, 1);
      Instance inst{"SL2(F5)", enumerate_sl2(f5), {}, {}, {}};
      add(inst, "id", GroupAutomorphism(2, f5));
      Matrix d = identity_matrix(2, f5);
      d(0, 0) = Scalar::in(f5, 2);
      add(inst, "diag(2,1)", GroupAutomorphism::diagonal(d));
      add(inst, "inner x(1)", GroupAutomorphism::inner(normalized(sl2_x(Scalar::in(f5, 1)), f5)));
      out.push_back(std::move(inst));
    }
    return out;
  }();
  return all;
}

Outcome sl2_picture() {
  Checker c;
  ChevalleyGroup g = group_of("A1", rationals());
  for (Rational q : {Rational(1), Rational(2), Rational(-3), Rational(1, 2)}) {
    Scalar t(q), z(0), o(1);
    c.require(equal(sl2_x(t), two(o, t, z, o)), "x(t)");
    c.require(equal(sl2_n(t), two(z, t, -t.inverse(), z)), "n(t)");
    c.require(equal(sl2_h(t), two(t, z, z, t.inverse())), "h(t)");
    c.require(equal(g.x(0, t).matrix, adjoint_by_conjugation(sl2_x(t))), "adjoint x");
    c.require(equal(g.x(1, t).matrix, adjoint_by_conjugation(sl2_x_lower(t))), "adjoint x(-a)");
    c.require(equal(g.n(0, t).matrix, adjoint_by_conjugation(sl2_n(t))), "adjoint n");
    c.require(equal(g.h(0, t).matrix, adjoint_by_conjugation(sl2_h(t))), "adjoint h");
    c.require(equal(sl2_adjoint(sl2_h(t)), g.h(0, t).matrix), "sl2_adjoint h");
  }
  c.out.detail = std::to_string(c.checks) + " exact matrix equalities" + (c.out.pass ? "" : "; " + c.out.detail);
  return c.out;
}

Outcome steinberg() {
  Checker c;
  std::ostringstream d;
  for (auto [name, trials] : std::vector<std::pair<const char*, int>>{{"A2", 200}, {"A3", 200}, {"D4", 200},
                                                                       {"E6", 50}}) {
    ChevalleyGroup g = group_of(name, rationals());
    RelationReport r = check_steinberg_relations(g, trials, 0);
    for (const auto& k : r.constants) c.require(k.c == -1 || k.c == 0 || k.c == 1, "C out of range");
    c.require(r.trials == trials, "trial count");
    d << name << ": " << r.constants.size() << " constants, " << r.checks << " checks; ";
  }
  c.out.detail = d.str() + c.out.detail;
  return c.out;
}

Outcome bracket_preservation() {
  Checker c;
  std::mt19937_64 rng(1);
  std::ostringstream d;
  for (const char* name : {"A2", "A3", "D4", "E6"}) {
    ChevalleyGroup g = group_of(name, rationals());
    const RootSystem& rs = g.system();
    std::vector<GroupElement> elems;
    for (int a = 0; a < rs.size(); ++a) {
      elems.push_back(g.x(a, random_scalar(rationals(), rng)));
      elems.push_back(g.n(a, random_scalar(rationals(), rng)));
    }
    for (int i = 0; i < rs.rank(); ++i) elems.push_back(g.h(i, random_scalar(rationals(), rng)));
    bool exhaustive = std::string(name) != "E6";
    std::vector<std::pair<int, int>> pairs;
    std::uniform_int_distribution<int> pick(0, g.dimension() - 1);
    for (int k = 0; k < 500; ++k) pairs.emplace_back(pick(rng), pick(rng));
    for (const auto& e : elems)
      c.require(exhaustive ? g.preserves_bracket(e.matrix) : g.preserves_bracket(e.matrix, pairs),
                std::string(name) + " " + e.word);
    d << name << ": " << elems.size() << (exhaustive ? " elements, all pairs; " : " elements, 500 pairs; ");
  }
  c.out.detail = d.str() + c.out.detail;
  return c.out;
}

Outcome twist_wellformed() {
  Checker c;
  std::mt19937_64 rng(2);
  const FieldDescriptor& qi = quadratic_field(-1);
  int fixed_checked = 0;
  for (const char* name : {"A2", "A3", "D4", "E6"}) {
    ChevalleyGroup g = group_of(name, qi);
    const RootSystem& rs = g.system();
    Twist tw(g, standard_symmetry(rs), FieldAutomorphism::quadratic_conjugation(qi));
    const int n = g.dimension();
    c.require(tw.graph().matrix * tw.graph().matrix == Eigen::MatrixXi::Identity(n, n), "rho^2");
    c.require(g.preserves_bracket(from_integers(tw.graph().matrix, qi)), "rho bracket");
    for (int i = 0; i < rs.rank(); ++i)
      for (int k = 0; k < 20; ++k) {
        Scalar t = random_scalar(qi, rng);
        c.require(equal(tw.sigma(g.x(i, t).matrix), g.x(tw.rho(i), tw.field_automorphism()(t)).matrix),
                  std::string(name) + " sigma on simple root");
      }
    std::vector<Scalar> seeds = {random_scalar(qi, rng), random_scalar(qi, rng), Scalar::generator(qi)};
    for (bool positive : {true, false})
      for (const auto& orbit : tw.orbits(positive))
        for (const Scalar& s : seeds) {
          GroupElement u = tw.fixed_unipotent(orbit, s);
          c.require(tw.is_fixed(u.matrix), std::string(name) + " fixed " + u.word);
          ++fixed_checked;
        }
  }
  // The corrected case: alpha + rho(alpha) is a root.
  ChevalleyGroup a2 = group_of("A2", qi);
  Twist tw(a2, standard_symmetry(a2.system()), FieldAutomorphism::quadratic_conjugation(qi));
  int corrected = 0;
  for (const auto& orbit : tw.orbits(true))
    if (orbit.size() == 2 && a2.system().sum(orbit[0], orbit[1])) {
      GroupElement u = tw.fixed_unipotent(orbit, Scalar::generator(qi) + 2);
      c.require(tw.is_fixed(u.matrix), "A2 corrected unipotent");
      c.require(u.word.find("a1+a2") != std::string::npos, "A2 correction term present");
      ++corrected;
    }
  c.require(corrected == 1, "A2 has one corrected positive orbit");
  c.out.detail = std::to_string(fixed_checked) + " fixed unipotents; " + c.out.detail;
  return c.out;
}

Outcome reidemeister_inner_invariance() {
  Checker c;
  std::ostringstream d;
  bool field_aut = false;
  for (auto& inst : instances()) {
    if (inst.name == "SL2(F5)") continue;
    c.require(inst.group.order() >= 60 && inst.group.order() <= 10000, inst.name + " order range");
    d << inst.name << " |G|=" << inst.group.order() << " R=";
    for (std::size_t k = 0; k < inst.permutations.size(); ++k) {
      const Permutation& phi = inst.permutations[k];
      int r = reidemeister_classes(inst.group, phi).count;
      for (int g = 0; g < inst.group.order(); ++g)
        c.require(reidemeister_classes(inst.group, compose(phi, inst.group.inner(g))).count == r,
                  inst.name + " " + inst.labels[k] + " g=" + std::to_string(g));
      d << (k ? "," : "") << r;
    }
    field_aut = field_aut || inst.has_field_automorphism;
    d << "; ";
  }
  c.require(field_aut, "a field automorphism was exercised");
  c.out.detail = d.str() + c.out.detail;
  return c.out;
}

Outcome norm_invariant_constancy() {
  Checker c;
  std::mt19937_64 rng(3);
  int pairs = 0;
  for (auto& inst : instances()) {
    std::uniform_int_distribution<int> pick(0, inst.group.order() - 1);
    for (std::size_t k = 0; k < inst.automorphisms.size(); ++k) {
      const GroupAutomorphism& phi = inst.automorphisms[k];
      for (int trial = 0; trial < 500; ++trial) {
        Matrix x = inst.group.matrix(pick(rng)), z = inst.group.matrix(pick(rng));
        Matrix y = mul(mul(z, x), inverse(phi(z)));
        c.require(norm_invariant(y, phi) == norm_invariant(x, phi), inst.name + " " + inst.labels[k]);
        ++pairs;
      }
    }
  }
  c.out.detail = std::to_string(pairs) + " random (x, z) pairs; " + c.out.detail;
  return c.out;
}

Outcome witnesses() {
  Checker c;
  std::ostringstream d;
  const FieldDescriptor& qi = quadratic_field(-1);
  struct Case {
    const char* system;
    const FieldDescriptor* field;
    std::string aut;
  };
  std::vector<Case> cases = {{"A2", &rationals(), "id"},
                             {"A2", &rationals(), "diag:2,3"},
                             {"A2", &qi, "field:conj*diag:2,3"},
                             {"A3", &rationals(), "id"},
                             {"A3", &rationals(), "diag:2,3,5"},
                             {"A3", &qi, "field:conj*diag:2,3,5"}};
  for (const auto& k : cases) {
    auto start = std::chrono::steady_clock::now();
    ChevalleyGroup g = group_of(k.system, *k.field);
    GroupAutomorphism phi = parse_automorphism(k.aut, g);
    WitnessFamily w = witness_family(20, phi, g);
    std::string tag = std::string(k.system) + "/" + k.field->name() + " " + k.aut;
    c.require(w.elements.size() == 20, tag + " size");
    std::set<std::string> distinct;
    for (std::size_t i = 0; i < w.elements.size(); ++i) {
      distinct.insert(w.invariants[i].to_string());
      c.require(norm_invariant(w.elements[i].matrix, w.automorphism) == w.invariants[i], tag + " recomputed");
    }
    c.require(distinct.size() == 20, tag + " distinct invariants");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(secs < 120, tag + " per-family time");
    d << tag << " " << std::setprecision(2) << std::fixed << secs << " s; ";
  }
  c.out.detail = d.str() + c.out.detail;
  return c.out;
}

Outcome trace_lemma() {
  Checker c;
  std::mt19937_64 rng(4);
  int min_degree = 1 << 30;
  for (const char* name : {"A1", "A2", "D4"}) {
    RootSystem rs = RootSystem::parse(name);
    for (int sample = 0; sample < 3; ++sample) {
      std::vector<Scalar> chi;
      for (int i = 0; i < rs.rank(); ++i) chi.push_back(random_scalar(rationals(), rng));
      for (int m : {1, 2, 3}) {
        Scalar tr = trace_in_function_field(rs, m, chi, rationals());
        int deg = rational_degree(tr);
        c.require(deg >= 1, std::string(name) + " constant trace");
        min_degree = std::min(min_degree, deg);
      }
    }
  }
  c.out.detail = "27 traces, minimum degree " + std::to_string(min_degree) + "; " + c.out.detail;
  return c.out;
}

Outcome multiplicity_bound() {
  Checker c;
  std::mt19937_64 rng(5);
  const FieldDescriptor& q = rationals();
  const FieldDescriptor& kt = rational_functions(q, "T");
  std::uniform_int_distribution<int> coeff(-5, 5), degree(0, 6);
  int worst = 0;
  for (int made = 0; made < 20;) {
    auto poly = [&] {
      std::vector<Scalar> cs;
      int d = degree(rng);
      for (int i = 0; i <= d; ++i) cs.push_back(Scalar::in(q, coeff(rng)));
      return Polynomial(cs);
    };
    Polynomial g = poly(), h = poly();
    if (g.is_zero() || h.is_zero()) continue;
    Scalar f = Scalar::fraction(kt, g, h);
    if (rational_degree(f) < 1) continue;
    ++made;
    std::vector<Scalar> sample;
    for (int k = -500; sample.size() < 1000; ++k) {
      Scalar t = Scalar::in(q, Rational(k, 1 + (k & 1)));
      if (!f.denominator()(t).is_zero()) sample.push_back(t);
    }
    auto profile = rational_function_profile(f, sample);
    int bound = std::max(g.degree(), h.degree());
    for (const auto& [value, mult] : profile) {
      c.require(mult <= bound, "multiplicity above max(deg g, deg h)");
      c.require(mult <= fiber_bound(f), "multiplicity above reduced degree");
      worst = std::max(worst, mult);
    }
  }
  c.out.detail = "20 functions x 1000 points, largest fiber " + std::to_string(worst) + "; " + c.out.detail;
  return c.out;
}

Outcome nu_algebra() {
  Checker c;
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<long> d(-999999, 999999);
  auto random_rational = [&] {
    long n = 0, m = 0;
    while (!n) n = d(rng);
    while (!m) m = d(rng);
    Rational r(n, m);
    r.canonicalize();
    return r;
  };
  c.require(nu(Rational(1)).empty() && nu(Rational(-1)).empty(), "nu(+-1)");
  for (int k = 0; k < 1000; ++k) {
    Rational a = random_rational(), b = random_rational();
    auto na = nu(a), nb = nu(b), nab = nu(Rational(a * b));
    std::set<Integer> uni = na;
    uni.insert(nb.begin(), nb.end());
    c.require(std::includes(uni.begin(), uni.end(), nab.begin(), nab.end()), "nu(ab) in nu(a) u nu(b)");
    c.require(nu(Rational(a * a)) == na, "nu(a^2)");
    c.require(nu(Rational(a * a * a)) == na, "nu(a^3)");
    c.require(nu(Rational(1 / a)) == na, "nu(a^-1)");
  }
  c.out.detail = std::to_string(c.checks) + " set comparisons; " + c.out.detail;
  return c.out;
}

Outcome isogredience() {
  Checker c;
  std::ostringstream d;
  int centerless = 0;
  for (auto& inst : instances()) {
    std::vector<int> center = inst.group.center();
    if (center.size() != 1) continue;
    ++centerless;
    d << inst.name << " S=";
    for (std::size_t k = 0; k < inst.permutations.size(); ++k) {
      int s = isogredience_classes(inst.group, inst.permutations[k], center).count;
      int r = reidemeister_classes(inst.group, inst.permutations[k]).count;
      c.require(s == r, inst.name + " S != R for " + inst.labels[k]);
      d << (k ? "," : "") << s;
    }
    int classes = static_cast<int>(inst.group.conjugacy_classes().size());
    c.require(isogredience_classes(inst.group, identity_permutation(inst.group), center).count == classes,
              inst.name + " S(Id) != class count");
    d << " classes=" << classes << "; ";
  }
  c.require(centerless >= 1, "no centerless instance");
  c.out.detail = d.str() + c.out.detail;
  return c.out;
}

Outcome identity_class() {
  Checker c;
  std::ostringstream d;
  int analysed = 0;
  for (auto& inst : instances())
    for (std::size_t k = 0; k < inst.permutations.size(); ++k) {
      IdentityClassReport r = identity_class_analysis(inst.group, inst.permutations[k]);
      c.require(!r.is_central || r.is_subgroup, inst.name + " central but not subgroup");
      c.require(!r.is_subgroup || r.is_normal, inst.name + " subgroup but not normal");
      ++analysed;
    }
  Instance& sl = instances().back();
  for (std::size_t k = 0; k < sl.permutations.size(); ++k) {
    QuotientReport q = quotient_pushforward(sl.group, sl.permutations[k], sl.group.center());
    c.require(q.count >= q.quotient_count, "R(phi) < R(phi bar)");
    c.require(q.surjection_well_defined && q.surjection_onto, "class surjection");
    c.require(!q.subgroup_upstairs || q.subgroup_downstairs, "subgroup inheritance");
    d << "SL2(F5) " << sl.labels[k] << ": R=" << q.count << " >= " << q.quotient_count << "; ";
  }
  c.out.detail = std::to_string(analysed) + " (instance, phi) pairs; " + d.str() + c.out.detail;
  return c.out;
}

}  // namespace

int main() {
  criterion(1, "SL2 fundamental picture", 1, sl2_picture);
  criterion(2, "Steinberg relations A2 A3 D4 E6", 120, steinberg);
  criterion(3, "bracket preservation of generated elements", 120, bracket_preservation);
  criterion(4, "twist well-formedness", 600, twist_wellformed);
  criterion(5, "R(phi o i_g) = R(phi) on finite instances", 300, reidemeister_inner_invariance);
  criterion(6, "norm invariant constancy", 600, norm_invariant_constancy);
  criterion(7, "witness families N = 20", 720, witnesses);
  criterion(8, "trace over k(T) is nonconstant", 60, trace_lemma);
  criterion(9, "rational function multiplicity bound", 30, multiplicity_bound);
  criterion(10, "nu-map algebra", 600, nu_algebra);
  criterion(11, "isogredience on centerless instances", 600, isogredience);
  criterion(12, "identity class lemmas and push forward", 600, identity_class);
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << 12 - failures << "/12" << std::endl;
  return failures ? 1 : 0;
}
