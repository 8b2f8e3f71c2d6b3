#include "chevtwist/twconj.hpp"

#include <algorithm>

namespace chevtwist {

namespace {
std::size_t at(int i) { return static_cast<std::size_t>(i); }
}  // namespace

Permutation identity_permutation(const FiniteGroup& g) {
  Permutation p(at(g.order()));
  for (int i = 0; i < g.order(); ++i) p[at(i)] = i;
  return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a.at(at(b[i]));
  return out;
}

namespace {
void check_automorphism(const FiniteGroup& g, const Permutation& phi) {
  if (!g.is_automorphism(phi)) fail(ErrorCode::AutomorphismEscapesGroup, "permutation is not an automorphism");
}
}  // namespace

ReidemeisterReport reidemeister_classes(const FiniteGroup& g, const Permutation& phi) {
  check_automorphism(g, phi);
  ReidemeisterReport r;
  r.class_of.assign(at(g.order()), -1);
  for (int x = 0; x < g.order(); ++x) {
    if (r.class_of[at(x)] >= 0) continue;
    r.representatives.push_back(x);
    for (int z = 0; z < g.order(); ++z) {
      int y = g.mul(g.mul(z, x), g.inverse(phi[at(z)]));
      r.class_of[at(y)] = r.count;
    }
    ++r.count;
  }
  return r;
}

std::optional<int> twisted_conjugator(const FiniteGroup& g, const Permutation& phi, int x, int y) {
  check_automorphism(g, phi);
  for (int z = 0; z < g.order(); ++z)
    if (g.mul(g.mul(z, x), g.inverse(phi[at(z)])) == y) return z;
  return std::nullopt;
}

IsogredienceReport isogredience_classes(const FiniteGroup& g, const Permutation& gamma, const std::vector<int>& center) {
  check_automorphism(g, gamma);
  IsogredienceReport r;
  std::vector<bool> seen(at(g.order()), false);
  for (int a = 0; a < g.order(); ++a) {
    if (seen[at(a)]) continue;
    r.representatives.push_back(a);
    ++r.count;
    for (int h = 0; h < g.order(); ++h) {
      int b = g.mul(g.mul(h, a), g.inverse(gamma[at(h)]));
      for (int c : center) seen[at(g.mul(b, c))] = true;
    }
  }
  return r;
}

namespace {
bool closed_subgroup(const FiniteGroup& g, const std::vector<bool>& member) {
  for (int a = 0; a < g.order(); ++a) {
    if (!member[at(a)]) continue;
    for (int b = 0; b < g.order(); ++b)
      if (member[at(b)] && !member[at(g.mul(a, b))]) return false;
  }
  return member[at(g.identity())];
}
}  // namespace

IdentityClassReport identity_class_analysis(const FiniteGroup& g, const Permutation& phi) {
  check_automorphism(g, phi);
  IdentityClassReport r;
  std::vector<bool> member(at(g.order()), false);
  for (int x = 0; x < g.order(); ++x) member[at(g.mul(x, g.inverse(phi[at(x)])))] = true;
  for (int x = 0; x < g.order(); ++x)
    if (member[at(x)]) r.elements.push_back(x);
  r.is_subgroup = closed_subgroup(g, member);
  r.is_normal = r.is_subgroup;
  for (int x : r.elements) {
    if (!r.is_normal) break;
    for (int s : g.generators())
      if (!member[at(g.mul(g.mul(s, x), g.inverse(s)))]) {
        r.is_normal = false;
        break;
      }
  }
  r.is_central = true;
  for (int x = 0; x < g.order() && r.is_central; ++x)
    r.is_central = g.commutes_with_all(g.mul(g.inverse(x), phi[at(x)]));
  if (r.is_central && !r.is_subgroup) fail(ErrorCode::LemmaViolation, "central automorphism with [e] not a subgroup");
  if (r.is_subgroup && !r.is_normal) fail(ErrorCode::LemmaViolation, "[e] is a subgroup but not normal");
  return r;
}

QuotientReport quotient_pushforward(const FiniteGroup& g, const Permutation& phi, const std::vector<int>& subgroup) {
  check_automorphism(g, phi);
  std::vector<bool> member(at(g.order()), false);
  for (int z : subgroup) member[at(z)] = true;
  for (int z : subgroup) {
    if (!g.commutes_with_all(z)) fail(ErrorCode::NotCentral, "subgroup is not central");
    if (!member[at(phi[at(z)])]) fail(ErrorCode::NotStable, "subgroup is not phi-stable");
  }
  QuotientReport r;
  r.quotient = g.quotient(subgroup, r.projection);
  const FiniteGroup& q = r.quotient;
  r.induced.assign(at(q.order()), -1);
  for (int x = 0; x < g.order(); ++x) {
    int px = r.projection[at(x)], py = r.projection[at(phi[at(x)])];
    if (r.induced[at(px)] >= 0 && r.induced[at(px)] != py) fail(ErrorCode::NotStable, "induced map is not well defined");
    r.induced[at(px)] = py;
  }
  ReidemeisterReport up = reidemeister_classes(g, phi);
  ReidemeisterReport down = reidemeister_classes(q, r.induced);
  r.count = up.count;
  r.quotient_count = down.count;
  std::vector<int> image(at(up.count), -1);
  r.surjection_well_defined = true;
  for (int x = 0; x < g.order(); ++x) {
    int c = up.class_of[at(x)], d = down.class_of[at(r.projection[at(x)])];
    if (image[at(c)] >= 0 && image[at(c)] != d) r.surjection_well_defined = false;
    image[at(c)] = d;
  }
  std::vector<bool> hit(at(down.count), false);
  for (int d : image) hit[at(d)] = true;
  r.surjection_onto = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  if (!r.surjection_well_defined || !r.surjection_onto || r.count < r.quotient_count)
    fail(ErrorCode::LemmaViolation, "class map to the quotient is not a well-defined surjection");
  r.subgroup_upstairs = identity_class_analysis(g, phi).is_subgroup;
  r.subgroup_downstairs = identity_class_analysis(q, r.induced).is_subgroup;
  if (r.subgroup_upstairs && !r.subgroup_downstairs)
    fail(ErrorCode::LemmaViolation, "[e] is a subgroup upstairs but not in the quotient");
  return r;
}

Polynomial norm_invariant(const Matrix& x, const GroupAutomorphism& phi) {
  auto n = phi.field_part().order();
  if (!n) fail(ErrorCode::InfiniteOrderFieldPart, "norm invariant needs a field part of finite order");
  const FieldAutomorphism& f = phi.field_part();
  auto fmap = [&](const Matrix& m) {
    return f.is_identity() ? m : map_entries(m, [&](const Scalar& s) { return f(s); });
  };
  Matrix X = mul(x, fmap(mul(phi.diagonal_part(), phi.inner_part())));
  Matrix product = X, power = X;
  for (unsigned k = 1; k < *n; ++k) {
    power = fmap(power);
    product = mul(product, power);
  }
  return charpoly(product);
}

NuProfile nu_profile(const Matrix& g, int slots) {
  if (!is_diagonal(g)) fail(ErrorCode::NotDiagonal, "nu profile needs a diagonal matrix");
  if (slots < 0) slots = static_cast<int>(g.rows());
  NuProfile out;
  for (int i = 0; i < slots; ++i) {
    auto r = g(i, i).to_rational();
    if (!r || (g(i, i).field() && g(i, i).field()->kind() == FieldKind::Finite))
      fail(ErrorCode::NotRational, "diagonal entry " + g(i, i).to_string() + " is not rational");
    out.push_back(nu(*r));
  }
  return out;
}

bool profiles_disjoint(const NuProfile& a, const NuProfile& b) {
  std::set<Integer> ua, ub;
  for (const auto& s : a) ua.insert(s.begin(), s.end());
  for (const auto& s : b) ub.insert(s.begin(), s.end());
  for (const auto& p : ua)
    if (ub.contains(p)) return false;
  return true;
}

std::vector<long> first_primes(int count) {
  std::vector<long> out;
  for (long n = 2; static_cast<int>(out.size()) < count; ++n) {
    bool prime = true;
    for (long p : out) {
      if (p * p > n) break;
      if (n % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(n);
  }
  return out;
}

WitnessFamily witness_family(int count, const GroupAutomorphism& phi, const ChevalleyGroup& group) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "witness family needs count >= 1");
  if (group.field().characteristic() != 0)
    fail(ErrorCode::FiniteFieldRejected, "witness families need a field of characteristic zero");
  if (!phi.field_part().order())
    fail(ErrorCode::InfiniteOrderFieldPart, "witness families need a field part of finite order");
  if (phi.size() != group.dimension()) fail(ErrorCode::BasisMismatch, "automorphism does not match the group");

  // R(phi o i_g) = R(phi): drop the inner part.
  GroupAutomorphism psi = GroupAutomorphism::field_map(phi.field_part(), group.dimension(), group.field())
                              .compose(GroupAutomorphism::diagonal(phi.diagonal_part()));
  WitnessFamily w{{}, {}, {}, psi};
  w.inner_part_absorbed = !phi.has_trivial_inner_part();
  const int l = group.system().rank();
  std::vector<long> primes = first_primes(count * l);
  const int slots = group.system().size();
  std::vector<NuProfile> profiles;
  for (int i = 0; i < count; ++i) {
    GroupElement g = group.identity();
    std::vector<long> ps;
    for (int j = 0; j < l; ++j) {
      long p = primes[at(i * l + j)];
      ps.push_back(p);
      g = g * group.h(j, group.scalar(p));
    }
    if (!equal(psi.apply(g.matrix), g.matrix))
      fail(ErrorCode::CertificateFailure, "witness element " + std::to_string(i) + " is not fixed by phi");
    NuProfile prof = nu_profile(g.matrix, slots);
    for (const auto& other : profiles)
      if (!profiles_disjoint(prof, other)) fail(ErrorCode::CertificateFailure, "witness prime supports overlap");
    Polynomial inv = norm_invariant(g.matrix, psi);
    for (std::size_t k = 0; k < w.invariants.size(); ++k)
      if (w.invariants[k] == inv)
        fail(ErrorCode::CertificateFailure,
             "norm invariants of witnesses " + std::to_string(k) + " and " + std::to_string(i) + " coincide");
    profiles.push_back(std::move(prof));
    w.invariants.push_back(std::move(inv));
    w.primes.push_back(std::move(ps));
    w.elements.push_back(std::move(g));
  }
  return w;
}

Scalar trace_in_function_field(const RootSystem& system, int m, const std::vector<Scalar>& chi,
                               const FieldDescriptor& base) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "trace_in_function_field needs m >= 1");
  const FieldDescriptor& kt = rational_functions(base, "T");
  ChevalleyGroup group(make_basis(system), kt);
  Scalar t = Scalar::generator(kt);
  GroupElement g = group.identity();
  for (int i = 0; i < system.rank(); ++i) g = g * group.h(i, t);
  Matrix power = g.matrix;
  for (int k = 1; k < m; ++k) power = mul(power, g.matrix);
  std::vector<Scalar> chi_t;
  for (const Scalar& c : chi) chi_t.push_back(c.promoted(base).promoted(kt));
  Scalar tr = trace(mul(power, group.h_chi(chi_t).matrix));
  if (rational_degree(tr) < 1) fail(ErrorCode::ConstancyViolation, "trace " + tr.to_string() + " is constant");
  return tr;
}

}  // namespace chevtwist
