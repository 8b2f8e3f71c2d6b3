#pragma once

// Twisted conjugacy: x ~_phi y iff y = z x phi(z)^-1.

#include <optional>
#include <set>
#include <vector>

#include "chevtwist/finite_group.hpp"
#include "chevtwist/grpauto.hpp"
#include "chevtwist/nu.hpp"

namespace chevtwist {

// Automorphisms of an enumerated group are permutations of element indices.
using Permutation = std::vector<int>;

Permutation identity_permutation(const FiniteGroup& g);
// (a o b)(x) = a(b(x))
Permutation compose(const Permutation& a, const Permutation& b);

struct ReidemeisterReport {
  int count = 0;
  std::vector<int> representatives;  // minimal index of each class, ascending
  std::vector<int> class_of;         // element -> class number
};

ReidemeisterReport reidemeister_classes(const FiniteGroup& g, const Permutation& phi);
// z with y = z x phi(z)^-1 (verified), or nullopt.
std::optional<int> twisted_conjugator(const FiniteGroup& g, const Permutation& phi, int x, int y);

// Classes of Inn(G).gamma: i_a gamma ~ i_b gamma iff b = h a gamma(h)^-1 c, c central.
struct IsogredienceReport {
  int count = 0;
  std::vector<int> representatives;
};
IsogredienceReport isogredience_classes(const FiniteGroup& g, const Permutation& gamma, const std::vector<int>& center);

struct IdentityClassReport {
  std::vector<int> elements;  // [e]_phi = { g phi(g)^-1 }
  bool is_subgroup = false;
  bool is_normal = false;
  bool is_central = false;  // g^-1 phi(g) central for every g
};
// LemmaViolation if central does not give a subgroup or a subgroup is not normal.
IdentityClassReport identity_class_analysis(const FiniteGroup& g, const Permutation& phi);

struct QuotientReport {
  FiniteGroup quotient;
  std::vector<int> projection;
  Permutation induced;
  int count = 0;           // R(phi)
  int quotient_count = 0;  // R(phi bar)
  bool surjection_well_defined = false;
  bool surjection_onto = false;
  bool subgroup_upstairs = false;
  bool subgroup_downstairs = false;
};
// NotCentral / NotStable when the subgroup is not central or not phi-stable;
// LemmaViolation if R(phi) < R(phi bar) or subgroup inheritance fails.
QuotientReport quotient_pushforward(const FiniteGroup& g, const Permutation& phi, const std::vector<int>& subgroup);

// charpoly(X f(X) ... f^(n-1)(X)) with X = x f(h g) and n the order of the
// field part. For g = e this is charpoly(x phi(x) ... phi^(n-1)(x) H_n),
// H_n = h f(h) ... f^(n-1)(h). InfiniteOrderFieldPart if f has infinite order.
Polynomial norm_invariant(const Matrix& x, const GroupAutomorphism& phi);

// Prime support of every root-slot diagonal entry.
using NuProfile = std::vector<std::set<Integer>>;
// NotDiagonal / NotRational on bad input; `slots` defaults to every diagonal entry.
NuProfile nu_profile(const Matrix& g, int slots = -1);
bool profiles_disjoint(const NuProfile& a, const NuProfile& b);

struct WitnessFamily {
  std::vector<GroupElement> elements;
  std::vector<std::vector<long>> primes;  // p_i1 < ... < p_il < p_(i+1)1 ...
  std::vector<Polynomial> invariants;
  GroupAutomorphism automorphism;  // phi with its inner part stripped
  bool inner_part_absorbed = false;
};
// g_i = h_a1(p_i1) ... h_al(p_il) with fresh ascending primes, each verified
// phi-fixed, with pairwise-distinct norm invariants (so R(phi) >= count).
// FiniteFieldRejected, InfiniteOrderFieldPart, CertificateFailure.
WitnessFamily witness_family(int count, const GroupAutomorphism& phi, const ChevalleyGroup& group);

// The first `count` primes.
std::vector<long> first_primes(int count);

// trace(g(T)^m h(chi)) with g(T) = h_a1(T) ... h_al(T) over k(T), k the field of chi.
// InvalidArgument for m < 1; ConstancyViolation if the trace lies in k.
Scalar trace_in_function_field(const RootSystem& system, int m, const std::vector<Scalar>& chi,
                               const FieldDescriptor& base);

}  // namespace chevtwist
