#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "chevtwist/scalar.hpp"

namespace chevtwist {

inline constexpr std::uint64_t kDefaultFactorBound = 1'000'000;

// Prime support of a nonzero rational: primes dividing its reduced numerator
// or denominator. Trial division up to `bound`; a cofactor above bound^2 that
// might be composite raises FactorizationBound.
std::set<Integer> nu(const Rational& q, std::uint64_t bound = kDefaultFactorBound);
std::set<Integer> nu(const Scalar& q, std::uint64_t bound = kDefaultFactorBound);

// Value -> multiplicity of f over the sample. f must be a nonconstant element
// of a rational function field and no sample point may be a pole.
std::map<Scalar, int, ScalarLess> rational_function_profile(const Scalar& f,
                                                            const std::vector<Scalar>& sample);

// Upper bound on the size of any fiber of f: max(deg num, deg den).
int fiber_bound(const Scalar& f);

}  // namespace chevtwist
