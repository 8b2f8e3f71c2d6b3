#include "chevtwist/nu.hpp"

namespace chevtwist {

namespace {

void prime_support(Integer n, std::uint64_t bound, std::set<Integer>& out) {
  if (n < 0) n = -n;
  if (n == 2 || n == 3) {
    out.insert(n);
    return;
  }
  for (unsigned long p = 2; n > 1 && p <= bound; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.insert(Integer(p));
      do {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      } while (mpz_divisible_ui_p(n.get_mpz_t(), p));
    }
    if (Integer(p) * p > n) break;
  }
  if (n <= 1) return;
  Integer limit(static_cast<unsigned long>(bound));
  limit *= limit;
  // Every prime below the bound was removed, so a cofactor below bound^2 is prime.
  if (n > limit)
    fail(ErrorCode::FactorizationBound, "cofactor " + n.get_str() + " exceeds the trial-division bound");
  out.insert(n);
}

}  // namespace

std::set<Integer> nu(const Rational& q, std::uint64_t bound) {
  if (sgn(q) == 0) fail(ErrorCode::ZeroArgument, "nu(0) is undefined");
  std::set<Integer> out;
  prime_support(q.get_num(), bound, out);
  prime_support(q.get_den(), bound, out);
  return out;
}

std::set<Integer> nu(const Scalar& q, std::uint64_t bound) {
  auto r = q.to_rational();
  if (!r || (q.field() && q.field()->kind() != FieldKind::Rationals))
    fail(ErrorCode::NotRational, "nu needs a rational argument, got " + q.to_string());
  return nu(*r, bound);
}

int fiber_bound(const Scalar& f) { return rational_degree(f); }

std::map<Scalar, int, ScalarLess> rational_function_profile(const Scalar& f, const std::vector<Scalar>& sample) {
  if (!f.field() || f.field()->kind() != FieldKind::RationalFunctions)
    fail(ErrorCode::FieldMismatch, "rational_function_profile needs an element of k(T)");
  const Polynomial& g = f.numerator();
  const Polynomial& h = f.denominator();
  if (g.degree() <= 0 && h.degree() <= 0) fail(ErrorCode::ConstantFunction, "f = " + f.to_string() + " is constant");
  const FieldDescriptor& base = *f.field()->base();
  std::map<Scalar, int, ScalarLess> profile;
  for (const auto& a : sample) {
    Scalar x = a.promoted(base);
    Scalar d = h(x);
    if (d.is_zero()) fail(ErrorCode::PoleHit, "sample point " + x.to_string() + " is a pole");
    ++profile[(g(x) / d).promoted(base)];
  }
  return profile;
}

}  // namespace chevtwist
