#include "chevtwist/twist.hpp"

#include <map>

namespace chevtwist {

GraphAutomorphism build_graph_automorphism(const ChevalleyBasis& basis, const DiagramSymmetry& rho) {
  const RootSystem& rs = basis.system();
  const int nr = rs.size(), l = rs.rank(), np = rs.positive_count(), d = basis.dimension();
  GraphAutomorphism g;
  g.root_perm = root_permutation(rs, rho);
  auto perm = [&](int r) { return g.root_perm[static_cast<std::size_t>(r)]; };
  g.signs.assign(static_cast<std::size_t>(nr), 1);
  for (int xi = l; xi < np; ++xi) {
    for (int i = 0; i < l; ++i) {
      auto eta = rs.find(rs.root(xi) - rs.root(i));
      if (!eta || !rs.is_positive(*eta)) continue;
      int num = basis.structure_constant(perm(i), perm(*eta));
      int den = basis.structure_constant(i, *eta);
      g.signs[static_cast<std::size_t>(xi)] = g.signs[static_cast<std::size_t>(*eta)] * num * den;
      break;
    }
    g.signs[static_cast<std::size_t>(rs.negative(xi))] = g.signs[static_cast<std::size_t>(xi)];
  }
  g.matrix = Eigen::MatrixXi::Zero(d, d);
  std::vector<int> slot_perm(static_cast<std::size_t>(d)), slot_sign(static_cast<std::size_t>(d), 1);
  for (int r = 0; r < nr; ++r) {
    slot_perm[static_cast<std::size_t>(r)] = perm(r);
    slot_sign[static_cast<std::size_t>(r)] = g.signs[static_cast<std::size_t>(r)];
  }
  for (int k = 0; k < l; ++k) slot_perm[static_cast<std::size_t>(nr + k)] = nr + rho.perm[static_cast<std::size_t>(k)];
  for (int j = 0; j < d; ++j) g.matrix(slot_perm[static_cast<std::size_t>(j)], j) = slot_sign[static_cast<std::size_t>(j)];

  // P[e_i, e_j] == [P e_i, P e_j] on every pair of slots.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::map<int, int> lhs, rhs;
      for (const Term& t : basis.bracket(i, j)) lhs[slot_perm[static_cast<std::size_t>(t.slot)]] += t.coeff * slot_sign[static_cast<std::size_t>(t.slot)];
      int s = slot_sign[static_cast<std::size_t>(i)] * slot_sign[static_cast<std::size_t>(j)];
      for (const Term& t : basis.bracket(slot_perm[static_cast<std::size_t>(i)], slot_perm[static_cast<std::size_t>(j)])) rhs[t.slot] += s * t.coeff;
      std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
      std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
      if (lhs != rhs)
        fail(ErrorCode::SignObstruction, "no consistent graph automorphism signs at slots " + std::to_string(i) + ", " +
                                             std::to_string(j));
    }
  return g;
}

Twist::Twist(ChevalleyGroup group, DiagramSymmetry rho, FieldAutomorphism f)
    : group_(std::move(group)), rho_(std::move(rho)), f_(std::move(f)) {
  auto order = f_.order();
  if (!order || *order > 2) fail(ErrorCode::InvalidArgument, "the twisting field automorphism must have order 1 or 2");
  if (f_.field() && f_.field() != &group_.field()) fail(ErrorCode::FieldMismatch, "field automorphism acts on another field");
  graph_ = build_graph_automorphism(group_.basis(), rho_);
  p_ = from_integers(graph_.matrix, group_.field());
  pt_ = from_integers(graph_.matrix.transpose(), group_.field());
}

Matrix Twist::graph_apply(const Matrix& x) const { return mul(mul(p_, x), pt_); }

Matrix Twist::sigma(const Matrix& x) const {
  if (f_.is_identity()) return graph_apply(x);
  return graph_apply(map_entries(x, [&](const Scalar& s) { return f_(s); }));
}

std::vector<std::vector<int>> Twist::orbits(bool positive) const {
  const RootSystem& rs = group_.system();
  std::vector<std::vector<int>> out;
  for (int r = 0; r < rs.size(); ++r) {
    if (rs.is_positive(r) != positive) continue;
    int s = rho(r);
    if (s == r) out.push_back({r});
    else if (s > r) out.push_back({r, s});
  }
  return out;
}

std::vector<Scalar> field_elements(const FieldDescriptor& field) {
  if (field.kind() != FieldKind::Finite) fail(ErrorCode::InvalidArgument, field.name() + " is not finite");
  std::vector<Scalar> out;
  for (std::uint32_t c = 0; c < field.size(); ++c) out.push_back(Scalar::finite(field, c));
  return out;
}

GroupElement Twist::fixed_unipotent(const std::vector<int>& orbit, const Scalar& seed) const {
  const RootSystem& rs = group_.system();
  Scalar s = seed.promoted(group_.field());
  GroupElement u;
  if (orbit.size() == 1) {
    int a = orbit[0];
    if (rho(a) != a) fail(ErrorCode::InvalidArgument, "orbit is not rho-stable");
    u = group_.x(a, s + Scalar(sign(a)) * f_(s));
  } else if (orbit.size() == 2) {
    int a = orbit[0], b = orbit[1];
    if (rho(a) != b) fail(ErrorCode::InvalidArgument, "orbit is not rho-stable");
    u = group_.x(a, s) * group_.x(b, Scalar(sign(a)) * f_(s));
    if (auto gamma = rs.sum(a, b)) {
      // sigma(u) = u x_gamma(r); correct by x_gamma(c) with c - eps_gamma f(c) = r.
      Matrix d = mul(group_.inverse(u).matrix, sigma(u.matrix));
      std::optional<Scalar> rv;
      // Read r off the coefficient of h in column e_-gamma: x_gamma(r) e_-gamma = e_-gamma + r h_gamma + ...
      for (int k = 0; k < rs.rank() && !rv; ++k) {
        int coeff = group_.basis().exp_terms(*gamma)[1](group_.basis().cartan_slot(k), rs.negative(*gamma));
        if (coeff) rv = d(group_.basis().cartan_slot(k), rs.negative(*gamma)) / Scalar(coeff);
      }
      if (!rv || !equal(d, group_.x(*gamma, *rv).matrix))
        fail(ErrorCode::NoSolution, "sigma(u) u^-1 is not a root element of " + rs.label(*gamma));
      Scalar eps(sign(*gamma));
      std::optional<Scalar> c;
      if (group_.field().characteristic() != 2) {
        Scalar half = *rv / Scalar(2);
        if (half - eps * f_(half) == *rv) c = half;
      }
      if (!c && group_.field().kind() == FieldKind::Finite)
        for (const Scalar& z : field_elements(group_.field()))
          if (z - eps * f_(z) == *rv) {
            c = z;
            break;
          }
      if (!c) fail(ErrorCode::NoSolution, "no correction parameter for orbit through " + rs.label(a));
      u = u * group_.x(*gamma, *c);
    }
  } else {
    fail(ErrorCode::InvalidArgument, "orbits have one or two roots");
  }
  if (!is_fixed(u.matrix)) fail(ErrorCode::NoSolution, "constructed unipotent is not sigma-fixed");
  return u;
}

std::vector<GroupElement> Twist::fixed_generators(bool positive, const std::vector<Scalar>& seeds) const {
  std::vector<GroupElement> out;
  for (const auto& orbit : orbits(positive))
    for (const Scalar& s : seeds) {
      GroupElement u = fixed_unipotent(orbit, s);
      if (!is_identity(u.matrix)) out.push_back(std::move(u));
    }
  return out;
}

}  // namespace chevtwist
