#include "chevtwist/liealg.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

#include "chevtwist/error.hpp"

namespace chevtwist {

namespace {

int cocycle(const RootSystem& rs, const Root& a, const Root& b) {
  int e = 0;
  for (int i = 0; i < rs.rank(); ++i) {
    e += a(i) * b(i);
    for (int j = i + 1; j < rs.rank(); ++j)
      if (rs.cartan()(i, j) == -1) e += a(i) * b(j);
  }
  return (e % 2 == 0) ? 1 : -1;
}

}  // namespace

ChevalleyBasis::ChevalleyBasis(RootSystem system) : system_(std::move(system)) {
  const RootSystem& rs = system_;
  const int nr = rs.size(), l = rs.rank(), np = rs.positive_count();
  dim_ = nr + l;

  // e_alpha = E^alpha for positive alpha, -E^alpha for negative alpha.
  n_.assign(static_cast<std::size_t>(nr * nr), 0);
  auto s = [&](int i) { return rs.is_positive(i) ? 1 : -1; };
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nr; ++j)
      if (auto k = rs.sum(i, j)) n_[static_cast<std::size_t>(i * nr + j)] = s(i) * s(j) * s(*k) * cocycle(rs, rs.root(i), rs.root(j));

  // Rescale e_xi -> r_xi e_xi (r_-xi = r_xi) so that extraspecial pairs are positive.
  std::vector<int> r(static_cast<std::size_t>(nr), 1);
  for (int xi = l; xi < np; ++xi) {
    for (int i = 0; i < l; ++i) {
      auto eta = rs.find(rs.root(xi) - rs.root(i));
      if (!eta || !rs.is_positive(*eta)) continue;
      r[static_cast<std::size_t>(xi)] = r[static_cast<std::size_t>(*eta)] * n_[static_cast<std::size_t>(i * nr + *eta)];
      break;
    }
    r[static_cast<std::size_t>(rs.negative(xi))] = r[static_cast<std::size_t>(xi)];
  }
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nr; ++j)
      if (auto k = rs.sum(i, j))
        n_[static_cast<std::size_t>(i * nr + j)] *= r[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(*k)];

  table_.assign(static_cast<std::size_t>(dim_ * dim_), {});
  auto at = [&](int i, int j) -> std::vector<Term>& { return table_[static_cast<std::size_t>(i * dim_ + j)]; };
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nr; ++j) {
      if (auto k = rs.sum(i, j)) {
        at(i, j).push_back({*k, n_[static_cast<std::size_t>(i * nr + j)]});
      } else if (j == rs.negative(i)) {
        for (int c = 0; c < l; ++c)
          if (rs.root(i)(c) != 0) at(i, j).push_back({nr + c, rs.root(i)(c)});
      }
    }
    for (int c = 0; c < l; ++c) {
      int p = rs.pairing(i, c);
      if (p == 0) continue;
      at(nr + c, i).push_back({i, p});
      at(i, nr + c).push_back({i, -p});
    }
  }

  exp_.resize(static_cast<std::size_t>(nr));
  for (int a = 0; a < nr; ++a) {
    Eigen::MatrixXi ad = ad_matrix(a);
    auto& terms = exp_[static_cast<std::size_t>(a)];
    Eigen::MatrixXi power = Eigen::MatrixXi::Identity(dim_, dim_);
    for (int k = 1; !power.isZero(); ++k) {
      terms.push_back(power);
      Eigen::MatrixXi next = ad * power;
      if (next.unaryExpr([k](int v) { return v % k; }).any())
        fail(ErrorCode::InvalidArgument, "ad(e_alpha)^k/k! is not integral");
      power = next / k;
    }
  }
}

int ChevalleyBasis::structure_constant(int alpha, int beta) const {
  const int nr = system_.size();
  if (alpha < 0 || beta < 0 || alpha >= nr || beta >= nr) fail(ErrorCode::ForeignRoot, "root index out of range");
  return n_[static_cast<std::size_t>(alpha * nr + beta)];
}

const std::vector<Term>& ChevalleyBasis::bracket(int i, int j) const {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_) fail(ErrorCode::BasisMismatch, "basis slot out of range");
  return table_[static_cast<std::size_t>(i * dim_ + j)];
}

Vector ChevalleyBasis::bracket(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_) fail(ErrorCode::BasisMismatch, "vector length does not match the basis");
  Vector out(dim_);
  const FieldDescriptor* f = nullptr;
  for (Eigen::Index i = 0; i < dim_ && !f; ++i) f = x(i).field() ? x(i).field() : y(i).field();
  Scalar zero = f ? Scalar::in(*f, 0) : Scalar(0);
  out.fill(zero);
  for (int i = 0; i < dim_; ++i) {
    if (x(i).is_zero()) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y(j).is_zero()) continue;
      const auto& terms = table_[static_cast<std::size_t>(i * dim_ + j)];
      if (terms.empty()) continue;
      Scalar c = x(i) * y(j);
      for (const Term& t : terms) out(t.slot) += Scalar(t.coeff) * c;
    }
  }
  return out;
}

Eigen::MatrixXi ChevalleyBasis::ad_matrix(int slot) const {
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(dim_, dim_);
  for (int j = 0; j < dim_; ++j)
    for (const Term& t : bracket(slot, j)) m(t.slot, j) += t.coeff;
  return m;
}

const std::vector<Eigen::MatrixXi>& ChevalleyBasis::exp_terms(int alpha) const {
  if (alpha < 0 || alpha >= system_.size()) fail(ErrorCode::ForeignRoot, "root index out of range");
  return exp_[static_cast<std::size_t>(alpha)];
}

BasisPtr make_basis(const RootSystem& system) { return std::make_shared<const ChevalleyBasis>(system); }

namespace {

using nlohmann::json;

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << v;
  return out.str();
}

json entry_list(const ChevalleyBasis& basis) {
  json entries = json::array();
  const int nr = basis.system().size();
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nr; ++j)
      if (int n = basis.structure_constant(i, j)) entries.push_back({i, j, n});
  return entries;
}

json root_list(const RootSystem& rs) {
  json roots = json::array();
  for (const Root& r : rs.roots()) roots.push_back(std::vector<int>(r.data(), r.data() + r.size()));
  return roots;
}

std::string checksum_of(const json& roots, const json& entries) { return hex(fnv1a(roots.dump() + entries.dump())); }

}  // namespace

std::string structure_table_json(const ChevalleyBasis& basis) {
  const RootSystem& rs = basis.system();
  json roots = root_list(rs);
  json entries = entry_list(basis);
  json doc = {{"schema", "chevtwist.structure-constants"},
              {"version", 1},
              {"kind", rs.name().substr(0, 1)},
              {"rank", rs.rank()},
              {"convention", kSignConvention},
              {"roots", roots},
              {"entries", entries},
              {"checksum", checksum_of(roots, entries)}};
  return doc.dump(1);
}

void verify_structure_table(std::string_view text, const ChevalleyBasis& basis) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("structure table: ") + e.what());
  }
  try {
    if (doc.at("schema") != "chevtwist.structure-constants" || doc.at("version") != 1)
      fail(ErrorCode::ParseError, "structure table: unknown schema or version");
    if (checksum_of(doc.at("roots"), doc.at("entries")) != doc.at("checksum").get<std::string>())
      fail(ErrorCode::ChecksumMismatch, "structure table checksum does not match its content");
    const RootSystem& rs = basis.system();
    if (doc.at("kind") != rs.name().substr(0, 1) || doc.at("rank") != rs.rank() ||
        doc.at("convention") != kSignConvention || doc.at("roots") != root_list(rs) ||
        doc.at("entries") != entry_list(basis))
      fail(ErrorCode::BasisMismatch, "structure table does not match the built basis");
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("structure table: ") + e.what());
  }
}

}  // namespace chevtwist
