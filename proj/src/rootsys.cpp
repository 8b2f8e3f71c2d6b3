#include "chevtwist/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "chevtwist/error.hpp"

namespace chevtwist {

namespace {

std::vector<int> key(const Root& r) { return std::vector<int>(r.data(), r.data() + r.size()); }

Eigen::MatrixXi cartan_matrix(RootType type, int l) {
  Eigen::MatrixXi a = 2 * Eigen::MatrixXi::Identity(l, l);
  auto edge = [&](int i, int j) {  // 1-based node labels
    a(i - 1, j - 1) = -1;
    a(j - 1, i - 1) = -1;
  };
  switch (type) {
    case RootType::A:
      for (int i = 1; i < l; ++i) edge(i, i + 1);
      break;
    case RootType::D:
      for (int i = 1; i < l - 1; ++i) edge(i, i + 1);
      edge(l - 2, l);
      break;
    case RootType::E:
      edge(1, 3);
      edge(3, 4);
      edge(4, 5);
      edge(5, 6);
      edge(2, 4);
      break;
  }
  return a;
}

}  // namespace

RootSystem RootSystem::build(RootType type, int rank) {
  bool ok = (type == RootType::A && rank >= 1) || (type == RootType::D && rank >= 4) ||
            (type == RootType::E && rank == 6);
  if (!ok) {
    const char* t = type == RootType::A ? "A" : type == RootType::D ? "D" : "E";
    fail(ErrorCode::UnsupportedType, std::string("unsupported root system ") + t + std::to_string(rank));
  }
  RootSystem rs;
  rs.type_ = type;
  rs.rank_ = rank;
  rs.cartan_ = cartan_matrix(type, rank);

  std::set<std::vector<int>> seen;
  std::vector<Root> frontier;
  for (int i = 0; i < rank; ++i) {
    Root r = Root::Zero(rank);
    r(i) = 1;
    seen.insert(key(r));
    frontier.push_back(r);
  }
  while (!frontier.empty()) {
    std::vector<Root> next;
    for (const Root& beta : frontier)
      for (int i = 0; i < rank; ++i) {
        Root r = beta;
        r(i) -= (rs.cartan_ * beta)(i);
        if (seen.insert(key(r)).second) next.push_back(r);
      }
    frontier = std::move(next);
  }
  std::vector<Root> positive;
  for (const auto& k : seen)
    if (std::all_of(k.begin(), k.end(), [](int c) { return c >= 0; }))
      positive.push_back(Eigen::Map<const Eigen::VectorXi>(k.data(), rank));
  std::sort(positive.begin(), positive.end(), [](const Root& a, const Root& b) {
    if (a.sum() != b.sum()) return a.sum() < b.sum();
    return std::lexicographical_compare(b.data(), b.data() + b.size(), a.data(), a.data() + a.size());
  });
  rs.roots_ = positive;
  for (const Root& r : positive) rs.roots_.push_back(-r);
  for (int i = 0; i < rs.size(); ++i) rs.index_.emplace(key(rs.roots_[static_cast<std::size_t>(i)]), i);
  return rs;
}

RootSystem RootSystem::parse(std::string_view name) {
  if (name.size() < 2) fail(ErrorCode::ParseError, "expected a root system name like A2, D4, E6");
  RootType t;
  switch (std::toupper(static_cast<unsigned char>(name[0]))) {
    case 'A': t = RootType::A; break;
    case 'D': t = RootType::D; break;
    case 'E': t = RootType::E; break;
    default: fail(ErrorCode::UnsupportedType, "unsupported root system type '" + std::string(name) + "'");
  }
  int rank = 0;
  for (char c : name.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c)) || rank > 1000)
      fail(ErrorCode::ParseError, "bad rank in '" + std::string(name) + "'");
    rank = rank * 10 + (c - '0');
  }
  return build(t, rank);
}

std::string RootSystem::name() const {
  const char* t = type_ == RootType::A ? "A" : type_ == RootType::D ? "D" : "E";
  return t + std::to_string(rank_);
}

std::optional<int> RootSystem::find(const Root& r) const {
  if (r.size() != rank_) return std::nullopt;
  auto it = index_.find(key(r));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int RootSystem::index_of(const Root& r) const {
  auto i = find(r);
  if (!i) fail(ErrorCode::ForeignRoot, "vector is not a root of " + name());
  return *i;
}

std::optional<int> RootSystem::sum(int i, int j) const { return find(root(i) + root(j)); }

int RootSystem::pairing(const Root& beta, const Root& alpha) const {
  index_of(beta);
  index_of(alpha);
  return beta.dot(cartan_ * alpha);
}

int RootSystem::pairing(int beta, int alpha) const { return root(beta).dot(cartan_ * root(alpha)); }

Root RootSystem::reflect(const Root& alpha, const Root& beta) const {
  return beta - pairing(beta, alpha) * alpha;
}

int RootSystem::reflect(int alpha, int beta) const { return index_of(reflect(root(alpha), root(beta))); }

std::string RootSystem::label(int i) const {
  const Root& r = root(i);
  bool negative = !is_positive(i);
  std::string body;
  int terms = 0;
  for (int k = 0; k < rank_; ++k) {
    int c = negative ? -r(k) : r(k);
    if (c == 0) continue;
    if (terms++) body += "+";
    if (c != 1) body += std::to_string(c);
    body += "a" + std::to_string(k + 1);
  }
  if (!negative) return body;
  return terms > 1 ? "-(" + body + ")" : "-" + body;
}

int RootSystem::parse_root(std::string_view text) const {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  int sign = 1;
  if (!s.empty() && s[0] == '-') {
    sign = -1;
    s.erase(0, 1);
    if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  }
  Root r = Root::Zero(rank_);
  std::size_t pos = 0;
  auto bad = [&]() { fail(ErrorCode::ParseError, "cannot parse root '" + std::string(text) + "'"); };
  if (s.empty()) bad();
  while (pos < s.size()) {
    int coeff = 0;
    bool has_coeff = false;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      coeff = coeff * 10 + (s[pos++] - '0');
      has_coeff = true;
    }
    if (!has_coeff) coeff = 1;
    if (pos < s.size() && s[pos] == '*') ++pos;
    if (pos >= s.size() || (s[pos] != 'a' && s[pos] != 'A')) bad();
    ++pos;
    int idx = 0;
    bool has_idx = false;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      idx = idx * 10 + (s[pos++] - '0');
      has_idx = true;
    }
    if (!has_idx || idx < 1 || idx > rank_) bad();
    r(idx - 1) += coeff;
    if (pos < s.size()) {
      if (s[pos] != '+') bad();
      ++pos;
    }
  }
  return index_of(sign * r);
}

bool DiagramSymmetry::is_identity() const {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

DiagramSymmetry identity_symmetry(const RootSystem& system) {
  DiagramSymmetry rho;
  for (int i = 0; i < system.rank(); ++i) rho.perm.push_back(i);
  return rho;
}

DiagramSymmetry standard_symmetry(const RootSystem& system) {
  DiagramSymmetry rho = identity_symmetry(system);
  const int l = system.rank();
  switch (system.type()) {
    case RootType::A:
      for (int i = 0; i < l; ++i) rho.perm[static_cast<std::size_t>(i)] = l - 1 - i;
      break;
    case RootType::D: std::swap(rho.perm[static_cast<std::size_t>(l - 2)], rho.perm[static_cast<std::size_t>(l - 1)]); break;
    case RootType::E:
      rho.perm = {5, 1, 4, 3, 2, 0};
      break;
  }
  return rho;
}

void validate(const RootSystem& system, const DiagramSymmetry& rho) {
  const int l = system.rank();
  if (static_cast<int>(rho.perm.size()) != l) fail(ErrorCode::InvalidArgument, "symmetry has the wrong length");
  std::vector<bool> hit(static_cast<std::size_t>(l), false);
  for (int p : rho.perm) {
    if (p < 0 || p >= l || hit[static_cast<std::size_t>(p)]) fail(ErrorCode::InvalidArgument, "symmetry is not a permutation");
    hit[static_cast<std::size_t>(p)] = true;
  }
  for (int i = 0; i < l; ++i) {
    if (rho.perm[static_cast<std::size_t>(rho.perm[static_cast<std::size_t>(i)])] != i)
      fail(ErrorCode::InvalidArgument, "symmetry is not an involution");
    for (int j = 0; j < l; ++j)
      if (system.cartan()(i, j) != system.cartan()(rho.perm[static_cast<std::size_t>(i)], rho.perm[static_cast<std::size_t>(j)]))
        fail(ErrorCode::InvalidArgument, "symmetry does not preserve the Dynkin diagram");
  }
}

Root extend_symmetry(const DiagramSymmetry& rho, const Root& beta) {
  Root out = Root::Zero(beta.size());
  for (Eigen::Index i = 0; i < beta.size(); ++i) out(rho.perm[static_cast<std::size_t>(i)]) += beta(i);
  return out;
}

std::vector<int> root_permutation(const RootSystem& system, const DiagramSymmetry& rho) {
  validate(system, rho);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(system.size()));
  for (const Root& r : system.roots()) out.push_back(system.index_of(extend_symmetry(rho, r)));
  return out;
}

}  // namespace chevtwist
