#include "chevtwist/grpauto.hpp"

#include <cctype>

namespace chevtwist {

namespace {
Matrix entrywise(const FieldAutomorphism& f, const Matrix& m) {
  if (f.is_identity()) return m;
  return map_entries(m, [&](const Scalar& x) { return f(x); });
}

Matrix diagonal_inverse(const Matrix& h) {
  Matrix out = h;
  for (Eigen::Index i = 0; i < h.rows(); ++i) out(i, i) = h(i, i).inverse();
  return out;
}
}  // namespace

GroupAutomorphism::GroupAutomorphism(int n, const FieldDescriptor& field)
    : h_(identity_matrix(n, field)), h_inv_(h_), g_(h_), g_inv_(h_), field_(&field) {}

GroupAutomorphism GroupAutomorphism::inner(const Matrix& g) {
  const FieldDescriptor* f = g.size() ? g(0, 0).field() : nullptr;
  for (Eigen::Index i = 0; !f && i < g.size(); ++i) f = g.data()[i].field();
  if (!f) fail(ErrorCode::FieldMismatch, "inner automorphism needs a matrix over a tagged field");
  GroupAutomorphism a(static_cast<int>(g.rows()), *f);
  a.g_ = normalized(g, *f);
  a.g_inv_ = chevtwist::inverse(a.g_);
  return a;
}

GroupAutomorphism GroupAutomorphism::diagonal(const Matrix& h) {
  if (!is_diagonal(h)) fail(ErrorCode::NotDiagonal, "diagonal automorphism needs a diagonal matrix");
  const FieldDescriptor* f = nullptr;
  for (Eigen::Index i = 0; !f && i < h.rows(); ++i) f = h(i, i).field();
  if (!f) fail(ErrorCode::FieldMismatch, "diagonal automorphism needs a matrix over a tagged field");
  GroupAutomorphism a(static_cast<int>(h.rows()), *f);
  a.h_ = normalized(h, *f);
  a.h_inv_ = diagonal_inverse(a.h_);
  return a;
}

GroupAutomorphism GroupAutomorphism::field_map(const FieldAutomorphism& f, int n, const FieldDescriptor& field) {
  if (f.field() && f.field() != &field) fail(ErrorCode::FieldMismatch, "field automorphism acts on another field");
  GroupAutomorphism a(n, field);
  a.f_ = f;
  return a;
}

Matrix GroupAutomorphism::apply(const Matrix& x) const {
  if (x.rows() != size() || x.cols() != size()) fail(ErrorCode::BasisMismatch, "matrix size does not match");
  Matrix y = x;
  if (!is_identity(g_)) y = mul(mul(g_, y), g_inv_);
  if (!is_identity(h_)) y = mul(mul(h_, y), h_inv_);
  return entrywise(f_, y);
}

GroupAutomorphism GroupAutomorphism::compose(const GroupAutomorphism& other) const {
  if (other.size() != size() || other.field_ != field_) fail(ErrorCode::BasisMismatch, "incompatible automorphisms");
  // f1(m1 f2(m2 x m2^-1) m1^-1) = (f1 f2)(m x m^-1), m = f2^-1(m1) m2, split as
  // h = f2^-1(h1) h2 and g = h2^-1 f2^-1(g1) h2 g2.
  FieldAutomorphism f2_inv = other.f_.inverse();
  GroupAutomorphism out(size(), *field_);
  out.f_ = f_.compose(other.f_);
  out.h_ = mul(entrywise(f2_inv, h_), other.h_);
  out.h_inv_ = diagonal_inverse(out.h_);
  Matrix g1 = entrywise(f2_inv, g_), g1_inv = entrywise(f2_inv, g_inv_);
  out.g_ = mul(mul(mul(other.h_inv_, g1), other.h_), other.g_);
  out.g_inv_ = mul(mul(mul(other.g_inv_, other.h_inv_), g1_inv), other.h_);
  return out;
}

GroupAutomorphism GroupAutomorphism::inverse() const {
  // phi^-1(y) = f^-1(f(m)^-1 y f(m)); f(m)^-1 = f(h)^-1 [f(h) f(g)^-1 f(h)^-1].
  Matrix fh = entrywise(f_, h_), fh_inv = entrywise(f_, h_inv_);
  Matrix fg = entrywise(f_, g_), fg_inv = entrywise(f_, g_inv_);
  GroupAutomorphism out(size(), *field_);
  out.f_ = f_.inverse();
  out.h_ = fh_inv;
  out.h_inv_ = fh;
  out.g_ = mul(mul(fh, fg_inv), fh_inv);
  out.g_inv_ = mul(mul(fh, fg), fh_inv);
  return out;
}

GroupAutomorphism GroupAutomorphism::pow(unsigned k) const {
  GroupAutomorphism out(size(), *field_);
  for (unsigned i = 0; i < k; ++i) out = compose(out);
  return out;
}

std::string GroupAutomorphism::describe() const {
  std::vector<std::string> parts;
  if (!f_.is_identity()) parts.push_back("field:" + f_.to_string());
  if (!is_identity(h_)) {
    std::string d = "diag[";
    for (Eigen::Index i = 0; i < h_.rows(); ++i) d += (i ? "," : "") + h_(i, i).to_string();
    parts.push_back(d + "]");
  }
  if (!is_identity(g_)) parts.push_back("inner:" + to_string(g_));
  if (parts.empty()) return "id";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " o " : "") + parts[i];
  return out;
}

std::optional<unsigned> power_order(const GroupAutomorphism& phi, const std::vector<Matrix>& generators,
                                    unsigned cap) {
  auto fo = phi.field_part().order();
  if (!fo) return std::nullopt;
  GroupAutomorphism step = phi.pow(*fo);
  GroupAutomorphism power = step;
  for (unsigned k = *fo; k <= cap; k += *fo) {
    bool fixes = true;
    for (const Matrix& g : generators)
      if (!equal(power.apply(g), g)) {
        fixes = false;
        break;
      }
    if (fixes) return k;
    power = step.compose(power);
  }
  return std::nullopt;
}

bool is_central(const GroupAutomorphism& phi, const std::vector<Matrix>& elements,
                const std::function<bool(const Matrix&)>& in_center) {
  for (const Matrix& g : elements) {
    Matrix d = mul(inverse(g), phi.apply(g));
    if (in_center ? !in_center(d) : !is_identity(d)) return false;
  }
  return true;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool starts_factor(std::string_view s) {
  s = trim(s);
  return s.starts_with("inner:") || s.starts_with("diag:") || s.starts_with("field:") || s == "id";
}

GroupAutomorphism parse_factor(std::string_view s, const AutomorphismContext& ctx) {
  s = trim(s);
  const int n = ctx.size;
  const FieldDescriptor& field = *ctx.field;
  if (s == "id") return GroupAutomorphism(n, field);
  if (s.starts_with("field:")) {
    FieldAutomorphism f = parse_field_automorphism(s.substr(6), field);
    return GroupAutomorphism::field_map(f, n, field);
  }
  if (s.starts_with("diag:")) {
    std::vector<Scalar> chi;
    std::string_view rest = s.substr(5);
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= rest.size(); ++i) {
      if (i < rest.size() && rest[i] == '(') ++depth;
      if (i < rest.size() && rest[i] == ')') --depth;
      if (i == rest.size() || (rest[i] == ',' && depth == 0)) {
        chi.push_back(parse_scalar(rest.substr(start, i - start), field));
        start = i + 1;
      }
    }
    return GroupAutomorphism::diagonal(ctx.diagonal(chi));
  }
  if (s.starts_with("inner:")) {
    std::string_view word = trim(s.substr(6));
    if (word.size() >= 2 && word.front() == '[' && word.back() == ']') word = word.substr(1, word.size() - 2);
    return GroupAutomorphism::inner(ctx.word(word));
  }
  fail(ErrorCode::ParseError, "unknown automorphism factor '" + std::string(s) + "'");
}

}  // namespace

GroupAutomorphism parse_automorphism(std::string_view text, const ChevalleyGroup& group) {
  AutomorphismContext ctx{group.dimension(), &group.field(),
                          [&](std::string_view w) { return group.evaluate_word(w).matrix; },
                          [&](const std::vector<Scalar>& chi) { return group.h_chi(chi).matrix; }};
  return parse_automorphism(text, ctx);
}

GroupAutomorphism parse_automorphism(std::string_view text, const AutomorphismContext& ctx) {
  std::vector<std::string_view> factors;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(' || c == '[') ++depth;
    else if (c == ')' || c == ']') --depth;
    else if (c == '*' && depth == 0 && starts_factor(text.substr(i + 1))) {
      factors.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  factors.push_back(text.substr(start));
  GroupAutomorphism out(ctx.size, *ctx.field);
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) out = parse_factor(*it, ctx).compose(out);
  return out;
}

}  // namespace chevtwist
