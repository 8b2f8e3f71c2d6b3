#include "chevtwist/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "chevtwist/chevgroup.hpp"
#include "chevtwist/grpauto.hpp"
#include "chevtwist/twconj.hpp"
#include "chevtwist/twist.hpp"

namespace chevtwist {

using json = nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;
// Largest dimension for which `element` checks the bracket on every pair.
constexpr int kExhaustiveBracketDim = 30;
constexpr int kSampledBracketPairs = 500;

RootType parse_type(const std::string& t) {
  if (t == "A") return RootType::A;
  if (t == "D") return RootType::D;
  if (t == "E") return RootType::E;
  fail(ErrorCode::UnsupportedType, "unknown root system type '" + t + "'");
}

json header(const std::string& schema) {
  return {{"schema", "chevtwist." + schema}, {"version", kSchemaVersion}};
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

json polynomial_json(const Polynomial& p) {
  json out = json::array();
  for (const Scalar& c : p.coeffs()) out.push_back(c.to_string());
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t p = 0;
  while (p <= text.size()) {
    std::size_t q = text.find(',', p);
    if (q == std::string::npos) q = text.size();
    std::string item = text.substr(p, q - p);
    if (!item.empty()) out.push_back(item);
    p = q + 1;
  }
  return out;
}

std::vector<Scalar> parse_scalars(const std::string& text, const FieldDescriptor& field) {
  std::vector<Scalar> out;
  for (const auto& s : split_list(text)) out.push_back(parse_scalar(s, field));
  return out;
}

DiagramSymmetry parse_symmetry(const std::string& text, const RootSystem& rs) {
  if (text == "standard") return standard_symmetry(rs);
  if (text == "identity") return identity_symmetry(rs);
  if (text.starts_with("perm:")) {
    DiagramSymmetry rho;
    for (const auto& s : split_list(text.substr(5))) rho.perm.push_back(std::stoi(s) - 1);
    validate(rs, rho);
    return rho;
  }
  fail(ErrorCode::ParseError, "symmetry must be standard, identity or perm:<i1,...,il>");
}

// Words in the 2x2 fundamental picture: same factor grammar as group words,
// with root a1 or -a1.
Matrix sl2_word(std::string_view word, const FieldDescriptor& field) {
  Matrix out = identity_matrix(2, field);
  std::size_t start = 0;
  while (start <= word.size()) {
    std::size_t end = word.find(';', start);
    if (end == std::string_view::npos) end = word.size();
    std::string factor(word.substr(start, end - start));
    start = end + 1;
    std::istringstream in(factor);
    std::string kind, root, param;
    if (!(in >> kind)) continue;
    if (!(in >> root >> param) || (root != "a1" && root != "-a1"))
      fail(ErrorCode::ParseError, "bad SL2 word factor '" + factor + "'");
    Scalar t = parse_scalar(param, field);
    Matrix m;
    if (kind == "x") m = root == "a1" ? sl2_x(t) : sl2_x_lower(t);
    else if (kind == "n") m = root == "a1" ? sl2_n(t) : sl2_n(-t);
    else if (kind == "h") m = root == "a1" ? sl2_h(t) : sl2_h(t.inverse());
    else fail(ErrorCode::ParseError, "bad SL2 word factor '" + factor + "'");
    out = mul(out, normalized(m, field));
  }
  return out;
}

// A finite group together with the pieces needed to parse automorphisms of it.
struct Instance {
  std::string label;
  FiniteGroup group;
  AutomorphismContext context;
  std::shared_ptr<const ChevalleyGroup> chevalley;
};

Instance build_instance(const CliConfig& c, std::ostream& err) {
  const FieldDescriptor& field = parse_field(c.field);
  if (!field.is_finite()) fail(ErrorCode::NotEnumerated, "enumeration needs a finite field, got " + field.name());
  if (c.instance == "sl2") {
    err << "enumerating SL2 over " << field.name() << "\n";
    FiniteGroup g = enumerate_sl2(field, c.budget);
    err << "order " << g.order() << "\n";
    AutomorphismContext ctx{2, &field, [&field](std::string_view w) { return sl2_word(w, field); },
                            [&field](const std::vector<Scalar>& chi) {
                              if (chi.size() != 1) fail(ErrorCode::InvalidArgument, "SL2 diagonal takes one value");
                              Matrix d = identity_matrix(2, field);
                              d(0, 0) = chi[0];
                              return d;
                            }};
    return {"SL2", std::move(g), std::move(ctx), nullptr};
  }
  RootSystem rs = RootSystem::build(parse_type(c.type), c.rank);
  ChevalleyGroup group(make_basis(rs), field);
  std::optional<FiniteGroup> g;
  if (c.instance == "adjoint") {
    err << "enumerating adjoint " << rs.name() << " over " << field.name() << "\n";
    g = enumerate_adjoint(group, c.budget);
  } else if (c.instance == "twisted") {
    Twist tw(group, parse_symmetry(c.symmetry, rs), FieldAutomorphism::involution_of(field));
    err << "enumerating twisted " << rs.name() << " over " << field.name() << "\n";
    g = enumerate_twisted(tw, c.budget);
  } else {
    fail(ErrorCode::InvalidArgument, "instance must be adjoint, twisted or sl2");
  }
  err << "order " << g->order() << "\n";
  auto gp = std::make_shared<const ChevalleyGroup>(group);
  Instance inst{c.instance + " " + rs.name(), std::move(*g), {}, gp};
  inst.context = {gp->dimension(), &field, [gp](std::string_view w) { return gp->evaluate_word(w).matrix; },
                  [gp](const std::vector<Scalar>& chi) { return gp->h_chi(chi).matrix; }};
  return inst;
}

Permutation automorphism_permutation(const Instance& inst, const std::string& descriptor) {
  GroupAutomorphism phi = parse_automorphism(descriptor, inst.context);
  return inst.group.permutation_of([&phi](const Matrix& x) { return phi.apply(x); });
}

json instance_json(const Instance& inst, const CliConfig& c) {
  return {{"kind", c.instance}, {"system", inst.label}, {"field", parse_field(c.field).name()},
          {"order", inst.group.order()}};
}

json cmd_rootsys(const CliConfig& c) {
  RootSystem rs = RootSystem::build(parse_type(c.type), c.rank);
  json roots = json::array();
  for (int i = 0; i < rs.size(); ++i) {
    json coords = json::array();
    for (int k = 0; k < rs.rank(); ++k) coords.push_back(rs.root(i)(k));
    roots.push_back({{"index", i}, {"label", rs.label(i)}, {"coords", coords}, {"height", rs.height(i)},
                     {"positive", rs.is_positive(i)}});
  }
  json cartan = json::array();
  for (int i = 0; i < rs.rank(); ++i) {
    json row = json::array();
    for (int j = 0; j < rs.rank(); ++j) row.push_back(rs.cartan()(i, j));
    cartan.push_back(row);
  }
  json sym = json::array();
  for (int v : standard_symmetry(rs).perm) sym.push_back(v + 1);
  json doc = header("rootsys");
  doc.update({{"kind", c.type}, {"rank", rs.rank()}, {"size", rs.size()}, {"positive_count", rs.positive_count()},
              {"roots", roots}, {"cartan", cartan}, {"standard_symmetry", sym}});
  return doc;
}

json cmd_basis(const CliConfig& c) {
  RootSystem rs = RootSystem::build(parse_type(c.type), c.rank);
  return json::parse(structure_table_json(*make_basis(rs)));
}

json cmd_element(const CliConfig& c) {
  RootSystem rs = RootSystem::build(parse_type(c.type), c.rank);
  ChevalleyGroup group(make_basis(rs), parse_field(c.field));
  GroupElement g = group.evaluate_word(c.word);
  bool preserves;
  std::string mode;
  if (group.dimension() <= kExhaustiveBracketDim) {
    preserves = group.preserves_bracket(g.matrix);
    mode = "exhaustive";
  } else {
    std::mt19937_64 rng(c.seed);
    std::uniform_int_distribution<int> pick(0, group.dimension() - 1);
    std::vector<std::pair<int, int>> pairs;
    for (int k = 0; k < kSampledBracketPairs; ++k) pairs.emplace_back(pick(rng), pick(rng));
    preserves = group.preserves_bracket(g.matrix, pairs);
    mode = "sampled";
  }
  json doc = header("element");
  doc.update({{"system", rs.name()}, {"field", group.field().name()}, {"dimension", group.dimension()},
              {"word", c.word}, {"matrix", matrix_json(g.matrix)}, {"determinant", determinant(g.matrix).to_string()},
              {"bracket_preserving", preserves}, {"bracket_check", mode}});
  return doc;
}

json cmd_relations(const CliConfig& c) {
  RootSystem rs = RootSystem::build(parse_type(c.type), c.rank);
  ChevalleyGroup group(make_basis(rs), parse_field(c.field));
  RelationReport r = check_steinberg_relations(group, c.trials, c.seed);
  json constants = json::array();
  for (const auto& k : r.constants)
    constants.push_back({{"alpha", rs.label(k.alpha)}, {"beta", rs.label(k.beta)}, {"gamma", rs.label(k.gamma)},
                         {"c", k.c}});
  json doc = header("relations");
  doc.update({{"system", rs.name()}, {"field", group.field().name()}, {"seed", c.seed}, {"trials", r.trials},
              {"checks", r.checks}, {"constants", constants}, {"holds", true}});
  return doc;
}

json cmd_twist(const CliConfig& c, std::ostream& err) {
  RootSystem rs = RootSystem::build(parse_type(c.type), c.rank);
  const FieldDescriptor& field = parse_field(c.field);
  ChevalleyGroup group(make_basis(rs), field);
  FieldAutomorphism f = c.field_automorphism.empty() ? FieldAutomorphism::involution_of(field)
                                                     : parse_field_automorphism(c.field_automorphism, field);
  Twist tw(group, parse_symmetry(c.symmetry, rs), f);
  std::vector<Scalar> seeds;
  if (!c.seeds.empty()) seeds = parse_scalars(c.seeds, field);
  else if (field.is_finite()) seeds = field_elements(field);
  else seeds = {Scalar::in(field, 1), Scalar::in(field, 2)};

  json signs = json::array();
  for (int i = 0; i < rs.size(); ++i)
    signs.push_back({{"root", rs.label(i)}, {"image", rs.label(tw.rho(i))}, {"sign", tw.sign(i)}});
  json orbits = json::array();
  for (const auto& o : tw.orbits(true)) {
    json labels = json::array();
    for (int r : o) labels.push_back(rs.label(r));
    orbits.push_back(labels);
  }
  json gens = json::array();
  for (bool positive : {true, false})
    for (const auto& u : tw.fixed_generators(positive, seeds))
      gens.push_back({{"subgroup", positive ? "U'" : "V'"}, {"word", u.word}, {"fixed", tw.is_fixed(u.matrix)}});
  json perm = json::array();
  for (int v : tw.symmetry().perm) perm.push_back(v + 1);
  json doc = header("twist");
  doc.update({{"system", rs.name()}, {"field", field.name()}, {"field_automorphism", f.to_string()},
              {"symmetry", perm}, {"signs", signs}, {"orbits", orbits}, {"generators", gens}});
  if (c.enumerate) {
    err << "enumerating twisted " << rs.name() << " over " << field.name() << "\n";
    FiniteGroup g = enumerate_twisted(tw, c.budget);
    doc["order"] = g.order();
    doc["center_order"] = g.center().size();
  }
  return doc;
}

json cmd_reidemeister(const CliConfig& c, std::ostream& err) {
  Instance inst = build_instance(c, err);
  ReidemeisterReport r = reidemeister_classes(inst.group, automorphism_permutation(inst, c.automorphism));
  json reps = json::array();
  for (int i : r.representatives) reps.push_back(matrix_json(inst.group.matrix(i)));
  json doc = header("reidemeister");
  doc.update({{"instance", instance_json(inst, c)}, {"automorphism", c.automorphism}, {"count", r.count},
              {"representatives", reps}});
  return doc;
}

json cmd_isogredience(const CliConfig& c, std::ostream& err) {
  Instance inst = build_instance(c, err);
  Permutation gamma = automorphism_permutation(inst, c.automorphism);
  std::vector<int> center = inst.group.center();
  IsogredienceReport s = isogredience_classes(inst.group, gamma, center);
  json doc = header("isogredience");
  doc.update({{"instance", instance_json(inst, c)}, {"automorphism", c.automorphism},
              {"center_order", center.size()}, {"count", s.count},
              {"reidemeister", reidemeister_classes(inst.group, gamma).count}});
  return doc;
}

json cmd_witness(const CliConfig& c) {
  RootSystem rs = RootSystem::build(parse_type(c.type), c.rank);
  ChevalleyGroup group(make_basis(rs), parse_field(c.field));
  GroupAutomorphism phi = parse_automorphism(c.automorphism, group);
  WitnessFamily w = witness_family(c.count, phi, group);
  json elements = json::array();
  for (std::size_t i = 0; i < w.elements.size(); ++i)
    elements.push_back({{"word", w.elements[i].word}, {"primes", w.primes[i]},
                        {"invariant", polynomial_json(w.invariants[i])}});
  json doc = header("witness");
  doc.update({{"system", rs.name()}, {"field", group.field().name()}, {"automorphism", c.automorphism},
              {"normalized_automorphism", w.automorphism.describe()},
              {"inner_part_absorbed", w.inner_part_absorbed}, {"count", w.elements.size()},
              {"elements", elements}, {"certified_lower_bound", w.elements.size()}});
  return doc;
}

json cmd_invariant(const CliConfig& c) {
  RootSystem rs = RootSystem::build(parse_type(c.type), c.rank);
  ChevalleyGroup group(make_basis(rs), parse_field(c.field));
  GroupAutomorphism phi = parse_automorphism(c.automorphism, group);
  GroupElement x = group.evaluate_word(c.word);
  json doc = header("invariant");
  doc.update({{"system", rs.name()}, {"field", group.field().name()}, {"automorphism", c.automorphism},
              {"word", c.word}, {"invariant", polynomial_json(norm_invariant(x.matrix, phi))}});
  return doc;
}

json cmd_trace_kt(const CliConfig& c) {
  RootSystem rs = RootSystem::build(parse_type(c.type), c.rank);
  const FieldDescriptor& base = parse_field(c.field);
  std::vector<Scalar> chi = c.chi.empty() ? std::vector<Scalar>(static_cast<std::size_t>(rs.rank()),
                                                                Scalar::in(base, 1))
                                          : parse_scalars(c.chi, base);
  Scalar tr = trace_in_function_field(rs, c.power, chi, base);
  json chis = json::array();
  for (const Scalar& s : chi) chis.push_back(s.to_string());
  json doc = header("trace-kt");
  doc.update({{"system", rs.name()}, {"base_field", base.name()}, {"field", tr.field()->name()},
              {"power", c.power}, {"chi", chis}, {"trace", tr.to_string()}, {"degree", rational_degree(tr)},
              {"nonconstant", rational_degree(tr) >= 1}});
  return doc;
}

json dispatch(const std::string& command, const CliConfig& c, std::ostream& err) {
  if (command == "rootsys") return cmd_rootsys(c);
  if (command == "basis") return cmd_basis(c);
  if (command == "element") return cmd_element(c);
  if (command == "relations") return cmd_relations(c);
  if (command == "twist") return cmd_twist(c, err);
  if (command == "reidemeister") return cmd_reidemeister(c, err);
  if (command == "isogredience") return cmd_isogredience(c, err);
  if (command == "witness") return cmd_witness(c);
  if (command == "invariant") return cmd_invariant(c);
  if (command == "trace-kt") return cmd_trace_kt(c);
  fail(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
}

}  // namespace

int run(const std::string& command, const CliConfig& config, std::ostream& out, std::ostream& err) {
  json doc;
  int code = kExitOk;
  try {
    doc = dispatch(command, config, err);
  } catch (const Error& e) {
    doc = {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
    code = e.code() == ErrorCode::BudgetExceeded ? kExitBudget : kExitComputation;
  }
  std::string text = doc.dump(2) + "\n";
  if (config.output.empty()) {
    out << text;
  } else {
    std::ofstream file(config.output);
    if (!file) {
      err << "cannot write " << config.output << "\n";
      return kExitUsage;
    }
    file << text;
  }
  return code;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig c;
  if (const char* env = std::getenv("CHEVTWIST_BUDGET")) {
    try {
      c.budget = std::stoull(env);
    } catch (const std::exception&) {
      err << "CHEVTWIST_BUDGET must be a positive integer\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Exact Chevalley groups, twists and twisted conjugacy", "chevtwist"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  auto system_opts = [&c](CLI::App* sub) {
    sub->add_option("--type", c.type, "Root system type: A, D or E")->capture_default_str();
    sub->add_option("--rank", c.rank, "Rank of the root system")->capture_default_str();
  };
  auto field_opt = [&c](CLI::App* sub) {
    sub->add_option("--field", c.field, "Field: Q, Q(sqrt,d), F(p,e), RF(<base>,T)")->capture_default_str();
  };
  auto aut_opt = [&c](CLI::App* sub) {
    sub->add_option("--aut", c.automorphism,
                    "Automorphism: factors id | inner:[word] | diag:c1,...,cl | field:<id|conj|frob<r>|...> "
                    "joined by '*', rightmost applied first")
        ->capture_default_str();
  };
  auto instance_opts = [&c](CLI::App* sub) {
    sub->add_option("--instance", c.instance, "Finite instance: adjoint, twisted or sl2")
        ->check(CLI::IsMember({"adjoint", "twisted", "sl2"}))
        ->capture_default_str();
    sub->add_option("--symmetry", c.symmetry, "Diagram symmetry for twisted instances")->capture_default_str();
  };

  std::vector<CLI::App*> subs;
  auto* rootsys = app.add_subcommand("rootsys", "Dump the ordered root system and Cartan matrix");
  system_opts(rootsys);
  subs.push_back(rootsys);

  auto* basis = app.add_subcommand("basis", "Dump Chevalley basis structure constants");
  system_opts(basis);
  subs.push_back(basis);

  auto* element = app.add_subcommand("element", "Evaluate a generator word, e.g. \"x a1 2; n -a2 1/3; d 2,3\"");
  system_opts(element);
  field_opt(element);
  element->add_option("--word", c.word, "Generator word")->required();
  subs.push_back(element);

  auto* relations = app.add_subcommand("relations", "Extract commutator constants and check Steinberg relations");
  system_opts(relations);
  field_opt(relations);
  relations->add_option("--trials", c.trials, "Random trials per relation family")->capture_default_str();
  subs.push_back(relations);

  auto* twist = app.add_subcommand("twist", "Set up sigma = graph o field and list fixed unipotent generators");
  system_opts(twist);
  field_opt(twist);
  twist->add_option("--symmetry", c.symmetry, "standard, identity or perm:<i1,...,il>")->capture_default_str();
  twist->add_option("--field-aut", c.field_automorphism, "Field automorphism (default: the involution)");
  twist->add_option("--seeds", c.seeds, "Comma-separated seeds (default: all of a finite field, else 1,2)");
  twist->add_flag("--enumerate", c.enumerate, "Enumerate the twisted group (finite fields)");
  subs.push_back(twist);

  auto* reidemeister = app.add_subcommand("reidemeister", "Count twisted conjugacy classes on a finite instance");
  system_opts(reidemeister);
  field_opt(reidemeister);
  aut_opt(reidemeister);
  instance_opts(reidemeister);
  subs.push_back(reidemeister);

  auto* isogredience = app.add_subcommand("isogredience", "Count isogredience classes of Inn(G)*gamma");
  system_opts(isogredience);
  field_opt(isogredience);
  aut_opt(isogredience);
  instance_opts(isogredience);
  subs.push_back(isogredience);

  auto* witness = app.add_subcommand("witness", "Certify pairwise non-twisted-conjugate elements");
  system_opts(witness);
  field_opt(witness);
  aut_opt(witness);
  witness->add_option("--count", c.count, "Family size")->capture_default_str();
  subs.push_back(witness);

  auto* invariant = app.add_subcommand("invariant", "Norm invariant of a word under a finite-order automorphism");
  system_opts(invariant);
  field_opt(invariant);
  aut_opt(invariant);
  invariant->add_option("--word", c.word, "Generator word")->required();
  subs.push_back(invariant);

  auto* trace = app.add_subcommand("trace-kt", "Trace of g(T)^m h(chi) over k(T)");
  system_opts(trace);
  field_opt(trace);
  trace->add_option("--power", c.power, "Exponent m")->capture_default_str();
  trace->add_option("--chi", c.chi, "Comma-separated character values (default all 1)");
  subs.push_back(trace);

  for (auto* sub : subs) {
    sub->add_option("--seed", c.seed, "Seed for randomized checks")->capture_default_str();
    sub->add_option("--budget", c.budget, "Enumeration budget (env CHEVTWIST_BUDGET)")->capture_default_str();
    sub->add_option("--output,-o", c.output, "Write JSON here instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int status = app.exit(e, out, err);
    return status == 0 ? kExitOk : kExitUsage;
  }
  for (auto* sub : subs)
    if (sub->parsed()) return run(sub->get_name(), c, out, err);
  return kExitUsage;
}

}  // namespace chevtwist
