// supergeo: batch front end over .sg session files.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "supergeo/verification.hpp"

namespace {

using namespace supergeo;
using structured::Json;

enum Exit : int { kOk = 0, kOther = 1, kParse = 2, kValidation = 3, kMismatch = 4, kIo = 5 };

/// Unknown names and malformed arguments.
class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

struct Config {
  std::string format = "text";
  std::uint64_t seed = 0;
  unsigned cases = 100;
  bool cases_given = false;
  unsigned grid = kDefaultGrid;
};

/// Defaults from the JSON file named by SUPERGEO_CONFIG, if any.
Config load_config() {
  Config c;
  const char* path = std::getenv("SUPERGEO_CONFIG");
  if (!path || !*path) return c;
  std::ifstream in(path);
  if (!in) throw IoError(std::string("cannot read config ") + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError(std::string("config ") + path + ": " + e.what());
  }
  c.format = j.value("format", c.format);
  c.seed = j.value("seed", c.seed);
  if (j.contains("cases")) {
    c.cases = j.at("cases").get<unsigned>();
    c.cases_given = true;
  }
  c.grid = j.value("grid", c.grid);
  return c;
}

struct Result {
  int code = kOk;
  std::string text;
  Json json;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Session {
 public:
  Session(Config cfg, std::optional<std::string> path) : cfg_(std::move(cfg)) {
    if (path) load(*path);
  }

  void load(const std::string& path) {
    file_ = dsl::parse(read_text(path), {cfg_.grid});
    path_ = path;
  }

  Config& config() { return cfg_; }
  const std::string& path() const { return path_; }
  bool loaded() const { return file_.has_value(); }

  const dsl::ParsedFile& file() const {
    if (!file_) throw UsageError("this command needs a session file (-f FILE)");
    return *file_;
  }

  const SuperFunction& function(const std::string& n) const { return lookup(file().symbols.functions, n, "function"); }
  const SmMorphism& morphism(const std::string& n) const { return lookup(file().symbols.morphisms, n, "morphism"); }
  const CoalgebraElement& element(const std::string& n) const { return lookup(file().symbols.elements, n, "element"); }
  Cocycle cocycle(const std::string& n) const {
    return dsl::to_cocycle(lookup(file().symbols.cocycles, n, "cocycle"), file().symbols);
  }

 private:
  template <class Map>
  static const typename Map::mapped_type& lookup(const Map& m, const std::string& n, const char* what) {
    auto it = m.find(n);
    if (it == m.end()) throw UsageError(std::string("no ") + what + " named '" + n + "'");
    return it->second;
  }

  Config cfg_;
  std::optional<dsl::ParsedFile> file_;
  std::string path_;
};

// ------------------------------------------------------------ text helpers

std::string morphism_text(const SmMorphism& F) {
  std::string out;
  for (std::size_t J = 0; J < F.coords.size(); ++J) {
    out += dsl::slot_name(J, F.target.m()) + " = " + dsl::to_text(F.coords[J]) + ";\n";
  }
  return out;
}

std::string report_text(const std::string& what, const CheckReport& r) {
  std::string out = what + ": " + (r.ok ? "ok" : "invalid") + "\n";
  for (const auto& f : r.failures) out += "  " + f + "\n";
  return out;
}

GradedSpaceSig parse_space(const std::string& s) {
  static const std::regex re(R"(R\((\d+)\|(\d+)\))");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw UsageError("expected a space like R(2|2), got '" + s + "'");
  return {std::stoul(m[1].str()), std::stoul(m[2].str()), "X"};
}

std::vector<Letter> parse_dirs(const std::vector<std::string>& words) {
  static const std::regex re(R"(([eo])(\d*))");
  std::vector<Letter> out;
  for (const auto& w : words) {
    std::smatch m;
    if (!std::regex_match(w, m, re)) throw UsageError("direction '" + w + "' is not e<k> or o<k>");
    const std::size_t k = m[2].str().empty() ? 1 : std::stoul(m[2].str());
    if (k == 0) throw UsageError("directions are numbered from 1");
    out.push_back({m[1].str() == "o" ? Parity::odd : Parity::even, k - 1});
  }
  return out;
}

/// "()", "1/2,3" or "(1/2,3)".
Point parse_point(std::string s) {
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw UsageError("unbalanced point '" + s + "'");
    s = s.substr(1, s.size() - 2);
  }
  Point p;
  if (s.empty()) return p;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      p.push_back(parse_rational(item));
    } catch (const std::exception&) {
      throw UsageError("bad coordinate '" + item + "'");
    }
  }
  return p;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---------------------------------------------------------------- commands

struct Request {
  std::optional<std::string> file;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> cases;
  std::optional<unsigned> grid;
  std::vector<std::string> names;
  std::string route = "subst";
  std::vector<std::string> dirs;
  std::optional<std::string> at;
  std::string family;
  unsigned degree = 4;
  int criterion = 0;
  std::string fixtures;
};

Result cmd_check_hopf(Session& s, const Request& q) {
  const GradedSpaceSig X = parse_space(q.names.at(0));
  const auto r = verify::hopf_axioms(X, q.degree, s.config().cases, s.config().seed);
  Result out;
  out.code = r.ok ? kOk : kMismatch;
  out.text = "hopf " + dsl::signature_text(X) + ": " + (r.ok ? "PASS" : "FAIL") + " (" + r.detail + ")\n";
  out.json = Json{{"space", dsl::signature_text(X)}, {"ok", r.ok}, {"checks", r.checks}, {"detail", r.detail}};
  return out;
}

Result cmd_compose(Session& s, const Request& q) {
  const SmMorphism& G = s.morphism(q.names.at(0));
  const SmMorphism& F = s.morphism(q.names.at(1));
  if (q.route != "subst" && q.route != "parts" && q.route != "both") {
    throw UsageError("--route must be subst, parts or both");
  }
  Result out;
  std::optional<SmMorphism> subst;
  std::optional<SmMorphism> parts;
  if (q.route != "parts") subst = compose_substitution(G, F);
  if (q.route != "subst") parts = morphism_from_components(compose_components(components(G), components(F)));
  const SmMorphism& shown = subst ? *subst : *parts;
  out.text = morphism_text(shown);
  out.json = Json{{"route", q.route}, {"morphism", structured::to_json(shown)}};
  if (subst && parts) {
    const bool agree = subst->coords == parts->coords;
    out.json["agree"] = agree;
    if (!agree) {
      out.code = kMismatch;
      out.text = "substitution:\n" + morphism_text(*subst) + "components:\n" + morphism_text(*parts) +
                 "routes disagree\n";
      out.json["components"] = structured::to_json(*parts);
    } else {
      out.text += "routes agree\n";
    }
  }
  return out;
}

Result cmd_pullback(Session& s, const Request& q) {
  const SuperFunction r = pullback(s.morphism(q.names.at(0)), s.function(q.names.at(1)));
  return {kOk, dsl::to_text(r) + "\n", structured::to_json(r)};
}

Result cmd_pair(Session& s, const Request& q) {
  const Rational v = pair(s.element(q.names.at(0)), s.function(q.names.at(1)));
  return {kOk, to_string(v) + "\n", Json{{"value", structured::to_json(v)}}};
}

Result cmd_derive(Session& s, const Request& q) {
  const SuperFunction& f = s.function(q.names.at(0));
  const std::vector<Letter> word = parse_dirs(q.dirs);
  for (const auto& l : word) {
    const std::size_t lim = is_odd(l.parity) ? f.domain().n() : f.domain().m();
    if (l.index >= lim) throw UsageError("direction out of range for " + f.domain().space.id);
  }
  if (!q.at) {
    const SuperFunction r = sf_derivative_word(f, word);
    return {kOk, dsl::to_text(r) + "\n", structured::derivative_json(f, word, r)};
  }
  const Point u = parse_point(*q.at);
  if (u.size() != f.domain().m()) throw UsageError("point has the wrong dimension");
  require_in_box(f.domain(), u);
  const Rational v = underlying_derivative(f, word).evaluate(u);
  return {kOk, to_string(v) + "\n", structured::derivative_value_json(f, word, u, v)};
}

Result cmd_pushforward(Session& s, const Request& q) {
  const CoalgebraElement r = apply_coalgebra(s.morphism(q.names.at(0)), s.element(q.names.at(1)));
  return {kOk, dsl::to_text(r) + "\n", structured::to_json(r)};
}

Result cmd_cocycle_check(Session& s, const Request& q) {
  const AtlasView atlas(s.cocycle(q.names.at(0)));
  const CheckReport r = cocycle_validate(atlas, s.config().grid);
  return {r.ok ? kOk : kValidation, report_text("cocycle " + q.names[0], r),
          Json{{"cocycle", q.names[0]}, {"report", structured::to_json(r)}}};
}

Result cmd_glue(Session& s, const Request& q) {
  const GluedSupermanifold M = glue(s.cocycle(q.names.at(0)), s.config().grid);
  const auto& c = M.atlas().cocycle();
  std::string text = "glued " + c.name + ": " + std::to_string(c.charts.size()) + " charts, " +
                     std::to_string(c.overlaps.size()) + " overlaps\n";
  Json charts = Json::array();
  for (const auto& ch : c.charts) charts.push_back(Json{{"id", ch.id}, {"box", dsl::box_text(ch.box).substr(1)}});
  return {kOk, text, Json{{"cocycle", c.name}, {"charts", charts}, {"overlaps", c.overlaps.size()}}};
}

Result cmd_global_check(Session& s, const Request& q) {
  const GluedSupermanifold M = glue(s.cocycle(q.names.at(0)), s.config().grid);
  GlobalSuperFunction fam;
  for (const auto& n : split_names(q.family)) fam.push_back(s.function(n));
  const CheckReport r = global_superfunction_check(M, fam);
  return {r.ok ? kOk : kValidation, report_text("family on " + q.names[0], r),
          Json{{"cocycle", q.names[0]}, {"family", split_names(q.family)}, {"report", structured::to_json(r)}}};
}

Result cmd_components(Session& s, const Request& q) {
  const SmMorphism& F = s.morphism(q.names.at(0));
  const ComponentFamily c = components(F);
  std::string text;
  for (std::size_t j = 0; j < c.underlying.size(); ++j) {
    text += "underlying " + dsl::slot_name(j, c.target.m()) + " = " + dsl::to_text(c.underlying[j]) + "\n";
  }
  for (const auto& [mono, v] : c.table) {
    text += "[" + dsl::generator_text(mono) + "]";
    for (std::size_t J = 0; J < v.size(); ++J) {
      if (!v[J].is_zero()) text += " " + dsl::slot_name(J, c.target.m()) + " = " + dsl::to_text(v[J]) + ";";
    }
    text += "\n";
  }
  const CheckReport smooth = smoothness_check(c);
  text += std::string("smoothness: ") + (smooth.ok ? "ok" : smooth.failures.front()) + "\n";
  Json j = structured::to_json(c);
  j["smoothness"] = structured::to_json(smooth);
  return {smooth.ok ? kOk : kValidation, text, j};
}

Result cmd_algebra(Session&, const Request& q) {
  const std::string& op = q.names.at(0);
  const GradedSpaceSig X = parse_space(q.names.at(1));
  const SuperDomain d(X, Box::whole(X.even_dim));
  const AlgebraElement a = to_algebra_element(dsl::evaluate(dsl::parse_expression(q.names.at(2)), d));
  if (op == "antipode") {
    const AlgebraElement r = antipode(a);
    return {kOk, dsl::to_text(r) + "\n", structured::algebra_op_json(op, a, structured::to_json(r))};
  }
  if (op == "coproduct") {
    const auto r = comultiply(a);
    return {kOk, dsl::to_text(r) + "\n", structured::algebra_op_json(op, a, structured::to_json(r))};
  }
  if (op == "counit") {
    const Rational r = counit(a);
    return {kOk, to_string(r) + "\n", structured::algebra_op_json(op, a, structured::to_json(r))};
  }
  throw UsageError("algebra operation must be antipode, coproduct or counit");
}

Result cmd_verify(Session& s, const Request& q) {
  verify::Options o;
  o.seed = s.config().seed;
  o.cases = s.config().cases_given ? s.config().cases : 0;
  o.grid = s.config().grid;
  o.fixture_dir = q.fixtures;
  Result out;
  Json list = Json::array();
  const int n = static_cast<int>(verify::all_criteria().size());
  for (int id = 1; id <= n; ++id) {
    if (q.criterion && q.criterion != id) continue;
    const auto r = verify::run_criterion(id, o);
    out.text += "criterion " + std::to_string(id) + ": " + (r.ok ? "PASS" : "FAIL") + "  " + r.name + " (" +
                r.detail + ")\n";
    list.push_back(Json{{"id", id}, {"name", r.name}, {"ok", r.ok}, {"checks", r.checks}, {"detail", r.detail}});
    if (!r.ok) out.code = kMismatch;
  }
  out.json = Json{{"criteria", list}};
  return out;
}

Result execute(Session& s, const std::vector<std::string>& words);

Result cmd_run(Session& s, const Request& q) {
  if (!q.names.empty()) s.load(q.names[0]);
  Result out;
  Json results = Json::array();
  for (const auto& decl : s.file().ast.decls) {
    const auto* c = std::get_if<dsl::CommandDecl>(&decl);
    if (!c) continue;
    std::string line;
    for (const auto& w : c->words) line += (line.empty() ? "" : " ") + w;
    const Result r = execute(s, c->words);
    out.text += "> " + line + "\n" + r.text;
    results.push_back(Json{{"command", line}, {"exit", r.code}, {"output", r.json}});
    if (out.code == kOk) out.code = r.code;
  }
  out.json = Json{{"file", s.path()}, {"results", results}};
  return out;
}

int exit_class(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kIo;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const UsageError*>(&e)) return kParse;
  if (dynamic_cast<const Error*>(&e)) return kValidation;
  return kOther;
}

Result error_result(const std::exception& e, int code) {
  return {code, std::string("error: ") + e.what() + "\n", Json{{"error", e.what()}, {"exit", code}}};
}

/// Builds the command tree; `top` adds the session-level options.
struct Cli {
  CLI::App app{"supergeo: exact computations with polynomial superfunctions", "supergeo"};
  Request q;
  std::vector<std::pair<CLI::App*, Result (*)(Session&, const Request&)>> leaves;

  explicit Cli(bool top) {
    app.require_subcommand(1);
    app.fallthrough();
    if (top) app.add_option("-f,--file", q.file, "session file (.sg)");
    app.add_option("--format", q.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--seed", q.seed, "random seed (default 0)");
    app.add_option("--cases", q.cases, "cases per randomized check (default 100)");
    app.add_option("--grid", q.grid, "sample points per axis for image checks (default 3)");

    auto* check = app.add_subcommand("check", "property suites")->require_subcommand(1);
    auto* hopf = check->add_subcommand("hopf", "Hopf axioms on S(R(m|n))");
    hopf->add_option("space", q.names, "space, e.g. R(3|3)")->required()->expected(1);
    hopf->add_option("--degree", q.degree, "maximal degree (default 4)");
    leaves.emplace_back(hopf, cmd_check_hopf);

    auto* compose = app.add_subcommand("compose", "G∘F");
    compose->add_option("names", q.names, "G F")->required()->expected(2);
    compose->add_option("--route", q.route, "subst, parts or both");
    leaves.emplace_back(compose, cmd_compose);

    auto* pb = app.add_subcommand("pullback", "F^* g");
    pb->add_option("names", q.names, "F g")->required()->expected(2);
    leaves.emplace_back(pb, cmd_pullback);

    auto* pr = app.add_subcommand("pair", "<element, function>");
    pr->add_option("names", q.names, "element function")->required()->expected(2);
    leaves.emplace_back(pr, cmd_pair);

    auto* dv = app.add_subcommand("derive", "D^k f along basis directions");
    dv->add_option("names", q.names, "function")->required()->expected(1);
    dv->add_option("--dirs", q.dirs, "directions e<k> / o<k>, first applied last")->required();
    dv->add_option("--at", q.at, "evaluate the underlying part at a point, e.g. (1/2,3) or ()");
    leaves.emplace_back(dv, cmd_derive);

    auto* pf = app.add_subcommand("pushforward", "F_* of a distribution");
    pf->add_option("names", q.names, "F element")->required()->expected(2);
    leaves.emplace_back(pf, cmd_pushforward);

    auto* cc = app.add_subcommand("cocycle", "atlas validation")->require_subcommand(1);
    auto* ccheck = cc->add_subcommand("check", "validate a cocycle");
    ccheck->add_option("names", q.names, "cocycle")->required()->expected(1);
    leaves.emplace_back(ccheck, cmd_cocycle_check);

    auto* gl = app.add_subcommand("glue", "glue a validated cocycle");
    gl->add_option("names", q.names, "cocycle")->required()->expected(1);
    leaves.emplace_back(gl, cmd_glue);

    auto* gg = app.add_subcommand("global", "global objects")->require_subcommand(1);
    auto* gcheck = gg->add_subcommand("check", "check a family of chart-wise superfunctions");
    gcheck->add_option("names", q.names, "cocycle")->required()->expected(1);
    gcheck->add_option("--family", q.family, "comma-separated function names, one per chart")->required();
    leaves.emplace_back(gcheck, cmd_global_check);

    auto* comp = app.add_subcommand("components", "underlying map and infinitesimal components");
    comp->add_option("names", q.names, "morphism")->required()->expected(1);
    leaves.emplace_back(comp, cmd_components);

    auto* alg = app.add_subcommand("algebra", "antipode, coproduct or counit in S(R(m|n))");
    alg->add_option("names", q.names, "op space expr")->required()->expected(3);
    leaves.emplace_back(alg, cmd_algebra);

    if (top) {
      auto* run = app.add_subcommand("run", "execute the run commands of a session file");
      run->add_option("names", q.names, "session file (or -f)")->expected(0, 1);
      leaves.emplace_back(run, cmd_run);

      auto* ver = app.add_subcommand("verify", "acceptance criteria");
      ver->add_option("--criterion", q.criterion, "run one criterion (1-12)")->check(CLI::Range(1, 12));
      ver->add_option("--fixtures", q.fixtures, "fixture directory for the round-trip criterion");
      leaves.emplace_back(ver, cmd_verify);
    }
  }

  void apply(Config& c) const {
    if (q.format) c.format = *q.format;
    if (q.seed) c.seed = *q.seed;
    if (q.cases) {
      c.cases = *q.cases;
      c.cases_given = true;
    }
    if (q.grid) c.grid = *q.grid;
  }

  Result dispatch(Session& s) const {
    for (const auto& [sub, fn] : leaves) {
      if (sub->parsed()) return fn(s, q);
    }
    throw UsageError("no command given");
  }
};

/// One `run` line inside a session; options apply to that line only.
Result execute(Session& s, const std::vector<std::string>& words) {
  Cli cli(false);
  try {
    std::vector<std::string> args(words.rbegin(), words.rend());
    cli.app.parse(args);
  } catch (const CLI::ParseError& e) {
    return {kParse, std::string("error: ") + e.what() + "\n", Json{{"error", e.what()}, {"exit", kParse}}};
  }
  const Config saved = s.config();
  cli.apply(s.config());
  Result r;
  try {
    r = cli.dispatch(s);
  } catch (const std::exception& e) {
    r = error_result(e, exit_class(e));
  }
  s.config() = saved;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  Cli cli(true);
  try {
    cli.app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.app.exit(e);
    return code == 0 ? kOk : kParse;
  }
  Config cfg;
  Result r;
  try {
    cfg = load_config();
    cli.apply(cfg);
    Session session(cfg, cli.q.file);
    r = cli.dispatch(session);
  } catch (const std::exception& e) {
    r = error_result(e, exit_class(e));
  }
  const std::string command = [&] {
    for (const auto& [sub, fn] : cli.leaves) {
      if (!sub->parsed()) continue;
      const CLI::App* parent = sub->get_parent();
      return parent && parent != &cli.app ? parent->get_name() + " " + sub->get_name() : sub->get_name();
    }
    return std::string("none");
  }();
  if (cfg.format == "structured") {
    std::cout << structured::dump(structured::envelope(command, r.json));
  } else if (r.code == kOk || r.code == kMismatch || (r.code == kValidation && !r.json.contains("error"))) {
    std::cout << r.text;
  } else {
    std::cerr << r.text;
  }
  return r.code;
}
