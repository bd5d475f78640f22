#include "vekua/experiment.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "vekua/catalog.hpp"
#include "vekua/descriptor.hpp"
#include "vekua/error.hpp"

namespace vekua {

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  fail(ErrorCode::ConfigInvalid, "config field '" + field + "': " + why);
}

double get_number(const Json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_number(j.get<std::string>());
    } catch (const Error&) {
    }
  }
  bad_field(field, "expected a number");
}

std::string get_string(const Json& j, const std::string& field) {
  if (!j.is_string()) bad_field(field, "expected a string");
  return j.get<std::string>();
}

std::vector<double> get_numbers(const Json& j, const std::string& field) {
  if (!j.is_array()) bad_field(field, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(get_number(v, field));
  return out;
}

Complex get_complex(const Json& j, const std::string& field) {
  if (j.is_array()) {
    if (j.size() != 2) bad_field(field, "expected [re, im]");
    return {get_number(j[0], field), get_number(j[1], field)};
  }
  return {get_number(j, field), 0.0};
}

int get_int(const Json& j, const std::string& field) {
  const double v = get_number(j, field);
  if (v != std::floor(v) || std::abs(v) > 1e9) bad_field(field, "expected an integer");
  return static_cast<int>(v);
}

Json complex_config(Complex z) { return Json::array({z.real(), z.imag()}); }

std::string one_of(const std::string& value, std::initializer_list<const char*> options, const std::string& field) {
  for (const char* o : options) {
    if (value == o) return value;
  }
  std::string list;
  for (const char* o : options) list += std::string(list.empty() ? "" : " | ") + o;
  bad_field(field, "'" + value + "' is not one of " + list);
}

// ---- building blocks ----------------------------------------------------------

struct Setup {
  const ExperimentConfig& cfg;
  std::string sub;

  double spacing(double fallback) const {
    const double h = cfg.spacing.value_or(fallback);
    if (!(h > 0.0) || !std::isfinite(h)) bad_field("spacing", "must be positive");
    return h;
  }

  DomainSpec domain(const std::string& fallback) const {
    const std::string text = cfg.domain.empty() ? fallback : cfg.domain;
    if (text.empty()) bad_field("domain", "required for " + sub);
    try {
      const DomainSpec d = parse_domain(text);
      if (!d.bounded()) bad_field("domain", text + " is unbounded; give a finite R");
      return d;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConfigInvalid) throw;
      bad_field("domain", e.what());
    }
  }

  std::vector<double> epsilons() const {
    if (cfg.epsilons.empty()) return DamperFamily::default_epsilons();
    for (double e : cfg.epsilons) {
      if (!(e > 0.0) || !std::isfinite(e)) bad_field("epsilons", "values must be positive");
    }
    return cfg.epsilons;
  }

  DamperFamily dampers() const {
    if (one_of(cfg.damper, {"halfplane", "logmap"}, "damper") == "halfplane") {
      return DamperFamily::half_plane(epsilons());
    }
    if (!(cfg.radius > 0.0)) bad_field("radius", "must be positive");
    return DamperFamily::log_map(cfg.center, cfg.radius, epsilons());
  }

  WeightField weight() const {
    try {
      return make_weight(cfg.weight);
    } catch (const Error& e) {
      bad_field("weight", e.what());
    }
  }

  FieldEntry seed() const {
    try {
      return make_field(cfg.seed);
    } catch (const Error& e) {
      bad_field("seed", e.what());
    }
  }

  SolveOptions solve_options() const {
    SolveOptions o;
    if (!(cfg.tol > 0.0)) bad_field("tol", "must be positive");
    if (cfg.max_iter < 1) bad_field("max_iter", "must be at least 1");
    o.tol = cfg.tol;
    o.max_iter = cfg.max_iter;
    o.holomorphy_tol = cfg.holomorphy_tol;
    return o;
  }

  // The field to examine: a dump, an exact closed form, or a solve.
  SolutionField field(const Grid& grid, SampleScope scope) const {
    if (!cfg.solution.empty()) return load_solution(cfg.solution);
    const FieldEntry f = seed();
    const WeightField alpha = weight();
    if (f.holomorphic && alpha.name() == "zero") {
      return closed_form_solution(grid, f.fn, f.name, alpha.name(), scope);
    }
    if (!f.holomorphic) {
      if (make_weight(f.solves).name() != alpha.name()) {
        bad_field("seed", f.name + " solves the equation for " + f.solves + ", not " + alpha.name());
      }
      return closed_form_solution(grid, f.fn, f.name, alpha.name(), scope);
    }
    return solve_vekua(f.fn, alpha, grid, solve_options());
  }
};

Json base_body(std::string_view sub, const ExperimentConfig& cfg) {
  Json b;
  b["subcommand"] = sub;
  b["config"] = config_to_json(cfg);
  return b;
}

int exit_for(VerdictKind v) { return v == VerdictKind::Fails ? 1 : 0; }
int exit_for(PassVerdict v) { return v == PassVerdict::Pass ? 0 : 1; }

RunResult check_weight(const Setup& s) {
  const auto& cfg = s.cfg;
  const std::string cond = one_of(cfg.condition, {"carl", "halfplane", "logmap", "threelines"}, "condition");
  const std::string fallback =
      cond == "threelines" ? "strip{" + format_number(cfg.strip_a) + "," + format_number(cfg.strip_b) + "," +
                                 format_number(cfg.y_cut) + "}"
                           : "";
  const Grid grid = build_grid(s.domain(fallback), s.spacing(0.05));
  const WeightField alpha = s.weight();
  ConditionReport r;
  if (cond == "carl") {
    r = check_carl(alpha, grid);
  } else if (cond == "halfplane") {
    r = check_halfplane(alpha, grid, DamperFamily::half_plane(s.epsilons()));
  } else if (cond == "logmap") {
    r = check_logmap(alpha, grid, cfg.center, cfg.radius, DamperFamily::log_map(cfg.center, cfg.radius, s.epsilons()));
  } else {
    if (!cfg.m_a) bad_field("ma", "required for the three-lines condition");
    if (!cfg.m_b) bad_field("mb", "required for the three-lines condition");
    r = check_threelines_condition(alpha, grid, *cfg.m_a, *cfg.m_b, cfg.strip_a, cfg.strip_b,
                                   DamperFamily::half_plane(s.epsilons()));
  }
  RunResult out;
  out.body = base_body(s.sub, cfg);
  out.body["report"] = to_json(r);
  out.exit_code = exit_for(r.verdict.kind);
  out.files.emplace_back("margins.csv", margin_csv(r, grid));
  return out;
}

RunResult solve(const Setup& s) {
  const auto& cfg = s.cfg;
  const Grid grid = build_grid(s.domain(""), s.spacing(0.05));
  const FieldEntry f = s.seed();
  const WeightField alpha = s.weight();
  RunResult out;
  out.body = base_body(s.sub, cfg);
  try {
    SolutionField w = solve_vekua(f.fn, alpha, grid, s.solve_options());
    residual(w, alpha);
    const auto& p = std::get<FixedPointProvenance>(w.provenance);
    Json r;
    r["converged"] = true;
    r["iterations"] = p.iterations;
    r["final_update"] = p.final_update;
    r["observed_ratio"] = p.observed_ratio;
    r["contraction_bound"] = p.contraction_bound;
    r["residual_linf"] = *w.residual_linf;
    r["history"] = p.history;
    r["sup_abs"] = sup_abs(w.values, grid.domain_indices());
    out.body["report"] = r;
    std::ostringstream dump;
    write_solution(dump, w);
    out.files.emplace_back("solution.txt", dump.str());
    out.exit_code = 0;
  } catch (const NoConvergenceError& e) {
    Json r;
    r["converged"] = false;
    r["message"] = e.what();
    Json h = Json::array();
    for (double x : e.history()) h.push_back(number_json(x));
    r["history"] = h;
    out.body["report"] = r;
    out.exit_code = 1;
  }
  return out;
}

RunResult verify_max(const Setup& s) {
  const auto& cfg = s.cfg;
  MaxPrincipleOptions o;
  const std::string mode = one_of(cfg.mode, {"auto", "bounded", "unbounded"}, "mode");
  o.mode = mode == "auto" ? MaxMode::Auto : mode == "bounded" ? MaxMode::Bounded : MaxMode::Unbounded;
  if (!(cfg.c > 0.0)) bad_field("c", "must be positive");
  o.c = cfg.c;
  std::optional<DamperFamily> dampers;
  if (!cfg.epsilons.empty() || o.mode == MaxMode::Unbounded) dampers = s.dampers();
  std::optional<Grid> grid;
  if (cfg.solution.empty()) grid = build_grid(s.domain(""), s.spacing(0.05));
  const SolutionField w = grid ? s.field(*grid, SampleScope::Domain) : load_solution(cfg.solution);
  const MaxPrincipleReport r = max_principle_report(w, dampers, o);
  RunResult out;
  out.body = base_body(s.sub, cfg);
  out.body["report"] = to_json(r);
  out.exit_code = exit_for(r.verdict);
  return out;
}

RunResult three_lines(const Setup& s) {
  const auto& cfg = s.cfg;
  const std::string strip =
      "strip{" + format_number(cfg.strip_a) + "," + format_number(cfg.strip_b) + "," + format_number(cfg.y_cut) + "}";
  std::optional<Grid> grid;
  if (cfg.solution.empty()) grid = build_grid(s.domain(strip), s.spacing(0.05));
  const SolutionField w = grid ? s.field(*grid, SampleScope::Domain) : load_solution(cfg.solution);
  const ThreeLinesProfile p = three_lines_profile(w, cfg.strip_a, cfg.strip_b, cfg.y_cut, cfg.n_x);
  RunResult out;
  out.body = base_body(s.sub, cfg);
  out.body["profile"] = to_json(p);
  const ConvexityReport c = log_convexity_check(p);
  out.body["convexity"] = to_json(c);
  if (cfg.solution.empty() && s.weight().name() != "zero") {
    const ConditionReport cond = check_threelines_condition(s.weight(), w.grid, p.m.front(), p.m.back(), p.xs.front(),
                                                            p.xs.back(), DamperFamily::half_plane(s.epsilons()));
    out.body["condition"] = to_json(cond);
  }
  out.exit_code = exit_for(c.verdict);
  out.files.emplace_back("profile.csv", profile_csv(p));
  return out;
}

RunResult scan_mu(const Setup& s) {
  const auto& cfg = s.cfg;
  const Grid grid = build_grid(s.domain("halfplane{xmin:0.01,R:100}"), s.spacing(0.25));
  std::vector<double> mus = cfg.mus;
  if (mus.empty()) mus = {-2.0, -1.5, -1.0, -0.5, 0.0, 1.0};
  const auto rows = power_mu_scan(cfg.a_coef, mus, grid, DamperFamily::half_plane(s.epsilons()));
  // Expected pattern: only mu = -1 holds, or every mu holds when a = 0.
  bool consistent = true;
  for (const auto& row : rows) {
    const bool expect = cfg.a_coef == Complex{} || row.mu == -1.0;
    consistent = consistent && row.report.holds() == expect;
  }
  RunResult out;
  out.body = base_body(s.sub, cfg);
  out.body["grid"] = {{"domain", grid.domain().describe()}, {"spacing", grid.spacing()}};
  out.body["table"] = to_json(rows);
  out.body["verdict"] = consistent ? "Pass" : "Fail";
  out.exit_code = consistent ? 0 : 1;
  return out;
}

RunResult hp(const Setup& s) {
  const auto& cfg = s.cfg;
  std::optional<Grid> grid;
  if (cfg.solution.empty()) grid = build_grid(s.domain("disc"), s.spacing(1.0 / 64.0));
  const SolutionField w = grid ? s.field(*grid, SampleScope::All) : load_solution(cfg.solution);
  std::vector<double> radii = cfg.radii;
  if (radii.empty()) radii = {0.5, 0.9};
  const double norm = hp_norm(w.grid, w.values, cfg.p, radii);
  RunResult out;
  out.body = base_body(s.sub, cfg);
  Json r;
  r["p"] = cfg.p;
  r["radii"] = radii;
  r["norm"] = number_json(norm);
  bool pass = std::isfinite(norm);
  if (cfg.hp_bound) {
    r["bound"] = *cfg.hp_bound;
    pass = pass && norm <= *cfg.hp_bound;
  }
  r["verdict"] = pass ? "Pass" : "Fail";
  out.body["report"] = r;
  out.exit_code = pass ? 0 : 1;
  return out;
}

RunResult damper_check(const Setup& s) {
  const Grid grid = build_grid(s.domain(""), s.spacing(0.05));
  const DamperPropertiesReport r = damper_properties_check(s.dampers(), grid);
  RunResult out;
  out.body = base_body(s.sub, s.cfg);
  out.body["report"] = to_json(r);
  out.exit_code = r.all_pass() ? 0 : 1;
  return out;
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::ConfigInvalid, "config must be a JSON object");
  ExperimentConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "condition") {
      c.condition = get_string(v, key);
    } else if (key == "domain") {
      c.domain = get_string(v, key);
    } else if (key == "weight") {
      c.weight = get_string(v, key);
    } else if (key == "seed") {
      c.seed = get_string(v, key);
    } else if (key == "solution") {
      c.solution = get_string(v, key);
    } else if (key == "spacing") {
      c.spacing = get_number(v, key);
    } else if (key == "epsilons") {
      c.epsilons = get_numbers(v, key);
    } else if (key == "damper") {
      c.damper = get_string(v, key);
    } else if (key == "a") {
      c.a_coef = get_complex(v, key);
    } else if (key == "strip_a") {
      c.strip_a = get_number(v, key);
    } else if (key == "strip_b") {
      c.strip_b = get_number(v, key);
    } else if (key == "y_cut") {
      c.y_cut = get_number(v, key);
    } else if (key == "n_x") {
      c.n_x = get_int(v, key);
    } else if (key == "ma") {
      c.m_a = get_number(v, key);
    } else if (key == "mb") {
      c.m_b = get_number(v, key);
    } else if (key == "mus") {
      c.mus = get_numbers(v, key);
    } else if (key == "center") {
      c.center = get_complex(v, key);
    } else if (key == "radius") {
      c.radius = get_number(v, key);
    } else if (key == "p") {
      c.p = get_number(v, key);
    } else if (key == "radii") {
      c.radii = get_numbers(v, key);
    } else if (key == "hp_bound") {
      c.hp_bound = get_number(v, key);
    } else if (key == "mode") {
      c.mode = get_string(v, key);
    } else if (key == "c") {
      c.c = get_number(v, key);
    } else if (key == "tol") {
      c.tol = get_number(v, key);
    } else if (key == "max_iter") {
      c.max_iter = get_int(v, key);
    } else if (key == "holomorphy_tol") {
      c.holomorphy_tol = get_number(v, key);
    } else {
      bad_field(key, "unknown field");
    }
  }
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["condition"] = c.condition;
  j["domain"] = c.domain;
  j["weight"] = c.weight;
  j["seed"] = c.seed;
  j["solution"] = c.solution;
  if (c.spacing) j["spacing"] = *c.spacing;
  j["epsilons"] = c.epsilons;
  j["damper"] = c.damper;
  j["strip_a"] = c.strip_a;
  j["strip_b"] = c.strip_b;
  j["y_cut"] = c.y_cut;
  j["n_x"] = c.n_x;
  if (c.m_a) j["ma"] = *c.m_a;
  if (c.m_b) j["mb"] = *c.m_b;
  j["mus"] = c.mus;
  j["a"] = complex_config(c.a_coef);
  j["center"] = complex_config(c.center);
  j["radius"] = c.radius;
  j["p"] = c.p;
  j["radii"] = c.radii;
  if (c.hp_bound) j["hp_bound"] = *c.hp_bound;
  j["mode"] = c.mode;
  j["c"] = c.c;
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  if (c.holomorphy_tol) j["holomorphy_tol"] = *c.holomorphy_tol;
  return j;
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"check-weight", "solve",  "verify-max",  "three-lines",
                                                 "scan-mu",      "hp-norm", "damper-check"};
  return names;
}

RunResult run(std::string_view subcommand, const ExperimentConfig& config) {
  const Setup s{config, std::string(subcommand)};
  try {
    if (subcommand == "check-weight") return check_weight(s);
    if (subcommand == "solve") return solve(s);
    if (subcommand == "verify-max") return verify_max(s);
    if (subcommand == "three-lines") return three_lines(s);
    if (subcommand == "scan-mu") return scan_mu(s);
    if (subcommand == "hp-norm") return hp(s);
    if (subcommand == "damper-check") return damper_check(s);
    fail(ErrorCode::ConfigInvalid, "unknown subcommand '" + std::string(subcommand) + "'");
  } catch (const Error& e) {
    RunResult out;
    out.exit_code = 2;
    out.body = base_body(subcommand, config);
    out.body["error"] = {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    return out;
  }
}

RunResult run_to_directory(std::string_view subcommand, const ExperimentConfig& config, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  RunResult r = run(subcommand, config);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create " + out_dir + ": " + ec.message());
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  Json report;
  report["body"] = r.body;
  report["metadata"] = {{"timestamp", stamp}, {"runtime_seconds", seconds}, {"exit_code", r.exit_code}};
  const auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream f(fs::path(out_dir) / name);
    f << text;
    if (!f) fail(ErrorCode::IoError, "cannot write " + (fs::path(out_dir) / name).string());
  };
  write("report.json", report.dump(2) + "\n");
  for (const auto& [name, text] : r.files) write(name, text);
  return r;
}

}  // namespace vekua
