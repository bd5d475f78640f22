#include "vekua/serialize.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vekua/descriptor.hpp"
#include "vekua/error.hpp"

namespace vekua {

namespace {

std::vector<double> numbers_of(const Descriptor& d, std::size_t count) {
  auto v = d.positional_numbers();
  if (v.size() != count) {
    fail(ErrorCode::ConfigInvalid, "domain '" + d.to_string() + "' needs " + std::to_string(count) + " numbers");
  }
  return v;
}

Json witness_json(const Witness& w) {
  Json j;
  j["z"] = complex_json(w.z);
  j["epsilon"] = w.epsilon ? number_json(*w.epsilon) : Json(nullptr);
  j["lhs"] = number_json(w.lhs);
  j["rhs"] = number_json(w.rhs);
  return j;
}

Json numbers_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number_json(x));
  return a;
}

}  // namespace

DomainSpec parse_domain(std::string_view text) {
  std::optional<double> clip;
  const auto amp = text.find('&');
  std::string_view head = text.substr(0, amp);
  if (amp != std::string_view::npos) {
    const Descriptor c = parse_descriptor(text.substr(amp + 1));
    if (c.name != "clip") fail(ErrorCode::ConfigInvalid, "expected &clip{rho} in '" + std::string(text) + "'");
    clip = numbers_of(c, 1)[0];
  }
  const Descriptor d = parse_descriptor(head);
  DomainSpec spec = [&] {
    if (d.name == "rect" || d.name == "rectangle") {
      const auto v = numbers_of(d, 4);
      return DomainSpec::rectangle(v[0], v[1], v[2], v[3]);
    }
    if (d.name == "halfplane") {
      std::optional<double> x_min;
      if (d.find("xmin")) x_min = d.number("xmin", std::nullopt);
      return DomainSpec::half_plane(d.number("R", std::nullopt, kInfinity), x_min);
    }
    if (d.name == "strip") {
      const auto v = numbers_of(d, 3);
      return DomainSpec::strip(v[0], v[1], v[2]);
    }
    if (d.name == "disc" || d.name == "unit_disc") {
      if (!d.args.empty()) fail(ErrorCode::ConfigInvalid, "disc takes no parameters");
      return DomainSpec::unit_disc();
    }
    if (d.name == "disclog") {
      auto v = d.positional_numbers();
      if (v.size() == 4) v.push_back(std::numbers::pi);
      if (v.size() != 5) fail(ErrorCode::ConfigInvalid, "disclog needs {cx,cy,r,R[,cut]}");
      return DomainSpec::disc_complement_log({v[0], v[1]}, v[2], v[3], v[4]);
    }
    fail(ErrorCode::ConfigInvalid, "unknown domain '" + d.name + "'");
  }();
  if (clip) spec = DomainSpec(spec.shape(), clip);
  return spec;
}

std::string hexfloat(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::hex);
  (void)ec;
  return std::string(buf.data(), ptr);
}

double parse_hexfloat(std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, std::chars_format::hex);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(ErrorCode::IoError, "bad hexfloat '" + std::string(text) + "'");
  }
  return v;
}

Json complex_json(Complex z) { return Json::array({number_json(z.real()), number_json(z.imag())}); }

Json number_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json to_json(const ConditionReport& r) {
  Json j;
  j["condition"] = to_string(r.condition);
  j["weight"] = r.weight;
  j["domain"] = r.domain;
  j["spacing"] = r.spacing;
  j["verdict"] = to_string(r.verdict.kind);
  j["verdict_source"] = r.verdict_source;
  j["tolerance"] = r.verdict.tol;
  j["witness"] = r.verdict.witness ? witness_json(*r.verdict.witness) : Json(nullptr);
  j["min_margin"] = number_json(r.min_margin);
  j["min_relative_margin"] = number_json(r.min_relative_margin);
  j["evaluated_nodes"] = r.evaluated;
  if (!r.epsilons.empty()) j["epsilons"] = numbers_json(r.epsilons);
  Json env;
  env["available"] = r.envelope.available;
  if (r.envelope.available) {
    env["min_margin"] = number_json(r.envelope.min_margin);
    env["min_relative_margin"] = number_json(r.envelope.min_relative);
    env["worst_z"] = r.envelope.worst_z ? complex_json(*r.envelope.worst_z) : Json(nullptr);
  } else {
    env["reason"] = r.envelope.reason;
  }
  j["envelope"] = env;
  Json sing = Json::array();
  for (Complex z : r.singular_points) sing.push_back(complex_json(z));
  j["singular_points"] = sing;
  if (!r.branch.empty()) j["branch"] = r.branch;
  if (r.condition == Condition::Carl) {
    j["equivalence"] = {{"checked", r.equivalence_checked}, {"mismatches", r.equivalence_mismatches}};
  }
  if (r.condition == Condition::ThreeLines) j["slope"] = number_json(r.threelines_slope);
  return j;
}

Json to_json(const std::vector<MuScanRow>& rows) {
  Json a = Json::array();
  for (const auto& row : rows) {
    Json j;
    j["mu"] = row.mu;
    j["verdict"] = to_string(row.report.verdict.kind);
    j["verdict_source"] = row.report.verdict_source;
    j["min_relative_margin"] = number_json(row.report.min_relative_margin);
    j["witness"] = row.report.verdict.witness ? witness_json(*row.report.verdict.witness) : Json(nullptr);
    a.push_back(j);
  }
  return a;
}

Json to_json(const MaxPrincipleReport& r) {
  Json j;
  j["mode"] = r.mode;
  j["verdict"] = to_string(r.verdict);
  j["interior_sup"] = r.interior_sup;
  j["boundary_sup"] = r.boundary_sup;
  j["arc_sup"] = r.arc_sup ? Json(*r.arc_sup) : Json(nullptr);
  j["arc_carries_sup"] = r.arc_carries_sup;
  j["gradient_bound"] = number_json(r.gradient_bound);
  j["tol_grid"] = number_json(r.tol_grid);
  j["witness"] = r.witness ? complex_json(*r.witness) : Json(nullptr);
  if (!r.damped.empty()) {
    Json d = Json::array();
    for (const auto& c : r.damped) {
      d.push_back({{"epsilon", c.epsilon},
                   {"eta", c.eta ? Json(*c.eta) : Json(nullptr)},
                   {"damped_sup", number_json(c.damped_sup)},
                   {"tol", number_json(c.tol)},
                   {"verdict", to_string(c.verdict)}});
    }
    j["damped"] = d;
  }
  return j;
}

Json to_json(const ThreeLinesProfile& p) {
  Json j;
  j["a"] = p.a;
  j["b"] = p.b;
  j["y_cut"] = p.y_cut;
  j["x"] = numbers_json(p.xs);
  j["M"] = numbers_json(p.m);
  j["zero_lines"] = numbers_json(p.zero_lines);
  j["convexity_margin"] = number_json(p.convexity_margin);
  return j;
}

Json to_json(const ConvexityReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["margin"] = number_json(r.margin);
  j["worst_triple"] = Json::array({r.worst_triple[0], r.worst_triple[1], r.worst_triple[2]});
  j["midpoint_margin"] = number_json(r.midpoint_margin);
  j["worst_midpoint_triple"] =
      Json::array({r.worst_midpoint_triple[0], r.worst_midpoint_triple[1], r.worst_midpoint_triple[2]});
  j["chord_margins"] = numbers_json(r.chord_margins);
  j["tolerance"] = r.tol;
  return j;
}

Json to_json(const DamperPropertiesReport& r) {
  Json j;
  j["verdict"] = r.all_pass() ? "Pass" : "Fail";
  j["precondition"] = r.precondition.empty() ? Json(nullptr) : Json(r.precondition);
  j["holomorphy"] = {{"pass", r.holomorphic},
                     {"defect", number_json(r.holomorphy_defect)},
                     {"order", number_json(r.holomorphy_order)}};
  j["decay"] = {{"pass", r.decays},
                {"radii", Json::array({r.decay_radii[0], r.decay_radii[1], r.decay_radii[2]})}};
  j["limit"] = {{"pass", r.tends_to_one}, {"defect_by_epsilon", numbers_json(r.limit_defect)}};
  j["boundary"] = {{"pass", r.bounded_by_one}, {"sup", number_json(r.boundary_sup)}};
  return j;
}

Json provenance_json(const Provenance& p) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FixedPointProvenance>) {
          Json h = Json::array();
          for (double x : v.history) h.push_back(hexfloat(x));
          return {{"kind", "FixedPoint"},
                  {"iterations", v.iterations},
                  {"final_update", hexfloat(v.final_update)},
                  {"history", h},
                  {"contraction_bound", hexfloat(v.contraction_bound)},
                  {"observed_ratio", hexfloat(v.observed_ratio)}};
        } else if constexpr (std::is_same_v<T, ClosedFormProvenance>) {
          return {{"kind", "ClosedForm"}, {"name", v.name}};
        } else {
          return {{"kind", "External"}};
        }
      },
      p);
}

namespace {

Provenance provenance_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "FixedPoint") {
    FixedPointProvenance p;
    p.iterations = j.at("iterations").get<int>();
    p.final_update = parse_hexfloat(j.at("final_update").get<std::string>());
    for (const auto& h : j.at("history")) p.history.push_back(parse_hexfloat(h.get<std::string>()));
    p.contraction_bound = parse_hexfloat(j.at("contraction_bound").get<std::string>());
    p.observed_ratio = parse_hexfloat(j.at("observed_ratio").get<std::string>());
    return p;
  }
  if (kind == "ClosedForm") return ClosedFormProvenance{j.at("name").get<std::string>()};
  if (kind == "External") return ExternalProvenance{};
  fail(ErrorCode::IoError, "unknown provenance '" + kind + "'");
}

}  // namespace

std::string profile_csv(const ThreeLinesProfile& p) {
  std::ostringstream os;
  os << "x,M\n";
  for (std::size_t i = 0; i < p.xs.size(); ++i) os << format_number(p.xs[i]) << ',' << format_number(p.m[i]) << '\n';
  return os.str();
}

std::string margin_csv(const ConditionReport& r, const Grid& grid) {
  std::ostringstream os;
  os << "x,y,margin\n";
  for (std::size_t k = 0; k < r.margin.size(); ++k) {
    if (std::isnan(r.margin[k])) continue;
    const Complex z = grid.point(k);
    os << format_number(z.real()) << ',' << format_number(z.imag()) << ',' << format_number(r.margin[k]) << '\n';
  }
  return os.str();
}

void write_solution(std::ostream& out, const SolutionField& w) {
  Json h;
  h["format"] = "vekua-solution-1";
  h["domain"] = w.grid.domain().describe();
  h["spacing"] = hexfloat(w.grid.spacing());
  h["nx"] = w.grid.nx();
  h["ny"] = w.grid.ny();
  h["weight"] = w.weight_name;
  h["residual_linf"] = w.residual_linf ? Json(hexfloat(*w.residual_linf)) : Json(nullptr);
  h["provenance"] = provenance_json(w.provenance);
  out << h.dump() << '\n';
  for (std::size_t k = 0; k < w.values.size(); ++k) {
    if (!has_value(w.values[k])) continue;
    const Complex z = w.grid.point(k);
    out << k << ' ' << hexfloat(z.real()) << ' ' << hexfloat(z.imag()) << ' ' << hexfloat(w.values[k].real()) << ' '
        << hexfloat(w.values[k].imag()) << '\n';
  }
}

SolutionField read_solution(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::IoError, "empty solution file");
  Json h;
  try {
    h = Json::parse(line);
  } catch (const std::exception& e) {
    fail(ErrorCode::IoError, std::string("bad solution header: ") + e.what());
  }
  try {
    if (h.at("format") != "vekua-solution-1") fail(ErrorCode::IoError, "unsupported solution format");
    const DomainSpec domain = parse_domain(h.at("domain").get<std::string>());
    const double spacing = parse_hexfloat(h.at("spacing").get<std::string>());
    Grid grid = build_grid(domain, spacing);
    if (grid.nx() != h.at("nx").get<std::size_t>() || grid.ny() != h.at("ny").get<std::size_t>()) {
      fail(ErrorCode::IoError, "solution header does not match the rebuilt grid");
    }
    GridFunction values(grid.size(), kMissing);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::size_t k = 0;
      std::string x, y, re, im;
      if (!(ls >> k >> x >> y >> re >> im) || k >= grid.size()) fail(ErrorCode::IoError, "bad solution line: " + line);
      values[k] = {parse_hexfloat(re), parse_hexfloat(im)};
      if (parse_hexfloat(x) != grid.point(k).real() || parse_hexfloat(y) != grid.point(k).imag()) {
        fail(ErrorCode::IoError, "node coordinates do not match the rebuilt grid at index " + std::to_string(k));
      }
    }
    std::optional<double> res;
    if (!h.at("residual_linf").is_null()) res = parse_hexfloat(h.at("residual_linf").get<std::string>());
    return SolutionField{std::move(grid), std::move(values), h.at("weight").get<std::string>(), res,
                         provenance_from_json(h.at("provenance"))};
  } catch (const Json::exception& e) {
    fail(ErrorCode::IoError, std::string("bad solution header: ") + e.what());
  }
}

void save_solution(const std::string& path, const SolutionField& w) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  write_solution(out, w);
  if (!out) fail(ErrorCode::IoError, "write failed for " + path);
}

SolutionField load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot read " + path);
  return read_solution(in);
}

}  // namespace vekua
