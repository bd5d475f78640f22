#include "vekua/principles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "vekua/descriptor.hpp"
#include "vekua/error.hpp"

namespace vekua {

namespace {

constexpr double kPi = std::numbers::pi;

std::string at(Complex z) { return "(" + format_number(z.real()) + ", " + format_number(z.imag()) + ")"; }

double relative(double lhs, double rhs) {
  if (!std::isfinite(rhs)) return -1.0;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale > 0.0 ? (lhs - rhs) / scale : 0.0;
}

int severity(VerdictKind v) {
  switch (v) {
    case VerdictKind::Holds:
      return 0;
    case VerdictKind::HoldsWithEquality:
      return 1;
    case VerdictKind::Fails:
      return 2;
  }
  return 2;
}

void require_right_half_plane(const Grid& grid) {
  if (!grid.domain().in_closed_right_half_plane()) {
    fail(ErrorCode::DomainNotInRightHalfPlane, "domain " + grid.domain().describe() + " leaves the right half-plane");
  }
}

void require_epsilons(const DamperFamily& d) {
  if (d.epsilons.empty()) fail(ErrorCode::InvalidArgument, "damper family has no epsilons");
  for (double e : d.epsilons) {
    if (!(e > 0.0) || !std::isfinite(e)) fail(ErrorCode::InvalidArgument, "damper epsilons must be positive");
  }
}

// Shared pointwise evaluation of inequalities of the form
//   2|alpha|^2 >= |d alpha| + |alpha| slope + |alpha| ratio(eps, z).
struct ConditionSpec {
  Condition condition;
  double slope = 0.0;
  const std::vector<double>* epsilons = nullptr;     // null: no damper term
  std::function<double(double, Complex)> ratio = {};  // damper ratio
  std::function<double(Complex)> envelope = {};       // sup over eps of ratio
};

ConditionReport evaluate(const ConditionSpec& spec, const WeightField& alpha, const Grid& grid) {
  ConditionReport r;
  r.condition = spec.condition;
  r.weight = alpha.name();
  r.domain = grid.domain().describe();
  r.spacing = grid.spacing();
  if (spec.epsilons) r.epsilons = *spec.epsilons;
  r.threelines_slope = spec.slope;
  r.margin.assign(grid.size(), std::numeric_limits<double>::quiet_NaN());
  r.envelope.available = static_cast<bool>(spec.envelope);
  if (!spec.envelope) r.envelope.reason = spec.epsilons ? "no closed form" : "no damper term";

  std::vector<Complex> interior_singular;
  double best_rel = kInfinity;
  std::optional<Witness> best;
  for (auto k : grid.domain_indices()) {
    const Complex z = grid.point(k);
    Complex a, da;
    try {
      if (alpha.singular(z)) throw Error(ErrorCode::DomainSingularity, "singular");
      a = alpha.eval(z);
      da = alpha.deriv(z);
    } catch (const Error&) {
      if (grid.classification(k) == PointClass::Interior) {
        interior_singular.push_back(z);
      } else {
        r.singular_points.push_back(z);
      }
      continue;
    }
    ++r.evaluated;
    const double aa = std::abs(a);
    const double lhs = 2.0 * aa * aa;
    const double base = std::abs(da) + aa * spec.slope;
    double node_margin = kInfinity;
    const auto consider = [&](double rhs, std::optional<double> eps) {
      node_margin = std::min(node_margin, lhs - rhs);
      const double rel = relative(lhs, rhs);
      if (rel < best_rel) {
        best_rel = rel;
        best = Witness{z, eps, lhs, rhs};
      }
    };
    if (!spec.epsilons) {
      consider(base, std::nullopt);
    } else {
      for (double eps : *spec.epsilons) consider(aa == 0.0 ? base : base + aa * spec.ratio(eps, z), eps);
    }
    r.margin[k] = node_margin;
    r.min_margin = std::min(r.min_margin, node_margin);
    if (spec.envelope) {
      const double rhs = aa == 0.0 ? base : base + aa * spec.envelope(z);
      const double rel = relative(lhs, rhs);
      r.envelope.min_margin = std::min(r.envelope.min_margin, lhs - rhs);
      if (rel < r.envelope.min_relative) {
        r.envelope.min_relative = rel;
        r.envelope.worst_z = z;
      }
    }
  }
  if (!interior_singular.empty()) {
    std::string msg = "weight " + alpha.name() + " is singular at " + std::to_string(interior_singular.size()) +
                      " interior node(s):";
    for (std::size_t i = 0; i < std::min<std::size_t>(interior_singular.size(), 8); ++i) {
      msg += " " + at(interior_singular[i]);
    }
    fail(ErrorCode::SingularWeight, msg);
  }
  if (r.evaluated == 0) fail(ErrorCode::SingularWeight, "weight " + alpha.name() + " is singular at every node");

  r.min_relative_margin = best_rel;
  r.verdict.kind = classify_margin(best_rel);
  r.verdict_source = spec.epsilons ? "epsilon-grid" : "pointwise";
  if (r.verdict.kind == VerdictKind::Fails) r.verdict.witness = best;

  // The envelope covers every eps > 0; if it is strictly worse, it decides,
  // and a concrete eps is located by doubling (the ratio is increasing in eps).
  if (spec.envelope && r.envelope.worst_z) {
    const VerdictKind env = classify_margin(r.envelope.min_relative);
    if (severity(env) > severity(r.verdict.kind)) {
      r.verdict.kind = env;
      r.verdict_source = "envelope";
      r.verdict.witness.reset();
      if (env == VerdictKind::Fails) {
        const Complex z = *r.envelope.worst_z;
        const Complex a = alpha.eval(z);
        const double aa = std::abs(a);
        const double lhs = 2.0 * aa * aa;
        const double base = std::abs(alpha.deriv(z)) + aa * spec.slope;
        double eps = spec.epsilons->back();
        for (int i = 0; i < 200; ++i) {
          const double rhs = base + aa * spec.ratio(eps, z);
          if (relative(lhs, rhs) < -kEqualityTolerance) {
            r.verdict.witness = Witness{z, eps, lhs, rhs};
            break;
          }
          eps *= 2.0;
        }
        if (!r.verdict.witness) {
          r.verdict.witness = Witness{z, std::nullopt, lhs, base + aa * spec.envelope(z)};
        }
      }
    }
  }
  return r;
}

void check_disc_clear(const Grid& grid, Complex center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) fail(ErrorCode::InvalidArgument, "disc radius must be positive");
  if (grid.domain().classify(center) != Membership::Outside) {
    fail(ErrorCode::DiscIntersectsDomain, "disc centre " + at(center) + " lies in the domain");
  }
  for (auto k : grid.domain_indices()) {
    const Complex z = grid.point(k);
    if (std::abs(z - center) < radius * (1.0 - 1e-12)) {
      fail(ErrorCode::DiscIntersectsDomain, "domain node " + at(z) + " lies in the open disc D(" +
                                                at(center) + ", " + format_number(radius) + ")");
    }
  }
}

}  // namespace

// ---- dampers ----------------------------------------------------------------

Complex LogBranch::log(Complex z) const {
  const Complex u = (z - center) / radius;
  const double arg = std::arg(u * std::polar(1.0, -theta0));
  return {std::log(std::abs(u)), theta0 + arg};
}

std::string LogBranch::describe() const {
  return "log((z-a)/r) with arg in (" + format_number(theta0 - kPi) + ", " + format_number(theta0 + kPi) +
         "], cut along the ray from a at angle " + format_number(std::remainder(theta0 + kPi, 2.0 * kPi));
}

std::vector<double> logspace(double lo, double hi, int n) {
  if (n < 1 || !(lo > 0.0) || !(hi >= lo)) fail(ErrorCode::InvalidArgument, "invalid logspace range");
  std::vector<double> out;
  if (n == 1) return {lo};
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < n; ++i) out.push_back(std::pow(10.0, a + (b - a) * i / (n - 1)));
  return out;
}

std::vector<double> DamperFamily::default_epsilons() { return logspace(1e-3, 1e3, 25); }

DamperFamily DamperFamily::half_plane(std::vector<double> epsilons) {
  return DamperFamily{DamperKind::HalfPlane, std::move(epsilons), {}, 1.0};
}

DamperFamily DamperFamily::log_map(Complex center, double radius, std::vector<double> epsilons) {
  return DamperFamily{DamperKind::LogMap, std::move(epsilons), center, radius};
}

namespace {

const LogBranch& need_branch(const LogBranch* branch) {
  if (!branch) fail(ErrorCode::InvalidArgument, "log-map damper needs a branch");
  return *branch;
}

}  // namespace

Complex damper_value(const DamperFamily& d, double eps, Complex z, const LogBranch* branch) {
  if (d.kind == DamperKind::HalfPlane) return 1.0 / (1.0 + eps * z);
  return 1.0 / (1.0 + eps * need_branch(branch).log(z));
}

double damper_ratio(const DamperFamily& d, double eps, Complex z, const LogBranch* branch) {
  if (d.kind == DamperKind::HalfPlane) return eps / std::abs(1.0 + eps * z);
  const LogBranch& b = need_branch(branch);
  return eps / (std::abs(1.0 + eps * b.log(z)) * std::abs(z - b.center));
}

double damper_envelope(const DamperFamily& d, Complex z, const LogBranch* branch) {
  // eps/|1 + eps u| = 1/|1/eps + u| increases to 1/|u| when Re u >= 0.
  if (d.kind == DamperKind::HalfPlane) {
    if (z.real() < 0.0) return z.imag() == 0.0 ? kInfinity : 1.0 / std::abs(z.imag());
    return z == Complex{} ? 0.0 : 1.0 / std::abs(z);
  }
  const LogBranch& b = need_branch(branch);
  const Complex g = b.log(z);
  const double dist = std::abs(z - b.center);
  if (g.real() < 0.0) return g.imag() == 0.0 ? kInfinity : 1.0 / (std::abs(g.imag()) * dist);
  return std::abs(g) == 0.0 ? kInfinity : 1.0 / (std::abs(g) * dist);
}

namespace {

LogBranch default_branch(const Grid& grid, Complex center, double radius) {
  const auto* annulus = std::get_if<DiscComplementLog>(&grid.domain().shape());
  if (annulus && annulus->center == center) return LogBranch{center, radius, annulus->cut_angle - kPi};
  Complex centroid{};
  for (auto k : grid.domain_indices()) centroid += grid.point(k);
  centroid /= static_cast<double>(grid.domain_indices().size());
  return LogBranch{center, radius, centroid == center ? 0.0 : std::arg(centroid - center)};
}

}  // namespace

LogBranch choose_branch(const Grid& grid, Complex center, double radius) {
  const LogBranch branch = default_branch(grid, center, radius);
  const auto* annulus = std::get_if<DiscComplementLog>(&grid.domain().shape());
  if (annulus && annulus->center == center) return branch;
  const Complex rot = std::polar(1.0, -(branch.theta0 + kPi));
  const auto on_cut = [&](Complex p, Complex q) {
    const Complex a = (p - center) * rot, b = (q - center) * rot;
    if (a.imag() == 0.0 && a.real() > 0.0) return true;
    if (!(a.imag() * b.imag() < 0.0)) return false;
    const double t = -a.imag() / (b.imag() - a.imag());
    return a.real() + t * (b.real() - a.real()) > 0.0;
  };
  for (auto k : grid.domain_indices()) {
    for (auto dir : {Direction::East, Direction::North}) {
      const auto nb = grid.neighbor(k, dir);
      const Complex p = grid.point(k);
      const Complex q = nb && grid.in_domain(*nb) ? grid.point(*nb) : p;
      if (on_cut(p, q)) {
        fail(ErrorCode::BranchCutCrossesDomain,
             "the cut of " + branch.describe() + " crosses the domain near " + at(p));
      }
    }
  }
  return branch;
}

// ---- verdicts and Carl's matrix ----------------------------------------------

VerdictKind classify_margin(double relative_margin, double tol) {
  if (relative_margin > tol) return VerdictKind::Holds;
  if (std::abs(relative_margin) <= tol) return VerdictKind::HoldsWithEquality;
  return VerdictKind::Fails;
}

Matrix2 carl_matrix(Complex alpha, Complex dalpha) {
  const double a = -2.0 * std::norm(alpha);
  const Complex b = -dalpha;
  return {{{a + b.real(), b.imag()}, {b.imag(), a - b.real()}}};
}

bool is_negative_semidefinite(const Matrix2& m) {
  const double m12 = 0.5 * (m[0][1] + m[1][0]);
  const double half_trace = 0.5 * (m[0][0] + m[1][1]);
  const double spread = std::hypot(0.5 * (m[0][0] - m[1][1]), m12);
  const double norm = std::abs(half_trace) + spread;
  const double t = 1e-12 * norm;
  const double det = m[0][0] * m[1][1] - m12 * m12;
  return m[0][0] <= t && m[1][1] <= t && det >= -t * norm;
}

bool carl_inequality(Complex alpha, Complex dalpha) {
  const double lhs = 2.0 * std::norm(alpha);
  const double rhs = std::abs(dalpha);
  return lhs - rhs >= -1e-12 * (lhs + rhs);
}

ConditionReport check_carl(const WeightField& alpha, const Grid& grid) {
  ConditionReport r = evaluate(ConditionSpec{Condition::Carl}, alpha, grid);
  std::vector<std::size_t> nodes;
  for (auto k : grid.domain_indices()) {
    if (!std::isnan(r.margin[k])) nodes.push_back(k);
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::size_t> pick(0, nodes.size() - 1);
  for (int i = 0; i < 50; ++i) {
    const Complex z = grid.point(nodes[pick(rng)]);
    const Complex a = alpha.eval(z), da = alpha.deriv(z);
    ++r.equivalence_checked;
    if (carl_inequality(a, da) != is_negative_semidefinite(carl_matrix(a, da))) ++r.equivalence_mismatches;
  }
  return r;
}

ConditionReport check_halfplane(const WeightField& alpha, const Grid& grid, const DamperFamily& dampers) {
  if (dampers.kind != DamperKind::HalfPlane) fail(ErrorCode::InvalidArgument, "half-plane check needs h_eps dampers");
  require_epsilons(dampers);
  require_right_half_plane(grid);
  ConditionSpec spec{Condition::HalfPlane};
  spec.epsilons = &dampers.epsilons;
  spec.ratio = [&](double eps, Complex z) { return damper_ratio(dampers, eps, z); };
  spec.envelope = [&](Complex z) { return damper_envelope(dampers, z); };
  return evaluate(spec, alpha, grid);
}

ConditionReport check_logmap(const WeightField& alpha, const Grid& grid, Complex center, double radius,
                             const DamperFamily& dampers) {
  if (dampers.kind != DamperKind::LogMap) fail(ErrorCode::InvalidArgument, "log-map check needs g_eps dampers");
  if (dampers.center != center || dampers.radius != radius) {
    fail(ErrorCode::InvalidArgument, "damper centre and radius must match the disc");
  }
  require_epsilons(dampers);
  check_disc_clear(grid, center, radius);
  const LogBranch branch = choose_branch(grid, center, radius);
  ConditionSpec spec{Condition::LogMap};
  spec.epsilons = &dampers.epsilons;
  spec.ratio = [&](double eps, Complex z) { return damper_ratio(dampers, eps, z, &branch); };
  spec.envelope = [&](Complex z) { return damper_envelope(dampers, z, &branch); };
  ConditionReport r = evaluate(spec, alpha, grid);
  r.branch = branch.describe();
  return r;
}

ConditionReport check_threelines_condition(const WeightField& alpha, const Grid& grid, double m_a, double m_b,
                                           double a, double b, const DamperFamily& dampers) {
  if (!(m_a > 0.0) || !(m_b > 0.0) || !std::isfinite(m_a) || !std::isfinite(m_b)) {
    fail(ErrorCode::NonpositiveBoundaryMax, "boundary line maxima must be positive and finite");
  }
  if (!(a > 0.0 && a < b) || !std::isfinite(b)) fail(ErrorCode::InvalidArgument, "strip edges need 0 < a < b");
  if (dampers.kind != DamperKind::HalfPlane) fail(ErrorCode::InvalidArgument, "three-lines check needs h_eps dampers");
  require_epsilons(dampers);
  require_right_half_plane(grid);
  ConditionSpec spec{Condition::ThreeLines};
  spec.slope = std::abs(std::log(m_a / m_b)) / (b - a);
  spec.epsilons = &dampers.epsilons;
  spec.ratio = [&](double eps, Complex z) { return damper_ratio(dampers, eps, z); };
  spec.envelope = [&](Complex z) { return damper_envelope(dampers, z); };
  return evaluate(spec, alpha, grid);
}

std::vector<MuScanRow> power_mu_scan(Complex a, std::span<const double> mus, const Grid& grid,
                                     const DamperFamily& dampers) {
  std::vector<MuScanRow> rows;
  for (double mu : mus) rows.push_back({mu, check_halfplane(power_alpha(a, mu), grid, dampers)});
  return rows;
}

WeightField pullback_weight(const WeightField& alpha, Complex center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) fail(ErrorCode::InvalidArgument, "pullback radius must be positive");
  const auto image = [center, radius, alpha](Complex zeta) {
    const Complex h = radius * std::exp(zeta) + center;
    if (alpha.singular(h)) {
      fail(ErrorCode::ImageOutsideDomain, "h" + at(zeta) + " = " + at(h) + " hits the singular set of " + alpha.name());
    }
    return h;
  };
  WeightField beta(
      "pullback{" + alpha.name() + ",a:" + format_number(center.real()) + "," + format_number(center.imag()) +
          ",r:" + format_number(radius) + "}",
      [alpha, image, radius](Complex zeta) {
        return alpha.eval(image(zeta)) * std::conj(radius * std::exp(zeta));
      },
      [alpha, image, radius](Complex zeta) {
        return alpha.deriv(image(zeta)) * std::norm(radius * std::exp(zeta));
      },
      [alpha, center, radius](Complex zeta) { return alpha.singular(radius * std::exp(zeta) + center); },
      alpha.mode(), "preimage of " + alpha.singular_set());
  beta.set_singular_error(ErrorCode::ImageOutsideDomain);
  return beta;
}

// ---- maximum principle --------------------------------------------------------

MaxPrincipleReport max_principle_report(const SolutionField& w, const std::optional<DamperFamily>& dampers,
                                        const MaxPrincipleOptions& options) {
  const Grid& grid = w.grid;
  if (w.values.size() != grid.size()) fail(ErrorCode::InvalidArgument, "solution size does not match grid");
  for (auto k : grid.domain_indices()) {
    if (!has_value(w.values[k])) fail(ErrorCode::InvalidArgument, "solution has no value at " + at(grid.point(k)));
  }
  bool has_arc = false;
  for (auto k : grid.boundary_indices()) has_arc = has_arc || grid.truncation_edge(k);

  bool unbounded = false;
  switch (options.mode) {
    case MaxMode::Bounded:
      break;
    case MaxMode::Unbounded:
      if (!dampers) fail(ErrorCode::NoDampersForUnboundedDomain, "unbounded mode needs a damper family");
      unbounded = true;
      break;
    case MaxMode::Auto:
      unbounded = dampers.has_value() && has_arc;
      break;
  }

  MaxPrincipleReport r;
  r.mode = unbounded ? "unbounded" : "bounded";
  std::optional<std::size_t> interior_arg;
  for (auto k : grid.interior_indices()) {
    const double v = std::abs(w.values[k]);
    if (!interior_arg || v > r.interior_sup) {
      r.interior_sup = v;
      interior_arg = k;
    }
  }
  for (auto k : grid.boundary_indices()) {
    const double v = std::abs(w.values[k]);
    if (grid.truncation_edge(k)) {
      r.arc_sup = std::max(r.arc_sup.value_or(0.0), v);
    } else {
      r.boundary_sup = std::max(r.boundary_sup, v);
    }
  }
  r.arc_carries_sup = r.arc_sup && *r.arc_sup > r.boundary_sup;
  r.gradient_bound = modulus_gradient_bound(grid, w.values);
  r.tol_grid = options.c * grid.spacing() * r.gradient_bound;

  if (!unbounded) {
    const double bound = std::max(r.boundary_sup, r.arc_sup.value_or(0.0));
    if (r.interior_sup <= bound + r.tol_grid) {
      r.verdict = PassVerdict::Pass;
    } else {
      r.verdict = PassVerdict::Fail;
      r.witness = grid.point(*interior_arg);
    }
    return r;
  }

  // Exhaustion: for each eps find the smallest eta with sup_{|z| >= eta} |w h_eps| <= M,
  // then the damped function must obey the bounded principle on |z| < eta.
  require_epsilons(*dampers);
  std::optional<LogBranch> branch;
  if (dampers->kind == DamperKind::LogMap) branch = choose_branch(grid, dampers->center, dampers->radius);
  const LogBranch* bp = branch ? &*branch : nullptr;
  const double m = r.boundary_sup;
  std::vector<std::size_t> order(grid.domain_indices().begin(), grid.domain_indices().end());
  std::stable_sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
    return std::abs(grid.point(p)) > std::abs(grid.point(q));
  });
  std::vector<double> eps = dampers->epsilons;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  bool any_pass = false, any_fail = false;
  for (double e : eps) {
    DampedCheck c;
    c.epsilon = e;
    GridFunction damped(grid.size(), kMissing);
    for (auto k : grid.domain_indices()) damped[k] = w.values[k] * damper_value(*dampers, e, grid.point(k), bp);
    c.tol = options.c * grid.spacing() * modulus_gradient_bound(grid, damped);
    std::optional<double> eta;
    double run = 0.0;
    for (auto k : order) {
      run = std::max(run, std::abs(damped[k]));
      if (run > m) break;
      eta = std::abs(grid.point(k));
    }
    c.eta = eta;
    if (!eta) {
      c.verdict = PassVerdict::Inconclusive;
    } else {
      std::optional<std::size_t> arg;
      for (auto k : grid.interior_indices()) {
        if (std::abs(grid.point(k)) >= *eta) continue;
        const double v = std::abs(damped[k]);
        if (!arg || v > c.damped_sup) {
          c.damped_sup = v;
          arg = k;
        }
      }
      c.verdict = c.damped_sup <= m + c.tol ? PassVerdict::Pass : PassVerdict::Fail;
      if (c.verdict == PassVerdict::Fail && !r.witness) r.witness = grid.point(*arg);
    }
    any_pass = any_pass || c.verdict == PassVerdict::Pass;
    any_fail = any_fail || c.verdict == PassVerdict::Fail;
    r.damped.push_back(c);
  }
  r.verdict = any_fail ? PassVerdict::Fail : any_pass ? PassVerdict::Pass : PassVerdict::Inconclusive;
  return r;
}

// ---- three lines ------------------------------------------------------------------

namespace {

double triple_margin(double x1, double l1, double x2, double l2, double x3, double l3) {
  return (x3 - x2) * l1 + (x2 - x1) * l3 - (x3 - x1) * l2;
}

}  // namespace

ThreeLinesProfile three_lines_profile(const SolutionField& w, double a, double b, double y_cut, int n_x) {
  const Grid& grid = w.grid;
  if (!(a > 0.0 && a < b) || !std::isfinite(b)) fail(ErrorCode::InvalidArgument, "strip edges need 0 < a < b");
  if (!(y_cut > 0.0)) fail(ErrorCode::InvalidArgument, "y_cut must be positive");
  if (n_x < 3) fail(ErrorCode::InvalidArgument, "need at least 3 abscissae");
  const double h = grid.spacing();
  const double y_top = grid.y(grid.ny() - 1);
  if (grid.y_lo() > -y_cut + 0.5 * h || y_top < y_cut - 0.5 * h) {
    fail(ErrorCode::StripNotCovered, "grid does not reach |Im z| = " + format_number(y_cut));
  }
  ThreeLinesProfile p;
  p.a = a;
  p.b = b;
  p.y_cut = y_cut;
  std::optional<std::size_t> last;
  for (int s = 0; s < n_x; ++s) {
    const double x = s == n_x - 1 ? b : a + (b - a) * s / (n_x - 1);
    const double fi = std::round((x - grid.x_lo()) / h);
    if (fi < 0.0 || fi > static_cast<double>(grid.nx() - 1) || std::abs(grid.x_lo() + fi * h - x) > 0.5 * h + 1e-12) {
      fail(ErrorCode::StripNotCovered, "no grid column near x = " + format_number(x));
    }
    const auto i = static_cast<std::size_t>(fi);
    if (last && *last == i) continue;
    last = i;
    double m = -1.0;
    for (std::size_t j = 0; j < grid.ny(); ++j) {
      const std::size_t k = grid.index(i, j);
      if (std::abs(grid.y(j)) > y_cut + 1e-12 || !grid.in_domain(k) || !has_value(w.values[k])) continue;
      m = std::max(m, std::abs(w.values[k]));
    }
    if (m < 0.0) fail(ErrorCode::StripNotCovered, "no solution values on the line x = " + format_number(grid.x(i)));
    p.xs.push_back(grid.x(i));
    p.m.push_back(m);
    if (m == 0.0) p.zero_lines.push_back(grid.x(i));
  }
  if (p.zero_lines.empty()) {
    for (std::size_t s = 1; s + 1 < p.xs.size(); ++s) {
      p.convexity_margin =
          std::min(p.convexity_margin, triple_margin(p.xs[s - 1], std::log(p.m[s - 1]), p.xs[s], std::log(p.m[s]),
                                                     p.xs[s + 1], std::log(p.m[s + 1])));
    }
  }
  return p;
}

ConvexityReport log_convexity_check(const ThreeLinesProfile& profile) {
  if (profile.xs.size() != profile.m.size() || profile.xs.size() < 3) {
    fail(ErrorCode::InvalidArgument, "profile needs at least 3 samples");
  }
  for (std::size_t s = 0; s < profile.m.size(); ++s) {
    if (!(profile.m[s] > 0.0)) {
      fail(ErrorCode::ZeroModulusLine, "M vanishes on the line x = " + format_number(profile.xs[s]));
    }
  }
  const auto& xs = profile.xs;
  std::vector<double> l;
  double lmax = 0.0;
  for (double m : profile.m) {
    l.push_back(std::log(m));
    lmax = std::max(lmax, std::abs(l.back()));
  }
  const std::size_t n = xs.size();
  const double a = xs.front(), b = xs.back();
  ConvexityReport r;
  r.tol = 1e-10 * std::max(1.0, (b - a) * lmax);
  r.chord_margins.assign(n, 0.0);
  for (std::size_t s = 1; s + 1 < n; ++s) {
    const double m = triple_margin(a, l.front(), xs[s], l[s], b, l.back());
    r.chord_margins[s] = m;
    if (m < r.margin) {
      r.margin = m;
      r.worst_triple = {a, xs[s], b};
    }
    const double mid = triple_margin(xs[s - 1], l[s - 1], xs[s], l[s], xs[s + 1], l[s + 1]);
    if (mid < r.midpoint_margin) {
      r.midpoint_margin = mid;
      r.worst_midpoint_triple = {xs[s - 1], xs[s], xs[s + 1]};
    }
  }
  r.verdict = r.margin >= -r.tol && r.midpoint_margin >= -r.tol ? PassVerdict::Pass : PassVerdict::Fail;
  return r;
}

// ---- damper properties ------------------------------------------------------------

DamperPropertiesReport damper_properties_check(const DamperFamily& dampers, const Grid& grid) {
  require_epsilons(dampers);
  DamperPropertiesReport r;
  // A violated precondition is reported; the properties are still evaluated.
  std::optional<LogBranch> branch;
  try {
    if (dampers.kind == DamperKind::HalfPlane) {
      require_right_half_plane(grid);
    } else {
      check_disc_clear(grid, dampers.center, dampers.radius);
      branch = choose_branch(grid, dampers.center, dampers.radius);
    }
  } catch (const Error& e) {
    r.precondition = e.what();
  }
  if (dampers.kind == DamperKind::LogMap && !branch) branch = default_branch(grid, dampers.center, dampers.radius);
  const LogBranch* bp = branch ? &*branch : nullptr;
  std::vector<double> eps = dampers.epsilons;
  std::sort(eps.begin(), eps.end());
  const double h = grid.spacing();

  // (i) central-difference dbar at steps h, h/2, h/4; order from the finer pair.
  r.holomorphy_order = kInfinity;
  for (double e : eps) {
    const std::function<Complex(Complex)> fn = [&](Complex z) { return damper_value(dampers, e, z, bp); };
    std::array<double, 3> defect{};
    for (auto k : grid.interior_indices()) {
      for (int s = 0; s < 3; ++s) {
        const double step = h / static_cast<double>(1 << s);
        defect[s] = std::max(defect[s], std::abs(wirtinger_fd(fn, grid.point(k), step, Wirtinger::Dzbar)));
      }
    }
    r.holomorphy_defect = std::max(r.holomorphy_defect, defect[0]);
    if (defect[2] <= 1e-13) continue;
    const double order = std::log2(defect[1] / defect[2]);
    r.holomorphy_order = std::min(r.holomorphy_order, order);
    if (!(order >= 1.8)) r.holomorphic = false;
  }
  if (!std::isfinite(r.holomorphy_order)) r.holomorphy_order = 2.0;

  // (ii) decay along rays into the domain at radii R, 2R, 4R.
  const Complex origin = dampers.kind == DamperKind::HalfPlane ? Complex{} : dampers.center;
  const double theta0 = bp ? bp->theta0 : 0.0;
  double reach = 0.0;
  for (auto k : grid.domain_indices()) reach = std::max(reach, std::abs(grid.point(k) - origin));
  if (reach == 0.0) reach = 1.0;
  r.decay_radii = {reach, 2.0 * reach, 4.0 * reach};
  for (double e : eps) {
    for (double off : {-kPi / 2, -kPi / 4, 0.0, kPi / 4, kPi / 2}) {
      double prev = kInfinity;
      for (double rad : r.decay_radii) {
        const double v = std::abs(damper_value(dampers, e, origin + std::polar(rad, theta0 + off), bp));
        if (!(v < prev)) r.decays = false;
        prev = v;
      }
    }
  }

  // (iii) | |damper| - 1 | shrinks with eps.
  double phi_max = 0.0;
  for (auto k : grid.domain_indices()) {
    const Complex z = grid.point(k);
    phi_max = std::max(phi_max, std::abs(bp ? bp->log(z) : z));
  }
  for (double e : eps) {
    double d = 0.0;
    for (auto k : grid.domain_indices()) {
      d = std::max(d, std::abs(std::abs(damper_value(dampers, e, grid.point(k), bp)) - 1.0));
    }
    if (!r.limit_defect.empty() && d < r.limit_defect.back()) r.tends_to_one = false;
    r.limit_defect.push_back(d);
  }
  if (eps.front() * phi_max <= 0.5 && !(r.limit_defect.front() <= 2.0 * eps.front() * phi_max + 1e-15)) {
    r.tends_to_one = false;
  }

  // (iv) |damper| <= 1 on the boundary samples.
  for (double e : eps) {
    for (auto k : grid.boundary_indices()) {
      r.boundary_sup = std::max(r.boundary_sup, std::abs(damper_value(dampers, e, grid.point(k), bp)));
    }
  }
  r.bounded_by_one = r.boundary_sup <= 1.0 + 1e-12;
  return r;
}

std::string to_string(Condition c) {
  switch (c) {
    case Condition::Carl:
      return "Carl";
    case Condition::HalfPlane:
      return "HalfPlane";
    case Condition::LogMap:
      return "LogMap";
    case Condition::ThreeLines:
      return "ThreeLines";
  }
  return "?";
}

std::string to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::Holds:
      return "Holds";
    case VerdictKind::HoldsWithEquality:
      return "HoldsWithEquality";
    case VerdictKind::Fails:
      return "Fails";
  }
  return "?";
}

std::string to_string(PassVerdict v) {
  switch (v) {
    case PassVerdict::Pass:
      return "Pass";
    case PassVerdict::Fail:
      return "Fail";
    case PassVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

}  // namespace vekua
