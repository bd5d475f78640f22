#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vekua/catalog.hpp"
#include "vekua/error.hpp"
#include "vekua/principles.hpp"

using namespace vekua;
using doctest::Approx;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

// Closed forms for the tokamak weight alpha = -1/(lambda x).
double tok_alpha_abs(double lambda, double x) { return 1.0 / (lambda * x); }
double tok_dalpha_abs(double lambda, double x) { return 1.0 / (2.0 * lambda * x * x); }

// min over eps of 2|alpha|^2 - |d alpha| - |alpha| * extra(eps), evaluated from scratch.
double brute_min(double a_abs, double da_abs, const std::vector<double>& eps, const std::function<double(double)>& extra) {
  double best = kInfinity;
  for (double e : eps) best = std::min(best, 2.0 * a_abs * a_abs - da_abs - a_abs * extra(e));
  return best;
}

double scale(double a_abs, double da_abs) { return std::max(1.0, 2.0 * a_abs * a_abs + da_abs); }

SolutionField field_on(const Grid& g, const std::function<Complex(Complex)>& fn, SampleScope s = SampleScope::Domain) {
  return closed_form_solution(g, fn, "test", "zero", s);
}

}  // namespace

TEST_CASE("Carl matrix") {
  auto m = carl_matrix(1.0, 0.0);
  CHECK(m[0][0] == -2.0);
  CHECK(m[1][1] == -2.0);
  CHECK(m[0][1] == 0.0);
  CHECK(is_negative_semidefinite(m));

  m = carl_matrix(0.0, 1.0);
  CHECK(m[0][0] == -1.0);
  CHECK(m[1][1] == 1.0);
  const auto [lo, hi] = oracle::eigenvalues(m[0][0], m[0][1], m[1][1]);
  CHECK(lo == Approx(-1.0));
  CHECK(hi == Approx(1.0));
  CHECK_FALSE(is_negative_semidefinite(m));

  m = carl_matrix(-0.25, 0.125);
  CHECK(m[0][0] == Approx(-0.25));
  CHECK(std::abs(m[1][1]) <= 1e-15);
  CHECK(std::abs(m[0][1]) <= 1e-15);
  CHECK(is_negative_semidefinite(m));
}

TEST_CASE("margin sign agrees with semi-definiteness for random pairs") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n(0.0, 1.0);
  int compared = 0;
  for (int i = 0; i < 2000; ++i) {
    const Complex a{n(rng), n(rng)}, da{2.0 * n(rng), 2.0 * n(rng)};
    const auto m = carl_matrix(a, da);
    const double det = m[0][0] * m[1][1] - m[0][1] * m[0][1];
    CHECK(det == Approx(4.0 * std::pow(std::norm(a), 2) - std::norm(da)).epsilon(1e-12).scale(1.0));
    const double margin = 2.0 * std::norm(a) - std::abs(da);
    if (std::abs(margin) < 1e-9) continue;
    const auto [lo, hi] = oracle::eigenvalues(m[0][0], m[0][1], m[1][1]);
    CHECK((margin >= 0.0) == (hi <= 0.0));
    CHECK((margin >= 0.0) == is_negative_semidefinite(m));
    CHECK((margin >= 0.0) == carl_inequality(a, da));
    ++compared;
  }
  CHECK(compared > 1900);
}

TEST_CASE("Carl condition for the tokamak weight") {
  const Grid g = build_grid(DomainSpec::rectangle(0.5, 2, -1, 1), 0.01);
  const auto eq = check_carl(tokamak_alpha(4), g);
  CHECK(eq.verdict.kind == VerdictKind::HoldsWithEquality);
  CHECK(eq.evaluated == g.domain_indices().size());
  for (auto k : g.domain_indices()) CHECK(std::abs(eq.margin[k]) <= 1e-12);
  CHECK(eq.equivalence_checked == 50);
  CHECK(eq.equivalence_mismatches == 0);

  const auto strict = check_carl(tokamak_alpha(2), g);
  CHECK(strict.verdict.kind == VerdictKind::Holds);
  for (auto k : g.domain_indices()) {
    const double x = g.point(k).real();
    CHECK(std::abs(strict.margin[k] - 1.0 / (4.0 * x * x)) <= 1e-12);
  }

  const auto fails = check_carl(tokamak_alpha(8), g);
  CHECK(fails.verdict.kind == VerdictKind::Fails);
  REQUIRE(fails.verdict.witness.has_value());
  CHECK(fails.verdict.witness->lhs < fails.verdict.witness->rhs);

  const auto zero = check_carl(zero_alpha(), g);
  CHECK(zero.verdict.kind == VerdictKind::HoldsWithEquality);

  const Grid across = build_grid(DomainSpec::rectangle(-1, 1, -1, 1), 0.1);
  CHECK(code_of([&] { check_carl(tokamak_alpha(1), across); }) == ErrorCode::SingularWeight);
}

TEST_CASE("verdict classification") {
  CHECK(classify_margin(1e-3) == VerdictKind::Holds);
  CHECK(classify_margin(5e-11) == VerdictKind::HoldsWithEquality);
  CHECK(classify_margin(-5e-11) == VerdictKind::HoldsWithEquality);
  CHECK(classify_margin(-1e-6) == VerdictKind::Fails);
}

TEST_CASE("damper values") {
  const auto hp = DamperFamily::half_plane();
  CHECK(hp.epsilons.size() == 25);
  CHECK(hp.epsilons.front() == Approx(1e-3));
  CHECK(hp.epsilons.back() == Approx(1e3));
  for (double e : hp.epsilons) CHECK(damper_value(hp, e, 0.0) == Complex{1.0, 0.0});
  CHECK(std::abs(damper_value(hp, 1.0, {0.0, 1.0})) == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(damper_value(hp, 0.1, 100.0)) == Approx(1.0 / 11.0).epsilon(1e-15));
  // eps/|1+eps z| <= 1/x and the envelope respects that bound
  const Complex z{0.7, -2.0};
  for (double e : hp.epsilons) {
    CHECK(damper_ratio(hp, e, z) == Approx(e / std::abs(1.0 + e * z)).epsilon(1e-15));
    CHECK(damper_ratio(hp, e, z) <= damper_envelope(hp, z) * (1 + 1e-12));
  }
  CHECK(damper_envelope(hp, z) <= 1.0 / z.real());
}

TEST_CASE("half-plane condition") {
  const auto eps = DamperFamily::default_epsilons();
  const auto hp = DamperFamily::half_plane(eps);
  const Grid g = build_grid(DomainSpec::rectangle(0.05, 10, -10, 10), 0.1);

  SUBCASE("tokamak lambda = 1 holds for every sampled eps") {
    const auto r = check_halfplane(tokamak_alpha(1), g, hp);
    CHECK(r.verdict.kind == VerdictKind::Holds);
    double x_max = 0.0;
    for (auto k : g.domain_indices()) {
      const Complex z = g.point(k);
      x_max = std::max(x_max, z.real());
      const double a = tok_alpha_abs(1, z.real()), da = tok_dalpha_abs(1, z.real());
      const double want = brute_min(a, da, eps, [&](double e) { return e / std::abs(1.0 + e * z); });
      CHECK(std::abs(r.margin[k] - want) <= 1e-12 * scale(a, da));
      // |1 + eps z| >= eps x gives margin >= 1/(2x^2)
      CHECK(r.margin[k] >= 1.0 / (2.0 * z.real() * z.real()) * (1 - 1e-12));
    }
    CHECK(r.min_margin >= 1.0 / (2.0 * x_max * x_max) * (1 - 1e-12));
  }

  SUBCASE("zero weight holds with both sides zero") {
    const auto r = check_halfplane(zero_alpha(), g, hp);
    CHECK(r.holds());
    CHECK(r.min_margin == 0.0);
  }

  SUBCASE("alpha = x fails near the imaginary axis") {
    const Grid hg = build_grid(DomainSpec::half_plane(10.0, 0.05), 0.05);
    const auto r = check_halfplane(power_alpha(1.0, 1.0), hg, hp);
    CHECK(r.verdict.kind == VerdictKind::Fails);
    REQUIRE(r.verdict.witness.has_value());
    const auto& w = *r.verdict.witness;
    REQUIRE(w.epsilon.has_value());
    const Complex z = w.z;
    // re-evaluate the witness from the closed form
    const double lhs = 2.0 * z.real() * z.real();
    const double rhs = 0.5 + z.real() * *w.epsilon / std::abs(1.0 + *w.epsilon * z);
    CHECK(lhs < rhs);
    CHECK(w.lhs == Approx(lhs).epsilon(1e-12));
    CHECK(w.rhs == Approx(rhs).epsilon(1e-12));
    double brute = kInfinity;
    for (auto k : hg.domain_indices()) {
      const Complex p = hg.point(k);
      brute = std::min(brute, brute_min(p.real(), 0.5, eps, [&](double e) { return e / std::abs(1.0 + e * p); }));
    }
    CHECK(r.min_margin == Approx(brute).epsilon(1e-12));
    CHECK(z.real() < 0.5);
  }

  SUBCASE("domain must lie in the right half-plane") {
    const Grid left = build_grid(DomainSpec::rectangle(-1, 1, -1, 1), 0.1);
    CHECK(code_of([&] { check_halfplane(zero_alpha(), left, hp); }) == ErrorCode::DomainNotInRightHalfPlane);
  }
}

TEST_CASE("the envelope decides when the eps grid misses the failure") {
  // alpha = const c: 2c^2 >= c eps/|1+eps z| for all eps iff 2c >= 1/|z| (x >= 0).
  // With eps only up to 1 the grid sees at most eps/|1+eps z| < 1/|z|.
  const Grid g = build_grid(DomainSpec::rectangle(0.3, 1, -0.2, 0.2), 0.05);
  const auto r = check_halfplane(constant_alpha(1.0), g, DamperFamily::half_plane({1e-3, 1e-2, 1e-1, 1.0}));
  CHECK(r.envelope.available);
  CHECK(r.verdict.kind == VerdictKind::Fails);
  CHECK(r.verdict_source == "envelope");
  REQUIRE(r.verdict.witness.has_value());
  REQUIRE(r.verdict.witness->epsilon.has_value());
  const Complex z = r.verdict.witness->z;
  const double e = *r.verdict.witness->epsilon;
  CHECK(2.0 < e / std::abs(1.0 + e * z));
}

TEST_CASE("log-map condition") {
  const Grid g = build_grid(DomainSpec::rectangle(1, 2, -1, 1), 0.05);
  const auto eps = DamperFamily::default_epsilons();
  const Complex a{-1.0, 0.0};
  const double rad = 0.5;
  const auto lm = DamperFamily::log_map(a, rad, eps);

  const auto zero = check_logmap(zero_alpha(), g, a, rad, lm);
  CHECK(zero.holds());

  const auto r = check_logmap(tokamak_alpha(1), g, a, rad, lm);
  CHECK_FALSE(r.branch.empty());
  double brute = kInfinity;
  for (auto k : g.domain_indices()) {
    const Complex z = g.point(k);
    const Complex gz = std::log((z - a) / rad);  // principal branch; the cut points away from the domain
    const double al = tok_alpha_abs(1, z.real()), da = tok_dalpha_abs(1, z.real());
    const double want =
        brute_min(al, da, eps, [&](double e) { return e / (std::abs(1.0 + e * gz) * std::abs(z - a)); });
    CHECK(std::abs(r.margin[k] - want) <= 1e-12 * scale(al, da));
    brute = std::min(brute, want);
  }
  CHECK(r.min_margin == Approx(brute).epsilon(1e-12));
  CHECK(r.verdict.kind == (brute > 0 ? VerdictKind::Holds : VerdictKind::Fails));

  CHECK(code_of([&] { check_logmap(zero_alpha(), g, {1.5, 0.0}, 0.2, DamperFamily::log_map({1.5, 0.0}, 0.2)); }) ==
        ErrorCode::DiscIntersectsDomain);
}

TEST_CASE("log-map branch for a domain surrounding the centre") {
  const auto spec = DomainSpec::disc_complement_log({0, 0}, 1.0, 3.0);
  const Grid g = build_grid(spec, 0.05);
  const auto branch = choose_branch(g, {0, 0}, 1.0);
  // the slit lies on the negative real axis, so the log is continuous over the domain
  CHECK(std::cos(branch.theta0 + std::numbers::pi) == Approx(-1.0));
  const auto r = check_logmap(zero_alpha(), g, {0, 0}, 1.0, DamperFamily::log_map({0, 0}, 1.0));
  CHECK(r.holds());
  // a disc in the hole but off-centre: the domain surrounds it, so every cut crosses the annulus
  CHECK(code_of([&] { choose_branch(g, {0.5, 0.0}, 0.2); }) == ErrorCode::BranchCutCrossesDomain);
}

TEST_CASE("pullback weight") {
  const auto zero = pullback_weight(zero_alpha(), 0.0, 1.0);
  CHECK(zero.eval({0.3, 0.4}) == Complex{});
  const auto one = pullback_weight(constant_alpha(1.0), 0.0, 1.0);
  for (Complex zeta : {Complex{0.0, 0.0}, Complex{0.5, 1.0}, Complex{-1.0, 2.5}}) {
    CHECK(std::abs(one.eval(zeta) - std::exp(std::conj(zeta))) <= 1e-14 * std::exp(zeta.real()));
    CHECK(std::abs(one.eval(zeta)) == Approx(std::exp(zeta.real())));
  }
  // chain rule: v = w o h solves dbar v = beta conj(v) with residual O(h^2)
  const double c = 0.4, rad = 0.5;
  const Complex a{-1.0, 0.0};
  const auto beta = pullback_weight(constant_alpha(c), a, rad);
  const auto v = [&](Complex zeta) {
    const Complex z = rad * std::exp(zeta) + a;
    return Complex{std::exp(2.0 * c * z.real()), 0.0};
  };
  std::vector<double> hs, rs;
  for (double h : {0.04, 0.02, 0.01}) {
    const Grid g = build_grid(DomainSpec::rectangle(0.5, 1.5, -1, 1), h);
    hs.push_back(h);
    rs.push_back(residual_linf(g, sample(g, v), beta));
  }
  CHECK(rs.back() < 1e-3);
  CHECK(oracle::fitted_order(hs, rs) == Approx(2.0).epsilon(0.15));
  // sup over corresponding samples is preserved
  const Grid g = build_grid(DomainSpec::rectangle(0.5, 1.5, -1, 1), 0.02);
  const auto vs = sample(g, v);
  double sup_v = 0.0, sup_w = 0.0;
  for (auto k : g.domain_indices()) {
    const Complex z = rad * std::exp(g.point(k)) + a;
    sup_v = std::max(sup_v, std::abs(vs[k]));
    sup_w = std::max(sup_w, std::exp(2.0 * c * z.real()));
  }
  CHECK(sup_v == Approx(sup_w).epsilon(1e-14));

  const auto tok = pullback_weight(tokamak_alpha(1), {-1.0, 0.0}, 1.0);
  CHECK(code_of([&] { tok.eval(0.0); }) == ErrorCode::ImageOutsideDomain);
}

TEST_CASE("three-lines condition") {
  const double a = 1, b = 2;
  const Grid g = build_grid(DomainSpec::strip(a, b, 3), 0.05);
  const auto eps = DamperFamily::default_epsilons();
  const auto hp = DamperFamily::half_plane(eps);

  CHECK(check_threelines_condition(zero_alpha(), g, 1.0, 2.0, a, b, hp).holds());

  SUBCASE("equal line maxima reduce to the half-plane condition") {
    const auto t = check_threelines_condition(tokamak_alpha(1), g, 3.0, 3.0, a, b, hp);
    const auto h = check_halfplane(tokamak_alpha(1), g, hp);
    for (auto k : g.domain_indices()) CHECK(std::abs(t.margin[k] - h.margin[k]) <= 1e-12);
    CHECK(t.verdict.kind == h.verdict.kind);
  }

  SUBCASE("tokamak with a manufactured solution matches brute force") {
    const auto f = make_field("xpow_pair{lambda:1}");
    const auto w = closed_form_solution(g, f.fn, f.name, f.solves);
    const auto prof = three_lines_profile(w, a, b, 3, 21);
    const double ma = prof.m.front(), mb = prof.m.back();
    const auto r = check_threelines_condition(tokamak_alpha(1), g, ma, mb, a, b, hp);
    const double slope = std::abs(std::log(ma / mb)) / (b - a);
    CHECK(r.threelines_slope == Approx(slope).epsilon(1e-14));
    double brute = kInfinity;
    for (auto k : g.domain_indices()) {
      const Complex z = g.point(k);
      const double al = tok_alpha_abs(1, z.real()), da = tok_dalpha_abs(1, z.real());
      const double want = brute_min(al, da, eps, [&](double e) { return slope + e / std::abs(1.0 + e * z); });
      CHECK(std::abs(r.margin[k] - want) <= 1e-12 * scale(al, da));
      brute = std::min(brute, want);
    }
    CHECK(r.min_margin == Approx(brute).epsilon(1e-12));
    CHECK(r.verdict.kind == (brute > 0 ? VerdictKind::Holds : VerdictKind::Fails));
    // a solution satisfying the condition must give a log-convex profile
    if (r.holds()) CHECK(log_convexity_check(prof).verdict == PassVerdict::Pass);
  }

  CHECK(code_of([&] { check_threelines_condition(zero_alpha(), g, 0.0, 1.0, a, b, hp); }) ==
        ErrorCode::NonpositiveBoundaryMax);
}

TEST_CASE("power exponent scan") {
  const Grid g = build_grid(DomainSpec::half_plane(100.0, 0.01), 0.25);
  const auto hp = DamperFamily::half_plane(logspace(1e-2, 10, 7));
  const std::vector<double> mus = {-2, -1.5, -1, -0.5, 0, 1};
  const auto rows = power_mu_scan(-1.0, mus, g, hp);
  REQUIRE(rows.size() == mus.size());
  for (const auto& row : rows) {
    INFO("mu = " << row.mu);
    CHECK(row.report.holds() == (row.mu == -1.0));
    if (!row.report.holds()) {
      // the witness really violates the one-variable condition
      const auto& w = *row.report.verdict.witness;
      const double x = w.z.real();
      const double lhs = 2.0 * std::pow(x, 2.0 * row.mu);
      const double extra = w.epsilon ? *w.epsilon / std::abs(1.0 + *w.epsilon * w.z) : 1.0 / std::abs(w.z);
      const double rhs = std::abs(row.mu) * std::pow(x, row.mu - 1.0) / 2.0 + std::pow(x, row.mu) * extra;
      CHECK(lhs < rhs);
    }
  }
  CHECK(power_mu_scan(-1.0, std::vector<double>{}, g, hp).empty());
  for (const auto& row : power_mu_scan(0.0, mus, g, hp)) CHECK(row.report.holds());
}

TEST_CASE("maximum principle on bounded grids") {
  const Grid disc = build_grid(DomainSpec::unit_disc(), 0.05);
  const auto c = max_principle_report(field_on(disc, [](Complex) { return Complex{2.0, -1.0}; }), std::nullopt);
  CHECK(c.interior_sup == Approx(std::sqrt(5.0)).epsilon(1e-15));
  CHECK(c.boundary_sup == Approx(std::sqrt(5.0)).epsilon(1e-15));
  CHECK(c.verdict == PassVerdict::Pass);

  // holomorphic functions never fail the bounded check
  const std::vector<std::function<Complex(Complex)>> seeds = {
      [](Complex z) { return z; }, [](Complex z) { return std::exp(z); }, [](Complex z) { return z * z * z - z; },
      [](Complex z) { return 1.0 / (z + 3.0); }, [](Complex z) { return std::exp(z * z); }};
  for (const auto& spec : {DomainSpec::unit_disc(), DomainSpec::rectangle(-1, 2, -1, 1), DomainSpec::strip(1, 2, 2)}) {
    const Grid g = build_grid(spec, 0.05);
    for (const auto& s : seeds) {
      const auto r = max_principle_report(field_on(g, s), std::nullopt);
      CHECK(r.verdict == PassVerdict::Pass);
      CHECK(r.interior_sup <= std::max(r.boundary_sup, r.arc_sup.value_or(0.0)) + r.tol_grid);
    }
  }

  // a bump has its maximum inside
  const auto bump = max_principle_report(
      field_on(disc, [](Complex z) { return Complex{std::exp(-4.0 * std::norm(z)), 0.0}; }), std::nullopt);
  CHECK(bump.verdict == PassVerdict::Fail);
  REQUIRE(bump.witness.has_value());
  CHECK(std::abs(*bump.witness) < 0.1);
}

TEST_CASE("maximum principle on a truncated half-plane") {
  const Grid g = build_grid(DomainSpec::half_plane(10.0), 0.1);
  const auto decay = field_on(g, [](Complex z) { return std::exp(-z); });
  const auto b = max_principle_report(decay, std::nullopt);
  CHECK(b.mode == "bounded");
  CHECK(b.boundary_sup == Approx(1.0).epsilon(1e-15));
  CHECK(b.interior_sup < 1.0);
  CHECK(b.verdict == PassVerdict::Pass);
  CHECK_FALSE(b.arc_carries_sup);

  const auto hp = DamperFamily::half_plane(logspace(1e-2, 1, 5));
  const auto u = max_principle_report(decay, hp);
  CHECK(u.mode == "unbounded");
  CHECK(u.verdict == PassVerdict::Pass);
  CHECK(u.damped.size() == 5);
  CHECK(u.damped.front().epsilon > u.damped.back().epsilon);

  const auto grow = field_on(g, [](Complex z) { return std::exp(z); });
  const auto gb = max_principle_report(grow, std::nullopt);
  CHECK(gb.verdict == PassVerdict::Pass);
  CHECK(gb.arc_carries_sup);
  REQUIRE(gb.arc_sup.has_value());
  CHECK(*gb.arc_sup > gb.boundary_sup);
  CHECK(gb.boundary_sup == Approx(1.0).epsilon(1e-15));
  const auto gu = max_principle_report(grow, hp);
  CHECK(gu.verdict != PassVerdict::Pass);

  MaxPrincipleOptions o;
  o.mode = MaxMode::Unbounded;
  CHECK(code_of([&] { max_principle_report(decay, std::nullopt, o); }) == ErrorCode::NoDampersForUnboundedDomain);
}

TEST_CASE("three-lines profile") {
  const Grid g = build_grid(DomainSpec::strip(1, 2, 6), 0.025);
  const auto sq = three_lines_profile(field_on(g, [](Complex z) { return std::exp(z * z); }), 1, 2, 6, 41);
  REQUIRE(sq.xs.size() == 41);
  for (std::size_t i = 0; i < sq.xs.size(); ++i) CHECK(sq.m[i] == Approx(std::exp(sq.xs[i] * sq.xs[i])).epsilon(1e-6));
  CHECK(sq.y_cut == 6.0);

  const auto one = three_lines_profile(field_on(g, [](Complex) { return Complex{1.0, 0.0}; }), 1, 2, 6, 41);
  for (double m : one.m) CHECK(m == 1.0);
  const auto ex = three_lines_profile(field_on(g, [](Complex z) { return std::exp(z); }), 1, 2, 6, 41);
  for (std::size_t i = 0; i < ex.xs.size(); ++i) CHECK(ex.m[i] == Approx(std::exp(ex.xs[i])).epsilon(1e-14));

  const Grid narrow = build_grid(DomainSpec::strip(1, 2, 2), 0.025);
  CHECK(code_of([&] { three_lines_profile(field_on(narrow, [](Complex z) { return z; }), 1, 2, 6, 41); }) ==
        ErrorCode::StripNotCovered);
  CHECK(code_of([&] { three_lines_profile(field_on(narrow, [](Complex z) { return z; }), 0.5, 2, 2, 41); }) ==
        ErrorCode::StripNotCovered);
}

TEST_CASE("log-convexity check") {
  ThreeLinesProfile p;
  p.a = 1;
  p.b = 2;
  p.xs = {1.0, 1.25, 1.5, 1.75, 2.0};
  for (double x : p.xs) p.m.push_back(std::exp(x * x));
  auto r = log_convexity_check(p);
  CHECK(r.verdict == PassVerdict::Pass);
  CHECK(r.chord_margins[2] == Approx(0.25).epsilon(1e-12));
  CHECK(r.margin == Approx(0.1875).epsilon(1e-12));

  for (double& m : p.m) m = 3.0;
  r = log_convexity_check(p);
  CHECK(r.verdict == PassVerdict::Pass);
  CHECK(std::abs(r.margin) <= 1e-12);

  p.m.clear();
  for (double x : p.xs) p.m.push_back(std::exp(-(x - 1.5) * (x - 1.5)));
  r = log_convexity_check(p);
  CHECK(r.verdict == PassVerdict::Fail);
  CHECK(r.worst_triple[1] == 1.5);

  p.m[3] = 0.0;
  CHECK(code_of([&] { log_convexity_check(p); }) == ErrorCode::ZeroModulusLine);
}

TEST_CASE("damper properties") {
  const auto hp = DamperFamily::half_plane();
  const auto good = damper_properties_check(hp, build_grid(DomainSpec::half_plane(10.0), 0.1));
  CHECK(good.precondition.empty());
  CHECK(good.holomorphic);
  CHECK(good.decays);
  CHECK(good.tends_to_one);
  CHECK(good.bounded_by_one);
  CHECK(good.boundary_sup <= 1.0 + 1e-12);
  CHECK(good.all_pass());
  for (std::size_t i = 1; i < good.limit_defect.size(); ++i) CHECK(good.limit_defect[i] >= good.limit_defect[i - 1]);

  const auto bad = damper_properties_check(hp, build_grid(DomainSpec::rectangle(-1, 1, -1, 1), 0.1));
  CHECK_FALSE(bad.precondition.empty());
  CHECK_FALSE(bad.all_pass());
  CHECK(bad.boundary_sup > 1.0);

  const auto lm = DamperFamily::log_map({-1.0, 0.0}, 0.5);
  const auto logmap = damper_properties_check(lm, build_grid(DomainSpec::rectangle(1, 2, -1, 1), 0.05));
  CHECK(logmap.all_pass());
}
