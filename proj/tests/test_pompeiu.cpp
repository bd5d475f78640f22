#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vekua/error.hpp"
#include "vekua/grid_function.hpp"
#include "vekua/pompeiu.hpp"
#include "vekua/weights.hpp"

using namespace vekua;

namespace {

std::vector<Complex> random_disc_points(int n, double rmax, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < n) {
    const Complex z{u(rng), u(rng)};
    if (std::abs(z) < rmax) out.push_back(z);
  }
  return out;
}

double disc_error(double h, const std::vector<Complex>& pts) {
  const Grid g = build_grid(DomainSpec::unit_disc(), h);
  const GridFunction one = sample(g, [](Complex) { return Complex{1.0, 0.0}; });
  const auto r = pompeiu_transform(g, one, pts);
  double err = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) err = std::max(err, std::abs(r.values[i] - std::conj(pts[i])));
  return err;
}

}  // namespace

TEST_CASE("oracle self-check: polar quadrature reproduces conj(z) for g = 1 on the disc") {
  for (Complex z : random_disc_points(10, 0.95, 3)) {
    const Complex t = oracle::pompeiu_polar([](Complex) { return Complex{1.0, 0.0}; }, z, oracle::disc_star(z));
    CHECK(std::abs(t - std::conj(z)) <= 1e-12);
  }
}

TEST_CASE("cell integral matches brute-force quadrature") {
  const double h = 0.1;
  for (Complex off : {Complex{0, 0}, Complex{0.02, -0.03}, Complex{0.1, 0}, Complex{0.1, 0.1}, Complex{-0.2, 0.05},
                      Complex{0.35, -0.4}, Complex{1.0, 2.0}}) {
    const Complex exact = oracle::cell_integral(off, h);
    CHECK(std::abs(cell_cauchy_integral(off, h) - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("T(1) = conj(z) on the unit disc") {
  const auto pts = random_disc_points(100, 1.0, 42);
  const double e64 = disc_error(1.0 / 64, pts);
  const double e32 = disc_error(1.0 / 32, pts);
  CHECK(e64 <= 2e-3);
  CHECK(e64 < e32);
  CHECK(std::log2(e32 / e64) >= 1.0);
}

TEST_CASE("on-grid and off-grid evaluation agree") {
  const Grid g = build_grid(DomainSpec::unit_disc(), 1.0 / 32);
  const GridFunction v = sample(g, [](Complex z) { return std::exp(z) * std::conj(z); });
  const PompeiuOperator op(g);
  const auto on = op.apply_on_grid(v);
  std::vector<Complex> targets;
  std::vector<std::size_t> ks;
  for (std::size_t i = 0; i < g.domain_indices().size(); i += 37) {
    ks.push_back(g.domain_indices()[i]);
    targets.push_back(g.point(ks.back()));
  }
  const auto off = op.apply(v, targets);
  for (std::size_t i = 0; i < ks.size(); ++i) CHECK(std::abs(on[ks[i]] - off[i]) <= 1e-12);
}

TEST_CASE("rectangle transform of a smooth density matches the polar oracle") {
  const double x0 = 0.0, x1 = 1.0, y0 = -0.5, y1 = 0.5;
  const auto g = [](Complex z) { return z * z + std::conj(z); };
  const Grid grid = build_grid(DomainSpec::rectangle(x0, x1, y0, y1), 1.0 / 64);
  const GridFunction v = sample(grid, g);
  const std::vector<Complex> pts = {{0.5, 0.0}, {0.21, 0.33}, {0.9, -0.4}, {0.05, 0.0}, {0.7, 0.49}};
  const auto r = pompeiu_transform(grid, v, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Complex ref = oracle::pompeiu_polar(g, pts[i], oracle::rect_star(pts[i], x0, x1, y0, y1));
    CHECK(std::abs(r.values[i] - ref) <= 2e-3);
  }
}

TEST_CASE("linearity") {
  const Grid g = build_grid(DomainSpec::unit_disc(), 1.0 / 32);
  const GridFunction one = sample(g, [](Complex) { return Complex{1.0, 0.0}; });
  const GridFunction two = sample(g, [](Complex z) { return z * z; });
  const Complex c{3.0, -2.0};
  GridFunction scaled(one), mix(one), zero(g.size(), Complex{});
  for (auto k : g.domain_indices()) {
    scaled[k] = c * one[k];
    mix[k] = one[k] + c * two[k];
  }
  const PompeiuOperator op(g);
  const auto t1 = op.apply_on_grid(one), t2 = op.apply_on_grid(two);
  const auto ts = op.apply_on_grid(scaled), tm = op.apply_on_grid(mix), t0 = op.apply_on_grid(zero);
  for (auto k : g.domain_indices()) {
    CHECK(std::abs(ts[k] - c * t1[k]) <= 1e-12);
    CHECK(std::abs(tm[k] - (t1[k] + c * t2[k])) <= 1e-12);
    CHECK(t0[k] == Complex{});
  }
}

TEST_CASE("dbar(Tg) recovers g with order at least one") {
  const auto bump = [](Complex z) { return std::exp(-12.0 * std::norm(z)) * Complex{1.0, 0.5}; };
  std::vector<double> hs, errs;
  for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    const Grid g = build_grid(DomainSpec::unit_disc(), h);
    const GridFunction v = sample(g, bump);
    const auto t = PompeiuOperator(g).apply_on_grid(v);
    const auto d = wirtinger(g, t, Wirtinger::Dzbar);
    double err = 0.0;
    for (auto k : g.interior_indices()) {
      if (std::abs(g.point(k)) > 0.6) continue;
      err = std::max(err, std::abs(d[k] - v[k]));
    }
    hs.push_back(h);
    errs.push_back(err);
  }
  CHECK(errs.back() < errs.front());
  CHECK(oracle::fitted_order(hs, errs) >= 1.0);
}

TEST_CASE("both singular rules converge; the exact rule is more accurate") {
  const auto pts = random_disc_points(30, 0.8, 5);
  const Grid g = build_grid(DomainSpec::unit_disc(), 1.0 / 32);
  const GridFunction one = sample(g, [](Complex) { return Complex{1.0, 0.0}; });
  const auto exact = pompeiu_transform(g, one, pts, SingularRule::ExactConstantCell);
  const auto excl = pompeiu_transform(g, one, pts, SingularRule::CellExclusion);
  CHECK(exact.singular_rule == SingularRule::ExactConstantCell);
  CHECK(exact.quadrature_spacing == g.spacing());
  double e1 = 0, e2 = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    e1 = std::max(e1, std::abs(exact.values[i] - std::conj(pts[i])));
    e2 = std::max(e2, std::abs(excl.values[i] - std::conj(pts[i])));
  }
  CHECK(e1 < e2);
  CHECK(e2 < 0.1);
}

TEST_CASE("errors") {
  const Grid g = build_grid(DomainSpec::unit_disc(), 1.0 / 16);
  const GridFunction one = sample(g, [](Complex) { return Complex{1.0, 0.0}; });
  const std::vector<Complex> outside = {{1.5, 0.0}};
  try {
    pompeiu_transform(g, one, outside);
    FAIL("expected TargetOutsideDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TargetOutsideDomain);
  }
}

TEST_CASE("grid operator norm bounds the transform of bounded densities") {
  const Grid g = build_grid(DomainSpec::unit_disc(), 1.0 / 32);
  const PompeiuOperator op(g);
  const double norm = op.grid_operator_norm();
  // sup over the disc of (1/pi) \iint dA/|zeta - z| is 2 (attained at the centre)
  CHECK(norm == doctest::Approx(2.0).epsilon(0.05));
  const GridFunction one = sample(g, [](Complex) { return Complex{1.0, 0.0}; });
  const auto t = op.apply_on_grid(one);
  CHECK(sup_abs(t, g.domain_indices()) <= norm);
}
