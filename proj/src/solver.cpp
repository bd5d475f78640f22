#include "vekua/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vekua/descriptor.hpp"
#include "vekua/error.hpp"

namespace vekua {

namespace {

std::string at(Complex z) { return "(" + format_number(z.real()) + ", " + format_number(z.imag()) + ")"; }

// alpha at every domain node; zero elsewhere. Throws SingularWeight listing the offenders.
std::vector<Complex> alpha_on_domain(const Grid& grid, const WeightField& alpha) {
  std::vector<Complex> a(grid.size(), Complex{});
  std::vector<Complex> bad;
  for (auto k : grid.domain_indices()) {
    const Complex z = grid.point(k);
    try {
      a[k] = alpha.eval(z);
    } catch (const Error&) {
      bad.push_back(z);
    }
  }
  if (!bad.empty()) {
    std::string msg = "weight " + alpha.name() + " is undefined at " + std::to_string(bad.size()) + " grid node(s):";
    for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 8); ++i) msg += " " + at(bad[i]);
    fail(ErrorCode::SingularWeight, msg);
  }
  return a;
}

Complex dbar_at(const Grid& grid, std::span<const Complex> v, std::size_t k, std::size_t step) {
  const std::size_t nx = grid.nx();
  const double two_h = 2.0 * grid.spacing() * static_cast<double>(step);
  const Complex fx = (v[k + step] - v[k - step]) / two_h;
  const Complex fy = (v[k + step * nx] - v[k - step * nx]) / two_h;
  return 0.5 * (fx + Complex{0.0, 1.0} * fy);
}

bool stencil_ok(const Grid& grid, std::span<const Complex> v, std::size_t k, std::size_t step) {
  const std::size_t i = grid.column(k), j = grid.row(k);
  if (i < step || j < step || i + step >= grid.nx() || j + step >= grid.ny()) return false;
  for (std::size_t q : {k + step, k - step, k + step * grid.nx(), k - step * grid.nx()}) {
    if (!grid.in_domain(q) || !has_value(v[q])) return false;
  }
  return true;
}

SolutionField iterate(GridFunction seed, const WeightField& alpha, const Grid& grid, const SolveOptions& options) {
  if (!(options.tol > 0.0) || options.max_iter < 1) fail(ErrorCode::InvalidArgument, "tol and max_iter must be positive");
  const auto a = alpha_on_domain(grid, alpha);
  const bool zero = std::all_of(a.begin(), a.end(), [](Complex c) { return c == Complex{}; });
  if (zero) {
    FixedPointProvenance p;
    p.iterations = 1;
    p.history = {0.0};
    return SolutionField{grid, std::move(seed), alpha.name(), std::nullopt, p};
  }
  for (auto k : grid.domain_indices()) {
    if (!has_value(seed[k])) fail(ErrorCode::InvalidArgument, "seed is not finite at " + at(grid.point(k)));
  }

  const PompeiuOperator op(grid, options.rule);
  double alpha_sup = 0.0;
  for (const Complex& c : a) alpha_sup = std::max(alpha_sup, std::abs(c));
  FixedPointProvenance p;
  p.contraction_bound = alpha_sup * op.grid_operator_norm();

  const auto& nodes = grid.domain_indices();
  GridFunction w = seed;
  GridFunction g(grid.size(), Complex{});
  for (int it = 1; it <= options.max_iter; ++it) {
    for (auto k : nodes) g[k] = a[k] * std::conj(w[k]);
    const GridFunction tg = op.apply_on_grid(g);
    double update = 0.0;
    for (auto k : nodes) {
      const Complex next = seed[k] + tg[k];
      update = std::max(update, std::abs(next - w[k]));
      w[k] = next;
    }
    p.history.push_back(update);
    if (!std::isfinite(update)) break;
    if (update <= options.tol) {
      p.iterations = it;
      p.final_update = update;
      const std::size_t n = p.history.size();
      p.observed_ratio = n >= 2 && p.history[n - 2] > 0.0 ? p.history[n - 1] / p.history[n - 2] : 0.0;
      return SolutionField{grid, std::move(w), alpha.name(), std::nullopt, p};
    }
  }
  throw NoConvergenceError("fixed-point iteration did not reach tol " + format_number(options.tol) + " in " +
                               std::to_string(p.history.size()) + " iterations (contraction bound " +
                               format_number(p.contraction_bound) + ")",
                           p.history);
}

}  // namespace

SolutionField solve_vekua(std::span<const Complex> seed, const WeightField& alpha, const Grid& grid,
                          const SolveOptions& options) {
  if (seed.size() != grid.size()) fail(ErrorCode::InvalidArgument, "seed size does not match grid");
  const double htol = options.holomorphy_tol.value_or(10.0 * options.tol);
  for (auto k : grid.interior_indices()) {
    if (!stencil_ok(grid, seed, k, 1)) continue;
    Complex d = dbar_at(grid, seed, k, 1);
    if (stencil_ok(grid, seed, k, 2)) d = (4.0 * d - dbar_at(grid, seed, k, 2)) / 3.0;
    if (!(std::abs(d) <= htol)) {
      fail(ErrorCode::NotHolomorphic, "seed has |dbar f| = " + format_number(std::abs(d)) + " > " +
                                          format_number(htol) + " at " + at(grid.point(k)));
    }
  }
  return iterate(GridFunction(seed.begin(), seed.end()), alpha, grid, options);
}

SolutionField solve_vekua(const std::function<Complex(Complex)>& seed, const WeightField& alpha, const Grid& grid,
                          const SolveOptions& options) {
  const double htol = options.holomorphy_tol.value_or(10.0 * options.tol);
  for (auto k : grid.domain_indices()) {
    const Complex z = grid.point(k);
    const Complex d = wirtinger_fd4(seed, z, 1e-3 * std::max(1.0, std::abs(z)), Wirtinger::Dzbar);
    if (!(std::abs(d) <= htol)) {
      fail(ErrorCode::NotHolomorphic, "seed has |dbar f| = " + format_number(std::abs(d)) + " > " +
                                          format_number(htol) + " at " + at(z));
    }
  }
  return iterate(sample(grid, seed), alpha, grid, options);
}

SolutionField closed_form_solution(const Grid& grid, const std::function<Complex(Complex)>& fn, std::string name,
                                   std::string weight_name, SampleScope scope) {
  return SolutionField{grid, sample(grid, fn, scope), std::move(weight_name), std::nullopt,
                       ClosedFormProvenance{std::move(name)}};
}

double residual_linf(const Grid& grid, std::span<const Complex> values, const WeightField& alpha) {
  if (values.size() != grid.size()) fail(ErrorCode::InvalidArgument, "grid function size does not match grid");
  double r = 0.0;
  std::vector<Complex> bad;
  for (auto k : grid.interior_indices()) {
    const Complex z = grid.point(k);
    Complex a;
    try {
      a = alpha.eval(z);
    } catch (const Error&) {
      bad.push_back(z);
      continue;
    }
    const Complex d = wirtinger_at(grid, values, k, Wirtinger::Dzbar);
    r = std::max(r, std::abs(d - a * std::conj(values[k])));
  }
  if (!bad.empty()) {
    std::string msg = "weight " + alpha.name() + " is undefined at " + std::to_string(bad.size()) + " node(s):";
    for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 8); ++i) msg += " " + at(bad[i]);
    fail(ErrorCode::SingularWeight, msg);
  }
  return r;
}

double residual(SolutionField& w, const WeightField& alpha) {
  const double r = residual_linf(w.grid, w.values, alpha);
  w.residual_linf = r;
  return r;
}

double hp_norm(const Grid& grid, std::span<const Complex> values, double p, std::span<const double> radii,
               int n_theta) {
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorCode::InvalidArgument, "p must be a finite number >= 1");
  if (n_theta < 8) fail(ErrorCode::InvalidArgument, "n_theta must be at least 8");
  if (radii.empty()) fail(ErrorCode::RadiusOutOfRange, "no radii supplied");
  double best = 0.0;
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) fail(ErrorCode::RadiusOutOfRange, "radius " + format_number(r) + " is not in (0, 1)");
    double sum = 0.0;
    for (int t = 0; t < n_theta; ++t) {
      const double theta = 2.0 * std::numbers::pi * t / n_theta;
      sum += std::pow(std::abs(interpolate(grid, values, std::polar(r, theta))), p);
    }
    best = std::max(best, sum / n_theta);
  }
  return std::pow(best, 1.0 / p);
}

}  // namespace vekua
