#pragma once

// Test-side reference computations, written independently of the library's
// quadrature and classification code.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct Rule {
  std::vector<double> x, w;  // on [-1, 1]
};

// Gauss-Legendre nodes by Newton iteration on P_n.
inline Rule gauss_legendre(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

// Composite Gauss-Legendre over [a, b] with `panels` panels.
inline double integrate(const std::function<double(double)>& f, double a, double b, int panels = 8, int order = 16) {
  static const Rule rule = gauss_legendre(16);
  const Rule& r = order == 16 ? rule : gauss_legendre(order);
  double sum = 0.0;
  const double step = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * step, mid = lo + 0.5 * step;
    for (std::size_t i = 0; i < r.x.size(); ++i) sum += r.w[i] * f(mid + 0.5 * step * r.x[i]);
  }
  return 0.5 * step * sum;
}

inline C integrate_c(const std::function<C(double)>& f, double a, double b, int panels = 8) {
  const double re = integrate([&](double t) { return f(t).real(); }, a, b, panels);
  const double im = integrate([&](double t) { return f(t).imag(); }, a, b, panels);
  return {re, im};
}

// Star-shaped region around z described by its exit distance along each ray
// and the angles where that distance has kinks.
struct Star {
  std::function<double(double)> exit;
  std::vector<double> kinks;  // in [0, 2pi)
};

inline Star disc_star(C z) {
  return {[z](double t) {
            const double b = (std::conj(z) * std::polar(1.0, t)).real();
            return -b + std::sqrt(b * b + 1.0 - std::norm(z));
          },
          {}};
}

inline Star rect_star(C z, double x0, double x1, double y0, double y1) {
  Star s;
  s.exit = [=](double t) {
    const double c = std::cos(t), sn = std::sin(t);
    double r = 1e300;
    if (c > 0) r = std::min(r, (x1 - z.real()) / c);
    if (c < 0) r = std::min(r, (x0 - z.real()) / c);
    if (sn > 0) r = std::min(r, (y1 - z.imag()) / sn);
    if (sn < 0) r = std::min(r, (y0 - z.imag()) / sn);
    return r;
  };
  for (C corner : {C{x0, y0}, C{x1, y0}, C{x1, y1}, C{x0, y1}}) {
    double a = std::arg(corner - z);
    if (a < 0) a += 2.0 * kPi;
    s.kinks.push_back(a);
  }
  return s;
}

// -(1/pi) \iint g(zeta)/(zeta - z) dA in polar coordinates centred on z:
// the 1/rho singularity cancels against the area element.
inline C pompeiu_polar(const std::function<C(C)>& g, C z, const Star& star, int panels = 16) {
  std::vector<double> cuts = star.kinks;
  cuts.push_back(0.0);
  cuts.push_back(2.0 * kPi);
  std::sort(cuts.begin(), cuts.end());
  C total{};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-14) continue;
    total += integrate_c(
        [&](double t) {
          const C dir = std::polar(1.0, t);
          const double r = star.exit(t);
          return std::conj(dir) * integrate_c([&](double rho) { return g(z + rho * dir); }, 0.0, r, 4);
        },
        cuts[i], cuts[i + 1], panels);
  }
  return -total / kPi;
}

// \iint over the square of side h centred at `offset` of dA/zeta.
inline C cell_integral(C offset, double h) {
  const double x0 = offset.real() - h / 2, x1 = offset.real() + h / 2;
  const double y0 = offset.imag() - h / 2, y1 = offset.imag() + h / 2;
  if (x0 < 0 && x1 > 0 && y0 < 0 && y1 > 0) {
    // Polar around the origin: \int e^{-it} R(t) dt.
    const Star s = rect_star(0.0, x0, x1, y0, y1);
    std::vector<double> cuts = s.kinks;
    cuts.push_back(0.0);
    cuts.push_back(2.0 * kPi);
    std::sort(cuts.begin(), cuts.end());
    C total{};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      total += integrate_c([&](double t) { return std::polar(1.0, -t) * s.exit(t); }, cuts[i], cuts[i + 1], 8);
    }
    return total;
  }
  return integrate_c(
      [&](double x) { return integrate_c([&](double y) { return 1.0 / C{x, y}; }, y0, y1, 16); }, x0, x1, 16);
}

// Eigenvalues of a symmetric 2x2 matrix from the characteristic polynomial.
inline std::pair<double, double> eigenvalues(double a, double b, double d) {
  const double mean = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
  return {mean - rad, mean + rad};
}

// Least-squares slope of log(err) against log(h).
inline double fitted_order(const std::vector<double>& h, const std::vector<double>& err) {
  const std::size_t n = h.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
