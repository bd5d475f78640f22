#include "vekua/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "vekua/descriptor.hpp"
#include "vekua/error.hpp"

namespace vekua {

GridFunction sample(const Grid& grid, const std::function<Complex(Complex)>& fn, SampleScope scope) {
  GridFunction out(grid.size(), kMissing);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid.in_domain(k)) {
      out[k] = fn(grid.point(k));
    } else if (scope == SampleScope::All) {
      try {
        const Complex v = fn(grid.point(k));
        if (has_value(v)) out[k] = v;
      } catch (const Error&) {
      }
    }
  }
  return out;
}

double sup_abs(std::span<const Complex> values, std::span<const std::size_t> nodes) {
  double m = 0.0;
  for (auto k : nodes) m = std::max(m, std::abs(values[k]));
  return m;
}

Complex interpolate(const Grid& grid, std::span<const Complex> values, Complex z) {
  const double h = grid.spacing();
  const double fx = (z.real() - grid.x_lo()) / h;
  const double fy = (z.imag() - grid.y_lo()) / h;
  const auto outside = [&] {
    fail(ErrorCode::InterpolationOutsideGrid,
         "cannot interpolate at (" + format_number(z.real()) + ", " + format_number(z.imag()) + ")");
  };
  if (!(fx >= -1e-9 && fy >= -1e-9 && fx <= static_cast<double>(grid.nx() - 1) + 1e-9 &&
        fy <= static_cast<double>(grid.ny() - 1) + 1e-9)) {
    outside();
  }
  auto i0 = static_cast<std::size_t>(std::clamp(std::floor(fx), 0.0, static_cast<double>(grid.nx() - 2)));
  auto j0 = static_cast<std::size_t>(std::clamp(std::floor(fy), 0.0, static_cast<double>(grid.ny() - 2)));
  const double tx = fx - static_cast<double>(i0);
  const double ty = fy - static_cast<double>(j0);
  const Complex v00 = values[grid.index(i0, j0)], v10 = values[grid.index(i0 + 1, j0)];
  const Complex v01 = values[grid.index(i0, j0 + 1)], v11 = values[grid.index(i0 + 1, j0 + 1)];
  if (!(has_value(v00) && has_value(v10) && has_value(v01) && has_value(v11))) outside();
  return (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 + (1 - tx) * ty * v01 + tx * ty * v11;
}

double modulus_gradient_bound(const Grid& grid, std::span<const Complex> values) {
  double g = 0.0;
  for (auto k : grid.domain_indices()) {
    for (auto d : {Direction::East, Direction::North}) {
      auto nb = grid.neighbor(k, d);
      if (!nb || !grid.in_domain(*nb)) continue;
      if (!has_value(values[k]) || !has_value(values[*nb])) continue;
      g = std::max(g, std::abs(std::abs(values[k]) - std::abs(values[*nb])) / grid.spacing());
    }
  }
  return g;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  const std::size_t threads = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 64));
  if (threads == 1 || n < 2 * threads) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t b = t * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace vekua
