#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "vekua/geometry.hpp"

namespace vekua {

// Complex values on every node of a Grid, in lattice order. Nodes without a
// value (outside the domain, or not evaluable) hold NaN.
using GridFunction = std::vector<Complex>;

inline const Complex kMissing{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};

inline bool has_value(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

enum class SampleScope {
  Domain,  // Interior and Boundary nodes; evaluation failures propagate
  All,     // additionally every Outside node where fn is finite
};

GridFunction sample(const Grid& grid, const std::function<Complex(Complex)>& fn,
                    SampleScope scope = SampleScope::Domain);

// max |values[k]| over the given nodes; 0 for an empty set.
double sup_abs(std::span<const Complex> values, std::span<const std::size_t> nodes);

// Bilinear interpolation; throws InterpolationOutsideGrid when a corner has no value.
Complex interpolate(const Grid& grid, std::span<const Complex> values, Complex z);

// Largest | |w(p)| - |w(q)| | / h over adjacent domain nodes: a discrete bound
// on the gradient of |w|.
double modulus_gradient_bound(const Grid& grid, std::span<const Complex> values);

// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per
// hardware thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace vekua
