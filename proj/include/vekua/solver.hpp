#pragma once

// Solutions of dbar w = alpha conj(w) manufactured from a holomorphic seed f
// through the integral equation w = f + T(alpha conj w).

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "vekua/geometry.hpp"
#include "vekua/grid_function.hpp"
#include "vekua/pompeiu.hpp"
#include "vekua/weights.hpp"

namespace vekua {

struct FixedPointProvenance {
  int iterations = 0;
  double final_update = 0.0;
  std::vector<double> history;     // sup-norm of successive updates
  double contraction_bound = 0.0;  // sup|alpha| times the grid operator norm of T
  double observed_ratio = 0.0;     // ratio of the last two updates
};
struct ClosedFormProvenance {
  std::string name;
};
struct ExternalProvenance {};
using Provenance = std::variant<FixedPointProvenance, ClosedFormProvenance, ExternalProvenance>;

struct SolutionField {
  Grid grid;
  GridFunction values;
  std::string weight_name;
  std::optional<double> residual_linf;
  Provenance provenance = ExternalProvenance{};
};

struct SolveOptions {
  double tol = 1e-8;
  int max_iter = 200;
  // Bound on |dbar seed|; defaults to 10 tol.
  std::optional<double> holomorphy_tol;
  SingularRule rule = SingularRule::ExactConstantCell;
};

// Seed given as values on the grid. Holomorphy is checked with Richardson
// extrapolated central differences at Interior nodes.
SolutionField solve_vekua(std::span<const Complex> seed, const WeightField& alpha, const Grid& grid,
                          const SolveOptions& options = {});
// Seed given in closed form; holomorphy is checked pointwise with fourth-order differences.
SolutionField solve_vekua(const std::function<Complex(Complex)>& seed, const WeightField& alpha, const Grid& grid,
                          const SolveOptions& options = {});

// A closed-form field sampled on the domain nodes.
SolutionField closed_form_solution(const Grid& grid, const std::function<Complex(Complex)>& fn, std::string name,
                                   std::string weight_name, SampleScope scope = SampleScope::Domain);

// sup |dbar w - alpha conj w| over Interior nodes. Throws SingularWeight.
double residual_linf(const Grid& grid, std::span<const Complex> values, const WeightField& alpha);
// Same, stored into w.residual_linf.
double residual(SolutionField& w, const WeightField& alpha);

// max over radii of ((1/2pi) \int |f(r e^{it})|^p dt)^{1/p}, trapezoid rule on
// n_theta nodes with bilinear interpolation. Throws RadiusOutOfRange.
double hp_norm(const Grid& grid, std::span<const Complex> values, double p, std::span<const double> radii,
               int n_theta = 720);

}  // namespace vekua
