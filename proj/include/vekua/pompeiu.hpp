#pragma once

// Area-Cauchy (Pompeiu) transform
//   T g(z) = -(1/pi) \iint_D g(zeta) / (zeta - z) dA(zeta),
// the right inverse of dbar, by cell quadrature on a Grid.
//
// Each lattice node owns the square cell of side h centred on it. Cells that
// lie wholly in the domain are summed through a translation-invariant kernel
// table. Cells cut by the boundary are resolved by a quadtree down to leaves
// of size proportional to h^2; they take g from the nearest domain node, act
// through their inside area and centroid far from a target and through their
// leaves close to it.

#include <span>
#include <vector>

#include "vekua/geometry.hpp"
#include "vekua/grid_function.hpp"

namespace vekua {

enum class SingularRule {
  CellExclusion,      // drop the cell containing the target, midpoint elsewhere
  ExactConstantCell,  // closed-form cell integrals near the target, midpoint elsewhere
};

struct TransformResult {
  std::vector<Complex> values;
  double quadrature_spacing;
  SingularRule singular_rule;
};

// \iint over the axis-aligned square of side h centred at `offset` of 1/zeta dA.
Complex cell_cauchy_integral(Complex offset, double h);

class PompeiuOperator {
 public:
  // Full cells within `near_cells` lattice steps of a target use the exact rule.
  explicit PompeiuOperator(const Grid& grid, SingularRule rule = SingularRule::ExactConstantCell,
                           int near_cells = 2);

  const Grid& grid() const noexcept { return grid_; }
  SingularRule rule() const noexcept { return rule_; }
  // Domain area inside each node's cell; sums to the domain area up to sub-sampling.
  const std::vector<double>& cell_areas() const noexcept { return areas_; }

  // Arbitrary targets in the closed domain; throws TargetOutsideDomain.
  std::vector<Complex> apply(std::span<const Complex> g, std::span<const Complex> targets) const;
  // Targets at every domain node; NaN elsewhere.
  GridFunction apply_on_grid(std::span<const Complex> g) const;
  // Sup-norm of the discrete operator on the grid: the largest absolute row sum.
  double grid_operator_norm() const;

 private:
  struct Leaf {
    Complex center;
    double size;
  };
  struct PartialCell {
    std::size_t cell;    // lattice node owning the cell
    std::size_t source;  // domain node supplying g
    Complex centroid;
    double area;
    std::vector<Leaf> leaves;  // inside part of the cell
  };
  struct Correction {
    std::size_t target;
    std::size_t partial;
    Complex accurate;  // near-field integral of the partial cell
    Complex centroid;  // what the far-field rule contributes
  };

  void resolve(Complex center, double size, std::vector<Leaf>& out) const;
  Complex full_kernel(Complex offset) const;
  Complex centroid_term(const PartialCell& p, Complex z) const;
  Complex near_term(const PartialCell& p, Complex z) const;
  bool is_near(const PartialCell& p, Complex z) const;
  void check_input(std::span<const Complex> g) const;
  void correlate(const std::vector<double>& table_re, const std::vector<double>& table_im,
                 const std::vector<double>& src_re, const std::vector<double>& src_im, std::vector<double>& out_re,
                 std::vector<double>& out_im) const;

  Grid grid_;
  SingularRule rule_;
  int near_;
  double leaf_min_;
  std::vector<double> areas_;
  std::vector<std::uint8_t> full_;
  std::vector<PartialCell> partial_;
  std::vector<double> pcx_, pcy_;
  std::vector<Correction> corrections_;  // sorted by target
  // Kernel per unit area by lattice offset, rows reversed and zero padded for
  // the blocked correlation.
  std::size_t table_width_ = 0;
  std::vector<double> table_re_, table_im_;
  std::vector<std::size_t> row_lo_, row_hi_;  // full-cell column range per row
};

TransformResult pompeiu_transform(const Grid& grid, std::span<const Complex> g, std::span<const Complex> targets,
                                  SingularRule rule = SingularRule::ExactConstantCell);

}  // namespace vekua
