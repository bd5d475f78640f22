#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace vekua {

using Complex = std::complex<double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Domain shapes. All coordinates are dimensionless.
struct Rectangle {
  double x0, x1, y0, y1;
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

// {Re z > x_min} (x_min defaults to 0) intersected with D(0, radius).
// radius may be infinite; such a domain must be truncated before gridding.
struct TruncatedHalfPlane {
  std::optional<double> x_min;
  double radius = kInfinity;
  friend bool operator==(const TruncatedHalfPlane&, const TruncatedHalfPlane&) = default;
};

// {a < Re z < b, |Im z| < y_cut}; the horizontal edges are truncation edges.
struct Strip {
  double a, b, y_cut;
  friend bool operator==(const Strip&, const Strip&) = default;
};

struct UnitDisc {
  friend bool operator==(const UnitDisc&, const UnitDisc&) = default;
};

// Annulus {radius < |z - center| < outer_radius} slit along the ray leaving
// `center` at angle `cut_angle`, which makes it simply connected. The inner
// circle and the slit are the true boundary; the outer circle truncates the
// exterior of the disc.
struct DiscComplementLog {
  Complex center;
  double radius;
  double outer_radius;
  double cut_angle = std::numbers::pi;
  friend bool operator==(const DiscComplementLog&, const DiscComplementLog&) = default;
};

enum class DomainKind { Rectangle, TruncatedHalfPlane, Strip, UnitDisc, DiscComplementLog };

enum class Membership { Interior, Boundary, Outside };

struct Box {
  double x_lo, x_hi, y_lo, y_hi;
};

class DomainSpec {
 public:
  using Shape = std::variant<Rectangle, TruncatedHalfPlane, Strip, UnitDisc, DiscComplementLog>;

  // Validates the shape invariants; throws Error(InvalidDomain).
  explicit DomainSpec(Shape shape, std::optional<double> clip_radius = std::nullopt);

  static DomainSpec rectangle(double x0, double x1, double y0, double y1);
  static DomainSpec half_plane(double radius, std::optional<double> x_min = std::nullopt);
  static DomainSpec strip(double a, double b, double y_cut);
  static DomainSpec unit_disc();
  static DomainSpec disc_complement_log(Complex center, double radius, double outer_radius,
                                        double cut_angle = std::numbers::pi);

  const Shape& shape() const noexcept { return shape_; }
  DomainKind kind() const noexcept;
  // Radius of the extra D(0, rho) intersection introduced by truncate().
  std::optional<double> clip_radius() const noexcept { return clip_radius_; }

  Membership classify(Complex z) const;
  bool bounded() const;
  Box bounding_box() const;
  // inf and sup of |z| over the closed domain.
  double min_modulus() const;
  double max_modulus() const;
  // Every point of the closed domain has Re z >= 0.
  bool in_closed_right_half_plane() const;

  // Signed slack of each defining constraint (positive inside); the flag
  // marks constraints that are truncations rather than true boundary.
  struct Constraint {
    double slack;
    bool truncation;
  };
  std::vector<Constraint> constraints(Complex z) const;
  // Distance to the slit of a DiscComplementLog domain (infinite otherwise).
  double slit_distance(Complex z) const;
  // True when the segment [p, q] crosses the slit.
  bool crosses_slit(Complex p, Complex q) const;

  std::string describe() const;

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

 private:
  Shape shape_;
  std::optional<double> clip_radius_;
};

// Boundary tolerance for exact membership tests.
double boundary_tolerance(Complex z);

Membership in_domain(const DomainSpec& spec, Complex z);

// Intersection with D(0, radius). Returns the spec unchanged when the domain
// already lies in the disc. Throws EmptyIntersection / InvalidArgument.
DomainSpec truncate(const DomainSpec& spec, double radius);

enum class PointClass : std::uint8_t { Interior, Boundary, Outside };

enum class Direction { East, West, North, South };

// Uniform node lattice over the bounding box of a bounded domain.
class Grid {
 public:
  const DomainSpec& domain() const noexcept { return domain_; }
  double spacing() const noexcept { return h_; }
  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return nx_ * ny_; }
  double x_lo() const noexcept { return x_lo_; }
  double y_lo() const noexcept { return y_lo_; }

  std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * nx_ + i; }
  std::size_t column(std::size_t k) const noexcept { return k % nx_; }
  std::size_t row(std::size_t k) const noexcept { return k / nx_; }
  double x(std::size_t i) const noexcept { return x_lo_ + static_cast<double>(i) * h_; }
  double y(std::size_t j) const noexcept { return y_lo_ + static_cast<double>(j) * h_; }
  Complex point(std::size_t k) const noexcept { return {x(column(k)), y(row(k))}; }

  PointClass classification(std::size_t k) const noexcept { return cls_[k]; }
  bool in_domain(std::size_t k) const noexcept { return cls_[k] != PointClass::Outside; }
  // Boundary node whose exit from the domain is only through truncation edges.
  bool truncation_edge(std::size_t k) const noexcept { return trunc_[k] != 0; }
  std::optional<std::size_t> neighbor(std::size_t k, Direction d) const noexcept;

  const std::vector<std::size_t>& interior_indices() const noexcept { return interior_; }
  const std::vector<std::size_t>& boundary_indices() const noexcept { return boundary_; }
  // All Interior and Boundary nodes, in lattice order.
  const std::vector<std::size_t>& domain_indices() const noexcept { return domain_nodes_; }

 private:
  friend Grid build_grid(const DomainSpec& spec, double spacing);
  Grid(DomainSpec domain, double h, double x_lo, double y_lo, std::size_t nx, std::size_t ny);

  DomainSpec domain_;
  double h_;
  double x_lo_, y_lo_;
  std::size_t nx_, ny_;
  std::vector<PointClass> cls_;
  std::vector<std::uint8_t> trunc_;
  std::vector<std::size_t> interior_, boundary_, domain_nodes_;
};

// Throws InvalidDomain (unbounded or invalid spec) / SpacingTooCoarse.
Grid build_grid(const DomainSpec& spec, double spacing);

std::vector<Complex> boundary_points(const Grid& grid);
std::vector<Complex> truncation_edge_points(const Grid& grid);
std::vector<Complex> true_boundary_points(const Grid& grid);

}  // namespace vekua
