#include "vekua/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vekua/descriptor.hpp"
#include "vekua/error.hpp"

namespace vekua {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool finite(double v) { return std::isfinite(v); }

void validate(const DomainSpec::Shape& shape) {
  std::visit(overloaded{
                 [](const Rectangle& r) {
                   if (!(finite(r.x0) && finite(r.x1) && finite(r.y0) && finite(r.y1)) || !(r.x0 < r.x1) ||
                       !(r.y0 < r.y1)) {
                     fail(ErrorCode::InvalidDomain, "rectangle requires x0 < x1 and y0 < y1");
                   }
                 },
                 [](const TruncatedHalfPlane& p) {
                   if (p.x_min && !(finite(*p.x_min) && *p.x_min > 0.0)) {
                     fail(ErrorCode::InvalidDomain, "half-plane x_min must be positive");
                   }
                   if (!(p.radius > 0.0) || std::isnan(p.radius)) {
                     fail(ErrorCode::InvalidDomain, "half-plane radius must be positive");
                   }
                   if (p.x_min && !(p.radius > *p.x_min)) {
                     fail(ErrorCode::InvalidDomain, "half-plane radius must exceed x_min");
                   }
                 },
                 [](const Strip& s) {
                   if (!(finite(s.a) && finite(s.b) && finite(s.y_cut)) || !(0.0 < s.a && s.a < s.b) ||
                       !(s.y_cut > 0.0)) {
                     fail(ErrorCode::InvalidDomain, "strip requires 0 < a < b and y_cut > 0");
                   }
                 },
                 [](const UnitDisc&) {},
                 [](const DiscComplementLog& d) {
                   if (!(finite(d.center.real()) && finite(d.center.imag()) && finite(d.cut_angle)) ||
                       !(d.radius > 0.0) || !(d.outer_radius > d.radius) || !finite(d.outer_radius)) {
                     fail(ErrorCode::InvalidDomain, "disc complement requires 0 < radius < outer_radius");
                   }
                 },
             },
             shape);
}

}  // namespace

double boundary_tolerance(Complex z) { return 1e-12 * std::max(1.0, std::abs(z)); }

DomainSpec::DomainSpec(Shape shape, std::optional<double> clip_radius)
    : shape_(std::move(shape)), clip_radius_(clip_radius) {
  validate(shape_);
  if (clip_radius_ && !(*clip_radius_ > 0.0)) fail(ErrorCode::InvalidDomain, "clip radius must be positive");
}

DomainSpec DomainSpec::rectangle(double x0, double x1, double y0, double y1) {
  return DomainSpec(Rectangle{x0, x1, y0, y1});
}

DomainSpec DomainSpec::half_plane(double radius, std::optional<double> x_min) {
  return DomainSpec(TruncatedHalfPlane{x_min, radius});
}

DomainSpec DomainSpec::strip(double a, double b, double y_cut) { return DomainSpec(Strip{a, b, y_cut}); }

DomainSpec DomainSpec::unit_disc() { return DomainSpec(UnitDisc{}); }

DomainSpec DomainSpec::disc_complement_log(Complex center, double radius, double outer_radius, double cut_angle) {
  return DomainSpec(DiscComplementLog{center, radius, outer_radius, cut_angle});
}

DomainKind DomainSpec::kind() const noexcept { return static_cast<DomainKind>(shape_.index()); }

std::vector<DomainSpec::Constraint> DomainSpec::constraints(Complex z) const {
  std::vector<Constraint> out;
  const double x = z.real(), y = z.imag();
  std::visit(overloaded{
                 [&](const Rectangle& r) {
                   out.push_back({x - r.x0, false});
                   out.push_back({r.x1 - x, false});
                   out.push_back({y - r.y0, false});
                   out.push_back({r.y1 - y, false});
                 },
                 [&](const TruncatedHalfPlane& p) {
                   out.push_back({x - p.x_min.value_or(0.0), false});
                   if (std::isfinite(p.radius)) out.push_back({p.radius - std::abs(z), true});
                 },
                 [&](const Strip& s) {
                   out.push_back({x - s.a, false});
                   out.push_back({s.b - x, false});
                   out.push_back({y + s.y_cut, true});
                   out.push_back({s.y_cut - y, true});
                 },
                 [&](const UnitDisc&) { out.push_back({1.0 - std::abs(z), false}); },
                 [&](const DiscComplementLog& d) {
                   const double r = std::abs(z - d.center);
                   out.push_back({r - d.radius, false});
                   out.push_back({d.outer_radius - r, true});
                 },
             },
             shape_);
  if (clip_radius_) out.push_back({*clip_radius_ - std::abs(z), true});
  return out;
}

double DomainSpec::slit_distance(Complex z) const {
  const auto* d = std::get_if<DiscComplementLog>(&shape_);
  if (!d) return kInfinity;
  const Complex rotated = (z - d->center) * std::polar(1.0, -d->cut_angle);
  if (rotated.real() < 0.0) return std::abs(rotated);
  return std::abs(rotated.imag());
}

bool DomainSpec::crosses_slit(Complex p, Complex q) const {
  const auto* d = std::get_if<DiscComplementLog>(&shape_);
  if (!d) return false;
  const Complex rot = std::polar(1.0, -d->cut_angle);
  const Complex a = (p - d->center) * rot;
  const Complex b = (q - d->center) * rot;
  if (!(a.imag() * b.imag() < 0.0)) return false;
  const double t = -a.imag() / (b.imag() - a.imag());
  const double x_cross = a.real() + t * (b.real() - a.real());
  return x_cross > 0.0;
}

Membership DomainSpec::classify(Complex z) const {
  const double tol = boundary_tolerance(z);
  bool on_boundary = false;
  for (const auto& c : constraints(z)) {
    if (c.slack < -tol) return Membership::Outside;
    if (c.slack <= tol) on_boundary = true;
  }
  if (!on_boundary && slit_distance(z) <= tol) on_boundary = true;
  return on_boundary ? Membership::Boundary : Membership::Interior;
}

bool DomainSpec::bounded() const {
  if (clip_radius_) return true;
  if (const auto* p = std::get_if<TruncatedHalfPlane>(&shape_)) return std::isfinite(p->radius);
  return true;
}

Box DomainSpec::bounding_box() const {
  if (!bounded()) fail(ErrorCode::InvalidDomain, "unbounded domain " + describe() + " must be truncated first");
  Box box = std::visit(overloaded{
                           [](const Rectangle& r) { return Box{r.x0, r.x1, r.y0, r.y1}; },
                           [](const TruncatedHalfPlane& p) {
                             return Box{p.x_min.value_or(0.0), p.radius, -p.radius, p.radius};
                           },
                           [](const Strip& s) { return Box{s.a, s.b, -s.y_cut, s.y_cut}; },
                           [](const UnitDisc&) { return Box{-1.0, 1.0, -1.0, 1.0}; },
                           [](const DiscComplementLog& d) {
                             return Box{d.center.real() - d.outer_radius, d.center.real() + d.outer_radius,
                                        d.center.imag() - d.outer_radius, d.center.imag() + d.outer_radius};
                           },
                       },
                       shape_);
  if (clip_radius_) {
    const double rho = *clip_radius_;
    box.x_lo = std::max(box.x_lo, -rho);
    box.x_hi = std::min(box.x_hi, rho);
    box.y_lo = std::max(box.y_lo, -rho);
    box.y_hi = std::min(box.y_hi, rho);
  }
  return box;
}

double DomainSpec::min_modulus() const {
  return std::visit(overloaded{
                        [](const Rectangle& r) {
                          const double dx = r.x0 > 0.0 ? r.x0 : (r.x1 < 0.0 ? -r.x1 : 0.0);
                          const double dy = r.y0 > 0.0 ? r.y0 : (r.y1 < 0.0 ? -r.y1 : 0.0);
                          return std::hypot(dx, dy);
                        },
                        [](const TruncatedHalfPlane& p) { return p.x_min.value_or(0.0); },
                        [](const Strip& s) { return s.a; },
                        [](const UnitDisc&) { return 0.0; },
                        [](const DiscComplementLog& d) {
                          const double c = std::abs(d.center);
                          if (c <= d.radius) return d.radius - c;
                          if (c < d.outer_radius) return 0.0;
                          return c - d.outer_radius;
                        },
                    },
                    shape_);
}

double DomainSpec::max_modulus() const {
  double m = std::visit(overloaded{
                            [](const Rectangle& r) {
                              return std::max({std::hypot(r.x0, r.y0), std::hypot(r.x0, r.y1),
                                               std::hypot(r.x1, r.y0), std::hypot(r.x1, r.y1)});
                            },
                            [](const TruncatedHalfPlane& p) { return p.radius; },
                            [](const Strip& s) { return std::hypot(s.b, s.y_cut); },
                            [](const UnitDisc&) { return 1.0; },
                            [](const DiscComplementLog& d) { return std::abs(d.center) + d.outer_radius; },
                        },
                        shape_);
  if (clip_radius_) m = std::min(m, *clip_radius_);
  return m;
}

bool DomainSpec::in_closed_right_half_plane() const {
  return std::visit(overloaded{
                        [](const Rectangle& r) { return r.x0 >= 0.0; },
                        [](const TruncatedHalfPlane&) { return true; },
                        [](const Strip&) { return true; },
                        [](const UnitDisc&) { return false; },
                        [](const DiscComplementLog& d) { return d.center.real() - d.outer_radius >= 0.0; },
                    },
                    shape_);
}

std::string DomainSpec::describe() const {
  std::ostringstream os;
  auto n = [](double v) { return format_number(v); };
  std::visit(overloaded{
                 [&](const Rectangle& r) {
                   os << "rect{" << n(r.x0) << ',' << n(r.x1) << ',' << n(r.y0) << ',' << n(r.y1) << '}';
                 },
                 [&](const TruncatedHalfPlane& p) {
                   os << "halfplane{";
                   if (p.x_min) os << "xmin:" << n(*p.x_min) << ',';
                   os << "R:" << n(p.radius) << '}';
                 },
                 [&](const Strip& s) { os << "strip{" << n(s.a) << ',' << n(s.b) << ',' << n(s.y_cut) << '}'; },
                 [&](const UnitDisc&) { os << "disc"; },
                 [&](const DiscComplementLog& d) {
                   os << "disclog{" << n(d.center.real()) << ',' << n(d.center.imag()) << ',' << n(d.radius) << ','
                      << n(d.outer_radius) << ',' << n(d.cut_angle) << '}';
                 },
             },
             shape_);
  if (clip_radius_) os << "&clip{" << n(*clip_radius_) << '}';
  return os.str();
}

Membership in_domain(const DomainSpec& spec, Complex z) { return spec.classify(z); }

DomainSpec truncate(const DomainSpec& spec, double radius) {
  if (!(radius > 0.0) || std::isnan(radius)) fail(ErrorCode::InvalidArgument, "truncation radius must be positive");
  if (spec.min_modulus() >= radius) {
    fail(ErrorCode::EmptyIntersection, spec.describe() + " does not meet D(0, " + format_number(radius) + ")");
  }
  if (spec.max_modulus() <= radius) return spec;
  if (const auto* p = std::get_if<TruncatedHalfPlane>(&spec.shape())) {
    TruncatedHalfPlane t = *p;
    t.radius = std::min(t.radius, radius);
    return DomainSpec(t, spec.clip_radius());
  }
  const double rho = spec.clip_radius() ? std::min(*spec.clip_radius(), radius) : radius;
  return DomainSpec(spec.shape(), rho);
}

Grid::Grid(DomainSpec domain, double h, double x_lo, double y_lo, std::size_t nx, std::size_t ny)
    : domain_(std::move(domain)), h_(h), x_lo_(x_lo), y_lo_(y_lo), nx_(nx), ny_(ny) {}

std::optional<std::size_t> Grid::neighbor(std::size_t k, Direction d) const noexcept {
  const std::size_t i = column(k), j = row(k);
  switch (d) {
    case Direction::East:
      if (i + 1 < nx_) return k + 1;
      break;
    case Direction::West:
      if (i > 0) return k - 1;
      break;
    case Direction::North:
      if (j + 1 < ny_) return k + nx_;
      break;
    case Direction::South:
      if (j > 0) return k - nx_;
      break;
  }
  return std::nullopt;
}

Grid build_grid(const DomainSpec& spec, double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) fail(ErrorCode::InvalidArgument, "spacing must be positive");
  const Box box = spec.bounding_box();
  const auto count = [&](double lo, double hi) {
    return static_cast<std::size_t>(std::floor((hi - lo) / spacing + 1e-9)) + 1;
  };
  const std::size_t nx = count(box.x_lo, box.x_hi);
  const std::size_t ny = count(box.y_lo, box.y_hi);
  if (nx < 4 || ny < 4) {
    fail(ErrorCode::SpacingTooCoarse, "spacing " + format_number(spacing) + " leaves fewer than 4 samples across " +
                                          spec.describe());
  }
  Grid g(spec, spacing, box.x_lo, box.y_lo, nx, ny);
  const std::size_t n = nx * ny;
  g.cls_.assign(n, PointClass::Outside);
  g.trunc_.assign(n, 0);

  const Complex steps[4] = {{spacing, 0.0}, {-spacing, 0.0}, {0.0, spacing}, {0.0, -spacing}};
  // True when every constraint that is active (violated or tight) at z is a truncation.
  const auto only_truncation_active = [&](Complex z) {
    const double tol = boundary_tolerance(z);
    if (spec.slit_distance(z) <= tol) return false;
    for (const auto& c : spec.constraints(z)) {
      if (c.slack <= tol && !c.truncation) return false;
    }
    return true;
  };

  for (std::size_t k = 0; k < n; ++k) {
    const Complex z = g.point(k);
    const Membership m = spec.classify(z);
    if (m == Membership::Outside) continue;
    if (m == Membership::Boundary) {
      g.cls_[k] = PointClass::Boundary;
      g.trunc_[k] = only_truncation_active(z) ? 1 : 0;
      continue;
    }
    bool boundary = false;
    bool truncation_only = true;
    for (const Complex& s : steps) {
      const Complex nb = z + s;
      const bool slit = spec.crosses_slit(z, nb);
      if (!slit && spec.classify(nb) != Membership::Outside) continue;
      boundary = true;
      if (slit || !only_truncation_active(nb)) truncation_only = false;
    }
    if (boundary) {
      g.cls_[k] = PointClass::Boundary;
      g.trunc_[k] = truncation_only ? 1 : 0;
    } else {
      g.cls_[k] = PointClass::Interior;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (g.cls_[k] == PointClass::Interior) g.interior_.push_back(k);
    if (g.cls_[k] == PointClass::Boundary) g.boundary_.push_back(k);
    if (g.cls_[k] != PointClass::Outside) g.domain_nodes_.push_back(k);
  }
  if (g.interior_.size() < 4) {
    fail(ErrorCode::SpacingTooCoarse,
         "spacing " + format_number(spacing) + " leaves fewer than 4 interior points in " + spec.describe());
  }
  return g;
}

std::vector<Complex> boundary_points(const Grid& grid) {
  std::vector<Complex> out;
  for (auto k : grid.boundary_indices()) out.push_back(grid.point(k));
  return out;
}

std::vector<Complex> truncation_edge_points(const Grid& grid) {
  std::vector<Complex> out;
  for (auto k : grid.boundary_indices()) {
    if (grid.truncation_edge(k)) out.push_back(grid.point(k));
  }
  return out;
}

std::vector<Complex> true_boundary_points(const Grid& grid) {
  std::vector<Complex> out;
  for (auto k : grid.boundary_indices()) {
    if (!grid.truncation_edge(k)) out.push_back(grid.point(k));
  }
  return out;
}

}  // namespace vekua
