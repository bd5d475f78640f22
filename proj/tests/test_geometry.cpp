#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "vekua/error.hpp"
#include "vekua/geometry.hpp"

using namespace vekua;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST_CASE("rectangle grid counts") {
  const Grid g = build_grid(DomainSpec::rectangle(0.5, 1.5, -0.5, 0.5), 0.25);
  CHECK(g.nx() == 5);
  CHECK(g.ny() == 5);
  CHECK(g.interior_indices().size() == 9);
  CHECK(g.boundary_indices().size() == 16);
  CHECK(boundary_points(g).size() == 16);
  CHECK(truncation_edge_points(g).empty());
}

TEST_CASE("coarse or invalid specs are rejected") {
  CHECK(code_of([] { build_grid(DomainSpec::unit_disc(), 2.0); }) == ErrorCode::SpacingTooCoarse);
  CHECK(code_of([] { DomainSpec::rectangle(1, 0, 0, 1); }) == ErrorCode::InvalidDomain);
  CHECK(code_of([] { DomainSpec::strip(0, 1, 1); }) == ErrorCode::InvalidDomain);
  CHECK(code_of([] { DomainSpec::strip(1, 2, -1); }) == ErrorCode::InvalidDomain);
  CHECK(code_of([] { build_grid(DomainSpec::half_plane(kInfinity), 0.1); }) == ErrorCode::InvalidDomain);
}

TEST_CASE("half-plane interior lies in the right half-plane") {
  const Grid g = build_grid(DomainSpec::half_plane(2.0), 0.1);
  CHECK_FALSE(g.interior_indices().empty());
  for (auto k : g.interior_indices()) CHECK(g.point(k).real() > 0.0);
  CHECK(g.domain().in_closed_right_half_plane());
}

TEST_CASE("disc boundary points sit near the circle") {
  const Grid g = build_grid(DomainSpec::unit_disc(), 0.1);
  for (Complex p : boundary_points(g)) CHECK(std::abs(std::abs(p) - 1.0) <= 0.1);
}

TEST_CASE("strip boundary separates truncation edges") {
  const Grid g = build_grid(DomainSpec::strip(1, 2, 5), 0.1);
  const auto trunc = truncation_edge_points(g);
  const auto real = true_boundary_points(g);
  CHECK_FALSE(trunc.empty());
  bool left = false, right = false;
  for (Complex p : real) {
    left = left || std::abs(p.real() - 1.0) < 1e-12;
    right = right || std::abs(p.real() - 2.0) < 1e-12;
    CHECK((std::abs(p.real() - 1.0) < 1e-12 || std::abs(p.real() - 2.0) < 1e-12));
  }
  CHECK(left);
  CHECK(right);
  for (Complex p : trunc) CHECK(std::abs(std::abs(p.imag()) - 5.0) < 1e-9);
}

TEST_CASE("point classification") {
  const auto disc = DomainSpec::unit_disc();
  CHECK(in_domain(disc, 0.0) == Membership::Interior);
  CHECK(in_domain(disc, 1.0) == Membership::Boundary);
  CHECK(in_domain(DomainSpec::strip(1, 2, 3), 3.0) == Membership::Outside);
}

TEST_CASE("truncation") {
  const auto half = truncate(DomainSpec::half_plane(kInfinity), 2.0);
  CHECK(half.bounded());
  CHECK(half.classify({1.0, 0.5}) == Membership::Interior);
  CHECK(half.classify({1.5, 1.5}) == Membership::Outside);
  CHECK(half.classify({-0.1, 0.0}) == Membership::Outside);
  CHECK(truncate(DomainSpec::unit_disc(), 2.0) == DomainSpec::unit_disc());
  CHECK(code_of([] { truncate(DomainSpec::strip(1, 2, 3), 1.0); }) == ErrorCode::EmptyIntersection);
}

TEST_CASE("partition and interior stencils") {
  for (const auto& spec : {DomainSpec::unit_disc(), DomainSpec::strip(1, 2, 1.5), DomainSpec::half_plane(3.0, 0.2),
                           DomainSpec::disc_complement_log({0, 0}, 1.0, 3.0)}) {
    const Grid g = build_grid(spec, 0.05);
    std::size_t counted = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const auto c = g.classification(k);
      CHECK((c == PointClass::Interior || c == PointClass::Boundary || c == PointClass::Outside));
      if (c == PointClass::Interior) {
        for (auto d : {Direction::East, Direction::West, Direction::North, Direction::South}) {
          const auto n = g.neighbor(k, d);
          REQUIRE(n.has_value());
          CHECK(g.in_domain(*n));
        }
      }
      if (c != PointClass::Outside) ++counted;
    }
    CHECK(counted == g.domain_indices().size());
    CHECK(counted == g.interior_indices().size() + g.boundary_indices().size());
  }
}

TEST_CASE("refinement keeps interior points inside") {
  const auto spec = DomainSpec::unit_disc();
  const Grid coarse = build_grid(spec, 0.1);
  const Grid fine = build_grid(spec, 0.05);
  for (auto k : coarse.interior_indices()) CHECK(spec.classify(coarse.point(k)) != Membership::Outside);
  for (auto k : fine.interior_indices()) CHECK(spec.classify(fine.point(k)) != Membership::Outside);
}

TEST_CASE("truncated boundary lies on the original boundary or the arc") {
  const auto spec = truncate(DomainSpec::half_plane(kInfinity, 0.5), 3.0);
  const Grid g = build_grid(spec, 0.05);
  for (auto k : g.boundary_indices()) {
    const Complex p = g.point(k);
    const double to_line = std::abs(p.real() - 0.5);
    const double to_arc = std::abs(std::abs(p) - 3.0);
    CHECK(std::min(to_line, to_arc) <= 0.05 + 1e-12);
    if (g.truncation_edge(k)) CHECK(to_arc <= 0.05 + 1e-12);
  }
}

TEST_CASE("slit annulus boundary") {
  const auto spec = DomainSpec::disc_complement_log({0, 0}, 1.0, 3.0);
  CHECK(spec.classify({2.0, 0.0}) == Membership::Interior);
  CHECK(spec.classify({-2.0, 0.0}) == Membership::Boundary);
  CHECK(spec.classify({0.5, 0.0}) == Membership::Outside);
  CHECK(spec.crosses_slit({-2.0, 0.1}, {-2.0, -0.1}));
  CHECK_FALSE(spec.crosses_slit({2.0, 0.1}, {2.0, -0.1}));
}
