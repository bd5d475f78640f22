#include "vekua/weights.hpp"

#include <cmath>

#include "vekua/descriptor.hpp"
#include "vekua/error.hpp"

namespace vekua {

namespace {

constexpr Complex kI{0.0, 1.0};

[[noreturn]] void singular_at(const std::string& name, Complex z, ErrorCode code = ErrorCode::DomainSingularity) {
  fail(code,
       name + " is singular at (" + format_number(z.real()) + ", " + format_number(z.imag()) + ")");
}

// Grid coordinates built as lo + i h land within rounding of a singular line
// rather than on it, so singular sets are thickened by this much.
constexpr double kSingularTol = 1e-12;

double fd_step(Complex z) { return 1e-4 * std::max(1.0, std::abs(z)); }

bool is_nonnegative_integer(double mu) { return mu >= 0.0 && std::floor(mu) == mu; }

}  // namespace

WeightField::WeightField(std::string name, Fn value, Fn dz, Predicate singular, DerivativeMode mode,
                         std::string singular_set)
    : name_(std::move(name)),
      value_(std::move(value)),
      dz_(std::move(dz)),
      singular_(std::move(singular)),
      mode_(mode),
      singular_set_(std::move(singular_set)) {}

Complex WeightField::eval(Complex z) const {
  if (singular_(z)) singular_at(name_, z, singular_error_);
  const Complex v = value_(z);
  if (!has_value(v)) singular_at(name_, z, singular_error_);
  return v;
}

Complex WeightField::deriv(Complex z) const {
  if (singular_(z)) singular_at(name_, z, singular_error_);
  const Complex v = dz_(z);
  if (!has_value(v)) singular_at(name_, z, singular_error_);
  return v;
}

WeightField zero_alpha() {
  return WeightField(
      "zero", [](Complex) { return Complex{}; }, [](Complex) { return Complex{}; }, [](Complex) { return false; },
      DerivativeMode::ClosedForm);
}

WeightField constant_alpha(Complex c) {
  std::string name = "constant{" + format_number(c.real()) + "," + format_number(c.imag()) + "}";
  return WeightField(
      std::move(name), [c](Complex) { return c; }, [](Complex) { return Complex{}; }, [](Complex) { return false; },
      DerivativeMode::ClosedForm);
}

WeightField tokamak_alpha(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) fail(ErrorCode::InvalidArgument, "tokamak lambda must be positive");
  return WeightField(
      "tokamak{lambda:" + format_number(lambda) + "}",
      [lambda](Complex z) { return Complex{-1.0 / (lambda * z.real()), 0.0}; },
      [lambda](Complex z) { return Complex{1.0 / (2.0 * lambda * z.real() * z.real()), 0.0}; },
      [](Complex z) { return std::abs(z.real()) <= kSingularTol; }, DerivativeMode::ClosedForm, "Re z = 0");
}

WeightField power_alpha(Complex a, double mu) {
  if (!std::isfinite(mu)) fail(ErrorCode::InvalidArgument, "power exponent must be finite");
  std::string name = "power{a:" + format_number(a.real());
  if (a.imag() != 0.0) name += ",a_im:" + format_number(a.imag());
  name += ",mu:" + format_number(mu) + "}";
  const bool integer = is_nonnegative_integer(mu);
  return WeightField(
      std::move(name), [a, mu](Complex z) { return a * std::pow(z.real(), mu); },
      [a, mu](Complex z) {
        if (mu == 0.0) return Complex{};
        return a * mu * std::pow(z.real(), mu - 1.0) / 2.0;
      },
      [integer](Complex z) { return !integer && z.real() <= kSingularTol; }, DerivativeMode::ClosedForm,
      integer ? "none" : "Re z <= 0");
}

WeightField radial_alpha(std::string name, std::function<Complex(double)> profile,
                         std::function<Complex(double)> profile_deriv) {
  return WeightField(
      std::move(name), [profile](Complex z) { return profile(std::abs(z)); },
      [profile_deriv](Complex z) {
        const double r = std::abs(z);
        // e^{-i theta} = conj(z)/|z|; the angular derivative of a radial profile vanishes.
        return 0.5 * (std::conj(z) / r) * profile_deriv(r);
      },
      [](Complex z) { return std::abs(z) <= kSingularTol; }, DerivativeMode::ClosedForm, "z = 0");
}

WeightField reciprocal_alpha() {
  return WeightField(
      "reciprocal", [](Complex z) { return 1.0 / z; }, [](Complex z) { return -1.0 / (z * z); },
      [](Complex z) { return std::abs(z) <= kSingularTol; }, DerivativeMode::ClosedForm, "z = 0");
}

SigmaField sigma_from_nu(const NuField& nu) {
  if (!(nu.kappa >= 0.0 && nu.kappa < 1.0)) fail(ErrorCode::NuOutOfRange, "nu bound kappa must lie in [0, 1)");
  const RealField f = nu.field;
  const auto checked = [f](Complex z) {
    const double n = f.value(z);
    if (!(std::abs(n) < 1.0)) {
      fail(ErrorCode::NuOutOfRange, "|nu| >= 1 at (" + format_number(z.real()) + ", " + format_number(z.imag()) + ")");
    }
    return n;
  };
  SigmaField s;
  s.field.name = "sigma_from_nu(" + f.name + ")";
  s.field.value = [checked](Complex z) {
    const double n = checked(z);
    return (1.0 - n) / (1.0 + n);
  };
  if (f.gradient) {
    auto grad = *f.gradient;
    s.field.gradient = [checked, grad](Complex z) {
      const double n = checked(z);
      return -2.0 * grad(z) / ((1.0 + n) * (1.0 + n));
    };
  }
  s.field.singular = f.singular;
  return s;
}

NuField nu_from_sigma(const SigmaField& sigma, double kappa) {
  const RealField f = sigma.field;
  const auto checked = [f](Complex z) {
    const double s = f.value(z);
    if (!(s > 0.0)) {
      fail(ErrorCode::SigmaNonpositive,
           "sigma <= 0 at (" + format_number(z.real()) + ", " + format_number(z.imag()) + ")");
    }
    return s;
  };
  NuField nu;
  nu.kappa = kappa;
  nu.field.name = "nu_from_sigma(" + f.name + ")";
  nu.field.value = [checked](Complex z) {
    const double s = checked(z);
    return (1.0 - s) / (1.0 + s);
  };
  if (f.gradient) {
    auto grad = *f.gradient;
    nu.field.gradient = [checked, grad](Complex z) {
      const double s = checked(z);
      return -2.0 * grad(z) / ((1.0 + s) * (1.0 + s));
    };
  }
  nu.field.singular = f.singular;
  return nu;
}

WeightField alpha_from_sigma(const SigmaField& sigma, SigmaDerivativePath path) {
  const RealField f = sigma.field;
  const bool closed = f.gradient.has_value() && path == SigmaDerivativePath::Auto;
  auto value = [f, closed](Complex z) -> Complex {
    const double s = f.value(z);
    if (!(s > 0.0)) {
      fail(ErrorCode::SigmaNonpositive,
           "sigma <= 0 at (" + format_number(z.real()) + ", " + format_number(z.imag()) + ")");
    }
    Complex dbar_sigma;
    if (closed) {
      dbar_sigma = 0.5 * (*f.gradient)(z);
    } else {
      dbar_sigma = wirtinger_fd4([&f](Complex p) { return Complex{f.value(p), 0.0}; }, z, fd_step(z),
                                 Wirtinger::Dzbar);
    }
    return dbar_sigma / (2.0 * s);
  };
  auto dz = [value](Complex z) { return wirtinger_fd4(value, z, fd_step(z), Wirtinger::Dz); };
  std::string name = "from_sigma{" + f.name + (closed ? "" : ",fd:1") + "}";
  return WeightField(std::move(name), value, dz, f.singular, DerivativeMode::FiniteDifference);
}

namespace {

template <class Transform>
GridFunction apply_nu_transform(const Grid& grid, std::span<const Complex> in, const NuField& nu, Transform t) {
  if (in.size() != grid.size()) fail(ErrorCode::InvalidArgument, "grid function size does not match grid");
  GridFunction out(grid.size(), kMissing);
  for (auto k : grid.domain_indices()) {
    const Complex z = grid.point(k);
    const double n = nu.field.value(z);
    if (!(std::abs(n) < 1.0) || std::abs(n) > nu.kappa) {
      fail(ErrorCode::NuOutOfRange, "nu = " + format_number(n) + " violates |nu| <= kappa < 1 at (" +
                                        format_number(z.real()) + ", " + format_number(z.imag()) + ")");
    }
    out[k] = t(in[k], n, std::sqrt(1.0 - n * n));
  }
  return out;
}

}  // namespace

GridFunction f_to_w(const Grid& grid, std::span<const Complex> f, const NuField& nu) {
  return apply_nu_transform(grid, f, nu,
                            [](Complex v, double n, double s) { return (v - n * std::conj(v)) / s; });
}

GridFunction w_to_f(const Grid& grid, std::span<const Complex> w, const NuField& nu) {
  return apply_nu_transform(grid, w, nu,
                            [](Complex v, double n, double s) { return (v + n * std::conj(v)) / s; });
}

namespace {

Complex combine(Complex fx, Complex fy, Wirtinger which) {
  return which == Wirtinger::Dz ? 0.5 * (fx - kI * fy) : 0.5 * (fx + kI * fy);
}

}  // namespace

Complex wirtinger_at(const Grid& grid, std::span<const Complex> values, std::size_t k, Wirtinger which) {
  if (grid.classification(k) != PointClass::Interior) {
    const Complex z = grid.point(k);
    fail(ErrorCode::MissingNeighbor,
         "no full stencil at (" + format_number(z.real()) + ", " + format_number(z.imag()) + ")");
  }
  const std::size_t e = k + 1, w = k - 1, n = k + grid.nx(), s = k - grid.nx();
  if (!(has_value(values[e]) && has_value(values[w]) && has_value(values[n]) && has_value(values[s]))) {
    fail(ErrorCode::MissingNeighbor, "stencil value missing");
  }
  const double two_h = 2.0 * grid.spacing();
  return combine((values[e] - values[w]) / two_h, (values[n] - values[s]) / two_h, which);
}

GridFunction wirtinger(const Grid& grid, std::span<const Complex> values, Wirtinger which) {
  if (values.size() != grid.size()) fail(ErrorCode::InvalidArgument, "grid function size does not match grid");
  GridFunction out(grid.size(), kMissing);
  for (auto k : grid.interior_indices()) out[k] = wirtinger_at(grid, values, k, which);
  return out;
}

Complex wirtinger_fd(const std::function<Complex(Complex)>& fn, Complex z, double step, Wirtinger which) {
  const Complex dx{step, 0.0}, dy{0.0, step};
  const Complex fx = (fn(z + dx) - fn(z - dx)) / (2.0 * step);
  const Complex fy = (fn(z + dy) - fn(z - dy)) / (2.0 * step);
  return combine(fx, fy, which);
}

Complex wirtinger_fd4(const std::function<Complex(Complex)>& fn, Complex z, double step, Wirtinger which) {
  const auto d = [&](Complex u) {
    return (-fn(z + 2.0 * u) + 8.0 * fn(z + u) - 8.0 * fn(z - u) + fn(z - 2.0 * u)) / (12.0 * step);
  };
  return combine(d({step, 0.0}), d({0.0, step}), which);
}

}  // namespace vekua
