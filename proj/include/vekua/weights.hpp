#pragma once

// Coefficient fields of the generalized Cauchy-Riemann equation
// dbar w = alpha conj(w), the conductivity link sigma = (1 - nu)/(1 + nu),
// alpha = dbar sigma / (2 sigma), and discrete Wirtinger derivatives.

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "vekua/error.hpp"
#include "vekua/geometry.hpp"
#include "vekua/grid_function.hpp"

namespace vekua {

enum class DerivativeMode { ClosedForm, FiniteDifference };

// The coefficient alpha together with its holomorphic Wirtinger derivative.
class WeightField {
 public:
  using Fn = std::function<Complex(Complex)>;
  using Predicate = std::function<bool(Complex)>;

  WeightField(std::string name, Fn value, Fn dz, Predicate singular, DerivativeMode mode,
              std::string singular_set = "none");

  const std::string& name() const noexcept { return name_; }
  DerivativeMode mode() const noexcept { return mode_; }
  const std::string& singular_set() const noexcept { return singular_set_; }

  bool singular(Complex z) const { return singular_(z); }
  // Code thrown by eval/deriv on the singular set; DomainSingularity unless changed.
  void set_singular_error(ErrorCode code) noexcept { singular_error_ = code; }
  // alpha(z); throws DomainSingularity on the singular set.
  Complex eval(Complex z) const;
  // d alpha(z) = (alpha_x - i alpha_y)/2; throws DomainSingularity.
  Complex deriv(Complex z) const;

 private:
  std::string name_;
  Fn value_, dz_;
  Predicate singular_;
  DerivativeMode mode_;
  std::string singular_set_;
  ErrorCode singular_error_ = ErrorCode::DomainSingularity;
};

// Real scalar field with an optional closed-form gradient (f_x + i f_y).
struct RealField {
  std::string name;
  std::function<double(Complex)> value;
  std::optional<std::function<Complex(Complex)>> gradient;
  std::function<bool(Complex)> singular = [](Complex) { return false; };
};

struct NuField {
  RealField field;
  double kappa;  // contract: sup |nu| <= kappa < 1
};

struct SigmaField {
  RealField field;
};

WeightField zero_alpha();
WeightField constant_alpha(Complex c);
// alpha = -1/(lambda Re z), d alpha = 1/(2 lambda (Re z)^2).
WeightField tokamak_alpha(double lambda);
// alpha = a (Re z)^mu with the one-variable convention d alpha = alpha'/2.
WeightField power_alpha(Complex a, double mu);
// alpha = profile(|z|), d alpha = e^{-i theta} profile'(r) / 2.
WeightField radial_alpha(std::string name, std::function<Complex(double)> profile,
                         std::function<Complex(double)> profile_deriv);
// alpha = 1/z, d alpha = -1/z^2.
WeightField reciprocal_alpha();

SigmaField sigma_from_nu(const NuField& nu);
// Inverse link nu = (1 - sigma)/(1 + sigma).
NuField nu_from_sigma(const SigmaField& sigma, double kappa);

enum class SigmaDerivativePath { Auto, FiniteDifference };
WeightField alpha_from_sigma(const SigmaField& sigma, SigmaDerivativePath path = SigmaDerivativePath::Auto);

// (f - nu conj f)/sqrt(1 - nu^2) and its inverse (w + nu conj w)/sqrt(1 - nu^2),
// applied at every domain node. Throws NuOutOfRange.
GridFunction f_to_w(const Grid& grid, std::span<const Complex> f, const NuField& nu);
GridFunction w_to_f(const Grid& grid, std::span<const Complex> w, const NuField& nu);

enum class Wirtinger { Dz, Dzbar };

// Central-difference Wirtinger derivative at Interior nodes (NaN elsewhere).
GridFunction wirtinger(const Grid& grid, std::span<const Complex> values, Wirtinger which);
// Single node; throws MissingNeighbor unless the node is Interior with finite neighbors.
Complex wirtinger_at(const Grid& grid, std::span<const Complex> values, std::size_t k, Wirtinger which);

// Pointwise central differences of a closure with the given step.
Complex wirtinger_fd(const std::function<Complex(Complex)>& fn, Complex z, double step, Wirtinger which);
// Fourth-order central differences.
Complex wirtinger_fd4(const std::function<Complex(Complex)>& fn, Complex z, double step, Wirtinger which);

}  // namespace vekua
