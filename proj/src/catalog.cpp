#include "vekua/catalog.hpp"

#include <cmath>

#include "vekua/error.hpp"

namespace vekua {

namespace {

[[noreturn]] void unknown(std::string_view what, const Descriptor& d) {
  fail(ErrorCode::ConfigInvalid, "unknown " + std::string(what) + " '" + d.to_string() + "'");
}

bool flag(const Descriptor& d, std::string_view key) {
  auto v = d.find(key);
  return v && (*v == "1" || *v == "true");
}

}  // namespace

WeightField make_radial(std::string_view name, double scale) {
  std::function<Complex(double)> p, dp;
  if (name == "square") {
    p = [scale](double r) { return Complex{scale * r * r, 0.0}; };
    dp = [scale](double r) { return Complex{2.0 * scale * r, 0.0}; };
  } else if (name == "one") {
    p = [scale](double) { return Complex{scale, 0.0}; };
    dp = [](double) { return Complex{}; };
  } else if (name == "inverse") {
    p = [scale](double r) { return Complex{-scale / r, 0.0}; };
    dp = [scale](double r) { return Complex{scale / (r * r), 0.0}; };
  } else if (name == "gaussian") {
    p = [scale](double r) { return Complex{scale * std::exp(-r * r), 0.0}; };
    dp = [scale](double r) { return Complex{-2.0 * scale * r * std::exp(-r * r), 0.0}; };
  } else {
    fail(ErrorCode::ConfigInvalid, "unknown radial profile '" + std::string(name) + "'");
  }
  std::string label = "radial{" + std::string(name);
  if (scale != 1.0) label += ",scale:" + format_number(scale);
  label += "}";
  return radial_alpha(std::move(label), std::move(p), std::move(dp));
}

SigmaEntry make_sigma(const Descriptor& d) {
  if (d.name == "inverse_x") {
    SigmaField s{RealField{"inverse_x", [](Complex z) { return 1.0 / z.real(); },
                           [](Complex z) { return Complex{-1.0 / (z.real() * z.real()), 0.0}; },
                           [](Complex z) { return z.real() <= 0.0; }}};
    return {s, tokamak_alpha(4.0)};
  }
  if (d.name == "exp_linear") {
    const double k = d.number("k", 0, 2.0);
    SigmaField s{RealField{"exp_linear{k:" + format_number(k) + "}", [k](Complex z) { return std::exp(k * z.real()); },
                           [k](Complex z) { return Complex{k * std::exp(k * z.real()), 0.0}; },
                           [](Complex) { return false; }}};
    return {s, constant_alpha(k / 4.0)};
  }
  if (d.name == "constant") {
    const double c = d.number("c", 0, 1.0);
    if (!(c > 0.0)) fail(ErrorCode::SigmaNonpositive, "constant sigma must be positive");
    SigmaField s{RealField{"constant{c:" + format_number(c) + "}", [c](Complex) { return c; },
                           [](Complex) { return Complex{}; }, [](Complex) { return false; }}};
    return {s, zero_alpha()};
  }
  if (d.name == "quadratic") {
    SigmaField s{RealField{"quadratic", [](Complex z) { return 1.0 + std::norm(z); },
                           [](Complex z) { return 2.0 * z; }, [](Complex) { return false; }}};
    WeightField alpha(
        "quadratic_alpha", [](Complex z) { return z / (2.0 * (1.0 + std::norm(z))); },
        [](Complex z) {
          const double s = 1.0 + std::norm(z);
          return Complex{1.0 / (2.0 * s * s), 0.0};
        },
        [](Complex) { return false; }, DerivativeMode::ClosedForm);
    return {s, alpha};
  }
  unknown("conductivity", d);
}

std::vector<std::string> sigma_catalog_names() { return {"inverse_x", "exp_linear", "constant", "quadratic"}; }

NuField make_nu(const Descriptor& d) {
  if (d.name == "zero") {
    return NuField{RealField{"zero", [](Complex) { return 0.0; }, [](Complex) { return Complex{}; }}, 0.0};
  }
  if (d.name == "constant") {
    const double k = d.number("k", 0);
    if (!(std::abs(k) < 1.0)) fail(ErrorCode::NuOutOfRange, "constant nu must satisfy |nu| < 1");
    return NuField{RealField{"constant{k:" + format_number(k) + "}", [k](Complex) { return k; },
                             [](Complex) { return Complex{}; }},
                   std::abs(k)};
  }
  if (d.name == "tokamak") {
    const double kappa = d.number("kappa", 0, 0.99);
    return NuField{RealField{"tokamak", [](Complex z) { return (z.real() - 1.0) / (z.real() + 1.0); },
                             [](Complex z) {
                               const double s = 1.0 + z.real();
                               return Complex{2.0 / (s * s), 0.0};
                             },
                             [](Complex z) { return z.real() <= 0.0; }},
                   kappa};
  }
  unknown("nu field", d);
}

WeightField make_weight(const Descriptor& d) {
  if (d.name == "zero") return zero_alpha();
  if (d.name == "constant") return constant_alpha({d.number("re", 0), d.number("im", 1, 0.0)});
  if (d.name == "tokamak") return tokamak_alpha(d.number("lambda", 0));
  if (d.name == "power") return power_alpha({d.number("a", 0), d.number("a_im", {}, 0.0)}, d.number("mu", 1));
  if (d.name == "radial") {
    auto name = d.find("name", 0);
    if (!name) fail(ErrorCode::ConfigInvalid, "radial weight needs a profile name");
    return make_radial(*name, d.number("scale", 1, 1.0));
  }
  if (d.name == "from_sigma") {
    auto name = d.find("name", 0);
    if (!name) fail(ErrorCode::ConfigInvalid, "from_sigma weight needs a conductivity name");
    Descriptor sd{*name, {}};
    for (const auto& a : d.args) {
      if (a.key && *a.key != "name" && *a.key != "fd") sd.args.push_back(a);
    }
    auto entry = make_sigma(sd);
    return alpha_from_sigma(entry.sigma,
                            flag(d, "fd") ? SigmaDerivativePath::FiniteDifference : SigmaDerivativePath::Auto);
  }
  if (d.name == "reciprocal") return reciprocal_alpha();
  unknown("weight", d);
}

WeightField make_weight(std::string_view text) { return make_weight(parse_descriptor(text)); }

FieldEntry make_field(const Descriptor& d) {
  const std::string label = d.to_string();
  auto holo = [&](std::function<Complex(Complex)> fn) { return FieldEntry{label, std::move(fn), true, "zero"}; };
  if (d.name == "one") return holo([](Complex) { return Complex{1.0, 0.0}; });
  if (d.name == "const") {
    const Complex c{d.number("re", 0), d.number("im", 1, 0.0)};
    return holo([c](Complex) { return c; });
  }
  if (d.name == "z") return holo([](Complex z) { return z; });
  if (d.name == "poly") {
    const auto coeffs = d.positional_numbers();
    if (coeffs.empty()) fail(ErrorCode::ConfigInvalid, "poly needs at least one coefficient");
    return holo([coeffs](Complex z) {
      Complex acc{};
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
      return acc;
    });
  }
  if (d.name == "exp") {
    const double k = d.number("k", 0, 1.0);
    return holo([k](Complex z) { return std::exp(k * z); });
  }
  if (d.name == "expsq") return holo([](Complex z) { return std::exp(z * z); });
  if (d.name == "damper") {
    const double eps = d.number("eps", 0);
    return holo([eps](Complex z) { return 1.0 / (1.0 + eps * z); });
  }
  if (d.name == "recip_shift") {
    const double s = d.number("s", 0);
    return holo([s](Complex z) { return 1.0 / (z + s); });
  }
  if (d.name == "zbar") return FieldEntry{label, [](Complex z) { return std::conj(z); }, false, "reciprocal"};
  if (d.name == "exp2cx") {
    const double c = d.number("c", 0);
    return FieldEntry{label, [c](Complex z) { return Complex{std::exp(2.0 * c * z.real()), 0.0}; }, false,
                      "constant{" + format_number(c) + ",0}"};
  }
  if (d.name == "cosh_pair") {
    const double c = d.number("c", 0);
    const double k = d.number("k", 1, 1.0);
    return FieldEntry{label,
                      [c, k](Complex z) {
                        return Complex{std::exp(2.0 * c * z.real()), k * std::exp(-2.0 * c * z.real())};
                      },
                      false, "constant{" + format_number(c) + ",0}"};
  }
  if (d.name == "xpow") {
    const double k = d.number("k", 0);
    return FieldEntry{label, [k](Complex z) { return Complex{std::pow(z.real(), k), 0.0}; }, false,
                      "power{a:" + format_number(k / 2.0) + ",mu:-1}"};
  }
  if (d.name == "xpow_pair") {
    const double lambda = d.number("lambda", 0, 1.0);
    if (!(lambda > 0.0)) fail(ErrorCode::ConfigInvalid, "xpow_pair lambda must be positive");
    return FieldEntry{label,
                      [lambda](Complex z) {
                        const double x = z.real();
                        return Complex{std::pow(x, -2.0 / lambda), std::pow(x, 2.0 / lambda)};
                      },
                      false, "tokamak{lambda:" + format_number(lambda) + "}"};
  }
  unknown("field", d);
}

FieldEntry make_field(std::string_view text) { return make_field(parse_descriptor(text)); }

}  // namespace vekua
