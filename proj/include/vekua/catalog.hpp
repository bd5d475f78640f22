#pragma once

// Named weights, conductivities and closed-form fields addressable from
// configs, e.g. `tokamak{lambda:4}`, `power{a:-1,mu:-1}`, `exp{k:2}`.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "vekua/descriptor.hpp"
#include "vekua/geometry.hpp"
#include "vekua/weights.hpp"

namespace vekua {

// zero | constant{re,im} | tokamak{lambda} | power{a,a_im,mu} | radial{name,scale}
// | from_sigma{name,k,c,fd} | reciprocal
WeightField make_weight(const Descriptor& d);
WeightField make_weight(std::string_view text);

// A conductivity together with the closed-form alpha it induces.
struct SigmaEntry {
  SigmaField sigma;
  WeightField alpha;
};

// inverse_x | exp_linear{k} | constant{c} | quadratic
SigmaEntry make_sigma(const Descriptor& d);
std::vector<std::string> sigma_catalog_names();

// zero | constant{k} | tokamak (nu = (x-1)/(x+1), so sigma = 1/x, defined for x > 0)
NuField make_nu(const Descriptor& d);

// square | one | inverse | gaussian, each scaled by `scale`.
WeightField make_radial(std::string_view name, double scale = 1.0);

// Closed-form grid fields: holomorphic seeds and exact solutions of
// dbar w = alpha conj(w) for the weight named in `solves`.
struct FieldEntry {
  std::string name;
  std::function<Complex(Complex)> fn;
  bool holomorphic;
  std::string solves;  // weight descriptor for exact solutions, "zero" for holomorphic fields
};

// Holomorphic: one | const{re,im} | z | poly{c0,c1,...} | exp{k} | expsq | damper{eps}
//              | recip_shift{s}
// Exact:       zbar (alpha = 1/z) | exp2cx{c} (alpha = c) | cosh_pair{c,k} (alpha = c)
//              | xpow_pair{lambda} (alpha = tokamak{lambda}) | xpow{k} (x^k, alpha = k/(2x))
FieldEntry make_field(const Descriptor& d);
FieldEntry make_field(std::string_view text);

}  // namespace vekua
