#include "fibersim/fiber.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "fibersim/units.hpp"

namespace fibersim {

double FiberSpec::beta2_s2_m() const {
  return units::beta2_from_dispersion(dispersion_si, wavelength_m);
}

namespace {

FiberSpec make_preset(const char* name, double d_ps_nm_km, double gamma_w_km) {
  FiberSpec f;
  f.name = name;
  f.length_m = 100e3;
  f.attenuation_inv_m = units::attenuation_db_km_to_inv_m(0.2);
  f.dispersion_si = units::dispersion_ps_nm_km_to_si(d_ps_nm_km);
  f.gamma_w_m = units::gamma_w_km_to_si(gamma_w_km);
  f.pmd_si = units::pmd_ps_sqrt_km_to_si(0.13);
  return f;
}

}  // namespace

FiberSpec smf_fiber() { return make_preset("SMF", 16.8, 1.3); }
FiberSpec leaf_fiber() { return make_preset("LEAF", 4.0, 1.5); }
FiberSpec teralight_fiber() { return make_preset("Teralight", 8.0, 1.3); }

FiberSpec fiber_preset(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "smf") return smf_fiber();
  if (lower == "leaf") return leaf_fiber();
  if (lower == "teralight") return teralight_fiber();
  throw std::invalid_argument("unknown fiber preset: " + name);
}

}  // namespace fibersim
