#pragma once

#include <string>

namespace fibersim {

/// Fiber parameters in SI units. Built-in presets carry the standard values
/// at 1550 nm: SMF (D=16.8, gamma=1.3), LEAF (D=4, gamma=1.5), Teralight
/// (D=8, gamma=1.3), all with PMD 0.13 ps/sqrt(km) and 0.2 dB/km loss.
struct FiberSpec {
  std::string name = "custom";
  double length_m = 100e3;
  double attenuation_inv_m = 0.0;   // power decay: P(z) = P(0) e^{-alpha z}
  double dispersion_si = 0.0;       // D in s/m^2
  double gamma_w_m = 0.0;           // Kerr coefficient, 1/(W m)
  double pmd_si = 0.0;              // PMD coefficient, s/sqrt(m)
  double wavelength_m = 1550e-9;

  double beta2_s2_m() const;
};

FiberSpec smf_fiber();
FiberSpec leaf_fiber();
FiberSpec teralight_fiber();

/// Preset lookup by case-insensitive name; throws on unknown names.
FiberSpec fiber_preset(const std::string& name);

}  // namespace fibersim
