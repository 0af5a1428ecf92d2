#pragma once

#include <cmath>

// Unit conversions between the engineering units used in configuration files
// (dBm, km, ps/(nm km), ps/sqrt(km), W^-1 km^-1) and the SI units used
// internally (W, m, s, Hz). Conversions happen exactly once, at parse time.
namespace fibersim::units {

inline constexpr double kSpeedOfLight = 299792458.0;    // m/s
inline constexpr double kPlanck = 6.62607015e-34;       // J s

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline double dbm_to_watt(double dbm) { return 1e-3 * db_to_linear(dbm); }
inline double watt_to_dbm(double w) { return linear_to_db(w / 1e-3); }

// Power attenuation coefficient: P(z) = P(0) exp(-alpha z).
inline double attenuation_db_km_to_inv_m(double db_km) {
  return db_km * std::log(10.0) / 10.0 / 1000.0;
}

// Chromatic dispersion parameter D: ps/(nm km) -> s/m^2.
inline double dispersion_ps_nm_km_to_si(double d) { return d * 1e-6; }

// beta2 = -D lambda^2 / (2 pi c), in s^2/m.
inline double beta2_from_dispersion(double d_si, double wavelength_m) {
  return -d_si * wavelength_m * wavelength_m / (2.0 * M_PI * kSpeedOfLight);
}

// PMD coefficient: ps/sqrt(km) -> s/sqrt(m).
inline double pmd_ps_sqrt_km_to_si(double pmd) {
  return pmd * 1e-12 / std::sqrt(1000.0);
}

// Kerr coefficient gamma: W^-1 km^-1 -> W^-1 m^-1.
inline double gamma_w_km_to_si(double g) { return g * 1e-3; }

// a_NL: internal W^-2 <-> reported mW^-2 (1 mW^-2 = 1e6 W^-2).
inline double anl_w2_to_mw2(double a) { return a * 1e-6; }
inline double anl_mw2_to_w2(double a) { return a * 1e6; }

// dB-scale a_NL convention: 10 log10 of the mW^-2 value.
inline double anl_w2_to_dbmw2(double a) { return linear_to_db(anl_w2_to_mw2(a)); }

}  // namespace fibersim::units
