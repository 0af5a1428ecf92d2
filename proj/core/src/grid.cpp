#include "fibersim/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "fibersim/fft.hpp"

namespace fibersim {

std::vector<double> SimulationGrid::angular_frequencies() const {
  std::vector<double> omega(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    omega[k] = 2.0 * M_PI * bin_frequency_hz(k);
  }
  return omega;
}

SimulationGrid make_grid(double symbol_rate_hz, std::size_t oversampling,
                         std::size_t n_symbols) {
  if (symbol_rate_hz <= 0.0) {
    throw std::invalid_argument("make_grid: symbol rate must be positive");
  }
  if (oversampling < 2) {
    throw std::invalid_argument("make_grid: oversampling must be >= 2");
  }
  if (n_symbols < 1) {
    throw std::invalid_argument("make_grid: n_symbols must be >= 1");
  }
  const std::size_t n = oversampling * n_symbols;
  if (!std::has_single_bit(n)) {
    throw std::invalid_argument(
        "make_grid: oversampling * n_symbols must be a power of two");
  }
  return SimulationGrid{n, symbol_rate_hz * static_cast<double>(oversampling), 0.0};
}

DualPolField make_zero_field(const SimulationGrid& grid) {
  return DualPolField{grid, std::vector<cplx>(grid.n_samples),
                      std::vector<cplx>(grid.n_samples)};
}

namespace {

double mean_abs2(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += std::norm(a[i]) + std::norm(b[i]);
  }
  return acc / static_cast<double>(a.size());
}

}  // namespace

double total_power(const DualPolField& field) {
  return mean_abs2(field.x, field.y);
}

double total_power(const DualPolSpectrum& spectrum) {
  return mean_abs2(spectrum.x, spectrum.y);
}

DualPolSpectrum to_frequency(const DualPolField& field) {
  DualPolSpectrum s{field.grid, field.x, field.y};
  fft::forward_inplace(s.x);
  fft::forward_inplace(s.y);
  const double scale = 1.0 / std::sqrt(static_cast<double>(s.grid.n_samples));
  for (auto& v : s.x) v *= scale;
  for (auto& v : s.y) v *= scale;
  return s;
}

DualPolField to_time(const DualPolSpectrum& spectrum) {
  DualPolField f{spectrum.grid, spectrum.x, spectrum.y};
  fft::backward_inplace(f.x);
  fft::backward_inplace(f.y);
  const double scale = 1.0 / std::sqrt(static_cast<double>(f.grid.n_samples));
  for (auto& v : f.x) v *= scale;
  for (auto& v : f.y) v *= scale;
  return f;
}

void shift_bins(DualPolSpectrum& spectrum, std::ptrdiff_t bins) {
  const auto n = static_cast<std::ptrdiff_t>(spectrum.grid.n_samples);
  if (n == 0) return;
  std::ptrdiff_t shift = ((bins % n) + n) % n;
  if (shift == 0) return;
  // Moving spectral content up by m bins means bin k takes the old k - m.
  std::rotate(spectrum.x.begin(), spectrum.x.end() - shift, spectrum.x.end());
  std::rotate(spectrum.y.begin(), spectrum.y.end() - shift, spectrum.y.end());
}

}  // namespace fibersim
