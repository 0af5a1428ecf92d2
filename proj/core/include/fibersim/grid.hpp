#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fibersim {

using cplx = std::complex<double>;

/// Uniform circular sampling grid shared by the time and frequency
/// representations. n_samples must be a power of two; the frequency axis is
/// in discrete-transform order with spacing sample_rate / n_samples.
struct SimulationGrid {
  std::size_t n_samples = 0;
  double sample_rate_hz = 0.0;
  double center_frequency_offset_hz = 0.0;

  double duration_s() const {
    return static_cast<double>(n_samples) / sample_rate_hz;
  }
  double dt_s() const { return 1.0 / sample_rate_hz; }
  double df_hz() const { return sample_rate_hz / static_cast<double>(n_samples); }

  /// Baseband frequency of bin k (k < N/2 positive, k >= N/2 negative).
  double bin_frequency_hz(std::size_t k) const {
    const auto n = static_cast<std::ptrdiff_t>(n_samples);
    auto idx = static_cast<std::ptrdiff_t>(k);
    if (idx >= n / 2) idx -= n;
    return static_cast<double>(idx) * df_hz();
  }

  /// Angular frequencies 2 pi f_k for all bins, in transform order.
  std::vector<double> angular_frequencies() const;

  bool operator==(const SimulationGrid&) const = default;
};

/// Builds the grid for a pulse-shaped symbol stream.
/// n_samples = oversampling * n_symbols, sample_rate = symbol_rate * oversampling.
SimulationGrid make_grid(double symbol_rate_hz, std::size_t oversampling,
                         std::size_t n_symbols);

/// Dual-polarization complex baseband envelope sampled on `grid`.
/// Samples are in sqrt(W), so |A|^2 is instantaneous power in W.
struct DualPolField {
  SimulationGrid grid;
  std::vector<cplx> x;
  std::vector<cplx> y;
};

/// Frequency-domain counterpart of DualPolField (unitary scaling, so the
/// Parseval sums match the time-domain ones).
struct DualPolSpectrum {
  SimulationGrid grid;
  std::vector<cplx> x;
  std::vector<cplx> y;
};

DualPolField make_zero_field(const SimulationGrid& grid);

/// Mean over samples of |A_x|^2 + |A_y|^2, in W.
double total_power(const DualPolField& field);
double total_power(const DualPolSpectrum& spectrum);

/// Unitary transforms; to_time(to_frequency(f)) == f to ~1e-15.
DualPolSpectrum to_frequency(const DualPolField& field);
DualPolField to_time(const DualPolSpectrum& spectrum);

/// Exact circular spectral translation by `bins` (positive = up in frequency).
void shift_bins(DualPolSpectrum& spectrum, std::ptrdiff_t bins);

}  // namespace fibersim
