#pragma once

#include <cstdint>
#include <vector>

#include "fibersim/grid.hpp"
#include "fibersim/jones.hpp"

namespace fibersim {

/// WDM PDM-QPSK transmitter configuration. Defaults follow the reference
/// setup: 21 channels on a 50 GHz grid, 32 GBaud, RRC 0.1, 128x oversampled
/// De Bruijn frames of 4^7 symbols, 0 dBm per channel.
struct TxConfig {
  std::size_t n_channels = 21;
  double channel_spacing_hz = 50e9;
  double symbol_rate_hz = 32e9;
  double rolloff = 0.1;
  std::size_t oversampling = 128;
  std::size_t n_symbols = 16384;  // must be a power of 4 (De Bruijn frame)
  double power_per_channel_w = 1e-3;
  std::uint64_t seed = 1;
};

/// Ground-truth data retained for the data-aided receiver: the quaternary
/// symbols of each channel's two polarization tributaries.
struct ChannelPlan {
  std::vector<std::uint8_t> symbols_x;
  std::vector<std::uint8_t> symbols_y;
};

struct SymbolPlan {
  std::vector<ChannelPlan> channels;
  double symbol_energy_w = 0.0;  // |constellation point|^2 per tributary
};

/// One synthesized transmission: aggregate field plus everything the ideal
/// receiver needs (data, per-channel SOP rotations, configuration).
struct WdmSignal {
  DualPolField field;
  SymbolPlan plan;
  std::vector<JonesMatrix> channel_sops;
  TxConfig cfg;
};

/// Gray-mapped QPSK: symbols {0..3} -> phases (2s+1) pi/4, scaled so one
/// tributary stream carries channel_power / 2 (two tributaries per channel).
std::vector<cplx> map_qpsk(const std::vector<std::uint8_t>& symbols,
                           double channel_power_w);

/// Root-raised-cosine spectral gain at baseband frequency f (unit DC gain,
/// zero beyond (1 + rolloff) R / 2).
double rrc_gain(double f_hz, double symbol_rate_hz, double rolloff);

/// Shapes a T-spaced symbol stream onto `grid` by frequency-domain RRC
/// filtering of the oversampled impulse train. The filter is normalized so
/// the waveform mean power equals the mean symbol energy, and the matched
/// RRC at the receiver recovers the symbols exactly at the T-spaced instants.
std::vector<cplx> rrc_shape(const std::vector<cplx>& symbols,
                            const SimulationGrid& grid, double rolloff);

/// Baseband center-frequency offset of channel `index`.
double channel_offset_hz(const TxConfig& cfg, std::size_t index);
std::size_t central_channel_index(const TxConfig& cfg);

/// Caches the data-dependent (SOP-independent) part of the aggregate WDM
/// spectrum so Monte Carlo draws that share data only pay for the mixing and
/// one inverse transform per polarization.
class WdmSynthesizer {
 public:
  WdmSynthesizer(const TxConfig& cfg, std::uint64_t data_seed);

  /// Draws per-channel SOPs from sop_seed and assembles the aggregate field.
  WdmSignal assemble(std::uint64_t sop_seed) const;

  const SimulationGrid& grid() const { return grid_; }
  const SymbolPlan& plan() const { return plan_; }
  const TxConfig& cfg() const { return cfg_; }

 private:
  TxConfig cfg_;
  SimulationGrid grid_;
  SymbolPlan plan_;
  std::ptrdiff_t support_half_bins_ = 0;
  std::vector<double> shaped_gain_;  // oversampling * rrc over the support
  std::vector<std::vector<cplx>> dft_x_;  // per channel, n_symbols-point DFT
  std::vector<std::vector<cplx>> dft_y_;
  std::vector<std::ptrdiff_t> offset_bins_;
};

/// Convenience one-shot synthesis; data and SOP streams both derive from
/// cfg.seed. Identical cfg gives a bit-identical field.
WdmSignal build_wdm_field(const TxConfig& cfg);

}  // namespace fibersim
