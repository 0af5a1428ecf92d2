#include "fibersim/txgen.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "fibersim/debruijn.hpp"
#include "fibersim/fft.hpp"
#include "fibersim/rng.hpp"

namespace fibersim {

namespace {

constexpr std::uint64_t kDataStreamTag = 0xDA7AULL;
constexpr std::uint64_t kSopStreamTag = 0x50F0ULL;

unsigned debruijn_order_for(std::size_t n_symbols) {
  unsigned order = 0;
  std::size_t n = n_symbols;
  while (n > 1 && n % 4 == 0) {
    n /= 4;
    ++order;
  }
  if (n != 1 || order == 0) {
    throw std::invalid_argument(
        "tx config: n_symbols must be a power of 4 to carry a quaternary "
        "De Bruijn frame");
  }
  return order;
}

void validate(const TxConfig& cfg) {
  if (cfg.n_channels < 1) throw std::invalid_argument("tx config: n_channels must be >= 1");
  if (cfg.rolloff <= 0.0 || cfg.rolloff > 1.0) {
    throw std::invalid_argument("tx config: rolloff must be in (0, 1]");
  }
  if (cfg.power_per_channel_w < 0.0) {
    throw std::invalid_argument("tx config: power_per_channel must be >= 0");
  }
  if (cfg.n_channels > 1 && cfg.channel_spacing_hz <= 0.0) {
    throw std::invalid_argument("tx config: channel_spacing must be positive");
  }
  debruijn_order_for(cfg.n_symbols);

  const double channel_bw = (1.0 + cfg.rolloff) * cfg.symbol_rate_hz;
  if (cfg.n_channels > 1 && channel_bw > cfg.channel_spacing_hz) {
    std::cerr << "warning: channel bandwidth " << channel_bw / 1e9
              << " GHz exceeds spacing " << cfg.channel_spacing_hz / 1e9
              << " GHz; designed spectral overlap\n";
  }
  const double aggregate_bw =
      static_cast<double>(cfg.n_channels - 1) * cfg.channel_spacing_hz + channel_bw;
  const double fs = cfg.symbol_rate_hz * static_cast<double>(cfg.oversampling);
  if (aggregate_bw > fs) {
    throw std::invalid_argument(
        "tx config: aggregate WDM bandwidth exceeds the sample rate; raise "
        "oversampling or reduce n_channels/channel_spacing");
  }
}

}  // namespace

std::vector<cplx> map_qpsk(const std::vector<std::uint8_t>& symbols,
                           double channel_power_w) {
  const double amplitude = std::sqrt(channel_power_w / 2.0);
  std::vector<cplx> points(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] > 3) {
      throw std::invalid_argument("map_qpsk: symbol outside alphabet {0..3}");
    }
    // Gray mapping: phase (2s+1) pi / 4.
    const double phase = (2.0 * symbols[i] + 1.0) * M_PI / 4.0;
    points[i] = std::polar(amplitude, phase);
  }
  return points;
}

double rrc_gain(double f_hz, double symbol_rate_hz, double rolloff) {
  const double x = std::abs(f_hz);
  const double lo = (1.0 - rolloff) * symbol_rate_hz / 2.0;
  const double hi = (1.0 + rolloff) * symbol_rate_hz / 2.0;
  if (x <= lo) return 1.0;
  if (x >= hi) return 0.0;
  return std::cos(M_PI / (2.0 * rolloff * symbol_rate_hz) * (x - lo));
}

std::vector<cplx> rrc_shape(const std::vector<cplx>& symbols,
                            const SimulationGrid& grid, double rolloff) {
  const std::size_t n = grid.n_samples;
  const std::size_t m = symbols.size();
  if (m == 0 || n % m != 0) {
    throw std::invalid_argument("rrc_shape: grid size must be a multiple of the symbol count");
  }
  const auto oversampling = static_cast<double>(n / m);
  const double symbol_rate = grid.sample_rate_hz / oversampling;

  std::vector<cplx> wave(n);
  for (std::size_t k = 0; k < m; ++k) wave[k * (n / m)] = symbols[k];
  fft::forward_inplace(wave);
  for (std::size_t k = 0; k < n; ++k) {
    wave[k] *= oversampling * rrc_gain(grid.bin_frequency_hz(k), symbol_rate, rolloff);
  }
  fft::inverse_inplace(wave);
  return wave;
}

double channel_offset_hz(const TxConfig& cfg, std::size_t index) {
  if (index >= cfg.n_channels) {
    throw std::invalid_argument("channel index out of range");
  }
  const double centered = static_cast<double>(index) -
                          static_cast<double>(cfg.n_channels - 1) / 2.0;
  return centered * cfg.channel_spacing_hz;
}

std::size_t central_channel_index(const TxConfig& cfg) {
  return cfg.n_channels / 2;
}

WdmSynthesizer::WdmSynthesizer(const TxConfig& cfg, std::uint64_t data_seed)
    : cfg_(cfg) {
  validate(cfg);
  grid_ = make_grid(cfg.symbol_rate_hz, cfg.oversampling, cfg.n_symbols);
  const unsigned order = debruijn_order_for(cfg.n_symbols);
  const std::uint64_t n_variants = 24ull * static_cast<std::uint64_t>(cfg.n_symbols);
  const std::uint64_t variant_base = splitmix64(data_seed) % n_variants;

  plan_.symbol_energy_w = cfg.power_per_channel_w / 2.0;
  plan_.channels.resize(cfg.n_channels);
  dft_x_.resize(cfg.n_channels);
  dft_y_.resize(cfg.n_channels);
  offset_bins_.resize(cfg.n_channels);

  // Support window of one channel's RRC spectrum, in grid bins.
  const double df = grid_.df_hz();
  support_half_bins_ = static_cast<std::ptrdiff_t>(
      std::ceil((1.0 + cfg.rolloff) * cfg.symbol_rate_hz / 2.0 / df));
  shaped_gain_.resize(2 * support_half_bins_ + 1);
  for (std::ptrdiff_t j = -support_half_bins_; j <= support_half_bins_; ++j) {
    shaped_gain_[j + support_half_bins_] =
        static_cast<double>(cfg.oversampling) *
        rrc_gain(static_cast<double>(j) * df, cfg.symbol_rate_hz, cfg.rolloff);
  }

  for (std::size_t ch = 0; ch < cfg.n_channels; ++ch) {
    const double offset = channel_offset_hz(cfg, ch);
    const double bins = offset / df;
    const double rounded = std::round(bins);
    if (std::abs(bins - rounded) > 1e-6) {
      throw std::invalid_argument(
          "tx config: channel offsets must fall on grid bins (channel spacing "
          "must be a multiple of symbol_rate / n_symbols)");
    }
    offset_bins_[ch] = static_cast<std::ptrdiff_t>(rounded);

    // Distinct variants per tributary guarantee distinct cyclic sequences.
    const std::uint64_t vx = (variant_base + 2 * ch) % n_variants;
    const std::uint64_t vy = (variant_base + 2 * ch + 1) % n_variants;
    plan_.channels[ch].symbols_x = debruijn_sequence(order, vx);
    plan_.channels[ch].symbols_y = debruijn_sequence(order, vy);

    dft_x_[ch] = map_qpsk(plan_.channels[ch].symbols_x, cfg.power_per_channel_w);
    dft_y_[ch] = map_qpsk(plan_.channels[ch].symbols_y, cfg.power_per_channel_w);
    fft::forward_inplace(dft_x_[ch]);
    fft::forward_inplace(dft_y_[ch]);
  }
}

WdmSignal WdmSynthesizer::assemble(std::uint64_t sop_seed) const {
  const std::size_t n = grid_.n_samples;
  const auto m = static_cast<std::ptrdiff_t>(cfg_.n_symbols);
  DualPolSpectrum agg{grid_, std::vector<cplx>(n), std::vector<cplx>(n)};

  std::vector<JonesMatrix> sops(cfg_.n_channels);
  for (std::size_t ch = 0; ch < cfg_.n_channels; ++ch) {
    sops[ch] = random_sop_rotation(derive_seed(sop_seed, ch));

    const JonesMatrix& u = sops[ch];
    const auto& sx = dft_x_[ch];
    const auto& sy = dft_y_[ch];
    for (std::ptrdiff_t j = -support_half_bins_; j <= support_half_bins_; ++j) {
      const double g = shaped_gain_[j + support_half_bins_];
      if (g == 0.0) continue;
      const std::size_t sym_bin = static_cast<std::size_t>(((j % m) + m) % m);
      const cplx tx = g * sx[sym_bin];
      const cplx ty = g * sy[sym_bin];
      const std::ptrdiff_t bin =
          (((offset_bins_[ch] + j) % static_cast<std::ptrdiff_t>(n)) +
           static_cast<std::ptrdiff_t>(n)) %
          static_cast<std::ptrdiff_t>(n);
      agg.x[static_cast<std::size_t>(bin)] += u.a * tx + u.b * ty;
      agg.y[static_cast<std::size_t>(bin)] += u.c * tx + u.d * ty;
    }
  }

  // The cached spectra are unnormalized forward DFTs, so invert with 1/N.
  DualPolField field{grid_, std::move(agg.x), std::move(agg.y)};
  fft::inverse_inplace(field.x);
  fft::inverse_inplace(field.y);
  return WdmSignal{std::move(field), plan_, std::move(sops), cfg_};
}

WdmSignal build_wdm_field(const TxConfig& cfg) {
  WdmSynthesizer synth(cfg, derive_seed(cfg.seed, kDataStreamTag));
  return synth.assemble(derive_seed(cfg.seed, kSopStreamTag));
}

}  // namespace fibersim
