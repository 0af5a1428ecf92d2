#include "fibersim/rxchain.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "fibersim/fft.hpp"

namespace fibersim {

void compensate_dispersion(DualPolField& field, const FiberSpec& fiber) {
  fft::forward_inplace(field.x);
  fft::forward_inplace(field.y);
  const double c = -fiber.beta2_s2_m() / 2.0 * fiber.length_m;
  const std::size_t n = field.grid.n_samples;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = 2.0 * M_PI * field.grid.bin_frequency_hz(k);
    const cplx h = std::polar(1.0, c * w * w);
    field.x[k] *= h;
    field.y[k] *= h;
  }
  fft::inverse_inplace(field.x);
  fft::inverse_inplace(field.y);
}

void reverse_pmd(DualPolField& field, const PlateSequence& plates) {
  apply_inverse_sequence(field, plates);
}

TSpacedSymbols demux_channel(const DualPolField& field, const WdmSignal& tx,
                             std::size_t index) {
  const TxConfig& cfg = tx.cfg;
  if (index >= cfg.n_channels) {
    throw std::invalid_argument("demux_channel: channel index out of range");
  }
  const SimulationGrid& grid = field.grid;
  const std::size_t n = grid.n_samples;
  const std::size_t oversampling = n / cfg.n_symbols;

  const double offset = channel_offset_hz(cfg, index);
  const auto offset_bins = static_cast<std::ptrdiff_t>(std::llround(offset / grid.df_hz()));

  std::vector<cplx> sx(field.x);
  std::vector<cplx> sy(field.y);
  fft::forward_inplace(sx);
  fft::forward_inplace(sy);

  // Shift to baseband, matched RRC (unit DC gain), undo the channel SOP.
  const JonesMatrix u_inv = tx.channel_sops[index].dagger();
  std::vector<cplx> bx(n), by(n);
  const auto np = static_cast<std::ptrdiff_t>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double f = grid.bin_frequency_hz(k);
    const double g = rrc_gain(f, cfg.symbol_rate_hz, cfg.rolloff);
    if (g == 0.0) continue;
    const std::ptrdiff_t src =
        (((static_cast<std::ptrdiff_t>(k) + offset_bins) % np) + np) % np;
    cplx vx = g * sx[static_cast<std::size_t>(src)];
    cplx vy = g * sy[static_cast<std::size_t>(src)];
    u_inv.apply(vx, vy);
    bx[k] = vx;
    by[k] = vy;
  }
  fft::inverse_inplace(bx);
  fft::inverse_inplace(by);

  TSpacedSymbols out;
  out.x.resize(cfg.n_symbols);
  out.y.resize(cfg.n_symbols);
  for (std::size_t s = 0; s < cfg.n_symbols; ++s) {
    out.x[s] = bx[s * oversampling];
    out.y[s] = by[s * oversampling];
  }
  return out;
}

TSpacedSymbols demux_central_channel(const DualPolField& field,
                                     const WdmSignal& tx) {
  return demux_channel(field, tx, central_channel_index(tx.cfg));
}

namespace {

// One polarization of the estimator; returns {sigma2_i, sigma2_q}.
std::array<double, 2> iq_variances(const std::vector<cplx>& received,
                                   const std::vector<std::uint8_t>& sent) {
  if (received.size() != sent.size() || received.empty()) {
    throw std::invalid_argument("estimate_a_nl: symbol/plan length mismatch");
  }

  std::array<cplx, 4> mean{};
  std::array<std::size_t, 4> count{};
  for (std::size_t i = 0; i < received.size(); ++i) {
    if (sent[i] > 3) throw std::invalid_argument("estimate_a_nl: bad plan symbol");
    mean[sent[i]] += received[i];
    ++count[sent[i]];
  }
  std::array<cplx, 4> rot{};
  std::array<double, 4> modulus{};
  for (int s = 0; s < 4; ++s) {
    if (count[s] == 0) {
      throw std::invalid_argument(
          "estimate_a_nl: empty constellation state bucket (degenerate data)");
    }
    mean[s] /= static_cast<double>(count[s]);
    const double mag = std::abs(mean[s]);
    modulus[s] = mag;
    rot[s] = (mag > 0.0) ? std::conj(mean[s]) / mag : cplx{1.0, 0.0};
  }

  double sum_i2 = 0.0;
  double sum_q2 = 0.0;
  for (std::size_t i = 0; i < received.size(); ++i) {
    const int s = sent[i];
    const cplx centered = received[i] * rot[s];
    const double dev_i = centered.real() - modulus[s];
    sum_i2 += dev_i * dev_i;
    sum_q2 += centered.imag() * centered.imag();
  }
  const auto inv_n = 1.0 / static_cast<double>(received.size());
  return {sum_i2 * inv_n, sum_q2 * inv_n};
}

}  // namespace

RxResult estimate_a_nl(const TSpacedSymbols& symbols, const ChannelPlan& plan,
                       double channel_power_w) {
  if (channel_power_w <= 0.0) {
    throw std::invalid_argument("estimate_a_nl: channel power must be positive");
  }
  RxResult r;
  r.symbols = symbols;
  r.channel_power_w = channel_power_w;
  const auto vx = iq_variances(symbols.x, plan.symbols_x);
  const auto vy = iq_variances(symbols.y, plan.symbols_y);
  r.sigma2_ix_w = vx[0];
  r.sigma2_qx_w = vx[1];
  r.sigma2_iy_w = vy[0];
  r.sigma2_qy_w = vy[1];
  const double p3 = channel_power_w * channel_power_w * channel_power_w;
  r.a_nl_w2 = (r.sigma2_ix_w + r.sigma2_qx_w + r.sigma2_iy_w + r.sigma2_qy_w) / p3;
  return r;
}

}  // namespace fibersim
