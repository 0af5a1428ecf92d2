#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fibersim/fiber.hpp"
#include "fibersim/grid.hpp"
#include "fibersim/polmodel.hpp"
#include "fibersim/txgen.hpp"

namespace fibersim {

/// T-spaced samples of one demultiplexed channel, per polarization.
struct TSpacedSymbols {
  std::vector<cplx> x;
  std::vector<cplx> y;
};

/// Data-aided nonlinear-interference estimate for one transmission.
/// a_nl = (sigma2_ix + sigma2_qx + sigma2_iy + sigma2_qy) / P^3, in 1/W^2.
struct RxResult {
  TSpacedSymbols symbols;
  double channel_power_w = 0.0;
  double sigma2_ix_w = 0.0;
  double sigma2_qx_w = 0.0;
  double sigma2_iy_w = 0.0;
  double sigma2_qy_w = 0.0;
  double a_nl_w2 = 0.0;

  double a_nl_mw2() const { return a_nl_w2 * 1e-6; }
};

/// Ideal DCF: exact inverse of the span's cumulative dispersion,
/// exp(-i beta2 omega^2 / 2 L) in the frequency domain.
void compensate_dispersion(DualPolField& field, const FiberSpec& fiber);

/// Receiver-side inverse of the whole plate concatenation ("reverse PMD").
/// Correct only when `plates` is the sequence actually used in propagation.
void reverse_pmd(DualPolField& field, const PlateSequence& plates);

/// Frequency-shifts channel `index` to baseband, applies the matched RRC and
/// the inverse of that channel's transmit SOP rotation, and samples at the
/// ISI-free T-spaced instants.
TSpacedSymbols demux_channel(const DualPolField& field, const WdmSignal& tx,
                             std::size_t index);
TSpacedSymbols demux_central_channel(const DualPolField& field,
                                     const WdmSignal& tx);

/// Fig.-3-style estimator: per polarization and transmitted QPSK state,
/// cancel the phase of the state mean, subtract its modulus from the real
/// part, superimpose all states, and take I/Q variances over all samples.
RxResult estimate_a_nl(const TSpacedSymbols& symbols, const ChannelPlan& plan,
                       double channel_power_w);

}  // namespace fibersim
