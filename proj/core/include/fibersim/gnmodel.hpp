#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fibersim/units.hpp"

namespace fibersim::gn {

/// Inverse complementary error function, accurate to ~1e-15 over the BER
/// range of interest (rational initial guess refined by Newton steps).
double erfc_inv(double y);

/// BER of Gray-mapped QPSK under AWGN: 0.5 erfc(sqrt(snr / 2)).
double ber_from_snr_qpsk(double snr_linear);

/// BER from Q factor: 0.5 erfc(q / sqrt(2)).
double ber_from_q(double q);

/// Q factor from BER: sqrt(2) erfc_inv(2 ber); requires ber in (0, 0.5].
/// For QPSK, q_from_ber(ber_from_snr_qpsk(snr))^2 == snr.
double q_from_ber(double ber);

/// SNR with the NLI treated as additive noise scaling cubically with power:
/// P / (P_ase + a_nl P^3 + P_trx).
double snr_with_nli(double p_w, double p_ase_w, double a_nl_w2, double p_trx_w);

/// Analytical multi-span link for the inverse-SNR accumulation rule.
struct GnSpan {
  double power_w = 1e-3;
  double noise_figure_linear = 0.0;
  double gain_linear = 0.0;
  double a_nl_w2 = 0.0;
};

struct GnLink {
  std::vector<GnSpan> spans;
  double bandwidth_hz = 32e9;
  double light_frequency_hz = units::kSpeedOfLight / 1550e-9;
  std::optional<double> snr_trx_linear;  // absent means ideal transponders
  double epsilon = 0.22;
  double alpha_nl_w2 = 3.95e-4 * 1e6;  // per-span NLI constant
};

/// Heterogeneous accumulation:
/// 1/SNR = 1/SNR_trx + sum_k [NF_k h nu (G_k - 1) B / P_k + a_nl_k P_k^2].
double inverse_snr_accumulate(const GnLink& link);

/// Identical spans with supra-linear NLI accumulation:
/// SNR = P / (N NF h nu (G - 1) B + alpha_nl N^{1+eps} P^3).
double snr_identical_spans(std::size_t n_spans, double p_w,
                           double noise_figure_linear, double gain_linear,
                           double bandwidth_hz, double light_frequency_hz,
                           double alpha_nl_w2, double epsilon);

/// SNR at the nonlinear-threshold (optimal) launch power:
/// 2^{2/3} / (3 alpha_nl^{1/3} N^{1+eps/3} [NF h nu (G-1) B]^{2/3}).
double snr_opt(std::size_t n_spans, double noise_figure_linear,
               double gain_linear, double bandwidth_hz,
               double light_frequency_hz, double alpha_nl_w2, double epsilon);

/// Sample statistics of an a_NL Monte Carlo campaign, in 1/W^2.
struct AnlDistribution {
  double mu_w2 = 0.0;
  double sigma_w2 = 0.0;
  std::size_t n_samples = 0;

  double mu_dbmw2() const { return units::anl_w2_to_dbmw2(mu_w2); }
};

/// Width of the optimal-Q^2 band implied by a +-3 sigma spread of a_NL:
/// (1/3) 10 log10[(mu + 3 sigma) / (mu - 3 sigma)], in dB.
/// Requires mu > 3 sigma.
double delta_q2_opt(const AnlDistribution& dist);

/// Q^2_opt offset implied by the mean-a_NL difference between two methods:
/// (1/3) 10 log10(mu_manakov / mu_cnlse), in dB.
double q2_opt_difference(const AnlDistribution& dist_cnlse,
                         const AnlDistribution& dist_manakov);

}  // namespace fibersim::gn
