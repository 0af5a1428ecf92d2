#include "fibersim/gnmodel.hpp"

#include <cmath>
#include <stdexcept>

namespace fibersim::gn {

namespace {

// Acklam's rational approximation of the standard normal quantile
// (relative error < 1.15e-9 before refinement).
double normal_quantile(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p <= 0.0 || p >= 1.0) {
    throw std::domain_error("normal quantile: p must be in (0, 1)");
  }
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double erfc_inv(double y) {
  if (y <= 0.0 || y >= 2.0) {
    throw std::domain_error("erfc_inv: argument must be in (0, 2)");
  }
  if (y == 1.0) return 0.0;
  // erfc(x) = 2 Phi(-x sqrt(2))  =>  x = -Phi^{-1}(y/2) / sqrt(2).
  // The lower-tail form stays accurate for y far below machine epsilon.
  double x = -normal_quantile(y / 2.0) / std::sqrt(2.0);
  for (int i = 0; i < 2; ++i) {
    const double deriv = 2.0 / std::sqrt(M_PI) * std::exp(-x * x);
    if (deriv == 0.0) break;
    x += (std::erfc(x) - y) / deriv;
  }
  return x;
}

double ber_from_snr_qpsk(double snr_linear) {
  if (snr_linear < 0.0) {
    throw std::domain_error("ber_from_snr_qpsk: snr must be >= 0");
  }
  return 0.5 * std::erfc(std::sqrt(snr_linear / 2.0));
}

double ber_from_q(double q) { return 0.5 * std::erfc(q / std::sqrt(2.0)); }

double q_from_ber(double ber) {
  if (!(ber > 0.0) || ber > 0.5) {
    throw std::domain_error("q_from_ber: ber must be in (0, 0.5]");
  }
  return std::sqrt(2.0) * erfc_inv(2.0 * ber);
}

double snr_with_nli(double p_w, double p_ase_w, double a_nl_w2, double p_trx_w) {
  if (p_w <= 0.0 || p_ase_w < 0.0 || a_nl_w2 < 0.0 || p_trx_w < 0.0) {
    throw std::domain_error("snr_with_nli: invalid arguments");
  }
  const double denom = p_ase_w + a_nl_w2 * p_w * p_w * p_w + p_trx_w;
  if (denom == 0.0) {
    throw std::domain_error("snr_with_nli: zero total noise power");
  }
  return p_w / denom;
}

double inverse_snr_accumulate(const GnLink& link) {
  double inv = 0.0;
  if (link.snr_trx_linear) {
    if (*link.snr_trx_linear <= 0.0) {
      throw std::domain_error("gn link: snr_trx must be positive");
    }
    inv += 1.0 / *link.snr_trx_linear;
  }
  for (const auto& span : link.spans) {
    if (span.power_w <= 0.0 || span.noise_figure_linear <= 0.0 ||
        span.gain_linear <= 0.0 || span.a_nl_w2 < 0.0) {
      throw std::domain_error("gn link: invalid span parameters");
    }
    inv += span.noise_figure_linear * units::kPlanck * link.light_frequency_hz *
           (span.gain_linear - 1.0) * link.bandwidth_hz / span.power_w;
    inv += span.a_nl_w2 * span.power_w * span.power_w;
  }
  if (inv == 0.0) {
    throw std::domain_error("gn link: infinite SNR (no noise contributions)");
  }
  return 1.0 / inv;
}

double snr_identical_spans(std::size_t n_spans, double p_w,
                           double noise_figure_linear, double gain_linear,
                           double bandwidth_hz, double light_frequency_hz,
                           double alpha_nl_w2, double epsilon) {
  if (n_spans < 1 || p_w <= 0.0) {
    throw std::domain_error("snr_identical_spans: invalid arguments");
  }
  const auto n = static_cast<double>(n_spans);
  const double ase = n * noise_figure_linear * units::kPlanck *
                     light_frequency_hz * (gain_linear - 1.0) * bandwidth_hz;
  const double nli = alpha_nl_w2 * std::pow(n, 1.0 + epsilon) * p_w * p_w * p_w;
  return p_w / (ase + nli);
}

double snr_opt(std::size_t n_spans, double noise_figure_linear,
               double gain_linear, double bandwidth_hz,
               double light_frequency_hz, double alpha_nl_w2, double epsilon) {
  if (n_spans < 1 || alpha_nl_w2 <= 0.0) {
    throw std::domain_error("snr_opt: invalid arguments");
  }
  const auto n = static_cast<double>(n_spans);
  const double ase_unit = noise_figure_linear * units::kPlanck *
                          light_frequency_hz * (gain_linear - 1.0) * bandwidth_hz;
  if (ase_unit <= 0.0) {
    throw std::domain_error("snr_opt: non-positive ASE contribution");
  }
  return std::pow(2.0, 2.0 / 3.0) /
         (3.0 * std::cbrt(alpha_nl_w2) * std::pow(n, 1.0 + epsilon / 3.0) *
          std::pow(ase_unit, 2.0 / 3.0));
}

double delta_q2_opt(const AnlDistribution& dist) {
  if (dist.mu_w2 <= 0.0 || dist.sigma_w2 < 0.0) {
    throw std::domain_error("delta_q2_opt: invalid distribution");
  }
  if (dist.mu_w2 <= 3.0 * dist.sigma_w2) {
    throw std::domain_error(
        "delta_q2_opt: mu <= 3 sigma, the band reaches non-positive a_NL");
  }
  return 10.0 / 3.0 *
         std::log10((dist.mu_w2 + 3.0 * dist.sigma_w2) /
                    (dist.mu_w2 - 3.0 * dist.sigma_w2));
}

double q2_opt_difference(const AnlDistribution& dist_cnlse,
                         const AnlDistribution& dist_manakov) {
  if (dist_cnlse.mu_w2 <= 0.0 || dist_manakov.mu_w2 <= 0.0) {
    throw std::domain_error("q2_opt_difference: means must be positive");
  }
  return 10.0 / 3.0 * std::log10(dist_manakov.mu_w2 / dist_cnlse.mu_w2);
}

}  // namespace fibersim::gn
