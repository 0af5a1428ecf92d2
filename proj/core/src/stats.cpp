#include "fibersim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fibersim/rng.hpp"

namespace fibersim::stats {

double mean(const std::vector<double>& samples) {
  if (samples.empty()) throw std::invalid_argument("mean: empty sample set");
  double acc = 0.0;
  for (double v : samples) acc += v;
  return acc / static_cast<double>(samples.size());
}

double sample_std(const std::vector<double>& samples) {
  if (samples.size() < 2) {
    throw std::invalid_argument("sample_std: need at least two samples");
  }
  const double m = mean(samples);
  double acc = 0.0;
  for (double v : samples) acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(samples.size() - 1));
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - std::floor(pos);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

Interval percentile_interval(std::vector<double>& estimates, double confidence) {
  std::sort(estimates.begin(), estimates.end());
  const double tail = (1.0 - confidence) / 2.0;
  return Interval{quantile_sorted(estimates, tail),
                  quantile_sorted(estimates, 1.0 - tail)};
}

double resample_mean(const std::vector<double>& samples, Rng& rng) {
  double acc = 0.0;
  const auto n = samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    acc += samples[rng.next_u64() % n];
  }
  return acc / static_cast<double>(n);
}

}  // namespace

Histogram histogram_fd(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("histogram_fd: empty sample set");
  std::sort(samples.begin(), samples.end());
  const double lo = samples.front();
  const double hi = samples.back();
  const double iqr =
      quantile_sorted(samples, 0.75) - quantile_sorted(samples, 0.25);
  const double width =
      2.0 * iqr / std::cbrt(static_cast<double>(samples.size()));

  std::size_t n_bins = 1;
  if (width > 0.0 && hi > lo) {
    n_bins = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::ceil((hi - lo) / width)), 1, 10000);
  }

  Histogram h;
  h.edges.resize(n_bins + 1);
  h.counts.assign(n_bins, 0);
  const double span = (hi > lo) ? (hi - lo) : 1.0;
  for (std::size_t i = 0; i <= n_bins; ++i) {
    h.edges[i] = lo + span * static_cast<double>(i) / static_cast<double>(n_bins);
  }
  for (double v : samples) {
    auto bin = static_cast<std::size_t>((v - lo) / span * static_cast<double>(n_bins));
    if (bin >= n_bins) bin = n_bins - 1;
    ++h.counts[bin];
  }
  return h;
}

Interval bootstrap_mean_ci(const std::vector<double>& samples,
                           double confidence, std::size_t n_resamples,
                           std::uint64_t seed) {
  if (samples.empty()) throw std::invalid_argument("bootstrap: empty sample set");
  Rng rng(seed);
  std::vector<double> estimates(n_resamples);
  for (auto& e : estimates) e = resample_mean(samples, rng);
  return percentile_interval(estimates, confidence);
}

Interval bootstrap_mean_diff_ci(const std::vector<double>& a,
                                const std::vector<double>& b,
                                double confidence, std::size_t n_resamples,
                                std::uint64_t seed) {
  if (a.empty() || b.empty()) throw std::invalid_argument("bootstrap: empty sample set");
  Rng rng(seed);
  std::vector<double> estimates(n_resamples);
  for (auto& e : estimates) {
    e = resample_mean(a, rng) - resample_mean(b, rng);
  }
  return percentile_interval(estimates, confidence);
}

}  // namespace fibersim::stats
