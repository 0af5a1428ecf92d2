#pragma once

#include <cstdint>
#include <vector>

namespace fibersim::stats {

double mean(const std::vector<double>& samples);

/// Unbiased (n-1) sample standard deviation; requires n >= 2.
double sample_std(const std::vector<double>& samples);

struct Histogram {
  std::vector<double> edges;       // n_bins + 1 monotone edges
  std::vector<std::size_t> counts;
};

/// Freedman-Diaconis binning; degenerates to a single bin when the IQR
/// vanishes (e.g. all samples identical).
Histogram histogram_fd(std::vector<double> samples);

/// Percentile bootstrap confidence interval of the mean.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};
Interval bootstrap_mean_ci(const std::vector<double>& samples,
                           double confidence, std::size_t n_resamples,
                           std::uint64_t seed);

/// Bootstrap CI of mean(a) - mean(b) for independent sample sets.
Interval bootstrap_mean_diff_ci(const std::vector<double>& a,
                                const std::vector<double>& b,
                                double confidence, std::size_t n_resamples,
                                std::uint64_t seed);

}  // namespace fibersim::stats
