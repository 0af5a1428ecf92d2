#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fibersim/campaign.hpp"
#include "fibersim/config.hpp"
#include "fibersim/rxchain.hpp"

namespace fibersim {

/// FNV-1a 64-bit hash (config fingerprinting in the run manifest).
std::uint64_t fnv1a64(const std::string& data);

/// Provenance attached to a single-shot receiver result.
struct RxProvenance {
  std::uint64_t seed = 0;
  std::size_t n_plates = 0;
  std::string fiber_name;
  std::string model;
  double max_nl_phase_rad = 0.0;
  double total_dgd_s = 0.0;
  std::string dgd_calibration;
};

std::string rx_result_to_json(const RxResult& rx, const RxProvenance& prov);

/// campaign.json: configuration echo, per-draw seeds, statistics, Gaussian
/// fit and histogram. Deterministic for a given result (no timestamps).
std::string campaign_to_json(const CampaignResult& result);

/// samples.csv: draw_index,seed,a_nl_mW2,total_dgd_ps with full-precision
/// doubles, so reruns are byte-identical.
std::string samples_to_csv(const CampaignResult& result);

/// sweep.csv: axis,value,mu_dbmw2,sigma_mw2,n_draws,runtime_s.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// Per-symbol received constellation with the transmitted ground truth.
std::string constellation_to_csv(const RxResult& rx, const ChannelPlan& plan);

/// manifest.json: config path + hash, version, timestamp, file layout. The
/// timestamp lives only here.
std::string manifest_to_json(const std::string& config_path,
                             const std::string& config_text,
                             const std::vector<std::string>& outputs);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace fibersim
