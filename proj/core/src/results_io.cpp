#include "fibersim/results_io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "fibersim/units.hpp"
#include "fibersim/version.hpp"

namespace fibersim {

using nlohmann::json;

namespace {

// Full-precision round-trip formatting keeps CSV outputs bit-identical.
std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json config_json(const AppConfig& cfg) {
  return json::parse(config_to_json(cfg));
}

}  // namespace

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::string rx_result_to_json(const RxResult& rx, const RxProvenance& prov) {
  json doc;
  doc["a_nl_mw2"] = rx.a_nl_mw2();
  doc["a_nl_dbmw2"] = rx.a_nl_w2 > 0.0
                          ? json(units::anl_w2_to_dbmw2(rx.a_nl_w2))
                          : json(nullptr);
  doc["channel_power_dbm"] = units::watt_to_dbm(rx.channel_power_w);
  doc["variances_w"] = {{"sigma2_ix", rx.sigma2_ix_w},
                        {"sigma2_qx", rx.sigma2_qx_w},
                        {"sigma2_iy", rx.sigma2_iy_w},
                        {"sigma2_qy", rx.sigma2_qy_w}};
  doc["provenance"] = {{"seed", prov.seed},
                       {"n_plates", prov.n_plates},
                       {"fiber", prov.fiber_name},
                       {"model", prov.model},
                       {"max_nl_phase_rad", prov.max_nl_phase_rad},
                       {"total_dgd_ps", prov.total_dgd_s * 1e12},
                       {"dgd_calibration", prov.dgd_calibration},
                       {"version", kVersion}};
  return doc.dump(2) + "\n";
}

std::string campaign_to_json(const CampaignResult& result) {
  AppConfig echo;
  echo.campaign = result.cfg;

  json doc;
  doc["metadata"] = {{"version", kVersion},
                     {"config", config_json(echo)},
                     {"n_draws", result.draws.size()}};
  json seeds = json::array();
  for (const auto& d : result.draws) seeds.push_back(d.seed);
  doc["metadata"]["draw_seeds"] = seeds;

  doc["statistics"] = {
      {"mu_mw2", units::anl_w2_to_mw2(result.dist.mu_w2)},
      {"mu_dbmw2", result.dist.mu_dbmw2()},
      {"sigma_mw2", units::anl_w2_to_mw2(result.dist.sigma_w2)},
      {"n_samples", result.dist.n_samples},
  };
  doc["gaussian_fit"] = {
      {"mean_mw2", units::anl_w2_to_mw2(result.gaussian_fit.mean)},
      {"std_mw2", units::anl_w2_to_mw2(result.gaussian_fit.std)},
  };
  json edges = json::array();
  for (double e : result.histogram.edges) edges.push_back(units::anl_w2_to_mw2(e));
  json counts = json::array();
  for (std::size_t c : result.histogram.counts) counts.push_back(c);
  doc["histogram"] = {{"edges_mw2", edges}, {"counts", counts}};
  return doc.dump(2) + "\n";
}

std::string samples_to_csv(const CampaignResult& result) {
  std::string out = "draw_index,seed,a_nl_mW2,total_dgd_ps\n";
  for (std::size_t i = 0; i < result.draws.size(); ++i) {
    const auto& d = result.draws[i];
    out += std::to_string(i);
    out += ',';
    out += std::to_string(d.seed);
    out += ',';
    out += fmt_double(units::anl_w2_to_mw2(d.a_nl_w2));
    out += ',';
    out += fmt_double(d.total_dgd_s * 1e12);
    out += '\n';
  }
  return out;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "axis,value,mu_dbmw2,sigma_mw2,n_draws,runtime_s\n";
  for (const auto& r : rows) {
    out += r.axis + ',' + r.value + ',' + fmt_double(r.mu_dbmw2) + ',' +
           fmt_double(r.sigma_mw2) + ',' + std::to_string(r.n_draws) + ',' +
           fmt_double(r.runtime_s) + '\n';
  }
  return out;
}

std::string constellation_to_csv(const RxResult& rx, const ChannelPlan& plan) {
  std::string out = "symbol_index,tx_symbol_x,tx_symbol_y,rx_re_x,rx_im_x,rx_re_y,rx_im_y\n";
  for (std::size_t i = 0; i < rx.symbols.x.size(); ++i) {
    out += std::to_string(i) + ',' + std::to_string(plan.symbols_x[i]) + ',' +
           std::to_string(plan.symbols_y[i]) + ',' +
           fmt_double(rx.symbols.x[i].real()) + ',' +
           fmt_double(rx.symbols.x[i].imag()) + ',' +
           fmt_double(rx.symbols.y[i].real()) + ',' +
           fmt_double(rx.symbols.y[i].imag()) + '\n';
  }
  return out;
}

std::string manifest_to_json(const std::string& config_path,
                             const std::string& config_text,
                             const std::vector<std::string>& outputs) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);

  json doc;
  doc["version"] = kVersion;
  doc["config_path"] = config_path;
  doc["config_fnv1a64"] = fnv1a64(config_text);
  doc["timestamp_utc"] = stamp;
  doc["outputs"] = outputs;
  return doc.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << content;
  if (!out) {
    throw std::runtime_error("failed writing output file: " + path);
  }
}

}  // namespace fibersim
