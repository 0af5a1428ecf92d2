#include "fibersim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fibersim/units.hpp"

namespace fibersim {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& message) {
  throw std::invalid_argument("config error: " + key + ": " + message);
}

void check_keys(const json& obj, const std::string& section,
                const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      fail(section + "." + item.key(), "unknown key");
    }
  }
}

double require_number(const json& obj, const std::string& section,
                      const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(section + "." + key, "expected a number");
  return v.get<double>();
}

std::int64_t require_integer(const json& obj, const std::string& section,
                             const std::string& key, std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) fail(section + "." + key, "expected an integer");
  return v.get<std::int64_t>();
}

std::string require_string(const json& obj, const std::string& section,
                           const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) fail(section + "." + key, "expected a string");
  return v.get<std::string>();
}

bool require_bool(const json& obj, const std::string& section,
                  const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_boolean()) fail(section + "." + key, "expected a boolean");
  return v.get<bool>();
}

void parse_tx(const json& obj, TxConfig& tx) {
  check_keys(obj, "tx",
             {"n_channels", "channel_spacing_ghz", "symbol_rate_gbaud",
              "rolloff", "oversampling", "n_symbols", "power_per_channel_dbm",
              "seed"});
  const auto n_channels = require_integer(obj, "tx", "n_channels",
                                          static_cast<std::int64_t>(tx.n_channels));
  if (n_channels < 1) fail("tx.n_channels", "must be >= 1");
  tx.n_channels = static_cast<std::size_t>(n_channels);
  tx.channel_spacing_hz =
      require_number(obj, "tx", "channel_spacing_ghz", tx.channel_spacing_hz / 1e9) * 1e9;
  tx.symbol_rate_hz =
      require_number(obj, "tx", "symbol_rate_gbaud", tx.symbol_rate_hz / 1e9) * 1e9;
  tx.rolloff = require_number(obj, "tx", "rolloff", tx.rolloff);
  if (tx.rolloff <= 0.0 || tx.rolloff > 1.0) fail("tx.rolloff", "must be in (0, 1]");
  const auto oversampling = require_integer(obj, "tx", "oversampling",
                                            static_cast<std::int64_t>(tx.oversampling));
  if (oversampling < 2) fail("tx.oversampling", "must be >= 2");
  tx.oversampling = static_cast<std::size_t>(oversampling);
  const auto n_symbols = require_integer(obj, "tx", "n_symbols",
                                         static_cast<std::int64_t>(tx.n_symbols));
  if (n_symbols < 4) fail("tx.n_symbols", "must be a power of 4, >= 4");
  tx.n_symbols = static_cast<std::size_t>(n_symbols);
  tx.power_per_channel_w = units::dbm_to_watt(require_number(
      obj, "tx", "power_per_channel_dbm", units::watt_to_dbm(tx.power_per_channel_w)));
  tx.seed = static_cast<std::uint64_t>(
      require_integer(obj, "tx", "seed", static_cast<std::int64_t>(tx.seed)));
}

void parse_fiber(const json& obj, FiberSpec& fiber) {
  check_keys(obj, "fiber",
             {"name", "length_km", "attenuation_db_km", "dispersion_ps_nm_km",
              "gamma_w_km", "n2_m2_w", "a_eff_um2", "pmd_ps_sqrt_km",
              "wavelength_nm"});
  const std::string name = require_string(obj, "fiber", "name", fiber.name);
  if (name != fiber.name && name != "custom") {
    fiber = fiber_preset(name);
  } else {
    fiber.name = name;
  }
  fiber.length_m = require_number(obj, "fiber", "length_km", fiber.length_m / 1e3) * 1e3;
  if (fiber.length_m <= 0.0) fail("fiber.length_km", "must be positive");
  fiber.attenuation_inv_m = units::attenuation_db_km_to_inv_m(require_number(
      obj, "fiber", "attenuation_db_km",
      fiber.attenuation_inv_m / units::attenuation_db_km_to_inv_m(1.0)));
  if (fiber.attenuation_inv_m < 0.0) fail("fiber.attenuation_db_km", "must be >= 0");
  fiber.dispersion_si = units::dispersion_ps_nm_km_to_si(require_number(
      obj, "fiber", "dispersion_ps_nm_km", fiber.dispersion_si / 1e-6));
  fiber.wavelength_m =
      require_number(obj, "fiber", "wavelength_nm", fiber.wavelength_m / 1e-9) * 1e-9;
  if (fiber.wavelength_m <= 0.0) fail("fiber.wavelength_nm", "must be positive");

  if (obj.contains("n2_m2_w") || obj.contains("a_eff_um2")) {
    if (obj.contains("gamma_w_km")) {
      fail("fiber.gamma_w_km", "give either gamma_w_km or n2_m2_w + a_eff_um2");
    }
    const double n2 = require_number(obj, "fiber", "n2_m2_w", -1.0);
    const double a_eff = require_number(obj, "fiber", "a_eff_um2", -1.0);
    if (n2 < 0.0) fail("fiber.n2_m2_w", "required together with a_eff_um2");
    if (a_eff <= 0.0) fail("fiber.a_eff_um2", "required together with n2_m2_w");
    fiber.gamma_w_m = 2.0 * M_PI * n2 / (fiber.wavelength_m * a_eff * 1e-12);
  } else {
    fiber.gamma_w_m = units::gamma_w_km_to_si(
        require_number(obj, "fiber", "gamma_w_km", fiber.gamma_w_m * 1e3));
  }
  if (fiber.gamma_w_m < 0.0) fail("fiber.gamma_w_km", "must be >= 0");
  fiber.pmd_si = units::pmd_ps_sqrt_km_to_si(require_number(
      obj, "fiber", "pmd_ps_sqrt_km",
      fiber.pmd_si / units::pmd_ps_sqrt_km_to_si(1.0)));
  if (fiber.pmd_si < 0.0) fail("fiber.pmd_ps_sqrt_km", "must be >= 0");
}

void parse_propagation(const json& obj, CampaignConfig& cfg) {
  check_keys(obj, "propagation",
             {"model", "n_plates", "max_nl_phase_rad", "dgd_calibration"});
  const std::string model = require_string(
      obj, "propagation", "model",
      cfg.model == PropagationModel::Cnlse ? "cnlse" : "manakov");
  if (model == "cnlse") {
    cfg.model = PropagationModel::Cnlse;
  } else if (model == "manakov" || model == "manakov_pmd") {
    cfg.model = PropagationModel::ManakovPmd;
  } else {
    fail("propagation.model", "expected 'cnlse' or 'manakov'");
  }
  const auto n_plates = require_integer(obj, "propagation", "n_plates",
                                        static_cast<std::int64_t>(cfg.n_plates));
  if (n_plates < 1) fail("propagation.n_plates", "must be >= 1");
  cfg.n_plates = static_cast<std::size_t>(n_plates);
  cfg.max_nl_phase_rad =
      require_number(obj, "propagation", "max_nl_phase_rad", cfg.max_nl_phase_rad);
  if (cfg.max_nl_phase_rad <= 0.0) fail("propagation.max_nl_phase_rad", "must be positive");
  const std::string calib = require_string(
      obj, "propagation", "dgd_calibration",
      cfg.calibration == DgdCalibration::Mean ? "mean" : "rms");
  if (calib == "mean") {
    cfg.calibration = DgdCalibration::Mean;
  } else if (calib == "rms") {
    cfg.calibration = DgdCalibration::Rms;
  } else {
    fail("propagation.dgd_calibration", "expected 'mean' or 'rms'");
  }
}

void parse_campaign(const json& obj, CampaignConfig& cfg) {
  check_keys(obj, "campaign", {"n_draws", "base_seed", "workers", "redraw_data"});
  const auto n_draws = require_integer(obj, "campaign", "n_draws",
                                       static_cast<std::int64_t>(cfg.n_draws));
  if (n_draws < 2) fail("campaign.n_draws", "must be >= 2");
  cfg.n_draws = static_cast<std::size_t>(n_draws);
  cfg.base_seed = static_cast<std::uint64_t>(require_integer(
      obj, "campaign", "base_seed", static_cast<std::int64_t>(cfg.base_seed)));
  const auto workers = require_integer(obj, "campaign", "workers",
                                       static_cast<std::int64_t>(cfg.workers));
  if (workers < 0) fail("campaign.workers", "must be >= 0");
  cfg.workers = static_cast<std::size_t>(workers);
  cfg.redraw_data = require_bool(obj, "campaign", "redraw_data", cfg.redraw_data);
}

void parse_gn(const json& obj, std::optional<gn::GnLink>& link_out) {
  check_keys(obj, "gn",
             {"bandwidth_ghz", "light_frequency_thz", "snr_trx_db", "epsilon",
              "alpha_nl_mw2", "spans"});
  gn::GnLink link;
  link.bandwidth_hz = require_number(obj, "gn", "bandwidth_ghz",
                                     link.bandwidth_hz / 1e9) * 1e9;
  link.light_frequency_hz = require_number(obj, "gn", "light_frequency_thz",
                                           link.light_frequency_hz / 1e12) * 1e12;
  if (obj.contains("snr_trx_db") && !obj.at("snr_trx_db").is_null()) {
    link.snr_trx_linear = units::db_to_linear(
        require_number(obj, "gn", "snr_trx_db", 0.0));
  }
  link.epsilon = require_number(obj, "gn", "epsilon", link.epsilon);
  link.alpha_nl_w2 = units::anl_mw2_to_w2(require_number(
      obj, "gn", "alpha_nl_mw2", units::anl_w2_to_mw2(link.alpha_nl_w2)));
  if (obj.contains("spans")) {
    const auto& spans = obj.at("spans");
    if (!spans.is_array()) fail("gn.spans", "expected an array");
    for (const auto& s : spans) {
      check_keys(s, "gn.spans[]",
                 {"power_dbm", "noise_figure_db", "gain_db", "a_nl_mw2"});
      gn::GnSpan span;
      span.power_w = units::dbm_to_watt(require_number(s, "gn.spans[]", "power_dbm", 0.0));
      span.noise_figure_linear =
          units::db_to_linear(require_number(s, "gn.spans[]", "noise_figure_db", 5.0));
      span.gain_linear =
          units::db_to_linear(require_number(s, "gn.spans[]", "gain_db", 20.0));
      span.a_nl_w2 = units::anl_mw2_to_w2(
          require_number(s, "gn.spans[]", "a_nl_mw2", 3.95e-4));
      link.spans.push_back(span);
    }
  }
  link_out = link;
}

}  // namespace

AppConfig default_config() {
  AppConfig cfg;
  cfg.campaign.tx = TxConfig{};
  cfg.campaign.fiber = smf_fiber();
  return cfg;
}

AppConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config error: ") + e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("config error: top level must be an object");
  }
  check_keys(doc, "config", {"tx", "fiber", "propagation", "campaign", "gn"});

  AppConfig cfg = default_config();
  if (doc.contains("tx")) parse_tx(doc.at("tx"), cfg.campaign.tx);
  if (doc.contains("fiber")) parse_fiber(doc.at("fiber"), cfg.campaign.fiber);
  if (doc.contains("propagation")) parse_propagation(doc.at("propagation"), cfg.campaign);
  if (doc.contains("campaign")) parse_campaign(doc.at("campaign"), cfg.campaign);
  if (doc.contains("gn")) parse_gn(doc.at("gn"), cfg.gn_link);
  return cfg;
}

AppConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config error: cannot open " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string config_to_json(const AppConfig& cfg) {
  const CampaignConfig& c = cfg.campaign;
  json doc;
  doc["tx"] = {
      {"n_channels", c.tx.n_channels},
      {"channel_spacing_ghz", c.tx.channel_spacing_hz / 1e9},
      {"symbol_rate_gbaud", c.tx.symbol_rate_hz / 1e9},
      {"rolloff", c.tx.rolloff},
      {"oversampling", c.tx.oversampling},
      {"n_symbols", c.tx.n_symbols},
      {"power_per_channel_dbm", units::watt_to_dbm(c.tx.power_per_channel_w)},
      {"seed", c.tx.seed},
  };
  doc["fiber"] = {
      {"name", c.fiber.name},
      {"length_km", c.fiber.length_m / 1e3},
      {"attenuation_db_km",
       c.fiber.attenuation_inv_m / units::attenuation_db_km_to_inv_m(1.0)},
      {"dispersion_ps_nm_km", c.fiber.dispersion_si / 1e-6},
      {"gamma_w_km", c.fiber.gamma_w_m * 1e3},
      {"pmd_ps_sqrt_km", c.fiber.pmd_si / units::pmd_ps_sqrt_km_to_si(1.0)},
      {"wavelength_nm", c.fiber.wavelength_m / 1e-9},
  };
  doc["propagation"] = {
      {"model", c.model == PropagationModel::Cnlse ? "cnlse" : "manakov"},
      {"n_plates", c.n_plates},
      {"max_nl_phase_rad", c.max_nl_phase_rad},
      {"dgd_calibration", c.calibration == DgdCalibration::Mean ? "mean" : "rms"},
  };
  doc["campaign"] = {
      {"n_draws", c.n_draws},
      {"base_seed", c.base_seed},
      {"workers", c.workers},
      {"redraw_data", c.redraw_data},
  };
  if (cfg.gn_link) {
    const auto& link = *cfg.gn_link;
    json spans = json::array();
    for (const auto& s : link.spans) {
      spans.push_back({{"power_dbm", units::watt_to_dbm(s.power_w)},
                       {"noise_figure_db", units::linear_to_db(s.noise_figure_linear)},
                       {"gain_db", units::linear_to_db(s.gain_linear)},
                       {"a_nl_mw2", units::anl_w2_to_mw2(s.a_nl_w2)}});
    }
    doc["gn"] = {
        {"bandwidth_ghz", link.bandwidth_hz / 1e9},
        {"light_frequency_thz", link.light_frequency_hz / 1e12},
        {"epsilon", link.epsilon},
        {"alpha_nl_mw2", units::anl_w2_to_mw2(link.alpha_nl_w2)},
        {"spans", spans},
    };
    if (link.snr_trx_linear) {
      doc["gn"]["snr_trx_db"] = units::linear_to_db(*link.snr_trx_linear);
    } else {
      doc["gn"]["snr_trx_db"] = nullptr;
    }
  }
  return doc.dump(2);
}

}  // namespace fibersim
