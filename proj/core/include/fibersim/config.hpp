#pragma once

#include <optional>
#include <string>

#include "fibersim/campaign.hpp"
#include "fibersim/gnmodel.hpp"

namespace fibersim {

/// Everything a run needs, with physical quantities already converted to SI.
/// The JSON schema uses unit-suffixed keys (power_per_channel_dbm,
/// dispersion_ps_nm_km, ...) so conversions happen exactly once, here.
struct AppConfig {
  CampaignConfig campaign;
  std::optional<gn::GnLink> gn_link;
};

AppConfig default_config();

/// Parses a config document; unknown keys and invalid values raise
/// std::invalid_argument with the offending key named.
AppConfig parse_config(const std::string& json_text);
AppConfig load_config(const std::string& path);

/// Echo of the effective configuration (for result metadata), as JSON text.
std::string config_to_json(const AppConfig& cfg);

}  // namespace fibersim
