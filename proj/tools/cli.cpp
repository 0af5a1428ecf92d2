#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "fibersim/campaign.hpp"
#include "fibersim/config.hpp"
#include "fibersim/gnmodel.hpp"
#include "fibersim/results_io.hpp"
#include "fibersim/rng.hpp"
#include "fibersim/units.hpp"
#include "fibersim/version.hpp"

namespace fibersim::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::string> model;
  std::optional<long> n_plates;
  std::optional<std::uint64_t> seed;
  std::optional<double> gamma_w_km;
  std::optional<long> draws;
  std::optional<long> workers;
};

std::size_t env_default_workers() {
  if (const char* env = std::getenv("FIBERSIM_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 0;  // campaign resolves 0 to hardware concurrency
}

AppConfig resolve_config(const CommonOptions& opt, std::string& config_text) {
  AppConfig cfg;
  if (!opt.config_path.empty()) {
    cfg = load_config(opt.config_path);
  } else {
    cfg = default_config();
  }
  if (opt.model) {
    if (*opt.model == "cnlse") {
      cfg.campaign.model = PropagationModel::Cnlse;
    } else if (*opt.model == "manakov") {
      cfg.campaign.model = PropagationModel::ManakovPmd;
    } else {
      throw std::invalid_argument("config error: model: expected 'cnlse' or 'manakov'");
    }
  }
  if (opt.n_plates) {
    if (*opt.n_plates < 1) throw std::invalid_argument("config error: n-plates: must be >= 1");
    cfg.campaign.n_plates = static_cast<std::size_t>(*opt.n_plates);
  }
  if (opt.seed) {
    cfg.campaign.base_seed = *opt.seed;
    cfg.campaign.tx.seed = *opt.seed;
  }
  if (opt.gamma_w_km) {
    if (*opt.gamma_w_km < 0.0) throw std::invalid_argument("config error: gamma: must be >= 0");
    cfg.campaign.fiber.gamma_w_m = units::gamma_w_km_to_si(*opt.gamma_w_km);
  }
  if (opt.draws) {
    if (*opt.draws < 2) {
      throw std::invalid_argument("config error: draws: must be >= 2 (variance undefined)");
    }
    cfg.campaign.n_draws = static_cast<std::size_t>(*opt.draws);
  }
  if (opt.workers) {
    if (*opt.workers < 0) throw std::invalid_argument("config error: workers: must be >= 0");
    cfg.campaign.workers = static_cast<std::size_t>(*opt.workers);
  }
  if (cfg.campaign.workers == 0) {
    cfg.campaign.workers = env_default_workers();
  }
  config_text = config_to_json(cfg);
  return cfg;
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
  }
}

void print_value(double v) { std::printf("%.10g\n", v); }

int cmd_simulate(const CommonOptions& opt, bool constellation_csv) {
  std::string config_text;
  const AppConfig app = resolve_config(opt, config_text);
  const CampaignConfig& cfg = app.campaign;

  const WdmSynthesizer synth = make_campaign_synthesizer(cfg);
  const std::uint64_t draw_seed = campaign_draw_seed(cfg.base_seed, 0);
  const FullDrawResult result = run_single_draw_full(cfg, synth, draw_seed);

  ensure_out_dir(opt.out_dir);
  RxProvenance prov;
  prov.seed = draw_seed;
  prov.n_plates = cfg.n_plates;
  prov.fiber_name = cfg.fiber.name;
  prov.model = cfg.model == PropagationModel::Cnlse ? "cnlse" : "manakov";
  prov.max_nl_phase_rad = cfg.max_nl_phase_rad;
  prov.total_dgd_s = result.total_dgd_s;
  prov.dgd_calibration = cfg.calibration == DgdCalibration::Mean ? "mean" : "rms";

  std::vector<std::string> outputs = {"rxresult.json"};
  write_text_file((fs::path(opt.out_dir) / "rxresult.json").string(),
                  rx_result_to_json(result.rx, prov));
  if (constellation_csv) {
    const auto& plan =
        synth.plan().channels[central_channel_index(cfg.tx)];
    write_text_file((fs::path(opt.out_dir) / "constellation.csv").string(),
                    constellation_to_csv(result.rx, plan));
    outputs.push_back("constellation.csv");
  }
  outputs.push_back("manifest.json");
  write_text_file((fs::path(opt.out_dir) / "manifest.json").string(),
                  manifest_to_json(opt.config_path, config_text, outputs));

  std::printf("a_nl = %.6g mW^-2", result.rx.a_nl_mw2());
  if (result.rx.a_nl_w2 > 0.0) {
    std::printf(" (%.2f dBmW^-2)", units::anl_w2_to_dbmw2(result.rx.a_nl_w2));
  }
  std::printf("\n");
  return kExitOk;
}

int cmd_campaign(const CommonOptions& opt) {
  std::string config_text;
  const AppConfig app = resolve_config(opt, config_text);

  const CampaignResult result = run_campaign(app.campaign);

  ensure_out_dir(opt.out_dir);
  write_text_file((fs::path(opt.out_dir) / "campaign.json").string(),
                  campaign_to_json(result));
  write_text_file((fs::path(opt.out_dir) / "samples.csv").string(),
                  samples_to_csv(result));
  write_text_file(
      (fs::path(opt.out_dir) / "manifest.json").string(),
      manifest_to_json(opt.config_path, config_text,
                       {"campaign.json", "samples.csv", "manifest.json"}));

  std::printf("mu = %.3f dBmW^-2, sigma = %.4g mW^-2, draws = %zu\n",
              result.dist.mu_dbmw2(), units::anl_w2_to_mw2(result.dist.sigma_w2),
              result.draws.size());
  return kExitOk;
}

int cmd_sweep(const CommonOptions& opt, const std::string& axis,
              const std::string& values_csv) {
  std::string config_text;
  const AppConfig app = resolve_config(opt, config_text);

  std::vector<std::string> values;
  std::string token;
  for (char c : values_csv) {
    if (c == ',') {
      if (!token.empty()) values.push_back(token);
      token.clear();
    } else {
      token += c;
    }
  }
  if (!token.empty()) values.push_back(token);
  if (values.empty()) {
    throw std::invalid_argument("config error: values: must be a nonempty comma-separated list");
  }

  const auto rows = sweep(sweep_axis_from_string(axis), values, app.campaign);

  ensure_out_dir(opt.out_dir);
  write_text_file((fs::path(opt.out_dir) / "sweep.csv").string(), sweep_to_csv(rows));
  write_text_file((fs::path(opt.out_dir) / "manifest.json").string(),
                  manifest_to_json(opt.config_path, config_text,
                                   {"sweep.csv", "manifest.json"}));

  for (const auto& r : rows) {
    std::printf("%s=%s: mu = %.3f dBmW^-2, sigma = %.4g mW^-2 (%.1f s)\n",
                r.axis.c_str(), r.value.c_str(), r.mu_dbmw2, r.sigma_mw2,
                r.runtime_s);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"fiber transmission simulator: nonlinear-interference "
               "statistics under joint PMD and Kerr effects"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOptions opt;

  auto add_common = [&](CLI::App* sub, bool with_campaign_flags) {
    sub->add_option("--config", opt.config_path, "JSON configuration file");
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option_function<std::string>(
        "--model", [&](const std::string& v) { opt.model = v; },
        "propagation model: cnlse | manakov");
    sub->add_option_function<long>(
        "--n-plates", [&](long v) { opt.n_plates = v; },
        "number of birefringent plates");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { opt.seed = v; }, "base seed");
    sub->add_option_function<double>(
        "--gamma", [&](double v) { opt.gamma_w_km = v; },
        "override fiber gamma (1 / W / km)");
    if (with_campaign_flags) {
      sub->add_option_function<long>(
          "--draws", [&](long v) { opt.draws = v; }, "number of draws");
      sub->add_option_function<long>(
          "--workers", [&](long v) { opt.workers = v; }, "worker thread count");
    }
  };

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a single transmission and estimate a_nl");
  bool constellation_csv = false;
  add_common(sim, false);
  sim->add_flag("--constellation-csv", constellation_csv,
                "also write the received constellation as CSV");

  // campaign
  auto* camp = app.add_subcommand("campaign", "run a Monte Carlo campaign");
  add_common(camp, true);

  // sweep
  auto* swp = app.add_subcommand("sweep", "run one campaign per axis value");
  std::string axis;
  std::string values_csv;
  add_common(swp, true);
  swp->add_option("--axis", axis, "n_plates | pmd_coefficient | fiber | model")
      ->required();
  swp->add_option("--values", values_csv, "comma-separated axis values")->required();

  // gn: analytical formulas
  auto* gn_cmd = app.add_subcommand("gn", "GN-model conversions and link formulas");
  gn_cmd->require_subcommand(1);

  double ber = 0.0, snr_db = 0.0, mu_db = 0.0, sigma_mw2 = 0.0;
  double p_dbm = 0.0, p_ase_dbm = -40.0, p_trx_dbm = 0.0;
  bool has_p_trx = false;
  double nf_db = 5.0, gain_db = 20.0, bandwidth_ghz = 32.0, frequency_thz = 193.41;
  double alpha_nl_mw2 = 3.95e-4, epsilon = 0.22, a_nl_mw2 = 3.95e-4;
  double mu_cnlse_db = 0.0, mu_manakov_db = 0.0;
  long n_spans = 1;

  auto* qfb = gn_cmd->add_subcommand("q-from-ber", "Q factor from BER");
  qfb->add_option("--ber", ber)->required();

  auto* bfs = gn_cmd->add_subcommand("ber-from-snr", "QPSK BER from SNR (dB)");
  bfs->add_option("--snr-db", snr_db)->required();

  auto* dq2 = gn_cmd->add_subcommand("delta-q2",
                                     "optimal-Q^2 variability band from mu/sigma");
  dq2->add_option("--mu-db", mu_db, "mean a_nl in dBmW^-2")->required();
  dq2->add_option("--sigma", sigma_mw2, "std of a_nl in mW^-2")->required();

  auto* snl = gn_cmd->add_subcommand("snr-nli", "SNR with cubic NLI noise");
  snl->add_option("--p-dbm", p_dbm)->required();
  snl->add_option("--p-ase-dbm", p_ase_dbm);
  snl->add_option("--a-nl-mw2", a_nl_mw2);
  snl->add_option("--p-trx-dbm", p_trx_dbm)->each([&](const std::string&) {
    has_p_trx = true;
  });

  auto* sspan = gn_cmd->add_subcommand("snr-spans", "identical-spans SNR");
  sspan->add_option("--n", n_spans);
  sspan->add_option("--p-dbm", p_dbm)->required();
  sspan->add_option("--nf-db", nf_db);
  sspan->add_option("--gain-db", gain_db);
  sspan->add_option("--bandwidth-ghz", bandwidth_ghz);
  sspan->add_option("--frequency-thz", frequency_thz);
  sspan->add_option("--alpha-nl-mw2", alpha_nl_mw2);
  sspan->add_option("--epsilon", epsilon);

  auto* sopt = gn_cmd->add_subcommand("snr-opt", "SNR at the optimal launch power (dB)");
  sopt->add_option("--n", n_spans);
  sopt->add_option("--nf-db", nf_db);
  sopt->add_option("--gain-db", gain_db);
  sopt->add_option("--bandwidth-ghz", bandwidth_ghz);
  sopt->add_option("--frequency-thz", frequency_thz);
  sopt->add_option("--alpha-nl-mw2", alpha_nl_mw2)->required();
  sopt->add_option("--epsilon", epsilon);

  auto* qdiff = gn_cmd->add_subcommand("q2-diff", "Q^2_opt offset between methods");
  qdiff->add_option("--mu-cnlse-db", mu_cnlse_db)->required();
  qdiff->add_option("--mu-manakov-db", mu_manakov_db)->required();

  auto* acc = gn_cmd->add_subcommand(
      "accumulate", "heterogeneous multi-span SNR from the config's gn section");
  std::string acc_config;
  acc->add_option("--config", acc_config, "JSON configuration with a gn section")
      ->required();

  std::vector<std::string> cli_args(args.rbegin(), args.rend());
  try {
    app.parse(cli_args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);
    }
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sim->parsed()) return cmd_simulate(opt, constellation_csv);
    if (camp->parsed()) return cmd_campaign(opt);
    if (swp->parsed()) return cmd_sweep(opt, axis, values_csv);

    if (qfb->parsed()) {
      print_value(gn::q_from_ber(ber));
    } else if (bfs->parsed()) {
      print_value(gn::ber_from_snr_qpsk(units::db_to_linear(snr_db)));
    } else if (dq2->parsed()) {
      gn::AnlDistribution dist;
      dist.mu_w2 = units::anl_mw2_to_w2(std::pow(10.0, mu_db / 10.0));
      dist.sigma_w2 = units::anl_mw2_to_w2(sigma_mw2);
      print_value(gn::delta_q2_opt(dist));
    } else if (snl->parsed()) {
      print_value(units::linear_to_db(gn::snr_with_nli(
          units::dbm_to_watt(p_dbm), units::dbm_to_watt(p_ase_dbm),
          units::anl_mw2_to_w2(a_nl_mw2),
          has_p_trx ? units::dbm_to_watt(p_trx_dbm) : 0.0)));
    } else if (sspan->parsed()) {
      print_value(units::linear_to_db(gn::snr_identical_spans(
          static_cast<std::size_t>(n_spans), units::dbm_to_watt(p_dbm),
          units::db_to_linear(nf_db), units::db_to_linear(gain_db),
          bandwidth_ghz * 1e9, frequency_thz * 1e12,
          units::anl_mw2_to_w2(alpha_nl_mw2), epsilon)));
    } else if (sopt->parsed()) {
      print_value(units::linear_to_db(gn::snr_opt(
          static_cast<std::size_t>(n_spans), units::db_to_linear(nf_db),
          units::db_to_linear(gain_db), bandwidth_ghz * 1e9,
          frequency_thz * 1e12, units::anl_mw2_to_w2(alpha_nl_mw2), epsilon)));
    } else if (qdiff->parsed()) {
      gn::AnlDistribution c, m;
      c.mu_w2 = units::anl_mw2_to_w2(std::pow(10.0, mu_cnlse_db / 10.0));
      m.mu_w2 = units::anl_mw2_to_w2(std::pow(10.0, mu_manakov_db / 10.0));
      print_value(gn::q2_opt_difference(c, m));
    } else if (acc->parsed()) {
      const AppConfig app = load_config(acc_config);
      if (!app.gn_link || app.gn_link->spans.empty()) {
        throw std::invalid_argument(
            "config error: gn.spans: required for gn accumulate");
      }
      print_value(units::linear_to_db(gn::inverse_snr_accumulate(*app.gn_link)));
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace fibersim::cli
