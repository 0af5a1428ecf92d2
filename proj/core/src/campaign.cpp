#include "fibersim/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "fibersim/rng.hpp"
#include "fibersim/units.hpp"

namespace fibersim {

namespace {

constexpr std::uint64_t kDataStreamTag = 0xDA7AULL;
constexpr std::uint64_t kDrawStreamTag = 0xD0A0ULL;
constexpr std::uint64_t kPlateTag = 1;
constexpr std::uint64_t kSopTag = 2;
constexpr std::uint64_t kRedrawDataTag = 3;

std::size_t resolve_workers(std::size_t requested, std::size_t n_draws) {
  std::size_t workers = requested;
  if (workers == 0) {
    workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }
  return std::min(workers, n_draws);
}

}  // namespace

std::vector<double> CampaignResult::samples_w2() const {
  std::vector<double> out(draws.size());
  for (std::size_t i = 0; i < draws.size(); ++i) out[i] = draws[i].a_nl_w2;
  return out;
}

std::uint64_t campaign_draw_seed(std::uint64_t base_seed, std::size_t draw_index) {
  return derive_seed(derive_seed(base_seed, kDrawStreamTag), draw_index);
}

WdmSynthesizer make_campaign_synthesizer(const CampaignConfig& cfg) {
  return WdmSynthesizer(cfg.tx, derive_seed(cfg.base_seed, kDataStreamTag));
}

FullDrawResult run_single_draw_full(const CampaignConfig& cfg,
                                    const WdmSynthesizer& synth,
                                    std::uint64_t draw_seed) {
  const PlateSequence plates =
      draw_plate_sequence(cfg.fiber.pmd_si, cfg.fiber.length_m, cfg.n_plates,
                          derive_seed(draw_seed, kPlateTag), cfg.calibration);

  WdmSignal signal = synth.assemble(derive_seed(draw_seed, kSopTag));
  DualPolField field = std::move(signal.field);

  const StepController controller{cfg.max_nl_phase_rad};
  propagate_span(field, cfg.fiber, plates, cfg.model, controller);
  amplify_flat(field, std::exp(cfg.fiber.attenuation_inv_m * cfg.fiber.length_m));

  compensate_dispersion(field, cfg.fiber);
  reverse_pmd(field, plates);

  const TSpacedSymbols symbols = demux_channel(field, signal, central_channel_index(cfg.tx));
  const ChannelPlan& plan = signal.plan.channels[central_channel_index(cfg.tx)];
  RxResult rx = estimate_a_nl(symbols, plan, cfg.tx.power_per_channel_w);

  return FullDrawResult{std::move(rx), total_dgd(plates), draw_seed};
}

DrawRecord run_single_draw(const CampaignConfig& cfg,
                           const WdmSynthesizer& synth,
                           std::uint64_t draw_seed) {
  const FullDrawResult full = run_single_draw_full(cfg, synth, draw_seed);
  return DrawRecord{full.seed, full.rx.a_nl_w2, full.total_dgd_s};
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
  if (cfg.n_draws < 2) {
    throw std::invalid_argument(
        "campaign: n_draws must be >= 2 (sample variance undefined)");
  }

  const WdmSynthesizer shared_synth = make_campaign_synthesizer(cfg);

  std::vector<DrawRecord> draws(cfg.n_draws);
  const std::size_t workers = resolve_workers(cfg.workers, cfg.n_draws);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::uint64_t failed_seed = 0;

  auto worker_loop = [&]() {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= cfg.n_draws) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      const std::uint64_t draw_seed = campaign_draw_seed(cfg.base_seed, k);
      try {
        if (cfg.redraw_data) {
          const WdmSynthesizer local(cfg.tx, derive_seed(draw_seed, kRedrawDataTag));
          draws[k] = run_single_draw(cfg, local, draw_seed);
        } else {
          draws[k] = run_single_draw(cfg, shared_synth, draw_seed);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
          failed_seed = draw_seed;
        }
        return;
      }
    }
  };

  if (workers <= 1) {
    worker_loop();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker_loop);
    for (auto& t : pool) t.join();
  }

  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      throw std::runtime_error("campaign draw with seed " +
                               std::to_string(failed_seed) + " failed: " + e.what());
    }
  }

  CampaignResult result;
  result.cfg = cfg;
  result.draws = std::move(draws);

  const std::vector<double> samples = result.samples_w2();
  result.dist.mu_w2 = stats::mean(samples);
  result.dist.sigma_w2 = stats::sample_std(samples);
  result.dist.n_samples = samples.size();
  result.gaussian_fit = GaussianFit{result.dist.mu_w2, result.dist.sigma_w2};
  result.histogram = stats::histogram_fd(samples);
  return result;
}

ModelDelta compare_models(const CampaignResult& cnlse,
                          const CampaignResult& manakov) {
  ModelDelta d;
  d.delta_mu_db = cnlse.dist.mu_dbmw2() - manakov.dist.mu_dbmw2();
  d.delta_sigma_w2 = cnlse.dist.sigma_w2 - manakov.dist.sigma_w2;
  return d;
}

EmpiricalDelta empirical_delta_laws(double n_plates) {
  if (n_plates < 0.0) {
    throw std::invalid_argument("empirical_delta_laws: n_plates must be >= 0");
  }
  return EmpiricalDelta{1e-5 * std::exp(-1e-2 * n_plates),
                        3.8e-6 * std::exp(-2e-2 * n_plates)};
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  if (name == "n_plates") return SweepAxis::NPlates;
  if (name == "pmd_coefficient") return SweepAxis::PmdCoefficient;
  if (name == "fiber") return SweepAxis::Fiber;
  if (name == "model") return SweepAxis::Model;
  throw std::invalid_argument(
      "unknown sweep axis '" + name +
      "' (expected n_plates, pmd_coefficient, fiber or model)");
}

namespace {

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::NPlates: return "n_plates";
    case SweepAxis::PmdCoefficient: return "pmd_coefficient";
    case SweepAxis::Fiber: return "fiber";
    case SweepAxis::Model: return "model";
  }
  return "?";
}

CampaignConfig apply_axis_value(const CampaignConfig& base, SweepAxis axis,
                                const std::string& value) {
  CampaignConfig cfg = base;
  switch (axis) {
    case SweepAxis::NPlates: {
      const long n = std::stol(value);
      if (n < 1) throw std::invalid_argument("sweep: n_plates must be >= 1");
      cfg.n_plates = static_cast<std::size_t>(n);
      break;
    }
    case SweepAxis::PmdCoefficient: {
      const double pmd = std::stod(value);
      if (pmd < 0.0) throw std::invalid_argument("sweep: pmd must be >= 0");
      cfg.fiber.pmd_si = units::pmd_ps_sqrt_km_to_si(pmd);
      break;
    }
    case SweepAxis::Fiber: {
      const double length = cfg.fiber.length_m;
      cfg.fiber = fiber_preset(value);
      cfg.fiber.length_m = length;
      break;
    }
    case SweepAxis::Model: {
      std::string lower(value);
      std::transform(lower.begin(), lower.end(), lower.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      if (lower == "cnlse") {
        cfg.model = PropagationModel::Cnlse;
      } else if (lower == "manakov" || lower == "manakovpmd") {
        cfg.model = PropagationModel::ManakovPmd;
      } else {
        throw std::invalid_argument("sweep: unknown model '" + value + "'");
      }
      break;
    }
  }
  return cfg;
}

}  // namespace

std::vector<SweepRow> sweep(SweepAxis axis, const std::vector<std::string>& values,
                            const CampaignConfig& base_cfg) {
  if (values.empty()) {
    throw std::invalid_argument("sweep: values must be nonempty");
  }
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (const auto& value : values) {
    const CampaignConfig cfg = apply_axis_value(base_cfg, axis, value);
    const auto t0 = std::chrono::steady_clock::now();
    const CampaignResult result = run_campaign(cfg);
    const auto t1 = std::chrono::steady_clock::now();
    SweepRow row;
    row.axis = axis_name(axis);
    row.value = value;
    row.mu_dbmw2 = result.dist.mu_dbmw2();
    row.sigma_mw2 = units::anl_w2_to_mw2(result.dist.sigma_w2);
    row.n_draws = result.draws.size();
    row.runtime_s = std::chrono::duration<double>(t1 - t0).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fibersim
