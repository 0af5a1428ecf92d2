#pragma once

#include <cstddef>

#include "fibersim/fiber.hpp"
#include "fibersim/grid.hpp"
#include "fibersim/polmodel.hpp"

namespace fibersim {

/// Which nonlinear operator drives the propagation. The linear operator
/// (loss, GVD, plate birefringence) is identical for both:
///   Cnlse:      dA_x/dz ~ i gamma (|A_x|^2 + 2/3 |A_y|^2) A_x
///   ManakovPmd: dA_x/dz ~ i gamma 8/9 (|A_x|^2 + |A_y|^2) A_x
enum class PropagationModel { Cnlse, ManakovPmd };

/// Constant-nonlinear-phase step sizing: every step satisfies
/// coeff * gamma * peak_power * dz <= max_nl_phase, with the peak taken over
/// the aggregate field at step entry; steps never straddle a plate boundary.
struct StepController {
  double max_nl_phase_rad = 5e-4;
};

struct PropagationStats {
  std::size_t n_steps = 0;
  double min_dz_m = 0.0;
  double max_dz_m = 0.0;
};

/// gamma = 2 pi n2 / (lambda A_eff).
double gamma_from_n2(double n2_m2_w, double a_eff_m2, double wavelength_m);

/// Frequency-domain exp(i beta2 omega^2 / 2 dz - alpha/2 dz) on both
/// polarizations.
void linear_step(DualPolField& field, double dz_m, const FiberSpec& fiber);

/// Per-sample Kerr phase rotation over the loss-integrated effective length.
/// Preserves each sample's modulus exactly.
void nonlinear_step(DualPolField& field, double dz_eff_m, double gamma_w_m,
                    PropagationModel model);

/// Noiseless flat-gain amplifier: scales both polarizations by sqrt(gain).
void amplify_flat(DualPolField& field, double gain_linear);

/// Symmetric split-step integration of one span with plates applied at the
/// boundaries of their segments. Deterministic for fixed inputs.
PropagationStats propagate_span(DualPolField& field, const FiberSpec& fiber,
                                const PlateSequence& plates,
                                PropagationModel model,
                                const StepController& controller = {});

}  // namespace fibersim
