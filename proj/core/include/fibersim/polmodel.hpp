#pragma once

#include <cstdint>
#include <vector>

#include "fibersim/grid.hpp"
#include "fibersim/jones.hpp"

namespace fibersim {

/// Calibration convention tying the per-plate DGD to the fiber PMD
/// coefficient: Mean makes the Maxwellian mean DGD equal D_pmd sqrt(L) in the
/// many-plate limit, Rms makes the rms DGD equal it.
enum class DgdCalibration { Mean, Rms };

/// One birefringent plate: a random mode-coupling rotation followed by a
/// differential group delay along the plate eigenaxes.
struct PlateSpec {
  JonesMatrix rotation;
  double dgd_s = 0.0;
  double length_m = 0.0;
};

/// One random draw of the fiber birefringence: N_p equal-length plates with
/// identical DGD magnitude and independent random rotations. Regenerable
/// from (seed, n_plates, pmd_coefficient, span_length, calibration).
struct PlateSequence {
  std::vector<PlateSpec> plates;
  std::uint64_t seed = 0;
  double pmd_coefficient_si = 0.0;  // s/sqrt(m)
  double span_length_m = 0.0;
  DgdCalibration calibration = DgdCalibration::Mean;
};

/// Per-plate DGD magnitude. Mean calibration:
///   dtau = D_pmd sqrt(L / N_p) sqrt(3 pi / 8),
/// chosen so the 3-D random walk of the DGD vector gives a Maxwellian |tau|
/// whose mean is D_pmd sqrt(L). Rms calibration drops the sqrt(3 pi / 8).
double plate_dgd(double pmd_coefficient_si, double span_length_m,
                 std::size_t n_plates,
                 DgdCalibration calibration = DgdCalibration::Mean);

PlateSequence draw_plate_sequence(double pmd_coefficient_si,
                                  double span_length_m, std::size_t n_plates,
                                  std::uint64_t seed,
                                  DgdCalibration calibration = DgdCalibration::Mean);

/// All-identity, zero-DGD plates (transparent interleaving), for oracles.
PlateSequence identity_plate_sequence(double span_length_m, std::size_t n_plates);

/// Jones operator of one plate at angular frequency omega:
///   diag(e^{+i omega dgd / 2}, e^{-i omega dgd / 2}) * rotation.
JonesMatrix plate_jones_at(const PlateSpec& plate, double omega);

/// Full-sequence concatenation at angular frequency omega (plate 1 first).
JonesMatrix sequence_jones_at(const PlateSequence& seq, double omega);

/// Applies one plate to a field: rotation per sample in the time domain,
/// then the DGD phase split in the frequency domain. Unitary.
void apply_plate(DualPolField& field, const PlateSpec& plate);

/// First-order PMD: magnitude of the DGD-vector of the concatenated sequence
/// at the center frequency (finite difference of the group-delay operator).
double total_dgd(const PlateSequence& seq);

/// Frequency-dependent 2x2 operator sampled on a grid (transform bin order).
struct JonesFrequencyResponse {
  SimulationGrid grid;
  std::vector<JonesMatrix> bins;

  void apply(DualPolSpectrum& spectrum) const;
};

/// Hermitian adjoint of the whole concatenation at every grid frequency; the
/// receiver's "reverse PMD" operator.
JonesFrequencyResponse inverse_jones(const PlateSequence& seq,
                                     const SimulationGrid& grid);

/// Applies inverse_jones without materializing it (streams the adjoint
/// plates over the spectrum).
void apply_inverse_sequence(DualPolField& field, const PlateSequence& seq);

/// JSON record of the draw parameters (seed, n_plates, pmd, span length,
/// calibration); sequences are regenerated from the record rather than
/// storing matrices.
std::string plate_sequence_record(const PlateSequence& seq);
PlateSequence plate_sequence_from_record(const std::string& record);

}  // namespace fibersim
