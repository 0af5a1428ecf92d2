#include "fibersim/polmodel.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "fibersim/fft.hpp"
#include "fibersim/rng.hpp"

namespace fibersim {

double plate_dgd(double pmd_coefficient_si, double span_length_m,
                 std::size_t n_plates, DgdCalibration calibration) {
  if (pmd_coefficient_si < 0.0 || span_length_m <= 0.0 || n_plates < 1) {
    throw std::invalid_argument("plate_dgd: invalid arguments");
  }
  const double base =
      pmd_coefficient_si * std::sqrt(span_length_m / static_cast<double>(n_plates));
  if (calibration == DgdCalibration::Rms) return base;
  return base * std::sqrt(3.0 * M_PI / 8.0);
}

PlateSequence draw_plate_sequence(double pmd_coefficient_si,
                                  double span_length_m, std::size_t n_plates,
                                  std::uint64_t seed,
                                  DgdCalibration calibration) {
  const double dgd = plate_dgd(pmd_coefficient_si, span_length_m, n_plates, calibration);
  const double length = span_length_m / static_cast<double>(n_plates);

  PlateSequence seq;
  seq.seed = seed;
  seq.pmd_coefficient_si = pmd_coefficient_si;
  seq.span_length_m = span_length_m;
  seq.calibration = calibration;
  seq.plates.resize(n_plates);

  Rng rng(seed);
  for (auto& plate : seq.plates) {
    plate.rotation = haar_unitary(rng);
    plate.dgd_s = dgd;
    plate.length_m = length;
  }
  return seq;
}

PlateSequence identity_plate_sequence(double span_length_m, std::size_t n_plates) {
  if (n_plates < 1 || span_length_m <= 0.0) {
    throw std::invalid_argument("identity_plate_sequence: invalid arguments");
  }
  PlateSequence seq;
  seq.span_length_m = span_length_m;
  seq.plates.assign(n_plates, PlateSpec{JonesMatrix::identity(), 0.0,
                                        span_length_m / static_cast<double>(n_plates)});
  return seq;
}

JonesMatrix plate_jones_at(const PlateSpec& plate, double omega) {
  const cplx ph = std::polar(1.0, omega * plate.dgd_s / 2.0);
  const JonesMatrix& r = plate.rotation;
  return JonesMatrix{ph * r.a, ph * r.b, std::conj(ph) * r.c, std::conj(ph) * r.d};
}

JonesMatrix sequence_jones_at(const PlateSequence& seq, double omega) {
  JonesMatrix u = JonesMatrix::identity();
  for (const auto& plate : seq.plates) {
    u = plate_jones_at(plate, omega) * u;
  }
  return u;
}

void apply_plate(DualPolField& field, const PlateSpec& plate) {
  for (std::size_t i = 0; i < field.x.size(); ++i) {
    plate.rotation.apply(field.x[i], field.y[i]);
  }
  if (plate.dgd_s == 0.0) return;

  fft::forward_inplace(field.x);
  fft::forward_inplace(field.y);
  const std::size_t n = field.grid.n_samples;
  for (std::size_t k = 0; k < n; ++k) {
    const double omega = 2.0 * M_PI * field.grid.bin_frequency_hz(k);
    const cplx ph = std::polar(1.0, omega * plate.dgd_s / 2.0);
    field.x[k] *= ph;
    field.y[k] *= std::conj(ph);
  }
  fft::inverse_inplace(field.x);
  fft::inverse_inplace(field.y);
}

double total_dgd(const PlateSequence& seq) {
  double dgd_scale = 0.0;
  for (const auto& plate : seq.plates) dgd_scale += plate.dgd_s;
  if (dgd_scale == 0.0) return 0.0;

  // Finite-difference of the group-delay operator -i dU/domega U^dagger;
  // step small against 1/tau so the relative error is ~(domega tau)^2 / 6.
  const double domega = 1e-3 / dgd_scale;
  const JonesMatrix up = sequence_jones_at(seq, domega);
  const JonesMatrix um = sequence_jones_at(seq, -domega);
  const JonesMatrix u0 = sequence_jones_at(seq, 0.0);

  const cplx inv_2d{0.0, -1.0 / (2.0 * domega)};
  JonesMatrix du{(up.a - um.a) * inv_2d, (up.b - um.b) * inv_2d,
                 (up.c - um.c) * inv_2d, (up.d - um.d) * inv_2d};
  const JonesMatrix t = du * u0.dagger();

  // Hermitize against roundoff, then take the eigenvalue splitting.
  const double t00 = t.a.real();
  const double t11 = t.d.real();
  const cplx t01 = 0.5 * (t.b + std::conj(t.c));
  return std::sqrt((t00 - t11) * (t00 - t11) + 4.0 * std::norm(t01));
}

void JonesFrequencyResponse::apply(DualPolSpectrum& spectrum) const {
  if (spectrum.grid.n_samples != bins.size()) {
    throw std::invalid_argument("frequency response grid mismatch");
  }
  for (std::size_t k = 0; k < bins.size(); ++k) {
    bins[k].apply(spectrum.x[k], spectrum.y[k]);
  }
}

JonesFrequencyResponse inverse_jones(const PlateSequence& seq,
                                     const SimulationGrid& grid) {
  JonesFrequencyResponse resp{grid, std::vector<JonesMatrix>(grid.n_samples)};
  for (std::size_t k = 0; k < grid.n_samples; ++k) {
    const double omega = 2.0 * M_PI * grid.bin_frequency_hz(k);
    resp.bins[k] = sequence_jones_at(seq, omega).dagger();
  }
  return resp;
}

std::string plate_sequence_record(const PlateSequence& seq) {
  nlohmann::json doc;
  doc["seed"] = seq.seed;
  doc["n_plates"] = seq.plates.size();
  doc["pmd_coefficient_si"] = seq.pmd_coefficient_si;
  doc["span_length_m"] = seq.span_length_m;
  doc["calibration"] = seq.calibration == DgdCalibration::Mean ? "mean" : "rms";
  return doc.dump();
}

PlateSequence plate_sequence_from_record(const std::string& record) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(record);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("plate sequence record: ") + e.what());
  }
  const std::string calib = doc.at("calibration").get<std::string>();
  if (calib != "mean" && calib != "rms") {
    throw std::invalid_argument("plate sequence record: bad calibration");
  }
  return draw_plate_sequence(
      doc.at("pmd_coefficient_si").get<double>(),
      doc.at("span_length_m").get<double>(),
      doc.at("n_plates").get<std::size_t>(),
      doc.at("seed").get<std::uint64_t>(),
      calib == "mean" ? DgdCalibration::Mean : DgdCalibration::Rms);
}

void apply_inverse_sequence(DualPolField& field, const PlateSequence& seq) {
  fft::forward_inplace(field.x);
  fft::forward_inplace(field.y);

  const std::size_t n = field.grid.n_samples;
  std::vector<double> omega = field.grid.angular_frequencies();
  // U^dagger = P_1^dagger ... P_Np^dagger applied right to left.
  for (auto it = seq.plates.rbegin(); it != seq.plates.rend(); ++it) {
    const JonesMatrix rd = it->rotation.dagger();
    const double half_dgd = it->dgd_s / 2.0;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx ph = std::polar(1.0, -omega[k] * half_dgd);
      cplx x = field.x[k] * ph;
      cplx y = field.y[k] * std::conj(ph);
      rd.apply(x, y);
      field.x[k] = x;
      field.y[k] = y;
    }
  }

  fft::inverse_inplace(field.x);
  fft::inverse_inplace(field.y);
}

}  // namespace fibersim
