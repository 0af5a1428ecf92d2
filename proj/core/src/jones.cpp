#include "fibersim/jones.hpp"

#include <algorithm>
#include <cmath>

namespace fibersim {

double unitarity_error(const JonesMatrix& u) {
  const JonesMatrix p = u * u.dagger();
  return std::max({std::abs(p.a - cplx{1.0, 0.0}), std::abs(p.b),
                   std::abs(p.c), std::abs(p.d - cplx{1.0, 0.0})});
}

std::array<double, 3> stokes_of(cplx x, cplx y) {
  const double s0 = std::norm(x) + std::norm(y);
  if (s0 == 0.0) return {0.0, 0.0, 0.0};
  const cplx cross = std::conj(x) * y;
  return {(std::norm(x) - std::norm(y)) / s0, 2.0 * cross.real() / s0,
          2.0 * cross.imag() / s0};
}

JonesMatrix haar_unitary(Rng& rng) {
  // (a, b) uniform on the unit sphere of C^2 plus a free global phase.
  const double u = rng.uniform();
  const double phi_a = rng.uniform_angle();
  const double phi_b = rng.uniform_angle();
  const double phi_g = rng.uniform_angle();
  const double ca = std::sqrt(1.0 - u);
  const double cb = std::sqrt(u);
  const cplx a = std::polar(ca, phi_a);
  const cplx b = std::polar(cb, phi_b);
  const cplx g = std::polar(1.0, phi_g);
  return JonesMatrix{g * a, g * (-std::conj(b)), g * b, g * std::conj(a)};
}

JonesMatrix random_sop_rotation(std::uint64_t seed) {
  if (seed == kIdentitySopSeed) return JonesMatrix::identity();
  Rng rng(seed);
  return haar_unitary(rng);
}

}  // namespace fibersim
