#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include "fibersim/rng.hpp"

namespace fibersim {

using cplx = std::complex<double>;

/// 2x2 complex Jones matrix acting on the (x, y) polarization pair.
struct JonesMatrix {
  // Row-major: [ a b ; c d ].
  cplx a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

  static JonesMatrix identity() { return JonesMatrix{}; }

  JonesMatrix dagger() const {
    return JonesMatrix{std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
  }

  void apply(cplx& x, cplx& y) const {
    const cplx nx = a * x + b * y;
    const cplx ny = c * x + d * y;
    x = nx;
    y = ny;
  }

  friend JonesMatrix operator*(const JonesMatrix& l, const JonesMatrix& r) {
    return JonesMatrix{l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
                       l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
};

/// Max-norm deviation of U U^dagger from the identity.
double unitarity_error(const JonesMatrix& u);

/// Stokes vector (s1, s2, s3) of the Jones vector (x, y), normalized by s0.
std::array<double, 3> stokes_of(cplx x, cplx y);

/// Haar-distributed random unitary on U(2). The Stokes image of any fixed
/// input polarization is uniform on the Poincare sphere.
JonesMatrix haar_unitary(Rng& rng);

/// Seed dedicated to the "no rotation" baseline: yields the identity.
inline constexpr std::uint64_t kIdentitySopSeed = 0;

/// Random channel state-of-polarization rotation, uniform on the Poincare
/// sphere over seeds; kIdentitySopSeed returns the identity.
JonesMatrix random_sop_rotation(std::uint64_t seed);

}  // namespace fibersim
