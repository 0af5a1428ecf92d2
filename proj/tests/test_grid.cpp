#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "fibersim/grid.hpp"
#include "fibersim/rng.hpp"
#include "helpers/oracles.hpp"

using namespace fibersim;

namespace {

DualPolField random_field(const SimulationGrid& grid, std::uint64_t seed) {
  DualPolField f = make_zero_field(grid);
  Rng rng(seed);
  for (std::size_t i = 0; i < grid.n_samples; ++i) {
    f.x[i] = cplx(rng.uniform_pm1(), rng.uniform_pm1());
    f.y[i] = cplx(rng.uniform_pm1(), rng.uniform_pm1());
  }
  return f;
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("make_grid full-scale dimensions") {
  const SimulationGrid g = make_grid(32e9, 128, 16384);
  CHECK(g.n_samples == 2097152);
  CHECK(g.sample_rate_hz == doctest::Approx(4.096e12));
  CHECK(g.duration_s() == doctest::Approx(2097152.0 / 4.096e12));
}

TEST_CASE("make_grid minimal and derived cases") {
  const SimulationGrid tiny = make_grid(32e9, 2, 1);
  CHECK(tiny.n_samples == 2);
  CHECK(tiny.sample_rate_hz == doctest::Approx(64e9));

  const SimulationGrid g = make_grid(10e9, 16, 4096);
  CHECK(g.n_samples == 65536);
  CHECK(g.sample_rate_hz == doctest::Approx(160e9));
}

TEST_CASE("make_grid rejects invalid shapes") {
  CHECK_THROWS_AS(make_grid(32e9, 3, 5), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(32e9, 1, 1024), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(32e9, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(-1.0, 2, 2), std::invalid_argument);
}

TEST_CASE("frequency axis ordering and extent") {
  const SimulationGrid g = make_grid(10e9, 4, 4);
  CHECK(g.df_hz() == doctest::Approx(10e9 / 4.0));
  CHECK(g.bin_frequency_hz(0) == doctest::Approx(0.0));
  CHECK(g.bin_frequency_hz(1) == doctest::Approx(g.df_hz()));
  CHECK(g.bin_frequency_hz(8) == doctest::Approx(-g.sample_rate_hz / 2.0));
  CHECK(g.bin_frequency_hz(15) == doctest::Approx(-g.df_hz()));
}

TEST_CASE("total_power basics") {
  SimulationGrid g{8, 8e9, 0.0};
  DualPolField f = make_zero_field(g);
  CHECK(total_power(f) == 0.0);

  for (auto& v : f.x) v = cplx(1.0, 0.0);
  CHECK(total_power(f) == doctest::Approx(1.0));

  const cplx c = cplx(1.0, 1.0) / std::sqrt(2.0);
  for (auto& v : f.x) v = c;
  for (auto& v : f.y) v = c;
  CHECK(total_power(f) == doctest::Approx(2.0));
}

TEST_CASE("impulse transforms to flat-modulus spectrum") {
  SimulationGrid g{64, 64e9, 0.0};
  DualPolField f = make_zero_field(g);
  f.x[0] = cplx(1.0, 0.0);
  const DualPolSpectrum s = to_frequency(f);
  const double expected = 1.0 / std::sqrt(64.0);
  for (const auto& v : s.x) {
    CHECK(std::abs(v) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("single tone occupies a single spectral bin") {
  SimulationGrid g{64, 64e9, 0.0};
  DualPolField f = make_zero_field(g);
  const std::size_t tone_bin = 5;
  for (std::size_t n = 0; n < 64; ++n) {
    const double phase = 2.0 * M_PI * static_cast<double>(tone_bin * n) / 64.0;
    f.x[n] = cplx(std::cos(phase), std::sin(phase));
  }
  const DualPolSpectrum s = to_frequency(f);
  for (std::size_t k = 0; k < 64; ++k) {
    if (k == tone_bin) {
      CHECK(std::abs(s.x[k]) == doctest::Approx(8.0));  // sqrt(64)
    } else {
      CHECK(std::abs(s.x[k]) < 1e-12);
    }
  }
}

TEST_CASE("transform matches a naive DFT oracle") {
  SimulationGrid g{32, 32e9, 0.0};
  const DualPolField f = random_field(g, 7);
  const DualPolSpectrum s = to_frequency(f);
  const auto ref = oracles::naive_dft(f.x);
  const double scale = 1.0 / std::sqrt(32.0);
  for (std::size_t k = 0; k < 32; ++k) {
    CHECK(std::abs(s.x[k] - ref[k] * scale) < 1e-12);
  }
}

TEST_CASE("round trip reproduces random fields") {
  const SimulationGrid g = make_grid(32e9, 4, 256);
  const DualPolField f = random_field(g, 42);
  const DualPolField back = to_time(to_frequency(f));
  double max_err = 0.0;
  double max_mag = 0.0;
  for (std::size_t i = 0; i < g.n_samples; ++i) {
    max_err = std::max({max_err, std::abs(back.x[i] - f.x[i]),
                        std::abs(back.y[i] - f.y[i])});
    max_mag = std::max({max_mag, std::abs(f.x[i]), std::abs(f.y[i])});
  }
  CHECK(max_err / max_mag < 1e-12);
}

TEST_CASE("Parseval holds for arbitrary fields") {
  const SimulationGrid g = make_grid(16e9, 8, 128);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const DualPolField f = random_field(g, seed);
    const DualPolSpectrum s = to_frequency(f);
    CHECK(total_power(s) ==
          doctest::Approx(total_power(f)).epsilon(1e-10));
  }
}

TEST_CASE("bin shift is an exact circular translation") {
  SimulationGrid g{16, 16e9, 0.0};
  DualPolField f = make_zero_field(g);
  for (std::size_t n = 0; n < 16; ++n) {
    const double phase = 2.0 * M_PI * 3.0 * static_cast<double>(n) / 16.0;
    f.x[n] = cplx(std::cos(phase), std::sin(phase));
  }
  DualPolSpectrum s = to_frequency(f);
  shift_bins(s, 5);
  for (std::size_t k = 0; k < 16; ++k) {
    if (k == 8) {
      CHECK(std::abs(s.x[k]) == doctest::Approx(4.0));
    } else {
      CHECK(std::abs(s.x[k]) < 1e-12);
    }
  }
  shift_bins(s, -5);
  CHECK(std::abs(s.x[3]) == doctest::Approx(4.0));
  shift_bins(s, 16);  // full turn is the identity
  CHECK(std::abs(s.x[3]) == doctest::Approx(4.0));
}

}  // TEST_SUITE
