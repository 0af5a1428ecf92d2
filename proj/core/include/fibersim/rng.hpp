#pragma once

#include <cstdint>
#include <random>

// Deterministic seeding utilities. Every stochastic draw in the simulator is
// keyed by a 64-bit seed derived from (base seed, purpose tag, index), so a
// campaign re-run reproduces bit-identical results for any worker schedule.
namespace fibersim {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Derives an independent child seed from a parent seed and an index. Chained
// calls give hierarchical streams: derive_seed(derive_seed(base, tag), k).
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
  return splitmix64(parent ^ splitmix64(index + 0x517CC1B727220A95ULL));
}

// mt19937_64 output is fully specified by the standard, so sequences are
// identical across platforms. Floating-point helpers use raw bits only.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [-1, 1).
  double uniform_pm1() { return 2.0 * uniform() - 1.0; }

  // Uniform angle in [0, 2 pi).
  double uniform_angle() { return 2.0 * M_PI * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fibersim
