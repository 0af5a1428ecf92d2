#include "fibersim/debruijn.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace fibersim {

namespace {

constexpr unsigned kAlphabet = 4;

// FKM construction: concatenating the Lyndon words over {0..3} whose length
// divides `order` yields the lexicographically least De Bruijn sequence.
std::vector<std::uint8_t> fkm_base(unsigned order) {
  std::vector<std::uint8_t> seq;
  seq.reserve(1u << (2 * order));
  std::vector<std::uint8_t> a(order + 1, 0);

  auto db = [&](auto&& self, unsigned t, unsigned p) -> void {
    if (t > order) {
      if (order % p == 0) {
        seq.insert(seq.end(), a.begin() + 1, a.begin() + 1 + p);
      }
      return;
    }
    a[t] = a[t - p];
    self(self, t + 1, p);
    for (std::uint8_t j = a[t - p] + 1; j < kAlphabet; ++j) {
      a[t] = j;
      self(self, t + 1, t);
    }
  };
  db(db, 1, 1);
  return seq;
}

std::array<std::uint8_t, 4> nth_permutation(std::uint64_t index) {
  std::array<std::uint8_t, 4> perm = {0, 1, 2, 3};
  for (std::uint64_t i = 0; i < index % 24; ++i) {
    std::next_permutation(perm.begin(), perm.end());
  }
  return perm;
}

}  // namespace

std::vector<std::uint8_t> debruijn_sequence(unsigned order,
                                            std::uint64_t variant_seed) {
  if (order == 0 || order > 12) {
    throw std::invalid_argument("debruijn_sequence: order must be in [1, 12]");
  }
  const std::uint64_t length = 1ull << (2 * order);
  std::vector<std::uint8_t> seq = fkm_base(order);

  const auto perm = nth_permutation(variant_seed % 24);
  // Odd multiplier (coprime with the power-of-two length) spreads successive
  // variant indices across well-separated cyclic shifts.
  const std::uint64_t odd_mult =
      (static_cast<std::uint64_t>(0.6180339887498949 * static_cast<double>(length)) | 1ull);
  const std::uint64_t shift = ((variant_seed / 24) % length) * odd_mult % length;

  std::vector<std::uint8_t> out(length);
  for (std::uint64_t i = 0; i < length; ++i) {
    out[i] = perm[seq[(i + shift) % length]];
  }
  return out;
}

}  // namespace fibersim
