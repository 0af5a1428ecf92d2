#pragma once

#include <cstdint>
#include <vector>

namespace fibersim {

/// Cyclic quaternary De Bruijn sequence B(4, order): length 4^order, every
/// length-`order` word over {0,1,2,3} appears exactly once cyclically.
///
/// variant_seed selects one of 24 * 4^order distinct variants (an alphabet
/// permutation combined with a cyclic shift); both preserve the De Bruijn
/// property, and distinct variants give distinct cyclic sequences. Seeds are
/// mapped injectively for variant_seed < 24 * 4^order.
std::vector<std::uint8_t> debruijn_sequence(unsigned order,
                                            std::uint64_t variant_seed);

/// The 16384-long B(4,7) sequence used by the transmitter tributaries.
inline std::vector<std::uint8_t> debruijn_q4_order7(std::uint64_t variant_seed) {
  return debruijn_sequence(7, variant_seed);
}

}  // namespace fibersim
