#pragma once

#include "rankvote/suites.hpp"

namespace bench {

// Deterministic random profile with m candidates and n voters.
inline rankvote::Profile profile(std::size_t m, std::uint64_t n, std::uint64_t seed = 99) {
  auto rng = rankvote::trial_rng(seed, m * 1000 + n);
  return rankvote::random_profile(rng, m, n);
}

}  // namespace bench
