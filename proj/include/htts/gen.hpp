#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "htts/market.hpp"

namespace htts {

struct GenParams {
  std::size_t agent_count = 1;
  std::size_t house_count = 1;
  std::uint64_t seed = 0;
};

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Seeded random market. The stream is fixed so that fixtures can be
/// regenerated by any port:
///
///   rng = SplitMix64(seed)
///   endowment[k] = k                  for k <  house_count
///   endowment[k] = rng.below(H)       for k >= house_count
///   for k in 0 .. I-2: swap(endowment[k], endowment[k + rng.below(I - k)])
///
/// Agent a's ranking is the forward Fisher-Yates shuffle of 0..H-1 driven by
/// SplitMix64(Market::stream_seed(seed, a)), i.e. position k takes the slot
/// k + below(H - k). Houses are named h1..hH and agents a1..aI.
Market random_market(const GenParams& params);

/// The same market with generated (lazily produced) preference storage, for
/// sizes whose full preference table would not fit in memory.
Market random_market_generated(const GenParams& params);

}  // namespace htts
