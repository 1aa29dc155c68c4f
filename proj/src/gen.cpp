#include "htts/gen.hpp"

#include <utility>
#include <vector>

#include "htts/splitmix.hpp"

namespace htts {

Market random_market_generated(const GenParams& params) {
  if (params.agent_count < 1) throw InvalidParams("gen: agent count must be at least 1");
  if (params.house_count < 1 || params.house_count > params.agent_count)
    throw InvalidParams("gen: house count must be in [1, agent count]");
  if (params.agent_count > 0xfffffffeULL) throw InvalidParams("gen: agent count too large");

  SplitMix64 rng(params.seed);
  std::vector<HouseId> endowment(params.agent_count);
  for (std::size_t k = 0; k < params.agent_count; ++k)
    endowment[k] = house_at(k < params.house_count ? k : rng.below(params.house_count));
  for (std::size_t k = 0; k + 1 < params.agent_count; ++k)
    std::swap(endowment[k], endowment[k + rng.below(params.agent_count - k)]);

  return Market::generated(params.house_count, std::move(endowment), params.seed);
}

Market random_market(const GenParams& params) { return random_market_generated(params).materialized(); }

}  // namespace htts
