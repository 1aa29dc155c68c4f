#pragma once

// Exponential-time ground truth for small markets. Everything here follows
// the strict-core definition literally and shares no code with the solver.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "htts/market.hpp"

namespace htts {

inline constexpr std::size_t kDefaultOracleCap = 8;

class CapExceeded : public std::invalid_argument {
 public:
  CapExceeded(std::size_t agents, std::size_t cap)
      : std::invalid_argument("oracle: " + std::to_string(agents) + " agents exceeds the cap of " +
                              std::to_string(cap)) {}
};

class NonInjectiveEndowment : public std::invalid_argument {
 public:
  NonInjectiveEndowment() : std::invalid_argument("ttc_solve: some house type has more than one owner") {}
};

/// A coalition together with a redistribution of its own endowment under
/// which every member is weakly better off and someone strictly.
struct BlockingCertificate {
  std::vector<AgentId> coalition;  // ascending
  std::vector<std::pair<AgentId, HouseId>> sub_allocation;  // coalition order
};

/// Calls `visit` once per distinct allocation (agent -> type map matching the
/// endowment multiset), in lexicographic order of the assignment vector.
void for_each_feasible_allocation(const Market& market, const std::function<void(const Allocation&)>& visit,
                                  std::size_t cap = kDefaultOracleCap);
std::vector<Allocation> enumerate_feasible_allocations(const Market& market, std::size_t cap = kDefaultOracleCap);

/// Searches every non-empty coalition. Returns the certificate for the
/// numerically smallest blocking coalition bitmask (bit i = agent i), or
/// nullopt when `mu` is in the strict core. Coalitions are checked in
/// parallel when built with OpenMP.
std::optional<BlockingCertificate> find_blocking_coalition(const Market& market, const Allocation& mu,
                                                           std::size_t cap = kDefaultOracleCap);

/// Single-threaded reference for find_blocking_coalition; identical results.
std::optional<BlockingCertificate> find_blocking_coalition_serial(const Market& market, const Allocation& mu,
                                                                  std::size_t cap = kDefaultOracleCap);

/// Blocking search restricted to one coalition.
std::optional<BlockingCertificate> find_blocking_sub_allocation(const Market& market, const Allocation& mu,
                                                                std::span<const AgentId> coalition);

/// Independent re-check of a certificate against the definition.
bool certificate_blocks(const Market& market, const Allocation& mu, const BlockingCertificate& cert);

/// All allocations no coalition blocks.
std::vector<Allocation> enumerate_strict_core(const Market& market, std::size_t cap = kDefaultOracleCap);

/// Classic top trading cycles for markets where each type has one owner:
/// every agent points at the owner of their favourite remaining house; the
/// cycle reached from the lowest-id unassigned agent trades and leaves.
Allocation ttc_solve(const Market& market);

}  // namespace htts
