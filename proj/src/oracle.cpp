#include "htts/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace htts {

namespace {

const Market& explicit_view(const Market& market, Market& storage) {
  if (market.has_explicit_preferences()) return market;
  storage = market.materialized();
  return storage;
}

void check_cap(const Market& market, std::size_t cap) {
  if (market.agent_count() > cap) throw CapExceeded(market.agent_count(), cap);
}

/// Depth-first search over redistributions of a coalition's endowment.
/// Member k may only take a type they weakly prefer to mu(member), which
/// prunes every branch that could not satisfy the weak-improvement condition.
class CoalitionSearch {
 public:
  CoalitionSearch(const Market& market, const Allocation& mu, std::span<const AgentId> members)
      : market_(market), mu_(mu), members_(members), supply_(market.house_count(), 0), chosen_(members.size()) {
    for (AgentId a : members) ++supply_[index(market.endowment(a))];
  }

  bool run() { return descend(0, false); }

  BlockingCertificate certificate() const {
    BlockingCertificate cert;
    cert.coalition.assign(members_.begin(), members_.end());
    for (std::size_t k = 0; k < members_.size(); ++k) cert.sub_allocation.emplace_back(members_[k], chosen_[k]);
    return cert;
  }

 private:
  bool descend(std::size_t k, bool strict) {
    if (k == members_.size()) return strict;
    const AgentId a = members_[k];
    const HouseId current = mu_[a];
    for (HouseId h : market_.preferences(a)) {
      if (supply_[index(h)] > 0) {
        --supply_[index(h)];
        chosen_[k] = h;
        const bool found = descend(k + 1, strict || h != current);
        ++supply_[index(h)];
        if (found) return true;
      }
      if (h == current) break;
    }
    return false;
  }

  const Market& market_;
  const Allocation& mu_;
  std::span<const AgentId> members_;
  std::vector<std::uint32_t> supply_;
  std::vector<HouseId> chosen_;
};

std::vector<AgentId> members_of(std::uint32_t mask, std::size_t agents) {
  std::vector<AgentId> out;
  for (std::size_t i = 0; i < agents; ++i)
    if (mask & (1u << i)) out.push_back(agent_at(i));
  return out;
}

bool mask_blocks(const Market& market, const Allocation& mu, std::uint32_t mask) {
  const auto members = members_of(mask, market.agent_count());
  return CoalitionSearch(market, mu, members).run();
}

void check_allocation(const Market& market, const Allocation& mu) {
  if (!conserves_endowment(market, mu.assignment()))
    throw InfeasibleAllocation("allocation does not match the endowment multiset");
}

}  // namespace

void for_each_feasible_allocation(const Market& market, const std::function<void(const Allocation&)>& visit,
                                  std::size_t cap) {
  check_cap(market, cap);
  std::vector<HouseId> perm(market.endowments().begin(), market.endowments().end());
  std::sort(perm.begin(), perm.end());
  // next_permutation over a sorted multiset visits each distinct arrangement once.
  do {
    visit(Allocation(market, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

std::vector<Allocation> enumerate_feasible_allocations(const Market& market, std::size_t cap) {
  std::vector<Allocation> out;
  for_each_feasible_allocation(market, [&](const Allocation& mu) { out.push_back(mu); }, cap);
  return out;
}

std::optional<BlockingCertificate> find_blocking_sub_allocation(const Market& market, const Allocation& mu,
                                                                std::span<const AgentId> coalition) {
  Market storage;
  const Market& m = explicit_view(market, storage);
  check_allocation(m, mu);
  std::vector<AgentId> members(coalition.begin(), coalition.end());
  std::sort(members.begin(), members.end());
  if (members.empty()) return std::nullopt;
  CoalitionSearch search(m, mu, members);
  if (!search.run()) return std::nullopt;
  return search.certificate();
}

std::optional<BlockingCertificate> find_blocking_coalition_serial(const Market& market, const Allocation& mu,
                                                                  std::size_t cap) {
  check_cap(market, cap);
  Market storage;
  const Market& m = explicit_view(market, storage);
  check_allocation(m, mu);
  const std::uint32_t masks = 1u << m.agent_count();
  for (std::uint32_t mask = 1; mask < masks; ++mask) {
    const auto members = members_of(mask, m.agent_count());
    CoalitionSearch search(m, mu, members);
    if (search.run()) return search.certificate();
  }
  return std::nullopt;
}

std::optional<BlockingCertificate> find_blocking_coalition(const Market& market, const Allocation& mu,
                                                           std::size_t cap) {
  check_cap(market, cap);
  Market storage;
  const Market& m = explicit_view(market, storage);
  check_allocation(m, mu);
  const std::int64_t masks = std::int64_t{1} << m.agent_count();
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();

#pragma omp parallel for schedule(dynamic, 8) reduction(min : best)
  for (std::int64_t mask = 1; mask < masks; ++mask) {
    const auto mask32 = static_cast<std::uint32_t>(mask);
    if (mask32 < best && mask_blocks(m, mu, mask32)) best = mask32;
  }

  if (best == std::numeric_limits<std::uint32_t>::max()) return std::nullopt;
  const auto members = members_of(best, m.agent_count());
  CoalitionSearch search(m, mu, members);
  search.run();
  return search.certificate();
}

bool certificate_blocks(const Market& market, const Allocation& mu, const BlockingCertificate& cert) {
  Market storage;
  const Market& m = explicit_view(market, storage);
  if (cert.coalition.empty() || cert.sub_allocation.size() != cert.coalition.size()) return false;

  std::vector<int> balance(m.house_count(), 0);
  std::vector<std::uint8_t> in_coalition(m.agent_count(), 0);
  for (AgentId a : cert.coalition) {
    if (index(a) >= m.agent_count() || in_coalition[index(a)]) return false;
    in_coalition[index(a)] = 1;
    ++balance[index(m.endowment(a))];
  }
  bool strict = false;
  for (auto [a, h] : cert.sub_allocation) {
    if (index(a) >= m.agent_count() || !in_coalition[index(a)] || index(h) >= m.house_count()) return false;
    --balance[index(h)];
    if (m.prefers(a, mu[a], h)) return false;
    strict = strict || m.prefers(a, h, mu[a]);
  }
  return strict && std::all_of(balance.begin(), balance.end(), [](int b) { return b == 0; });
}

std::vector<Allocation> enumerate_strict_core(const Market& market, std::size_t cap) {
  check_cap(market, cap);
  Market storage;
  const Market& m = explicit_view(market, storage);
  std::vector<Allocation> core;
  for_each_feasible_allocation(
      m,
      [&](const Allocation& mu) {
        if (!find_blocking_coalition(m, mu, cap)) core.push_back(mu);
      },
      cap);
  return core;
}

Allocation ttc_solve(const Market& market) {
  Market storage;
  const Market& m = explicit_view(market, storage);
  const std::size_t n = m.agent_count();
  for (std::size_t h = 0; h < m.house_count(); ++h)
    if (m.endowment_count(house_at(h)) != 1) throw NonInjectiveEndowment();

  std::vector<HouseId> assignment(n);
  std::vector<std::uint8_t> assigned(n, 0);
  std::vector<std::size_t> cursor(n, 0);
  std::size_t left = n;

  auto favourite = [&](AgentId a) {
    auto prefs = m.preferences(a);
    std::size_t& pos = cursor[index(a)];
    while (assigned[index(m.owners(prefs[pos])[0])]) ++pos;
    return prefs[pos];
  };

  while (left > 0) {
    std::size_t start = 0;
    while (assigned[start]) ++start;
    // Follow pointers until an agent repeats; stamp = 1-based position on the path.
    std::vector<AgentId> path;
    std::vector<std::size_t> stamp(n, 0);
    AgentId a = agent_at(start);
    while (stamp[index(a)] == 0) {
      stamp[index(a)] = path.size() + 1;
      path.push_back(a);
      a = m.owners(favourite(a))[0];
    }
    for (std::size_t k = stamp[index(a)] - 1; k < path.size(); ++k) {
      const AgentId trader = path[k];
      assignment[index(trader)] = favourite(trader);
    }
    for (std::size_t k = stamp[index(a)] - 1; k < path.size(); ++k) {
      assigned[index(path[k])] = 1;
      --left;
    }
  }
  return Allocation(m, std::move(assignment));
}

}  // namespace htts
