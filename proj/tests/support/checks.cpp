#include "checks.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "htts/splitmix.hpp"

namespace htts::testing {

std::vector<std::vector<bool>> reachability(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (Vertex s = 0; s < n; ++s) {
    std::vector<Vertex> todo{s};
    reach[s][s] = true;
    while (!todo.empty()) {
      Vertex v = todo.back();
      todo.pop_back();
      for (Vertex w : g.successors(v))
        if (!reach[s][w]) {
          reach[s][w] = true;
          todo.push_back(w);
        }
    }
  }
  return reach;
}

std::vector<std::vector<Vertex>> scc_by_reachability(const Digraph& g) {
  const auto reach = reachability(g);
  const std::size_t n = g.vertex_count();
  std::vector<bool> placed(n, false);
  std::vector<std::vector<Vertex>> out;
  for (Vertex v = 0; v < n; ++v) {
    if (placed[v]) continue;
    std::vector<Vertex> comp;
    for (Vertex w = v; w < n; ++w)
      if (reach[v][w] && reach[w][v]) {
        comp.push_back(w);
        placed[w] = true;
      }
    out.push_back(std::move(comp));
  }
  return out;
}

bool has_cycle(const Digraph& g) {
  // 0 = new, 1 = on the current path, 2 = finished.
  std::vector<int> colour(g.vertex_count(), 0);
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (colour[s]) continue;
    std::vector<std::pair<Vertex, std::size_t>> path{{s, 0}};
    colour[s] = 1;
    while (!path.empty()) {
      auto& [v, next] = path.back();
      auto succ = g.successors(v);
      if (next == succ.size()) {
        colour[v] = 2;
        path.pop_back();
        continue;
      }
      Vertex w = succ[next++];
      if (colour[w] == 1) return true;
      if (colour[w] == 0) {
        colour[w] = 1;
        path.push_back({w, 0});
      }
    }
  }
  return false;
}

HouseId best_by_scan(const Market& market, AgentId agent, const std::set<HouseId>& remaining) {
  for (HouseId h : market.preferences(agent))
    if (remaining.count(h)) return h;
  throw std::logic_error("best_by_scan: empty remaining set");
}

std::set<std::pair<HouseId, HouseId>> pointing_arcs_by_scan(const Market& market,
                                                            const std::set<HouseId>& remaining) {
  std::set<std::pair<HouseId, HouseId>> arcs;
  for (std::size_t i = 0; i < market.agent_count(); ++i) {
    const AgentId a = agent_at(i);
    if (remaining.count(market.endowment(a))) arcs.insert({market.endowment(a), best_by_scan(market, a, remaining)});
  }
  return arcs;
}

std::vector<std::string> check_scc_partition(const Digraph& g, const SccPartition& scc, bool exhaustive) {
  std::vector<std::string> bad;
  const std::size_t n = g.vertex_count();
  std::vector<int> seen(n, 0);
  for (std::size_t c = 0; c < scc.components.size(); ++c)
    for (Vertex v : scc.components[c]) {
      ++seen[v];
      if (scc.component_of[v] != c) bad.push_back("component_of disagrees with components");
    }
  if (std::any_of(seen.begin(), seen.end(), [](int k) { return k != 1; }))
    bad.push_back("components do not partition the vertex set");

  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.successors(v))
      if (scc.component_of[v] != scc.component_of[w] && scc.component_of[w] >= scc.component_of[v])
        bad.push_back("emission order is not reverse topological");

  if (!scc.components.empty()) {
    for (Vertex v : scc.components.front())
      for (Vertex w : g.successors(v))
        if (scc.component_of[w] != 0) bad.push_back("first component has an outgoing arc");
  }

  if (has_cycle(condensation(g, scc))) bad.push_back("condensation has a cycle");

  if (exhaustive) {
    auto expected = scc_by_reachability(g);
    auto got = scc.components;
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    if (got != expected) bad.push_back("components differ from mutual-reachability classes");
  }
  return bad;
}

std::vector<std::string> check_outcome(const Market& market, const SolveOutcome& outcome) {
  std::vector<std::string> bad;
  auto fail = [&](std::size_t step, const std::string& what) {
    std::ostringstream os;
    os << "step " << step << ": " << what;
    bad.push_back(os.str());
  };

  std::set<HouseId> remaining;
  for (std::size_t h = 0; h < market.house_count(); ++h) remaining.insert(house_at(h));
  std::vector<int> agent_seen(market.agent_count(), 0);

  if (outcome.trace.size() > market.house_count()) fail(0, "more steps than house types");

  for (std::size_t d = 0; d < outcome.trace.size(); ++d) {
    const Segment& seg = outcome.trace[d];
    const std::size_t step = d + 1;
    if (seg.step != step) fail(step, "step index out of sequence");
    if (seg.houses.empty()) fail(step, "empty segment");
    if (!std::is_sorted(seg.houses.begin(), seg.houses.end())) fail(step, "houses not ascending");
    for (HouseId h : seg.houses)
      if (!remaining.count(h)) fail(step, "segment house not remaining");

    // Owners are exactly the endowment preimage of the segment.
    std::vector<AgentId> owners;
    for (std::size_t i = 0; i < market.agent_count(); ++i)
      if (std::binary_search(seg.houses.begin(), seg.houses.end(), market.endowment(agent_at(i))))
        owners.push_back(agent_at(i));
    if (owners != seg.owners) fail(step, "owners differ from endowment preimage");

    // Pointing graph recomputed from the definition.
    const auto arcs = pointing_arcs_by_scan(market, remaining);
    const std::set<HouseId> in_segment(seg.houses.begin(), seg.houses.end());
    for (auto [from, to] : arcs)
      if (in_segment.count(from) && !in_segment.count(to)) fail(step, "segment has an outgoing arc");

    // Strong connectivity inside the segment.
    std::map<HouseId, Vertex> local;
    for (HouseId h : seg.houses) local.emplace(h, static_cast<Vertex>(local.size()));
    std::vector<Arc> inner;
    for (auto [from, to] : arcs)
      if (in_segment.count(from) && in_segment.count(to)) inner.push_back({local[from], local[to]});
    const auto reach = reachability(Digraph::from_arcs(local.size(), inner));
    for (const auto& row : reach)
      if (std::find(row.begin(), row.end(), false) != row.end()) fail(step, "segment is not strongly connected");

    // The library's pointing graph must match, and its SCC structure must hold.
    HouseSet rem_set(market.house_count());
    for (HouseId h : remaining) rem_set.insert(h);
    const PointingGraph pg = build_pointing_graph(market, rem_set);
    std::set<std::pair<HouseId, HouseId>> built;
    for (const Arc& a : pg.graph.arcs()) built.insert({pg.houses[a.from], pg.houses[a.to]});
    if (built != arcs) fail(step, "build_pointing_graph disagrees with the definition");
    for (auto& v : check_scc_partition(pg.graph, tarjan_scc(pg.graph), pg.graph.vertex_count() <= 64))
      fail(step, v);

    // Top choice, containment, feasibility.
    if (seg.assignment.size() != seg.owners.size()) fail(step, "assignment size");
    std::map<HouseId, long> balance;
    for (std::size_t k = 0; k < seg.assignment.size() && k < seg.owners.size(); ++k) {
      auto [a, h] = seg.assignment[k];
      if (a != seg.owners[k]) fail(step, "assignment order");
      if (h != best_by_scan(market, a, remaining)) fail(step, "assignment is not the top remaining choice");
      if (!in_segment.count(h)) fail(step, "assignment leaves the segment");
      ++balance[market.endowment(a)];
      --balance[h];
      ++agent_seen[index(a)];
    }
    const bool feasible = std::all_of(balance.begin(), balance.end(), [](auto& kv) { return kv.second == 0; });
    if (feasible != seg.feasible) fail(step, "feasibility flag disagrees with supply/demand count");

    if (!seg.feasible && d + 1 != outcome.trace.size()) fail(step, "infeasible segment is not the last");
    for (HouseId h : seg.houses) remaining.erase(h);
  }

  if (outcome.core_found()) {
    if (!remaining.empty()) fail(0, "core found but house types remain");
    if (!outcome.allocation) fail(0, "core found without an allocation");
    if (outcome.failed_step) fail(0, "core found with a failed step");
    if (std::any_of(agent_seen.begin(), agent_seen.end(), [](int k) { return k != 1; }))
      fail(0, "segments do not partition the agents");
    if (outcome.allocation) {
      const Allocation& mu = *outcome.allocation;
      if (!conserves_endowment(market, mu.assignment())) fail(0, "allocation breaks multiset conservation");
      for (std::size_t i = 0; i < market.agent_count(); ++i) {
        const AgentId a = agent_at(i);
        if (market.prefers(a, market.endowment(a), mu[a])) fail(0, "individual rationality violated");
      }
      for (const Segment& seg : outcome.trace)
        for (auto [a, h] : seg.assignment)
          if (mu[a] != h) fail(seg.step, "allocation disagrees with the segment assignment");
    }
  } else {
    if (outcome.allocation) fail(0, "empty core with an allocation");
    if (outcome.trace.empty() || outcome.trace.back().feasible) fail(0, "empty core without an infeasible segment");
    if (!outcome.failed_step || *outcome.failed_step != outcome.trace.size())
      fail(0, "failed step does not point at the last segment");
  }
  return bad;
}

Market chain_market(std::size_t house_count, std::size_t copies) {
  RawMarket raw;
  for (std::size_t h = 0; h < house_count; ++h) raw.houses.push_back("h" + std::to_string(h + 1));
  for (std::size_t h = 0; h < house_count; ++h) {
    std::vector<std::string> prefs;
    prefs.reserve(house_count);
    for (std::size_t k = h + 1; k < house_count; ++k) prefs.push_back(raw.houses[k]);
    prefs.push_back(raw.houses[h]);
    for (std::size_t k = h; k-- > 0;) prefs.push_back(raw.houses[k]);
    for (std::size_t c = 0; c < copies; ++c)
      raw.agents.push_back({"a" + std::to_string(h * copies + c + 1), raw.houses[h], prefs, 0});
  }
  return validate_market(raw);
}

Digraph random_digraph(std::size_t n, unsigned density_percent, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Arc> arcs;
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w = 0; w < n; ++w)
      if (rng.below(100) < density_percent) arcs.push_back({v, w});
  return Digraph::from_arcs(n, arcs);
}

}  // namespace htts::testing
