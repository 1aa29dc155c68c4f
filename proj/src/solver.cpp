#include "htts/solver.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

#include "htts/splitmix.hpp"

namespace htts {

namespace {

constexpr std::uint32_t kAbsent = 0xffffffffu;

/// Per-type supply/demand comparison. `targets[k]` is where owners[k] points.
/// `demand` is scratch indexed by house id, all zero on entry and on exit.
bool supply_meets_demand(const Market& market, std::span<const HouseId> houses, std::span<const AgentId> owners,
                         std::span<const HouseId> targets, std::vector<std::uint32_t>& demand, OpCounter& ops) {
  for (std::size_t k = 0; k < owners.size(); ++k) ++demand[index(targets[k])];
  ops.feasibility_comparisons += owners.size();
  bool ok = true;
  for (HouseId h : houses) {
    ok = ok && demand[index(h)] == market.endowment_count(h);
    ++ops.feasibility_comparisons;
  }
  for (std::size_t k = 0; k < owners.size(); ++k) demand[index(targets[k])] = 0;
  return ok;
}

/// Incremental pointing-graph state. Each agent keeps a cursor into their
/// ranking and a cached favourite; a cursor only moves forward past removed
/// types, so over a whole solve it advances at most |H| times per agent.
class PointingState {
 public:
  explicit PointingState(const Market& market, HouseSet remaining)
      : market_(market),
        remaining_(std::move(remaining)),
        local_(market.house_count(), kAbsent),
        favourite_(market.agent_count(), kAbsent) {
    cursors_.reserve(market.agent_count());
    for (std::size_t i = 0; i < market.agent_count(); ++i) cursors_.push_back(market.cursor(agent_at(i)));
    live_ = remaining_.members();
  }

  const HouseSet& remaining() const { return remaining_; }
  std::span<const HouseId> live() const { return live_; }

  HouseId favourite(AgentId a) const { return house_at(favourite_[index(a)]); }

  PointingGraph build(OpCounter& ops) {
    for (std::size_t v = 0; v < live_.size(); ++v) local_[index(live_[v])] = static_cast<std::uint32_t>(v);
    arcs_.clear();
    for (std::size_t v = 0; v < live_.size(); ++v) {
      for (AgentId a : market_.owners(live_[v])) {
        ++ops.arcs_built;
        std::uint32_t& fav = favourite_[index(a)];
        if (fav == kAbsent || !remaining_.contains(house_at(fav))) {
          PreferenceCursor& c = cursors_[index(a)];
          HouseId h;
          do {
            h = c.next();
            ++ops.arcs_built;
          } while (!remaining_.contains(h));
          fav = static_cast<std::uint32_t>(index(h));
        }
        arcs_.push_back({static_cast<Vertex>(v), local_[fav]});
      }
    }
    PointingGraph out{Digraph::from_arcs(live_.size(), arcs_), live_};
    return out;
  }

  void remove(std::span<const HouseId> houses) {
    for (HouseId h : houses) {
      remaining_.erase(h);
      local_[index(h)] = kAbsent;
    }
    std::erase_if(live_, [&](HouseId h) { return !remaining_.contains(h); });
  }

 private:
  const Market& market_;
  HouseSet remaining_;
  std::vector<HouseId> live_;
  std::vector<std::uint32_t> local_;
  std::vector<std::uint32_t> favourite_;
  std::vector<PreferenceCursor> cursors_;
  std::vector<Arc> arcs_;
};

SolveOutcome solve(const Market& market, std::optional<std::uint64_t> tiebreak_seed) {
  SolveOutcome out;
  PointingState state(market, HouseSet(market.house_count(), true));
  std::vector<HouseId> assignment(market.agent_count());
  std::vector<std::uint32_t> demand(market.house_count(), 0);
  std::optional<SplitMix64> rng;
  if (tiebreak_seed) rng.emplace(*tiebreak_seed);
  std::vector<Vertex> start_order;

  for (std::size_t step = 1; !state.remaining().empty(); ++step) {
    PointingGraph pg = state.build(out.ops);

    if (rng) {
      start_order.resize(pg.houses.size());
      std::iota(start_order.begin(), start_order.end(), Vertex{0});
      for (std::size_t k = 0; k + 1 < start_order.size(); ++k)
        std::swap(start_order[k], start_order[k + rng->below(start_order.size() - k)]);
    }
    SccWork work;
    std::vector<Vertex> sink = first_sink_scc(pg.graph, start_order, &work);
    out.ops.scc_work += work.total();

    Segment seg;
    seg.step = step;
    seg.houses.reserve(sink.size());
    for (Vertex v : sink) seg.houses.push_back(pg.houses[v]);
    for (HouseId h : seg.houses) {
      auto owners = market.owners(h);
      seg.owners.insert(seg.owners.end(), owners.begin(), owners.end());
    }
    std::sort(seg.owners.begin(), seg.owners.end());

    std::vector<HouseId> targets;
    targets.reserve(seg.owners.size());
    seg.assignment.reserve(seg.owners.size());
    for (AgentId a : seg.owners) {
      const HouseId target = state.favourite(a);
      // No arc leaves a sink component, so the favourite over the remaining
      // types is also the favourite over the segment's own types.
      assert(std::binary_search(seg.houses.begin(), seg.houses.end(), target));
      targets.push_back(target);
      seg.assignment.emplace_back(a, target);
    }

    seg.feasible = supply_meets_demand(market, seg.houses, seg.owners, targets, demand, out.ops);
    out.trace.push_back(std::move(seg));
    const Segment& done = out.trace.back();
    if (!done.feasible) {
      out.verdict = Verdict::EmptyCore;
      out.failed_step = step;
      return out;
    }
    for (auto [a, h] : done.assignment) assignment[index(a)] = h;
    state.remove(done.houses);
  }

  out.verdict = Verdict::CoreFound;
  out.allocation = Allocation(market, std::move(assignment));
  return out;
}

template <typename Id>
void render_set(std::ostream& os, std::span<const Id> ids, auto&& name) {
  os << '{';
  for (std::size_t k = 0; k < ids.size(); ++k) os << (k ? "," : "") << name(ids[k]);
  os << '}';
}

}  // namespace

PointingGraph build_pointing_graph(const Market& market, const HouseSet& remaining) {
  PointingState state(market, remaining);
  OpCounter ops;
  return state.build(ops);
}

bool check_feasibility(const Market& market, std::span<const HouseId> segment_houses,
                       std::span<const AgentId> segment_owners, const HouseSet& remaining) {
  std::vector<HouseId> targets;
  targets.reserve(segment_owners.size());
  for (AgentId a : segment_owners) targets.push_back(best_house(market, a, remaining));
  std::vector<std::uint32_t> demand(market.house_count(), 0);
  OpCounter ops;
  return supply_meets_demand(market, segment_houses, segment_owners, targets, demand, ops);
}

SolveOutcome htts_solve(const Market& market) { return solve(market, std::nullopt); }

SolveOutcome solve_with_tiebreak(const Market& market, std::uint64_t tiebreak_seed) {
  return solve(market, tiebreak_seed);
}

std::string render_segment(const Market& market, const Segment& segment) {
  std::ostringstream os;
  os << "step=" << segment.step << " houses=";
  render_set<HouseId>(os, segment.houses, [&](HouseId h) { return market.house_name(h); });
  os << " owners=";
  render_set<AgentId>(os, segment.owners, [&](AgentId a) { return market.agent_name(a); });
  os << " feasible=" << (segment.feasible ? "true" : "false");
  return os.str();
}

std::string render_trace(const Market& market, std::span<const Segment> trace) {
  std::string out;
  for (const Segment& s : trace) out += render_segment(market, s) + '\n';
  return out;
}

}  // namespace htts
