#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "htts/digraph.hpp"
#include "htts/market.hpp"

namespace htts {

/// Platform-independent work counters for one solve. All three only grow.
struct OpCounter {
  /// Pointer evaluations: one per (remaining agent, step) plus every
  /// preference-cursor advance.
  std::uint64_t arcs_built = 0;
  /// Vertices discovered plus arcs examined by the SCC search.
  std::uint64_t scc_work = 0;
  /// Owner tallies plus per-type supply/demand comparisons.
  std::uint64_t feasibility_comparisons = 0;

  std::uint64_t total() const { return arcs_built + scc_work + feasibility_comparisons; }
  friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

/// One trading segment: the sink component chosen at a step, the agents who
/// own those types, where each of them points, and whether supply meets demand.
struct Segment {
  std::size_t step = 0;  // 1-based
  std::vector<HouseId> houses;  // ascending
  std::vector<AgentId> owners;  // ascending
  std::vector<std::pair<AgentId, HouseId>> assignment;  // same order as owners
  bool feasible = false;
};

enum class Verdict { CoreFound, EmptyCore };

struct SolveOutcome {
  Verdict verdict = Verdict::CoreFound;
  std::optional<Allocation> allocation;  // iff CoreFound
  std::vector<Segment> trace;            // on EmptyCore, the last segment is the infeasible one
  std::optional<std::size_t> failed_step;  // iff EmptyCore
  OpCounter ops;

  bool core_found() const { return verdict == Verdict::CoreFound; }
};

/// Pointing graph over the remaining house types. Vertex v stands for
/// `houses[v]`; vertices follow ascending house id.
struct PointingGraph {
  Digraph graph;
  std::vector<HouseId> houses;
};

/// Arc (h, h') iff some owner of h ranks h' first among `remaining`.
/// Every owner of a remaining type is assumed to still be in the market.
PointingGraph build_pointing_graph(const Market& market, const HouseSet& remaining);

/// Supply equals demand on every type of the segment, where demand for h
/// counts owners whose favourite among `remaining` is h.
bool check_feasibility(const Market& market, std::span<const HouseId> segment_houses,
                       std::span<const AgentId> segment_owners, const HouseSet& remaining);

/// Runs House Top Trading Segments. Sink components are taken in Tarjan
/// emission order with searches started at ascending vertex ids.
SolveOutcome htts_solve(const Market& market);

/// Same, but each step's depth-first start order is a permutation drawn from
/// `tiebreak_seed`, which may select a different sink component when several
/// exist. Verdict and allocation do not depend on the seed.
SolveOutcome solve_with_tiebreak(const Market& market, std::uint64_t tiebreak_seed);

/// `step=<d> houses={..} owners={..} feasible=<bool>`, one line per segment.
std::string render_segment(const Market& market, const Segment& segment);
std::string render_trace(const Market& market, std::span<const Segment> trace);

}  // namespace htts
