#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace htts {

using Vertex = std::uint32_t;

struct Arc {
  Vertex from;
  Vertex to;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Immutable directed graph in compressed-row form. Self-loops are allowed;
/// parallel arcs are merged and every adjacency list is ascending.
class Digraph {
 public:
  Digraph() : offset_(1, 0) {}

  /// Linear-time construction (two counting-sort passes) from any arc list.
  /// Throws std::out_of_range for an endpoint >= vertex_count.
  static Digraph from_arcs(std::size_t vertex_count, std::span<const Arc> arcs);

  std::size_t vertex_count() const noexcept { return offset_.size() - 1; }
  std::size_t arc_count() const noexcept { return targets_.size(); }

  std::span<const Vertex> successors(Vertex v) const {
    return {targets_.data() + offset_[v], offset_[v + 1] - offset_[v]};
  }
  bool has_arc(Vertex from, Vertex to) const;
  std::vector<Arc> arcs() const;

 private:
  std::vector<std::size_t> offset_;
  std::vector<Vertex> targets_;
};

/// Strongly connected components in the order Tarjan's algorithm emits them.
/// Emission order is reverse topological on the condensation: an arc from
/// component A to a different component B implies B was emitted first.
struct SccPartition {
  std::vector<std::vector<Vertex>> components;  // each ascending
  std::vector<std::uint32_t> component_of;
};

/// Work done by a Tarjan run: vertices discovered plus arcs examined.
struct SccWork {
  std::uint64_t vertices = 0;
  std::uint64_t arcs = 0;
  std::uint64_t total() const { return vertices + arcs; }
};

/// Iterative Tarjan. Depth-first searches start from vertices in
/// `start_order` (empty = ascending ids; otherwise a permutation of all
/// vertices). Successors are explored in adjacency order.
SccPartition tarjan_scc(const Digraph& g, std::span<const Vertex> start_order = {},
                        SccWork* work = nullptr);

class EmptyGraph : public std::invalid_argument {
 public:
  EmptyGraph() : std::invalid_argument("first_sink_scc: graph has no vertices") {}
};

/// The first component Tarjan would emit; it has no arc leaving it. Stops the
/// search as soon as that component is complete. Result is ascending.
std::vector<Vertex> first_sink_scc(const Digraph& g, std::span<const Vertex> start_order = {},
                                   SccWork* work = nullptr);

/// Contracts each component to one vertex (ids as in `scc.components`);
/// no self-loops, parallel arcs merged.
Digraph condensation(const Digraph& g, const SccPartition& scc);

}  // namespace htts
