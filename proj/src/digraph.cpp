#include "htts/digraph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace htts {

Digraph Digraph::from_arcs(std::size_t vertex_count, std::span<const Arc> arcs) {
  for (const Arc& a : arcs)
    if (a.from >= vertex_count || a.to >= vertex_count)
      throw std::out_of_range("Digraph::from_arcs: arc endpoint out of range");

  // Pass 1 buckets by target, pass 2 stably by source, so each source's
  // targets come out ascending and duplicates end up adjacent.
  std::vector<std::size_t> start(vertex_count + 1, 0);
  for (const Arc& a : arcs) ++start[a.to + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<Arc> by_target(arcs.size());
  for (const Arc& a : arcs) by_target[start[a.to]++] = a;

  std::fill(start.begin(), start.end(), 0);
  for (const Arc& a : by_target) ++start[a.from + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<Vertex> sorted(arcs.size());
  for (const Arc& a : by_target) sorted[start[a.from]++] = a.to;
  // start[v] now marks the end of v's bucket.

  Digraph g;
  g.offset_.assign(vertex_count + 1, 0);
  g.targets_.reserve(arcs.size());
  std::size_t begin = 0;
  for (std::size_t v = 0; v < vertex_count; ++v) {
    const std::size_t end = start[v];
    for (std::size_t k = begin; k < end; ++k)
      if (k == begin || sorted[k] != sorted[k - 1]) g.targets_.push_back(sorted[k]);
    g.offset_[v + 1] = g.targets_.size();
    begin = end;
  }
  return g;
}

bool Digraph::has_arc(Vertex from, Vertex to) const {
  auto succ = successors(from);
  return std::binary_search(succ.begin(), succ.end(), to);
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(arc_count());
  for (Vertex v = 0; v < vertex_count(); ++v)
    for (Vertex w : successors(v)) out.push_back({v, w});
  return out;
}

namespace {

constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();

/// Explicit-stack Tarjan. `emit` is called with each finished component and
/// returns false to stop the whole search.
template <typename Emit>
void run_tarjan(const Digraph& g, std::span<const Vertex> start_order, SccWork* work, Emit&& emit) {
  const std::size_t n = g.vertex_count();
  if (!start_order.empty() && start_order.size() != n)
    throw std::invalid_argument("tarjan_scc: start order must list every vertex");

  std::vector<std::uint32_t> order(n, kUnvisited);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<std::uint8_t> on_stack(n, 0);
  std::vector<Vertex> stack;

  struct Frame {
    Vertex v;
    std::uint32_t next;
  };
  std::vector<Frame> calls;

  std::uint32_t counter = 0;
  std::uint64_t vertices = 0;
  std::uint64_t arcs = 0;
  auto discover = [&](Vertex v) {
    order[v] = low[v] = counter++;
    on_stack[v] = 1;
    stack.push_back(v);
    calls.push_back({v, 0});
    ++vertices;
  };

  bool stopped = false;
  for (std::size_t s = 0; s < n && !stopped; ++s) {
    const Vertex root = start_order.empty() ? static_cast<Vertex>(s) : start_order[s];
    if (order[root] != kUnvisited) continue;
    discover(root);
    while (!calls.empty()) {
      Frame& top = calls.back();
      const Vertex v = top.v;
      auto succ = g.successors(v);
      if (top.next < succ.size()) {
        const Vertex w = succ[top.next++];
        ++arcs;
        if (order[w] == kUnvisited) {
          discover(w);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], order[w]);
        }
        continue;
      }
      calls.pop_back();
      if (!calls.empty()) {
        const Vertex parent = calls.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
      if (low[v] == order[v]) {
        std::vector<Vertex> component;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        if (!emit(std::move(component))) {
          stopped = true;
          break;
        }
      }
    }
  }
  if (work) {
    work->vertices += vertices;
    work->arcs += arcs;
  }
}

}  // namespace

SccPartition tarjan_scc(const Digraph& g, std::span<const Vertex> start_order, SccWork* work) {
  SccPartition out;
  out.component_of.assign(g.vertex_count(), 0);
  run_tarjan(g, start_order, work, [&](std::vector<Vertex> component) {
    const auto id = static_cast<std::uint32_t>(out.components.size());
    for (Vertex v : component) out.component_of[v] = id;
    out.components.push_back(std::move(component));
    return true;
  });
  return out;
}

std::vector<Vertex> first_sink_scc(const Digraph& g, std::span<const Vertex> start_order, SccWork* work) {
  if (g.vertex_count() == 0) throw EmptyGraph();
  std::vector<Vertex> first;
  run_tarjan(g, start_order, work, [&](std::vector<Vertex> component) {
    first = std::move(component);
    return false;
  });
  return first;
}

Digraph condensation(const Digraph& g, const SccPartition& scc) {
  std::vector<Arc> arcs;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (Vertex w : g.successors(v))
      if (scc.component_of[v] != scc.component_of[w]) arcs.push_back({scc.component_of[v], scc.component_of[w]});
  return Digraph::from_arcs(scc.components.size(), arcs);
}

}  // namespace htts
