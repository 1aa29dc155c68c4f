#include "htts/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>

#include "htts/gen.hpp"
#include "htts/io.hpp"
#include "htts/oracle.hpp"

namespace htts::cli {

namespace {

/// Runs `body`, mapping input problems to exit code 1.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

void print_certificate(std::ostream& out, const Market& market, const BlockingCertificate& cert) {
  out << "BLOCKED by coalition {";
  for (std::size_t k = 0; k < cert.coalition.size(); ++k)
    out << (k ? "," : "") << market.agent_name(cert.coalition[k]);
  out << "}\n";
  for (auto [a, h] : cert.sub_allocation) out << market.agent_name(a) << " -> " << market.house_name(h) << '\n';
}

}  // namespace

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Market market = read_market_file(opts.market_path);
    const SolveOutcome result =
        opts.tiebreak_seed ? solve_with_tiebreak(market, *opts.tiebreak_seed) : htts_solve(market);
    if (result.core_found()) write_allocation(out, market, *result.allocation);
    if (opts.trace) out << render_trace(market, result.trace);
    if (opts.stats)
      out << "arcs=" << result.ops.arcs_built << " scc=" << result.ops.scc_work
          << " feas=" << result.ops.feasibility_comparisons << '\n';
    if (result.core_found()) return kExitOk;
    err << "EMPTY CORE at step " << *result.failed_step << '\n';
    return kExitNoCore;
  });
}

int cmd_verify(const std::string& market_path, const std::string& allocation_path, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const Market market = read_market_file(market_path);
    if (market.agent_count() > kDefaultOracleCap) throw CapExceeded(market.agent_count(), kDefaultOracleCap);
    const Allocation mu = read_allocation_file(allocation_path, market);
    if (auto cert = find_blocking_coalition(market, mu)) {
      print_certificate(out, market, *cert);
      return kExitNoCore;
    }
    out << "IN STRICT CORE\n";
    return kExitOk;
  });
}

int cmd_oracle(const std::string& market_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Market market = read_market_file(market_path);
    const auto core = enumerate_strict_core(market);
    if (core.empty()) {
      err << "EMPTY CORE\n";
      return kExitNoCore;
    }
    if (core.size() > 1)
      throw std::logic_error("oracle found " + std::to_string(core.size()) + " strict-core allocations");
    write_allocation(out, market, core.front());
    return kExitOk;
  });
}

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Market market = random_market({opts.agents, opts.houses, opts.seed});
    out << "# generated: agents=" << opts.agents << " houses=" << opts.houses << " seed=" << opts.seed << '\n';
    write_market(out, market);
    return kExitOk;
  });
}

std::vector<BenchRow> run_bench(const BenchOptions& opts) {
  if (opts.sizes.empty()) throw std::invalid_argument("bench: size list is empty");
  if (!(opts.ratio >= 1.0)) throw std::invalid_argument("bench: ratio must be at least 1");
  if (opts.repeats < 1) throw std::invalid_argument("bench: repeats must be at least 1");

  std::vector<BenchRow> rows;
  for (std::size_t h : opts.sizes) {
    if (h < 1) throw std::invalid_argument("bench: sizes must be positive");
    BenchRow row;
    row.houses = h;
    row.agents = static_cast<std::size_t>(std::llround(opts.ratio * static_cast<double>(h)));
    const Market market = random_market_generated({row.agents, row.houses, opts.seed});
    for (std::size_t r = 0; r < opts.repeats; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      const SolveOutcome result = htts_solve(market);
      const auto ns = static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count());
      if (r == 0) {
        row.ops = result.ops;
        row.wall_ns = ns;
      } else {
        if (!(result.ops == row.ops)) throw std::logic_error("bench: repeats disagree on operation counts");
        row.wall_ns = std::min(row.wall_ns, ns);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::optional<double> loglog_slope(std::span<const BenchRow> rows) {
  std::set<std::size_t> distinct;
  for (const auto& r : rows) distinct.insert(r.houses);
  if (distinct.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(rows.size());
  for (const auto& r : rows) {
    const double x = std::log(static_cast<double>(r.houses));
    const double y = std::log(static_cast<double>(std::max<std::uint64_t>(r.ops.total(), 1)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto rows = run_bench(opts);
    out << "H I wall_ns arcs scc feas\n";
    for (const auto& r : rows)
      out << r.houses << ' ' << r.agents << ' ' << r.wall_ns << ' ' << r.ops.arcs_built << ' ' << r.ops.scc_work
          << ' ' << r.ops.feasibility_comparisons << '\n';
    if (auto slope = loglog_slope(rows))
      out << "slope " << std::fixed << std::setprecision(3) << *slope << '\n';
    else
      out << "slope n/a\n";
    return kExitOk;
  });
}

}  // namespace htts::cli
