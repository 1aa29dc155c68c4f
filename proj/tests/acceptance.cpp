// Acceptance gate. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "htts/commands.hpp"
#include "htts/gen.hpp"
#include "htts/oracle.hpp"
#include "htts/solver.hpp"
#include "htts/splitmix.hpp"
#include "support/checks.hpp"
#include "support/fixtures.hpp"

using namespace htts;
using namespace htts::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Result {
  bool pass = true;
  std::string detail;
};

// Invariant-suite tallies gathered while criteria 2 and 3 run.
struct InvariantTally {
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::string first;

  void record(const Market& m, const SolveOutcome& out) {
    ++instances;
    auto bad = check_outcome(m, out);
    if (!bad.empty() && first.empty()) first = bad.front();
    violations += bad.size();
  }
};

constexpr std::size_t kOracleInstances = 500;
constexpr std::size_t kTtcInstances = 500;
constexpr double kOracleSeconds = 60.0;
constexpr double kTtcSeconds = 30.0;
constexpr double kMaxSlope = 2.3;
constexpr double kLargeSeconds = 10.0;
constexpr double kGoldenSeconds = 1e-3;
constexpr std::size_t kTiebreakMarkets = 100;
constexpr std::uint64_t kTiebreakSeeds = 8;

Result golden_fixture() {
  const Market m = load_fixture("example1.market");
  const auto t0 = Clock::now();
  const SolveOutcome out = htts_solve(m);
  const double secs = seconds_since(t0);
  Result r;
  if (!out.core_found()) return {false, "no core found"};
  const std::vector<std::pair<std::string, std::string>> expect{
      {"1", "h2"}, {"2", "h1"}, {"3", "h2"}, {"4", "h4"}, {"5", "h3"}};
  for (auto& [a, h] : expect)
    if (m.house_name((*out.allocation)[agent(m, a)]) != h) r = {false, "agent " + a + " not assigned " + h};
  std::vector<std::vector<std::string>> segs;
  for (const Segment& s : out.trace) {
    segs.emplace_back();
    for (HouseId h : s.houses) segs.back().push_back(m.house_name(h));
  }
  if (segs != std::vector<std::vector<std::string>>{{"h3", "h4"}, {"h1", "h2"}})
    r = {false, "segmentation differs"};
  if (secs >= kGoldenSeconds) r = {false, "took " + std::to_string(secs) + " s"};
  std::ostringstream os;
  os << "solve time " << secs * 1e6 << " us";
  if (r.pass) r.detail = os.str();
  return r;
}

Result oracle_equivalence(InvariantTally& tally) {
  SplitMix64 rng(20230601);
  const auto t0 = Clock::now();
  std::size_t agree = 0, cores = 0, max_core = 0;
  std::string first_mismatch;
  for (std::size_t k = 0; k < kOracleInstances; ++k) {
    const std::size_t agents = 1 + rng.below(6);
    const std::size_t houses = 1 + rng.below(agents);
    const std::uint64_t seed = rng.next();
    const Market m = random_market({agents, houses, seed});
    const SolveOutcome out = htts_solve(m);
    tally.record(m, out);
    const auto core = enumerate_strict_core(m);
    max_core = std::max(max_core, core.size());
    const bool same = core.empty() ? !out.core_found() : out.core_found() && *out.allocation == core.front();
    if (same) ++agree;
    else if (first_mismatch.empty())
      first_mismatch = "agents=" + std::to_string(agents) + " houses=" + std::to_string(houses) +
                       " seed=" + std::to_string(seed);
    cores += !core.empty();
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << agree << "/" << kOracleInstances << " agree, " << cores << " with a core, max |core| " << max_core << ", "
     << secs << " s";
  if (!first_mismatch.empty()) os << ", first mismatch " << first_mismatch;
  return {agree == kOracleInstances && max_core <= 1 && secs < kOracleSeconds, os.str()};
}

Result ttc_special_case(InvariantTally& tally) {
  SplitMix64 rng(19740101);
  const auto t0 = Clock::now();
  std::size_t agree = 0;
  for (std::size_t k = 0; k < kTtcInstances; ++k) {
    const std::size_t n = 2 + rng.below(7);
    const Market m = random_market({n, n, rng.next()});
    const SolveOutcome out = htts_solve(m);
    tally.record(m, out);
    if (out.core_found() && *out.allocation == ttc_solve(m)) ++agree;
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << agree << "/" << kTtcInstances << " agree, " << secs << " s";
  return {agree == kTtcInstances && secs < kTtcSeconds, os.str()};
}

Result complexity() {
  const auto rows = cli::run_bench({{1000, 2000, 4000, 8000}, 2.0, 7, 1});
  const double slope = *cli::loglog_slope(rows);

  const Market big = random_market_generated({100000, 50000, 7});
  const auto t0 = Clock::now();
  const SolveOutcome out = htts_solve(big);
  const double secs = seconds_since(t0);

  // Random markets usually stop at step 1; the chain family forces H steps.
  std::vector<cli::BenchRow> chain_rows;
  bool chain_ok = true;
  for (std::size_t h : {250, 500, 1000, 2000}) {
    const Market m = chain_market(h, 2);
    const SolveOutcome c = htts_solve(m);
    chain_ok = chain_ok && c.core_found() && c.trace.size() == h;
    cli::BenchRow r;
    r.houses = h;
    r.agents = m.agent_count();
    r.ops = c.ops;
    chain_rows.push_back(r);
  }
  const double chain_slope = *cli::loglog_slope(chain_rows);

  std::ostringstream os;
  os << "random slope " << slope << " (ops";
  for (const auto& r : rows) os << ' ' << r.ops.total();
  os << "), chain slope " << chain_slope << " (ops";
  for (const auto& r : chain_rows) os << ' ' << r.ops.total();
  os << "), H=50000 I=100000 solved in " << secs << " s with " << out.trace.size() << " step(s), "
     << (out.core_found() ? "core found" : "empty core");
  if (!chain_ok) os << ", chain run did not take H steps";
  return {slope <= kMaxSlope && chain_slope <= kMaxSlope && chain_ok && secs < kLargeSeconds, os.str()};
}

Result tiebreak_invariance() {
  SplitMix64 rng(77);
  std::size_t consistent = 0, cores = 0, multi_sink = 0;
  for (std::size_t k = 0; k < kTiebreakMarkets; ++k) {
    const std::size_t agents = 2 + rng.below(39);
    // Injective-heavy mix so that many instances have a core.
    const std::size_t houses = k % 2 ? agents : agents - rng.below(agents / 4 + 1);
    const Market m = random_market({agents, houses, rng.next()});
    const SolveOutcome base = solve_with_tiebreak(m, 0);
    bool ok = true, differs = false;
    for (std::uint64_t seed = 1; seed < kTiebreakSeeds; ++seed) {
      const SolveOutcome out = solve_with_tiebreak(m, seed);
      ok = ok && out.verdict == base.verdict && out.allocation == base.allocation;
      if (out.trace.size() != base.trace.size() ||
          (!out.trace.empty() && out.trace.front().houses != base.trace.front().houses))
        differs = true;
    }
    ok = ok && htts_solve(m).allocation == base.allocation;
    consistent += ok;
    cores += base.core_found();
    multi_sink += differs;
  }
  std::ostringstream os;
  os << consistent << "/" << kTiebreakMarkets << " consistent over " << kTiebreakSeeds << " seeds, " << cores
     << " with a core, " << multi_sink << " with seed-dependent traces";
  return {consistent == kTiebreakMarkets, os.str()};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const std::string& name, const Result& r) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  [" << id << "] " << name << ": " << r.detail << std::endl;
    failed += !r.pass;
  };

  InvariantTally tally;
  report(1, "golden fixture", golden_fixture());
  report(2, "oracle equivalence", oracle_equivalence(tally));
  report(3, "TTC special case", ttc_special_case(tally));
  report(4, "complexity", complexity());
  report(5, "tie-break invariance", tiebreak_invariance());
  {
    std::ostringstream os;
    os << tally.violations << " violations over " << tally.instances << " instances";
    if (!tally.first.empty()) os << ", first: " << tally.first;
    report(6, "invariant suite", {tally.violations == 0 && tally.instances == kOracleInstances + kTtcInstances, os.str()});
  }
  return failed;
}
