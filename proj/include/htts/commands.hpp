#pragma once

// Subcommand bodies behind the `htts` executable. Each returns the process
// exit code: 0 core found / allocation in the core, 2 empty core / blocked,
// 1 input error.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "htts/solver.hpp"

namespace htts::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNoCore = 2;

struct SolveOptions {
  std::string market_path;
  bool trace = false;
  std::optional<std::uint64_t> tiebreak_seed;
  bool stats = false;
};

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& market_path, const std::string& allocation_path, std::ostream& out,
               std::ostream& err);
int cmd_oracle(const std::string& market_path, std::ostream& out, std::ostream& err);

struct GenOptions {
  std::size_t agents = 1;
  std::size_t houses = 1;
  std::uint64_t seed = 0;
};

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::vector<std::size_t> sizes;
  double ratio = 2.0;
  std::uint64_t seed = 0;
  std::size_t repeats = 1;
};

struct BenchRow {
  std::size_t houses = 0;
  std::size_t agents = 0;
  std::uint64_t wall_ns = 0;  // fastest repeat
  OpCounter ops;
};

/// Solves one generated market per size (I = round(ratio * H)), `repeats`
/// times each. Throws std::invalid_argument on bad options and
/// std::logic_error if repeats disagree on the operation counts.
std::vector<BenchRow> run_bench(const BenchOptions& opts);

/// Least-squares slope of log(total ops) against log(H); nullopt with fewer
/// than two distinct sizes.
std::optional<double> loglog_slope(std::span<const BenchRow> rows);

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace htts::cli
