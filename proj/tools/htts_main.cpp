// htts: strict-core solver for house-swapping markets with duplicate house types.

#include <iostream>

#include <CLI11.hpp>

#include "htts/commands.hpp"

int main(int argc, char** argv) {
  using namespace htts::cli;

  CLI::App app{"Strict-core solver for house-swapping markets with objective indifferences"};
  app.require_subcommand(1);

  SolveOptions solve;
  std::uint64_t tiebreak = 0;
  auto* solve_cmd = app.add_subcommand("solve", "Compute the strict-core allocation, if any");
  solve_cmd->add_option("market", solve.market_path, "Market file")->required();
  solve_cmd->add_flag("--trace", solve.trace, "Print one line per trading segment");
  auto* seed_opt = solve_cmd->add_option("--tiebreak-seed", tiebreak, "Permute sink-component selection");
  solve_cmd->add_flag("--stats", solve.stats, "Print operation counters");

  std::string verify_market, verify_alloc;
  auto* verify_cmd = app.add_subcommand("verify", "Check an allocation against every coalition");
  verify_cmd->add_option("market", verify_market, "Market file")->required();
  verify_cmd->add_option("allocation", verify_alloc, "Allocation file")->required();

  std::string oracle_market;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force strict core (small markets)");
  oracle_cmd->add_option("market", oracle_market, "Market file")->required();

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a seeded random market");
  gen_cmd->add_option("--agents", gen.agents, "Agent count")->required();
  gen_cmd->add_option("--houses", gen.houses, "House type count")->required();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Operation-count scaling table");
  bench_cmd->add_option("--sizes", bench.sizes, "House type counts, comma separated")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--ratio", bench.ratio, "Agents per house type");
  bench_cmd->add_option("--seed", bench.seed, "Generator seed");
  bench_cmd->add_option("--repeats", bench.repeats, "Timed repeats per size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  if (*solve_cmd) {
    if (*seed_opt) solve.tiebreak_seed = tiebreak;
    return cmd_solve(solve, std::cout, std::cerr);
  }
  if (*verify_cmd) return cmd_verify(verify_market, verify_alloc, std::cout, std::cerr);
  if (*oracle_cmd) return cmd_oracle(oracle_market, std::cout, std::cerr);
  if (*gen_cmd) return cmd_gen(gen, std::cout, std::cerr);
  return cmd_bench(bench, std::cout, std::cerr);
}
