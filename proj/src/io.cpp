#include "htts/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace htts {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(std::move(tok));
  return out;
}

bool is_skippable(const std::vector<std::string>& toks) { return toks.empty() || toks.front().front() == '#'; }

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

}  // namespace

RawMarket parse_market(std::istream& in) {
  RawMarket raw;
  bool have_houses = false;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    auto toks = tokens_of(line);
    if (is_skippable(toks)) continue;
    if (!have_houses) {
      if (toks.front() != "houses:") throw ParseError(lineno, "expected 'houses:' declaration");
      raw.houses.assign(toks.begin() + 1, toks.end());
      raw.houses_line = lineno;
      have_houses = true;
      continue;
    }
    if (toks.size() < 5 || toks[0] != "agent" || toks[2] != "endow" || toks[4] != "prefs")
      throw ParseError(lineno, "expected 'agent <name> endow <house> prefs <house> ...'");
    RawAgent agent;
    agent.name = toks[1];
    agent.endowment = toks[3];
    agent.prefs.assign(toks.begin() + 5, toks.end());
    agent.line = lineno;
    raw.agents.push_back(std::move(agent));
  }
  if (!have_houses) throw ParseError(lineno == 0 ? 1 : lineno, "missing 'houses:' declaration");
  return raw;
}

Market read_market(std::istream& in) { return validate_market(parse_market(in)); }

Market read_market_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_market(in);
}

void write_market(std::ostream& out, const Market& market) {
  const RawMarket raw = market.to_raw();
  out << "houses:";
  for (const auto& h : raw.houses) out << ' ' << h;
  out << '\n';
  for (const auto& a : raw.agents) {
    out << "agent " << a.name << " endow " << a.endowment << " prefs";
    for (const auto& h : a.prefs) out << ' ' << h;
    out << '\n';
  }
}

Allocation read_allocation(std::istream& in, const Market& market) {
  std::vector<HouseId> assignment(market.agent_count());
  std::vector<std::size_t> seen_at(market.agent_count(), 0);
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    auto toks = tokens_of(line);
    if (is_skippable(toks)) continue;
    if (toks.size() != 3 || toks[1] != "->") throw ParseError(lineno, "expected '<agent> -> <house>'");
    auto agent = market.find_agent(toks[0]);
    if (!agent) throw ParseError(lineno, "unknown agent '" + toks[0] + "'");
    auto house = market.find_house(toks[2]);
    if (!house) throw ParseError(lineno, "unknown house '" + toks[2] + "'");
    if (seen_at[index(*agent)])
      throw ParseError(lineno, "agent '" + toks[0] + "' already assigned on line " +
                                   std::to_string(seen_at[index(*agent)]));
    seen_at[index(*agent)] = lineno;
    assignment[index(*agent)] = *house;
  }
  for (std::size_t i = 0; i < market.agent_count(); ++i)
    if (!seen_at[i]) throw ParseError(lineno, "agent '" + market.agent_name(agent_at(i)) + "' is not assigned");
  return Allocation(market, std::move(assignment));
}

Allocation read_allocation_file(const std::string& path, const Market& market) {
  auto in = open_or_throw(path);
  return read_allocation(in, market);
}

void write_allocation(std::ostream& out, const Market& market, const Allocation& allocation) {
  for (std::size_t i = 0; i < market.agent_count(); ++i)
    out << market.agent_name(agent_at(i)) << " -> " << market.house_name(allocation[agent_at(i)]) << '\n';
}

}  // namespace htts
