#pragma once

// Text formats.
//
// Market file:
//   houses: <house> <house> ...
//   agent <name> endow <house> prefs <house> <house> ...
// one agent per line; lines whose first non-blank character is '#' are
// comments; blank lines are ignored. Names are whitespace-free tokens.
//
// Allocation file: one `<agent> -> <house>` line per agent, written in agent
// declaration order.

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "htts/market.hpp"

namespace htts {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

RawMarket parse_market(std::istream& in);
/// Parses and validates; ValidationError messages carry the source line.
Market read_market(std::istream& in);
Market read_market_file(const std::string& path);
void write_market(std::ostream& out, const Market& market);

/// Throws ParseError for unknown, repeated or missing agents and unknown
/// house names; InfeasibleAllocation if the multiset does not match.
Allocation read_allocation(std::istream& in, const Market& market);
Allocation read_allocation_file(const std::string& path, const Market& market);
void write_allocation(std::ostream& out, const Market& market, const Allocation& allocation);

}  // namespace htts
