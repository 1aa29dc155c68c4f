#pragma once

#include <string>

#include "htts/io.hpp"
#include "htts/market.hpp"

namespace htts::testing {

inline std::string fixture(const std::string& name) { return std::string(HTTS_FIXTURE_DIR) + "/" + name; }

inline Market load_fixture(const std::string& name) { return read_market_file(fixture(name)); }

inline HouseId house(const Market& m, const std::string& name) { return *m.find_house(name); }
inline AgentId agent(const Market& m, const std::string& name) { return *m.find_agent(name); }

}  // namespace htts::testing
