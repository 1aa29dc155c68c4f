#include "htts/market.hpp"

#include <algorithm>
#include <numeric>

#include "htts/splitmix.hpp"

namespace htts {

namespace {

using Kind = ValidationError::Kind;

std::string at_line(std::size_t line) {
  return line ? " (line " + std::to_string(line) + ")" : std::string{};
}

}  // namespace

// Forward Fisher-Yates, one position at a time: position k swaps with a slot
// drawn from [k, n). Slots that were never touched hold their own index, so
// only displaced slots are stored.
HouseId PreferenceCursor::next() {
  if (!explicit_.empty()) return explicit_[pos_++];
  SplitMix64 rng(rng_state_);
  const auto k = static_cast<std::uint32_t>(pos_);
  const auto j = static_cast<std::uint32_t>(k + rng.below(count_ - k));
  rng_state_ = rng.state();
  const std::uint32_t picked = slot(j);
  if (j != k) displaced_[j] = slot(k);
  displaced_.erase(k);
  ++pos_;
  return house_at(picked);
}

std::uint32_t PreferenceCursor::slot(std::uint32_t i) const {
  auto it = displaced_.find(i);
  return it == displaced_.end() ? i : it->second;
}

PreferenceCursor Market::cursor(AgentId a) const {
  if (generated_) return PreferenceCursor(stream_seed(preference_seed_, a), house_count());
  return PreferenceCursor(preferences(a));
}

std::span<const HouseId> Market::preferences(AgentId a) const {
  if (generated_) throw std::logic_error("preferences(): market has generated preference storage");
  return {prefs_.data() + index(a) * house_count(), house_count()};
}

std::uint64_t Market::stream_seed(std::uint64_t preference_seed, AgentId a) {
  return SplitMix64::mix(preference_seed + (static_cast<std::uint64_t>(index(a)) + 1) * SplitMix64::kGamma);
}

std::optional<HouseId> Market::find_house(const std::string& name) const {
  auto it = house_index_.find(name);
  if (it == house_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<AgentId> Market::find_agent(const std::string& name) const {
  auto it = agent_index_.find(name);
  if (it == agent_index_.end()) return std::nullopt;
  return it->second;
}

bool operator==(const Market& a, const Market& b) {
  if (a.house_names_ != b.house_names_ || a.agent_names_ != b.agent_names_ ||
      a.endowment_ != b.endowment_)
    return false;
  if (a.generated_ && b.generated_) return a.preference_seed_ == b.preference_seed_;
  if (!a.generated_ && !b.generated_) return a.prefs_ == b.prefs_;
  return a.materialized().prefs_ == b.materialized().prefs_;
}

RawMarket Market::to_raw() const {
  RawMarket raw;
  raw.houses = house_names_;
  raw.agents.reserve(agent_count());
  for (std::size_t i = 0; i < agent_count(); ++i) {
    RawAgent agent;
    agent.name = agent_names_[i];
    agent.endowment = house_names_[index(endowment_[i])];
    agent.prefs.reserve(house_count());
    for (auto c = cursor(agent_at(i)); !c.done();) agent.prefs.push_back(house_names_[index(c.next())]);
    raw.agents.push_back(std::move(agent));
  }
  return raw;
}

Market Market::materialized() const {
  if (!generated_) return *this;
  Market m = *this;
  m.generated_ = false;
  m.preference_seed_ = 0;
  m.prefs_.clear();
  m.prefs_.reserve(agent_count() * house_count());
  for (std::size_t i = 0; i < agent_count(); ++i)
    for (auto c = cursor(agent_at(i)); !c.done();) m.prefs_.push_back(c.next());
  m.index_ranks();
  return m;
}

Market Market::generated(std::size_t house_count, std::vector<HouseId> endowment,
                         std::uint64_t preference_seed) {
  Market m;
  m.house_names_.reserve(house_count);
  for (std::size_t h = 0; h < house_count; ++h) m.house_names_.push_back("h" + std::to_string(h + 1));
  m.agent_names_.reserve(endowment.size());
  for (std::size_t i = 0; i < endowment.size(); ++i) m.agent_names_.push_back("a" + std::to_string(i + 1));
  m.endowment_ = std::move(endowment);
  m.generated_ = true;
  m.preference_seed_ = preference_seed;
  m.index_names();
  m.index_owners();
  for (std::size_t h = 0; h < house_count; ++h)
    if (m.endowment_count(house_at(h)) == 0)
      throw ValidationError(Kind::UnendowedHouseType, m.house_names_[h], 0,
                            "house type '" + m.house_names_[h] + "' is not endowed to any agent");
  return m;
}

void Market::index_names() {
  house_index_.clear();
  agent_index_.clear();
  for (std::size_t h = 0; h < house_names_.size(); ++h) house_index_.emplace(house_names_[h], house_at(h));
  for (std::size_t i = 0; i < agent_names_.size(); ++i) agent_index_.emplace(agent_names_[i], agent_at(i));
}

// Counting sort of agents by endowment; ascending agent id within each type.
void Market::index_owners() {
  owner_offset_.assign(house_count() + 1, 0);
  for (HouseId h : endowment_) ++owner_offset_[index(h) + 1];
  std::partial_sum(owner_offset_.begin(), owner_offset_.end(), owner_offset_.begin());
  owners_.resize(agent_count());
  std::vector<std::size_t> fill(owner_offset_.begin(), owner_offset_.end() - 1);
  for (std::size_t i = 0; i < agent_count(); ++i) owners_[fill[index(endowment_[i])]++] = agent_at(i);
}

void Market::index_ranks() {
  const std::size_t n = house_count();
  rank_.assign(prefs_.size(), 0);
  for (std::size_t i = 0; i < agent_count(); ++i)
    for (std::size_t pos = 0; pos < n; ++pos)
      rank_[i * n + index(prefs_[i * n + pos])] = static_cast<std::uint32_t>(pos);
}

Market validate_market(const RawMarket& raw) {
  Market m;
  for (const auto& name : raw.houses) {
    if (name.empty())
      throw ValidationError(Kind::EmptyName, name, raw.houses_line, "empty house name" + at_line(raw.houses_line));
    if (!m.house_index_.emplace(name, house_at(m.house_names_.size())).second)
      throw ValidationError(Kind::DuplicateHouseName, name, raw.houses_line,
                            "duplicate house name '" + name + "'" + at_line(raw.houses_line));
    m.house_names_.push_back(name);
  }

  const std::size_t n = raw.houses.size();
  m.endowment_.reserve(raw.agents.size());
  m.prefs_.reserve(raw.agents.size() * n);
  std::vector<std::size_t> seen(n, 0);
  for (std::size_t i = 0; i < raw.agents.size(); ++i) {
    const RawAgent& agent = raw.agents[i];
    const std::string where = at_line(agent.line);
    if (agent.name.empty())
      throw ValidationError(Kind::EmptyName, agent.name, agent.line, "empty agent name" + where);
    if (!m.agent_index_.emplace(agent.name, agent_at(i)).second)
      throw ValidationError(Kind::DuplicateAgentName, agent.name, agent.line,
                            "duplicate agent name '" + agent.name + "'" + where);
    m.agent_names_.push_back(agent.name);

    auto endow = m.find_house(agent.endowment);
    if (!endow)
      throw ValidationError(Kind::UnknownHouse, agent.endowment, agent.line,
                            "agent '" + agent.name + "' is endowed with unknown house '" + agent.endowment +
                                "'" + where);
    m.endowment_.push_back(*endow);

    // seen[] holds i+1 for houses already listed by agent i.
    for (const auto& pref : agent.prefs) {
      auto h = m.find_house(pref);
      if (!h)
        throw ValidationError(Kind::UnknownHouse, pref, agent.line,
                              "agent '" + agent.name + "' ranks unknown house '" + pref + "'" + where);
      if (seen[index(*h)] == i + 1)
        throw ValidationError(Kind::DuplicateInPreferences, agent.name, agent.line,
                              "agent '" + agent.name + "' ranks house '" + pref + "' twice" + where);
      seen[index(*h)] = i + 1;
      m.prefs_.push_back(*h);
    }
    if (agent.prefs.size() != n)
      throw ValidationError(Kind::IncompletePreferences, agent.name, agent.line,
                            "agent '" + agent.name + "' ranks " + std::to_string(agent.prefs.size()) + " of " +
                                std::to_string(n) + " house types" + where);
  }

  m.index_owners();
  for (std::size_t h = 0; h < n; ++h)
    if (m.endowment_count(house_at(h)) == 0)
      throw ValidationError(Kind::UnendowedHouseType, m.house_names_[h], raw.houses_line,
                            "house type '" + m.house_names_[h] + "' is not endowed to any agent" +
                                at_line(raw.houses_line));
  m.index_ranks();
  return m;
}

HouseSet HouseSet::of(std::size_t universe, std::span<const HouseId> members) {
  HouseSet s(universe);
  for (HouseId h : members) s.insert(h);
  return s;
}

std::vector<HouseId> HouseSet::members() const {
  std::vector<HouseId> out;
  out.reserve(size_);
  for (std::size_t h = 0; h < bits_.size(); ++h)
    if (bits_[h]) out.push_back(house_at(h));
  return out;
}

HouseId best_house(const Market& market, AgentId agent, const HouseSet& remaining) {
  if (remaining.empty()) throw EmptyRemainingSet();
  for (auto c = market.cursor(agent); !c.done();) {
    HouseId h = c.next();
    if (remaining.contains(h)) return h;
  }
  throw std::logic_error("best_house: remaining set is not a subset of the market's house types");
}

bool conserves_endowment(const Market& market, std::span<const HouseId> assignment) {
  if (assignment.size() != market.agent_count()) return false;
  std::vector<std::size_t> count(market.house_count(), 0);
  for (HouseId h : assignment) {
    if (index(h) >= market.house_count()) return false;
    ++count[index(h)];
  }
  for (std::size_t h = 0; h < market.house_count(); ++h)
    if (count[h] != market.endowment_count(house_at(h))) return false;
  return true;
}

Allocation::Allocation(const Market& market, std::vector<HouseId> assignment)
    : assignment_(std::move(assignment)) {
  if (!conserves_endowment(market, assignment_))
    throw InfeasibleAllocation("allocation does not match the endowment multiset");
}

}  // namespace htts
