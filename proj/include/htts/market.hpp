#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace htts {

enum class HouseId : std::uint32_t {};
enum class AgentId : std::uint32_t {};

constexpr std::size_t index(HouseId h) { return static_cast<std::size_t>(h); }
constexpr std::size_t index(AgentId a) { return static_cast<std::size_t>(a); }
constexpr HouseId house_at(std::size_t i) { return static_cast<HouseId>(i); }
constexpr AgentId agent_at(std::size_t i) { return static_cast<AgentId>(i); }

/// Unvalidated market description as it comes out of a parser or generator.
/// Houses and agents are referred to by name; `line` is an optional source
/// location used only for error messages (0 = unknown).
struct RawAgent {
  std::string name;
  std::string endowment;
  std::vector<std::string> prefs;
  std::size_t line = 0;
};

struct RawMarket {
  std::vector<std::string> houses;
  std::vector<RawAgent> agents;
  std::size_t houses_line = 0;
};

class ValidationError : public std::runtime_error {
 public:
  enum class Kind {
    EmptyName,
    DuplicateHouseName,
    DuplicateAgentName,
    UnknownHouse,
    IncompletePreferences,
    DuplicateInPreferences,
    UnendowedHouseType,
  };

  ValidationError(Kind kind, std::string subject, std::size_t line, const std::string& what)
      : std::runtime_error(what), kind_(kind), subject_(std::move(subject)), line_(line) {}

  Kind kind() const noexcept { return kind_; }
  /// Name of the offending agent or house.
  const std::string& subject() const noexcept { return subject_; }
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::string subject_;
  std::size_t line_;
};

class Market;

/// Forward iterator over one agent's ranking, most preferred first. Works for
/// both explicit and generated preference storage; generated rankings are
/// produced incrementally so only the consumed prefix costs anything.
class PreferenceCursor {
 public:
  bool done() const noexcept { return pos_ == count_; }
  std::size_t position() const noexcept { return pos_; }
  /// Returns the next house type in the ranking. Precondition: !done().
  HouseId next();

 private:
  friend class Market;
  PreferenceCursor(std::span<const HouseId> ranking)
      : explicit_(ranking), count_(ranking.size()) {}
  PreferenceCursor(std::uint64_t stream_seed, std::size_t count)
      : rng_state_(stream_seed), count_(count) {}

  std::uint32_t slot(std::uint32_t i) const;

  std::span<const HouseId> explicit_;
  std::uint64_t rng_state_ = 0;
  std::unordered_map<std::uint32_t, std::uint32_t> displaced_;
  std::size_t pos_ = 0;
  std::size_t count_ = 0;
};

/// A house-swapping market with objective indifferences: agents endowed with
/// house types (possibly several copies per type) and complete strict
/// preferences over types. Immutable once built; build via validate_market
/// or the generator.
///
/// Preferences are stored either explicitly (rank table available) or as a
/// seeded generator, which is how markets with 10^5 agents and 10^4+ types fit
/// in memory. rank(), preferences() and prefers() need explicit storage.
class Market {
 public:
  Market() = default;

  std::size_t house_count() const noexcept { return house_names_.size(); }
  std::size_t agent_count() const noexcept { return endowment_.size(); }

  HouseId endowment(AgentId a) const { return endowment_[index(a)]; }
  std::span<const HouseId> endowments() const noexcept { return endowment_; }

  bool has_explicit_preferences() const noexcept { return !generated_; }
  PreferenceCursor cursor(AgentId a) const;

  /// Ranking, most preferred first. Throws std::logic_error on generated storage.
  std::span<const HouseId> preferences(AgentId a) const;
  /// Position of h in a's ranking; 0 is the favourite.
  std::uint32_t rank(AgentId a, HouseId h) const {
    return rank_[index(a) * house_count() + index(h)];
  }
  bool prefers(AgentId a, HouseId x, HouseId y) const { return rank(a, x) < rank(a, y); }
  bool weakly_prefers(AgentId a, HouseId x, HouseId y) const { return rank(a, x) <= rank(a, y); }

  /// Agents endowed with h, ascending id.
  std::span<const AgentId> owners(HouseId h) const {
    return {owners_.data() + owner_offset_[index(h)],
            owner_offset_[index(h) + 1] - owner_offset_[index(h)]};
  }
  std::size_t endowment_count(HouseId h) const { return owners(h).size(); }

  const std::string& house_name(HouseId h) const { return house_names_[index(h)]; }
  const std::string& agent_name(AgentId a) const { return agent_names_[index(a)]; }
  std::optional<HouseId> find_house(const std::string& name) const;
  std::optional<AgentId> find_agent(const std::string& name) const;

  friend bool operator==(const Market& a, const Market& b);

  /// Named description; materializes generated rankings.
  RawMarket to_raw() const;
  /// Copy with explicit preference storage.
  Market materialized() const;

  /// Builds a market whose agent a ranks houses in the order produced by a
  /// PreferenceCursor seeded with stream_seed(a). Endowment must be surjective.
  static Market generated(std::size_t house_count, std::vector<HouseId> endowment,
                          std::uint64_t preference_seed);
  /// Seed of agent a's ranking stream for generated markets.
  static std::uint64_t stream_seed(std::uint64_t preference_seed, AgentId a);

 private:
  friend Market validate_market(const RawMarket& raw);

  void index_names();
  void index_owners();
  void index_ranks();

  std::vector<std::string> house_names_;
  std::vector<std::string> agent_names_;
  std::unordered_map<std::string, HouseId> house_index_;
  std::unordered_map<std::string, AgentId> agent_index_;
  std::vector<HouseId> endowment_;
  std::vector<HouseId> prefs_;       // agent-major, house_count() per agent
  std::vector<std::uint32_t> rank_;  // agent-major inverse of prefs_
  std::vector<AgentId> owners_;
  std::vector<std::size_t> owner_offset_;
  bool generated_ = false;
  std::uint64_t preference_seed_ = 0;
};

/// Checks every model assumption and builds the indexed Market.
/// Throws ValidationError.
Market validate_market(const RawMarket& raw);

/// Membership set over house types, sized to a market's house count.
class HouseSet {
 public:
  HouseSet() = default;
  explicit HouseSet(std::size_t universe, bool full = false)
      : bits_(universe, full ? 1 : 0), size_(full ? universe : 0) {}

  static HouseSet of(std::size_t universe, std::span<const HouseId> members);

  bool contains(HouseId h) const { return bits_[index(h)] != 0; }
  void insert(HouseId h) {
    if (!bits_[index(h)]) {
      bits_[index(h)] = 1;
      ++size_;
    }
  }
  void erase(HouseId h) {
    if (bits_[index(h)]) {
      bits_[index(h)] = 0;
      --size_;
    }
  }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  std::size_t universe() const noexcept { return bits_.size(); }
  std::vector<HouseId> members() const;

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t size_ = 0;
};

class EmptyRemainingSet : public std::invalid_argument {
 public:
  EmptyRemainingSet() : std::invalid_argument("best_house: remaining set is empty") {}
};

/// The agent's favourite house type among `remaining`.
HouseId best_house(const Market& market, AgentId agent, const HouseSet& remaining);

class InfeasibleAllocation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Agent -> house type map whose per-type counts equal the endowment counts.
class Allocation {
 public:
  Allocation() = default;

  /// Throws InfeasibleAllocation if sizes or type multiplicities disagree.
  Allocation(const Market& market, std::vector<HouseId> assignment);

  HouseId operator[](AgentId a) const { return assignment_[index(a)]; }
  std::span<const HouseId> assignment() const noexcept { return assignment_; }
  std::size_t size() const noexcept { return assignment_.size(); }

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::vector<HouseId> assignment_;
};

/// True when `assignment` has the market's endowment multiset.
bool conserves_endowment(const Market& market, std::span<const HouseId> assignment);

}  // namespace htts
