#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dlpp {

using SortPairIndex = std::size_t;
using TrailerIndex = std::size_t;
using CommodityIndex = std::size_t;
/// Dense index of a compatible (sort pair, trailer type) combination.
using PairSlot = std::size_t;

enum class Sort { Day, Twilight, Night, Sunrise };

enum class ServiceClass { OneDay, TwoDay, ThreeDay, Other };

enum class Scenario { PrimaryOnly, OneAlt, AllAlt };

const char* to_string(Sort sort);
const char* to_string(ServiceClass service_class);
const char* to_string(Scenario scenario);
Sort parse_sort(const std::string& text);
ServiceClass parse_service_class(const std::string& text);
Scenario parse_scenario(const std::string& text);

/// A (terminal, sort, day) node of the time-expanded network.
struct NodeId {
  std::string terminal;
  Sort sort = Sort::Day;
  int day = 1;

  /// Position on the sort timeline; consecutive sorts differ by one.
  int timeline_position() const { return day * 4 + static_cast<int>(sort); }

  friend bool operator==(const NodeId&, const NodeId&) = default;
};

/// An outbound arc from the terminal that carries trailer capacity.
struct SortPair {
  std::string id;
  NodeId origin;
  NodeId destination;
  std::vector<TrailerIndex> allowed_trailers;  // ascending
  std::optional<std::size_t> load_pair;

  friend bool operator==(const SortPair&, const SortPair&) = default;
};

struct LoadPair {
  std::string id;
  std::vector<SortPairIndex> members;

  friend bool operator==(const LoadPair&, const LoadPair&) = default;
};

struct TrailerType {
  std::string id;
  double capacity = 0.0;
  double cost = 0.0;

  friend bool operator==(const TrailerType&, const TrailerType&) = default;
};

struct Alternate {
  SortPairIndex sort_pair = 0;
  double distance = 0.0;  // distance from the alternate next terminal to the destination

  friend bool operator==(const Alternate&, const Alternate&) = default;
};

struct Commodity {
  std::string id;
  double volume = 0.0;
  ServiceClass service_class = ServiceClass::Other;
  SortPairIndex primary = 0;
  std::vector<Alternate> alternates;

  /// Primary first, then alternates in declaration order.
  std::vector<SortPairIndex> compatible() const;
  bool is_compatible(SortPairIndex s) const;

  friend bool operator==(const Commodity&, const Commodity&) = default;
};

/// Planned trailer counts of the reference plan, keyed by (sort pair, trailer type).
struct ReferencePlan {
  std::map<std::pair<SortPairIndex, TrailerIndex>, int> gamma;

  int count(SortPairIndex s, TrailerIndex v) const;

  friend bool operator==(const ReferencePlan&, const ReferencePlan&) = default;
};

struct Instance {
  std::vector<SortPair> sort_pairs;
  std::vector<LoadPair> load_pairs;
  std::vector<TrailerType> trailer_types;
  std::vector<Commodity> commodities;
  std::optional<ReferencePlan> reference_plan;

  double total_volume() const;
  std::vector<double> volumes() const;
  /// Copy with commodity volumes replaced; structure is shared.
  Instance with_volumes(std::span<const double> volumes) const;

  std::optional<SortPairIndex> find_sort_pair(const std::string& id) const;
  std::optional<TrailerIndex> find_trailer(const std::string& id) const;
  std::optional<CommodityIndex> find_commodity(const std::string& id) const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Enumerates the compatible (s, v) combinations in a fixed order: sort pairs
/// ascending, then allowed trailer types ascending. Every solver, plan and
/// model output uses this slot numbering.
class PairIndex {
 public:
  explicit PairIndex(const Instance& inst);

  std::size_t size() const { return pairs_.size(); }
  std::pair<SortPairIndex, TrailerIndex> operator[](PairSlot p) const { return pairs_[p]; }
  std::optional<PairSlot> find(SortPairIndex s, TrailerIndex v) const;
  /// Slots belonging to sort pair s.
  std::span<const PairSlot> slots_of(SortPairIndex s) const { return by_sort_pair_[s]; }
  /// Position of slot p in the full |S| x |V| grid.
  std::size_t grid_position(PairSlot p) const;
  std::size_t grid_size() const { return num_sort_pairs_ * num_trailers_; }

 private:
  std::vector<std::pair<SortPairIndex, TrailerIndex>> pairs_;
  std::vector<std::vector<PairSlot>> by_sort_pair_;
  std::size_t num_sort_pairs_ = 0;
  std::size_t num_trailers_ = 0;
};

/// Checks every instance invariant; throws ValidationError with a field path.
void validate(const Instance& inst);

/// Restricts each commodity's alternates: none, the cheapest one, or all.
Instance restrict_scenario(const Instance& inst, Scenario scenario);

/// Weight of the service class in the diversion cost (1 for one-day ... 4 otherwise).
int service_weight(ServiceClass service_class);

/// Cost of routing commodity k on sort pair s: zero on the primary, distance
/// plus ten times the service weight on an alternate.
double diversion_cost(const Instance& inst, CommodityIndex k, SortPairIndex s);

struct EpsilonWeight {
  double value = 0.0;
  bool degenerate = false;  // fallback used (no alternates or zero volume)
};

inline constexpr double kEpsilonFallback = 1e-9;

/// Weight of the diversion term in the goal-directed objective:
/// 1 / (max alternate diversion cost * total volume).
EpsilonWeight epsilon_weight(const Instance& inst);

/// Number of trailers of type v that could ever be useful on s:
/// ceil(volume compatible with s / capacity of v).
int trailer_upper_bound(const Instance& inst, SortPairIndex s, TrailerIndex v);

}  // namespace dlpp
