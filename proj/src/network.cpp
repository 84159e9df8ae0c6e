#include "dlpp/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "dlpp/errors.hpp"

namespace dlpp {

const char* to_string(Sort sort) {
  switch (sort) {
    case Sort::Day: return "Day";
    case Sort::Twilight: return "Twilight";
    case Sort::Night: return "Night";
    case Sort::Sunrise: return "Sunrise";
  }
  return "Day";
}

const char* to_string(ServiceClass service_class) {
  switch (service_class) {
    case ServiceClass::OneDay: return "OneDay";
    case ServiceClass::TwoDay: return "TwoDay";
    case ServiceClass::ThreeDay: return "ThreeDay";
    case ServiceClass::Other: return "Other";
  }
  return "Other";
}

const char* to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::PrimaryOnly: return "primary-only";
    case Scenario::OneAlt: return "one-alt";
    case Scenario::AllAlt: return "all-alt";
  }
  return "all-alt";
}

Sort parse_sort(const std::string& text) {
  for (Sort s : {Sort::Day, Sort::Twilight, Sort::Night, Sort::Sunrise}) {
    if (text == to_string(s)) return s;
  }
  throw ParseError("unknown sort '" + text + "'");
}

ServiceClass parse_service_class(const std::string& text) {
  for (ServiceClass c : {ServiceClass::OneDay, ServiceClass::TwoDay, ServiceClass::ThreeDay,
                         ServiceClass::Other}) {
    if (text == to_string(c)) return c;
  }
  throw ParseError("unknown service class '" + text + "'");
}

Scenario parse_scenario(const std::string& text) {
  for (Scenario s : {Scenario::PrimaryOnly, Scenario::OneAlt, Scenario::AllAlt}) {
    if (text == to_string(s)) return s;
  }
  throw ParseError("unknown scenario '" + text + "' (expected primary-only, one-alt or all-alt)");
}

std::vector<SortPairIndex> Commodity::compatible() const {
  std::vector<SortPairIndex> out;
  out.reserve(1 + alternates.size());
  out.push_back(primary);
  for (const auto& a : alternates) out.push_back(a.sort_pair);
  return out;
}

bool Commodity::is_compatible(SortPairIndex s) const {
  if (s == primary) return true;
  return std::any_of(alternates.begin(), alternates.end(),
                     [s](const Alternate& a) { return a.sort_pair == s; });
}

int ReferencePlan::count(SortPairIndex s, TrailerIndex v) const {
  auto it = gamma.find({s, v});
  return it == gamma.end() ? 0 : it->second;
}

double Instance::total_volume() const {
  double total = 0.0;
  for (const auto& k : commodities) total += k.volume;
  return total;
}

std::vector<double> Instance::volumes() const {
  std::vector<double> out;
  out.reserve(commodities.size());
  for (const auto& k : commodities) out.push_back(k.volume);
  return out;
}

Instance Instance::with_volumes(std::span<const double> volumes) const {
  if (volumes.size() != commodities.size()) {
    throw DimensionMismatch("expected " + std::to_string(commodities.size()) + " volumes, got " +
                            std::to_string(volumes.size()));
  }
  Instance out = *this;
  for (std::size_t k = 0; k < volumes.size(); ++k) out.commodities[k].volume = volumes[k];
  return out;
}

namespace {

template <typename Range>
std::optional<std::size_t> find_by_id(const Range& items, const std::string& id) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].id == id) return i;
  }
  return std::nullopt;
}

}  // namespace

std::optional<SortPairIndex> Instance::find_sort_pair(const std::string& id) const {
  return find_by_id(sort_pairs, id);
}
std::optional<TrailerIndex> Instance::find_trailer(const std::string& id) const {
  return find_by_id(trailer_types, id);
}
std::optional<CommodityIndex> Instance::find_commodity(const std::string& id) const {
  return find_by_id(commodities, id);
}

PairIndex::PairIndex(const Instance& inst)
    : by_sort_pair_(inst.sort_pairs.size()),
      num_sort_pairs_(inst.sort_pairs.size()),
      num_trailers_(inst.trailer_types.size()) {
  for (SortPairIndex s = 0; s < inst.sort_pairs.size(); ++s) {
    for (TrailerIndex v : inst.sort_pairs[s].allowed_trailers) {
      by_sort_pair_[s].push_back(pairs_.size());
      pairs_.emplace_back(s, v);
    }
  }
}

std::optional<PairSlot> PairIndex::find(SortPairIndex s, TrailerIndex v) const {
  if (s >= by_sort_pair_.size()) return std::nullopt;
  for (PairSlot p : by_sort_pair_[s]) {
    if (pairs_[p].second == v) return p;
  }
  return std::nullopt;
}

std::size_t PairIndex::grid_position(PairSlot p) const {
  return pairs_[p].first * num_trailers_ + pairs_[p].second;
}

void validate(const Instance& inst) {
  const std::size_t num_s = inst.sort_pairs.size();
  const std::size_t num_v = inst.trailer_types.size();

  std::set<std::string> seen;
  for (std::size_t v = 0; v < num_v; ++v) {
    const auto& t = inst.trailer_types[v];
    const std::string path = "trailer_types[" + std::to_string(v) + "]";
    if (t.id.empty()) throw ValidationError(path + ".id", "empty id");
    if (!seen.insert(t.id).second) throw ValidationError(path + ".id", "duplicate id '" + t.id + "'");
    if (!(t.capacity > 0.0) || !std::isfinite(t.capacity)) {
      throw ValidationError(path + ".capacity", "capacity must be positive");
    }
    if (!(t.cost > 0.0) || !std::isfinite(t.cost)) {
      throw ValidationError(path + ".cost", "cost must be positive");
    }
  }

  seen.clear();
  for (std::size_t s = 0; s < num_s; ++s) {
    const auto& sp = inst.sort_pairs[s];
    const std::string path = "sort_pairs[" + std::to_string(s) + "]";
    if (sp.id.empty()) throw ValidationError(path + ".id", "empty id");
    if (!seen.insert(sp.id).second) throw ValidationError(path + ".id", "duplicate id '" + sp.id + "'");
    if (sp.origin.terminal.empty()) throw ValidationError(path + ".origin.terminal", "empty terminal");
    if (sp.destination.terminal.empty()) {
      throw ValidationError(path + ".destination.terminal", "empty terminal");
    }
    if (sp.origin.day < 1) throw ValidationError(path + ".origin.day", "day must be >= 1");
    if (sp.destination.day < 1) throw ValidationError(path + ".destination.day", "day must be >= 1");
    if (sp.origin == sp.destination) throw ValidationError(path, "origin equals destination");
    if (sp.allowed_trailers.empty()) {
      throw ValidationError(path + ".allowed_trailers", "no allowed trailer types");
    }
    for (std::size_t i = 0; i < sp.allowed_trailers.size(); ++i) {
      if (sp.allowed_trailers[i] >= num_v) {
        throw ValidationError(path + ".allowed_trailers[" + std::to_string(i) + "]",
                              "unknown trailer type");
      }
      if (i > 0 && sp.allowed_trailers[i] <= sp.allowed_trailers[i - 1]) {
        throw ValidationError(path + ".allowed_trailers", "trailer types must be distinct");
      }
    }
    if (sp.load_pair && *sp.load_pair >= inst.load_pairs.size()) {
      throw ValidationError(path + ".load_pair", "unknown load pair");
    }
  }

  for (std::size_t l = 0; l < inst.load_pairs.size(); ++l) {
    const auto& lp = inst.load_pairs[l];
    const std::string path = "load_pairs[" + std::to_string(l) + "]";
    if (lp.members.empty()) throw ValidationError(path, "empty load pair");
    std::vector<int> positions;
    for (SortPairIndex s : lp.members) {
      if (s >= num_s) throw ValidationError(path + ".members", "unknown sort pair");
      const auto& sp = inst.sort_pairs[s];
      if (!(sp.destination == inst.sort_pairs[lp.members.front()].destination)) {
        throw ValidationError(path, "members do not share a destination");
      }
      positions.push_back(sp.origin.timeline_position());
    }
    std::sort(positions.begin(), positions.end());
    for (std::size_t i = 1; i < positions.size(); ++i) {
      if (positions[i] != positions[i - 1] + 1) {
        throw ValidationError(path, "member origin sorts are not consecutive");
      }
    }
  }

  seen.clear();
  for (std::size_t k = 0; k < inst.commodities.size(); ++k) {
    const auto& c = inst.commodities[k];
    const std::string path = "commodities[" + std::to_string(k) + "]";
    if (c.id.empty()) throw ValidationError(path + ".id", "empty id");
    if (!seen.insert(c.id).second) throw ValidationError(path + ".id", "duplicate id '" + c.id + "'");
    if (!(c.volume >= 0.0) || !std::isfinite(c.volume)) {
      throw ValidationError(path + ".volume", "volume must be a nonnegative number");
    }
    if (c.primary >= num_s) throw ValidationError(path + ".primary", "unknown sort pair");
    std::set<SortPairIndex> alts;
    for (std::size_t a = 0; a < c.alternates.size(); ++a) {
      const auto& alt = c.alternates[a];
      const std::string apath = path + ".alternates[" + std::to_string(a) + "]";
      if (alt.sort_pair >= num_s) throw ValidationError(apath + ".sort_pair", "unknown sort pair");
      if (alt.sort_pair == c.primary) {
        throw ValidationError(apath + ".sort_pair", "primary sort pair listed as alternate");
      }
      if (!alts.insert(alt.sort_pair).second) {
        throw ValidationError(apath + ".sort_pair", "duplicate alternate");
      }
      if (!(alt.distance >= 0.0) || !std::isfinite(alt.distance)) {
        throw ValidationError(apath + ".distance", "distance must be nonnegative");
      }
    }
  }

  if (inst.reference_plan) {
    for (const auto& [key, count] : inst.reference_plan->gamma) {
      const auto [s, v] = key;
      const std::string path = "reference_plan";
      if (s >= num_s || v >= num_v) throw ValidationError(path, "unknown sort pair or trailer type");
      const auto& allowed = inst.sort_pairs[s].allowed_trailers;
      if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
        throw ValidationError(path, "trailer type " + inst.trailer_types[v].id +
                                        " not allowed on sort pair " + inst.sort_pairs[s].id);
      }
      if (count < 0) throw ValidationError(path, "negative planned count");
    }
  }
}

int service_weight(ServiceClass service_class) {
  switch (service_class) {
    case ServiceClass::OneDay: return 1;
    case ServiceClass::TwoDay: return 2;
    case ServiceClass::ThreeDay: return 3;
    case ServiceClass::Other: return 4;
  }
  return 4;
}

double diversion_cost(const Instance& inst, CommodityIndex k, SortPairIndex s) {
  const auto& c = inst.commodities.at(k);
  if (s == c.primary) return 0.0;
  for (const auto& a : c.alternates) {
    if (a.sort_pair == s) return a.distance + 10.0 * service_weight(c.service_class);
  }
  throw IncompatiblePair("sort pair " + std::to_string(s) + " is not compatible with commodity " +
                         c.id);
}

Instance restrict_scenario(const Instance& inst, Scenario scenario) {
  Instance out = inst;
  if (scenario == Scenario::AllAlt) return out;
  for (CommodityIndex k = 0; k < out.commodities.size(); ++k) {
    auto& c = out.commodities[k];
    if (scenario == Scenario::PrimaryOnly || c.alternates.empty()) {
      c.alternates.clear();
      continue;
    }
    // Cheapest alternate by diversion cost; ties go to the lowest sort pair index.
    const Alternate* best = nullptr;
    double best_cost = std::numeric_limits<double>::infinity();
    for (const auto& a : c.alternates) {
      const double cost = a.distance + 10.0 * service_weight(c.service_class);
      if (cost < best_cost || (cost == best_cost && a.sort_pair < best->sort_pair)) {
        best = &a;
        best_cost = cost;
      }
    }
    c.alternates = {*best};
  }
  return out;
}

EpsilonWeight epsilon_weight(const Instance& inst) {
  double max_term = 0.0;
  for (const auto& c : inst.commodities) {
    for (const auto& a : c.alternates) {
      max_term = std::max(max_term, a.distance + 10.0 * service_weight(c.service_class));
    }
  }
  const double total = inst.total_volume();
  if (!(max_term > 0.0) || !(total > 0.0)) return {kEpsilonFallback, true};
  return {1.0 / (max_term * total), false};
}

int trailer_upper_bound(const Instance& inst, SortPairIndex s, TrailerIndex v) {
  double volume = 0.0;
  for (const auto& c : inst.commodities) {
    if (c.is_compatible(s)) volume += c.volume;
  }
  const double ratio = volume / inst.trailer_types.at(v).capacity;
  return static_cast<int>(std::ceil(ratio - 1e-9));
}

}  // namespace dlpp
