#include "dlpp/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "dlpp/oracles.hpp"

namespace dlpp {

namespace {

SortPair make_pair_arc(std::string id, Sort origin_sort, std::string destination, std::vector<TrailerIndex> allowed) {
  SortPair sp;
  sp.id = std::move(id);
  sp.origin = {"O", origin_sort, 1};
  sp.destination = {std::move(destination), Sort::Sunrise, 2};
  sp.allowed_trailers = std::move(allowed);
  return sp;
}

Commodity make_commodity(std::string id, double volume, SortPairIndex primary,
                         std::vector<Alternate> alternates = {}, ServiceClass sc = ServiceClass::TwoDay) {
  Commodity c;
  c.id = std::move(id);
  c.volume = volume;
  c.service_class = sc;
  c.primary = primary;
  c.alternates = std::move(alternates);
  return c;
}

double round_to(double x, double step) { return std::round(x / step) * step; }

ServiceClass random_service(Rng& rng) { return static_cast<ServiceClass>(rng.below(4)); }

}  // namespace

Instance fixture_t1() {
  Instance inst;
  inst.trailer_types.push_back({"v1", 50.0, 50.0});
  inst.sort_pairs.push_back(make_pair_arc("s1", Sort::Twilight, "A", {0}));
  inst.sort_pairs.push_back(make_pair_arc("s2", Sort::Twilight, "B", {0}));
  inst.commodities.push_back(make_commodity("k1", 60.0, 0));
  inst.commodities.push_back(make_commodity("k2", 30.0, 0, {{1, 25.0}}));
  inst.commodities.push_back(make_commodity("k3", 40.0, 1));
  ReferencePlan ref;
  ref.gamma[{0, 0}] = 2;
  ref.gamma[{1, 0}] = 2;
  inst.reference_plan = ref;
  validate(inst);
  return inst;
}

Instance fixture_splitting() {
  Instance inst;
  inst.trailer_types.push_back({"v1", 5.0, 5.0});
  SortPair to_c = make_pair_arc("B-C", Sort::Night, "C", {0});
  SortPair to_e = make_pair_arc("B-E", Sort::Night, "E", {0});
  SortPair to_d = make_pair_arc("B-D", Sort::Night, "D", {0});
  for (SortPair* sp : {&to_c, &to_e, &to_d}) sp->origin.terminal = "B";
  inst.sort_pairs = {to_c, to_e, to_d};
  inst.commodities.push_back(make_commodity("to-C", 4.0, 0));
  inst.commodities.push_back(make_commodity("to-E", 3.0, 1));
  inst.commodities.push_back(make_commodity("to-F", 3.0, 0, {{1, 10.0}, {2, 12.0}}));
  validate(inst);
  return inst;
}

ReferencePlan primary_knapsack_reference(const Instance& inst) {
  std::vector<double> vol(inst.sort_pairs.size(), 0.0);
  for (const auto& c : inst.commodities) vol[c.primary] += c.volume;
  ReferencePlan ref;
  for (SortPairIndex s = 0; s < inst.sort_pairs.size(); ++s) {
    std::vector<TrailerType> types;
    for (TrailerIndex v : inst.sort_pairs[s].allowed_trailers) types.push_back(inst.trailer_types[v]);
    const KnapsackResult r = min_knapsack(vol[s], types);
    for (std::size_t i = 0; i < types.size(); ++i) {
      ref.gamma[{s, inst.sort_pairs[s].allowed_trailers[i]}] = r.counts[i];
    }
  }
  return ref;
}

Instance synthetic_terminal(std::uint64_t seed, const TerminalShape& shape) {
  Rng rng(seed, 0);
  Instance inst;
  inst.trailer_types.push_back({"T50", 50.0, 50.0});
  inst.trailer_types.push_back({"T25", 25.0, 25.0});
  const std::vector<std::vector<TrailerIndex>> patterns{{0}, {0, 1}, {1}};
  for (std::size_t d = 0; d < shape.destinations; ++d) {
    const std::string dest = "D" + std::to_string(d + 1);
    const auto& allowed = patterns[d % patterns.size()];
    const SortPairIndex first = inst.sort_pairs.size();
    inst.sort_pairs.push_back(make_pair_arc(dest + "-tw", Sort::Twilight, dest, allowed));
    inst.sort_pairs.push_back(make_pair_arc(dest + "-ni", Sort::Night, dest, allowed));
    inst.sort_pairs[first].load_pair = inst.load_pairs.size();
    inst.sort_pairs[first + 1].load_pair = inst.load_pairs.size();
    inst.load_pairs.push_back({"LP-" + dest, {first, first + 1}});
  }
  const std::size_t S = inst.sort_pairs.size();
  for (std::size_t k = 0; k < shape.commodities; ++k) {
    const SortPairIndex primary = static_cast<SortPairIndex>(rng.below(S));
    const double volume = round_to(rng.uniform(shape.min_volume, shape.max_volume), 0.01);
    std::vector<Alternate> alts;
    if (rng.uniform() < shape.alternate_share) {
      const std::size_t count = 1 + rng.below(2);
      // Same destination in the other sort, then another destination.
      const SortPairIndex sibling = primary % 2 == 0 ? primary + 1 : primary - 1;
      alts.push_back({sibling, round_to(rng.uniform(0.0, 10.0), 0.1)});
      if (count == 2 && S > 2) {
        SortPairIndex other = static_cast<SortPairIndex>(rng.below(S));
        while (other == primary || other == sibling) other = (other + 1) % S;
        alts.push_back({other, round_to(rng.uniform(20.0, 200.0), 0.1)});
      }
    }
    inst.commodities.push_back(
        make_commodity("K" + std::to_string(k + 1), volume, primary, std::move(alts), random_service(rng)));
  }
  inst.reference_plan = primary_knapsack_reference(inst);
  validate(inst);
  return inst;
}

Instance random_small_instance(Rng& rng, const SmallShape& shape) {
  static const double kCapacities[] = {20.0, 25.0, 30.0, 40.0, 50.0, 60.0};
  Instance inst;
  const std::size_t V = 1 + rng.below(shape.max_trailer_types);
  for (std::size_t v = 0; v < V; ++v) {
    const double q = kCapacities[rng.below(6)];
    const double c = std::round(q * rng.uniform(0.8, 1.25));
    inst.trailer_types.push_back({"v" + std::to_string(v + 1), q, c});
  }
  const std::size_t S = 1 + rng.below(shape.max_sort_pairs);
  for (std::size_t s = 0; s < S; ++s) {
    std::vector<TrailerIndex> allowed;
    for (TrailerIndex v = 0; v < V; ++v) {
      if (rng.uniform() < 0.6) allowed.push_back(v);
    }
    if (allowed.empty()) allowed.push_back(static_cast<TrailerIndex>(rng.below(V)));
    inst.sort_pairs.push_back(make_pair_arc("s" + std::to_string(s + 1), Sort::Twilight,
                                            "D" + std::to_string(s + 1), allowed));
  }
  const std::size_t K = 1 + rng.below(shape.max_commodities);
  for (std::size_t k = 0; k < K; ++k) {
    const SortPairIndex primary = static_cast<SortPairIndex>(rng.below(S));
    std::vector<Alternate> alts;
    for (SortPairIndex s = 0; s < S; ++s) {
      if (s != primary && rng.uniform() < 0.5) alts.push_back({s, std::round(rng.uniform(0.0, 50.0))});
    }
    const double volume = 1.0 + std::floor(rng.uniform(0.0, shape.max_volume));
    inst.commodities.push_back(
        make_commodity("k" + std::to_string(k + 1), volume, primary, std::move(alts), random_service(rng)));
  }
  ReferencePlan ref;
  const PairIndex pairs(inst);
  for (PairSlot p = 0; p < pairs.size(); ++p) {
    const int ub = trailer_upper_bound(inst, pairs[p].first, pairs[p].second);
    ref.gamma[pairs[p]] = static_cast<int>(rng.below(static_cast<std::uint64_t>(ub) + 1));
  }
  inst.reference_plan = ref;
  validate(inst);
  return inst;
}

Instance random_case_instance(int which, Rng& rng) {
  static const double kCapacities[] = {20.0, 25.0, 30.0, 40.0, 50.0};
  if (which == 5) {
    const std::size_t S = 2 + rng.below(7);
    const std::size_t K = 2 + rng.below(9);
    std::vector<std::vector<std::size_t>> sets(S);
    for (std::size_t e = 0; e < K; ++e) {
      bool placed = false;
      for (std::size_t s = 0; s < S; ++s) {
        if (rng.uniform() < 0.35) {
          sets[s].push_back(e);
          placed = true;
        }
      }
      if (!placed) sets[rng.below(S)].push_back(e);
    }
    return case5_instance(K, sets);
  }
  if (which < 1 || which > 5) throw std::invalid_argument("special cases are numbered 1 to 5");

  Instance inst;
  const bool multi_type = which == 3 || which == 4;
  const std::size_t V = which == 2 ? 1 : 1 + rng.below(3);
  for (std::size_t v = 0; v < V; ++v) {
    const double q = kCapacities[rng.below(5)];
    const double c = multi_type ? std::round(q * rng.uniform(0.7, 1.3)) : q;
    inst.trailer_types.push_back({"v" + std::to_string(v + 1), q, c});
  }
  const std::size_t S = 1 + rng.below(5);
  for (std::size_t s = 0; s < S; ++s) {
    std::vector<TrailerIndex> allowed;
    if (multi_type) {
      for (TrailerIndex v = 0; v < V; ++v) {
        if (rng.uniform() < 0.7) allowed.push_back(v);
      }
      if (allowed.empty()) allowed.push_back(static_cast<TrailerIndex>(rng.below(V)));
    } else {
      allowed.push_back(which == 2 ? 0 : static_cast<TrailerIndex>(rng.below(V)));
    }
    inst.sort_pairs.push_back(make_pair_arc("s" + std::to_string(s + 1), Sort::Night,
                                            "D" + std::to_string(s + 1), allowed));
  }
  const bool everywhere = which == 2 || which == 4;
  const std::size_t K = rng.below(9);
  for (std::size_t k = 0; k < K; ++k) {
    const SortPairIndex primary = static_cast<SortPairIndex>(rng.below(S));
    std::vector<Alternate> alts;
    if (everywhere) {
      for (SortPairIndex s = 0; s < S; ++s) {
        if (s != primary) alts.push_back({s, std::round(rng.uniform(0.0, 40.0))});
      }
    }
    const double volume = std::round(rng.uniform(1.0, 80.0) * 2.0) / 2.0;
    inst.commodities.push_back(
        make_commodity("k" + std::to_string(k + 1), volume, primary, std::move(alts), random_service(rng)));
  }
  validate(inst);
  return inst;
}

}  // namespace dlpp
