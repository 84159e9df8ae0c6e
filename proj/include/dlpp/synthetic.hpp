#pragma once

#include <cstdint>

#include "dlpp/network.hpp"
#include "dlpp/random.hpp"

namespace dlpp {

/// Two sort pairs, one trailer type (Q = c = 50), three commodities of 60, 30
/// and 40 where the middle one may use either pair. Reference plan 2 + 2.
Instance fixture_t1();

/// Three sort pairs out of one sort (to C, E and D), Q = c = 5; commodities of
/// 4 (to C), 3 (to E) and 3 (to F: primary via C, alternates via E and D).
Instance fixture_splitting();

/// Reference plan built the way a planner without alternates would: each
/// pair's primary volume packed by a minimum-cost trailer mix.
ReferencePlan primary_knapsack_reference(const Instance& inst);

struct TerminalShape {
  std::size_t destinations = 5;    // two sort pairs each
  std::size_t commodities = 50;
  double alternate_share = 0.6;    // commodities with one or two alternates
  double min_volume = 5.0;
  double max_volume = 60.0;
};

/// Synthetic terminal: one origin, sort pairs in two consecutive sorts per
/// destination (grouped as load pairs), 50- and 25-unit trailers at c = Q,
/// mixed allowed types. Reference plan from primary_knapsack_reference.
Instance synthetic_terminal(std::uint64_t seed, const TerminalShape& shape = {});

struct SmallShape {
  std::size_t max_sort_pairs = 3;
  std::size_t max_commodities = 4;
  std::size_t max_trailer_types = 2;
  double max_volume = 40.0;
};

/// Small random instance with a random reference plan (for enumeration oracles).
Instance random_small_instance(Rng& rng, const SmallShape& shape = {});

/// Random instance satisfying the precondition of the given special case (1..5).
Instance random_case_instance(int which, Rng& rng);

}  // namespace dlpp
