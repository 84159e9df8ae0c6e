#include "dlpp/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "dlpp/errors.hpp"

namespace dlpp {

namespace {

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

LoadPlan plan_with_flows(const Instance& inst, std::vector<int> y, const std::vector<PairFlow>& flows) {
  LoadPlan plan;
  plan.x = split_over_trailers(inst, y, flows);
  plan.objective = plan_cost(inst, y);
  plan.y = std::move(y);
  return plan;
}

std::vector<PairFlow> primary_flows(const Instance& inst) {
  std::vector<PairFlow> flows;
  for (CommodityIndex k = 0; k < inst.commodities.size(); ++k) {
    const auto& c = inst.commodities[k];
    if (c.volume > 0.0) flows.push_back({k, c.primary, c.volume});
  }
  return flows;
}

void require_no_alternates(const Instance& inst, const char* which) {
  for (const auto& c : inst.commodities) {
    if (!c.alternates.empty()) {
      throw PreconditionViolated(std::string(which) + ": commodity " + c.id + " has alternates");
    }
  }
}

void require_fully_compatible(const Instance& inst, const char* which) {
  for (const auto& c : inst.commodities) {
    if (c.compatible().size() != inst.sort_pairs.size()) {
      throw PreconditionViolated(std::string(which) + ": commodity " + c.id +
                                 " is not compatible with every sort pair");
    }
  }
}

std::vector<double> primary_volume(const Instance& inst) {
  std::vector<double> vol(inst.sort_pairs.size(), 0.0);
  for (const auto& c : inst.commodities) vol[c.primary] += c.volume;
  return vol;
}

/// Routes every commodity into pair capacities in index order; only valid
/// when all commodities are compatible with all pairs.
std::vector<PairFlow> fill_in_order(const Instance& inst, std::vector<double> room) {
  std::vector<PairFlow> flows;
  SortPairIndex s = 0;
  for (CommodityIndex k = 0; k < inst.commodities.size(); ++k) {
    double left = inst.commodities[k].volume;
    while (left > 0.0) {
      while (s + 1 < room.size() && room[s] <= 1e-12) ++s;
      const bool last = s + 1 == room.size();
      const double take = last ? left : std::min(left, room[s]);
      flows.push_back({k, s, take});
      room[s] -= take;
      left -= take;
    }
  }
  return flows;
}

}  // namespace

LoadPlan case1_solve(const Instance& inst) {
  for (const auto& sp : inst.sort_pairs) {
    if (sp.allowed_trailers.size() != 1) throw PreconditionViolated("case 1: sort pair " + sp.id + " allows several trailer types");
  }
  require_no_alternates(inst, "case 1");
  const PairIndex pairs(inst);
  const std::vector<double> vol = primary_volume(inst);
  std::vector<int> y(pairs.size(), 0);
  for (PairSlot p = 0; p < pairs.size(); ++p) {
    const auto [s, v] = pairs[p];
    y[p] = static_cast<int>(std::ceil(vol[s] / inst.trailer_types[v].capacity - 1e-9));
  }
  return plan_with_flows(inst, std::move(y), primary_flows(inst));
}

LoadPlan case2_solve(const Instance& inst) {
  if (inst.sort_pairs.empty()) throw PreconditionViolated("case 2: no sort pairs");
  const auto& first = inst.sort_pairs.front().allowed_trailers;
  for (const auto& sp : inst.sort_pairs) {
    if (sp.allowed_trailers.size() != 1 || sp.allowed_trailers != first) {
      throw PreconditionViolated("case 2: sort pairs must share one trailer type");
    }
  }
  require_fully_compatible(inst, "case 2");
  const PairIndex pairs(inst);
  std::vector<int> y(pairs.size(), 0);
  const double q = inst.total_volume();
  y[*pairs.find(0, first.front())] =
      static_cast<int>(std::ceil(q / inst.trailer_types[first.front()].capacity - 1e-9));
  std::vector<PairFlow> flows;
  for (CommodityIndex k = 0; k < inst.commodities.size(); ++k) {
    if (inst.commodities[k].volume > 0.0) flows.push_back({k, 0, inst.commodities[k].volume});
  }
  return plan_with_flows(inst, std::move(y), flows);
}

KnapsackResult min_knapsack(double volume, const std::vector<TrailerType>& types) {
  if (types.empty()) throw std::invalid_argument("min_knapsack needs at least one trailer type");
  if (!(volume >= 0.0)) throw std::invalid_argument("volume must be nonnegative");
  KnapsackResult res;
  res.counts.assign(types.size(), 0);
  if (volume <= 0.0) return res;

  bool integral = near_integer(volume);
  for (const auto& t : types) integral = integral && near_integer(t.capacity);
  std::vector<long long> w(types.size());
  long long units = 0;
  if (integral) {
    long long g = 0;
    for (const auto& t : types) g = std::gcd(g, std::llround(t.capacity));
    for (std::size_t i = 0; i < types.size(); ++i) w[i] = std::llround(types[i].capacity) / g;
    units = (std::llround(volume) + g - 1) / g;
  } else {
    for (std::size_t i = 0; i < types.size(); ++i) {
      w[i] = std::max<long long>(1, static_cast<long long>(std::floor(types[i].capacity * 1000.0 + 1e-9)));
    }
    units = static_cast<long long>(std::ceil(volume * 1000.0 - 1e-6));
  }

  // dp[u]: cheapest way to cover at least u units.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(units + 1, inf);
  std::vector<int> count(units + 1, 0);
  std::vector<int> choice(units + 1, -1);
  cost[0] = 0.0;
  for (long long u = 1; u <= units; ++u) {
    for (std::size_t i = 0; i < types.size(); ++i) {
      const long long prev = std::max<long long>(0, u - w[i]);
      const double c = cost[prev] + types[i].cost;
      const int n = count[prev] + 1;
      const bool better = c < cost[u] - 1e-9 || (std::abs(c - cost[u]) <= 1e-9 && n < count[u]);
      if (better) {
        cost[u] = c;
        count[u] = n;
        choice[u] = static_cast<int>(i);
      }
    }
  }
  for (long long u = units; u > 0;) {
    const int i = choice[u];
    ++res.counts[i];
    u = std::max<long long>(0, u - w[i]);
  }
  for (std::size_t i = 0; i < types.size(); ++i) {
    res.cost += types[i].cost * res.counts[i];
    res.trailers += res.counts[i];
  }
  return res;
}

LoadPlan case3_solve(const Instance& inst) {
  require_no_alternates(inst, "case 3");
  const PairIndex pairs(inst);
  const std::vector<double> vol = primary_volume(inst);
  std::vector<int> y(pairs.size(), 0);
  for (SortPairIndex s = 0; s < inst.sort_pairs.size(); ++s) {
    std::vector<TrailerType> types;
    for (TrailerIndex v : inst.sort_pairs[s].allowed_trailers) types.push_back(inst.trailer_types[v]);
    const KnapsackResult r = min_knapsack(vol[s], types);
    const auto slots = pairs.slots_of(s);
    for (std::size_t i = 0; i < slots.size(); ++i) y[slots[i]] = r.counts[i];
  }
  return plan_with_flows(inst, std::move(y), primary_flows(inst));
}

LoadPlan case4_solve(const Instance& inst) {
  require_fully_compatible(inst, "case 4");
  const PairIndex pairs(inst);
  std::vector<TrailerType> items;
  for (PairSlot p = 0; p < pairs.size(); ++p) items.push_back(inst.trailer_types[pairs[p].second]);
  std::vector<int> y(pairs.size(), 0);
  if (!items.empty()) {
    const KnapsackResult r = min_knapsack(inst.total_volume(), items);
    y = r.counts;
  }
  return plan_with_flows(inst, y, fill_in_order(inst, sort_pair_capacity(inst, y)));
}

std::vector<SortPairIndex> case5_set_cover(const Instance& inst) {
  const std::size_t n = inst.sort_pairs.size();
  if (n > 20) throw TooLarge("set cover enumeration is limited to 20 sort pairs");
  const std::size_t m = inst.commodities.size();
  std::vector<std::vector<bool>> covers(n, std::vector<bool>(m, false));
  for (CommodityIndex k = 0; k < m; ++k) {
    for (SortPairIndex s : inst.commodities[k].compatible()) covers[s][k] = true;
  }
  for (std::size_t size = 0; size <= n; ++size) {
    // Lexicographically first combination of this size that covers everything.
    std::vector<std::size_t> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      std::vector<bool> covered(m, false);
      for (std::size_t s : pick) {
        for (std::size_t k = 0; k < m; ++k) covered[k] = covered[k] || covers[s][k];
      }
      if (std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) {
        return {pick.begin(), pick.end()};
      }
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw PreconditionViolated("case 5: some commodity has no sort pair");
}

Instance case5_instance(std::size_t num_elements, const std::vector<std::vector<std::size_t>>& sets) {
  Instance inst;
  std::size_t max_size = 1;
  for (const auto& set : sets) max_size = std::max(max_size, set.size());
  inst.trailer_types.push_back({"v", static_cast<double>(max_size), 1.0});
  for (std::size_t i = 0; i < sets.size(); ++i) {
    SortPair sp;
    sp.id = "s" + std::to_string(i + 1);
    sp.origin = {"O", Sort::Twilight, 1};
    sp.destination = {"D" + std::to_string(i + 1), Sort::Sunrise, 2};
    sp.allowed_trailers = {0};
    inst.sort_pairs.push_back(std::move(sp));
  }
  for (std::size_t e = 0; e < num_elements; ++e) {
    Commodity c;
    c.id = "k" + std::to_string(e + 1);
    c.volume = 1.0;
    c.service_class = ServiceClass::OneDay;
    bool first = true;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (std::find(sets[i].begin(), sets[i].end(), e) == sets[i].end()) continue;
      if (first) {
        c.primary = i;
        first = false;
      } else {
        c.alternates.push_back({i, 0.0});
      }
    }
    if (first) throw std::invalid_argument("element " + std::to_string(e) + " is in no set");
    inst.commodities.push_back(std::move(c));
  }
  validate(inst);
  return inst;
}

MaxFlowResult max_flow_allocation(const Instance& inst, const std::vector<double>& pair_capacity) {
  const std::size_t K = inst.commodities.size();
  const std::size_t S = inst.sort_pairs.size();
  const std::size_t source = 0, sink = K + S + 1, nodes = K + S + 2;
  struct Edge {
    std::size_t to;
    double cap;
    std::size_t rev;
  };
  std::vector<std::vector<Edge>> g(nodes);
  auto add = [&](std::size_t a, std::size_t b, double cap) {
    g[a].push_back({b, cap, g[b].size()});
    g[b].push_back({a, 0.0, g[a].size() - 1});
    return std::make_pair(a, g[a].size() - 1);
  };
  double total = 0.0;
  for (CommodityIndex k = 0; k < K; ++k) {
    add(source, 1 + k, inst.commodities[k].volume);
    total += inst.commodities[k].volume;
  }
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::pair<CommodityIndex, SortPairIndex>>> arcs;
  for (CommodityIndex k = 0; k < K; ++k) {
    for (SortPairIndex s : inst.commodities[k].compatible()) {
      arcs.push_back({add(1 + k, 1 + K + s, total + 1.0), {k, s}});
    }
  }
  for (SortPairIndex s = 0; s < S; ++s) add(1 + K + s, sink, pair_capacity.at(s));

  constexpr double eps = 1e-12;
  MaxFlowResult res;
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> parent(nodes, {nodes, 0});
    std::deque<std::size_t> queue{source};
    parent[source] = {source, 0};
    while (!queue.empty() && parent[sink].first == nodes) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < g[u].size(); ++i) {
        const Edge& e = g[u][i];
        if (e.cap > eps && parent[e.to].first == nodes) {
          parent[e.to] = {u, i};
          queue.push_back(e.to);
        }
      }
    }
    if (parent[sink].first == nodes) break;
    double push = std::numeric_limits<double>::infinity();
    for (std::size_t v = sink; v != source; v = parent[v].first) {
      push = std::min(push, g[parent[v].first][parent[v].second].cap);
    }
    for (std::size_t v = sink; v != source; v = parent[v].first) {
      Edge& e = g[parent[v].first][parent[v].second];
      e.cap -= push;
      g[v][e.rev].cap += push;
    }
    res.routed += push;
  }
  for (const auto& [edge, ks] : arcs) {
    const Edge& e = g[edge.first][edge.second];
    const double used = g[e.to][e.rev].cap;
    if (used > eps) res.flows.push_back({ks.first, ks.second, used});
  }
  return res;
}

BruteForceResult brute_force_dlpp(const Instance& inst, int y_bound_cap, std::size_t budget) {
  const PairIndex pairs(inst);
  const std::size_t n = pairs.size();
  std::vector<int> bound(n);
  double points = 1.0;
  for (PairSlot p = 0; p < n; ++p) {
    bound[p] = trailer_upper_bound(inst, pairs[p].first, pairs[p].second);
    if (y_bound_cap >= 0) bound[p] = std::min(bound[p], y_bound_cap);
    points *= bound[p] + 1.0;
  }
  if (points > static_cast<double>(budget)) {
    throw BudgetExceeded("enumeration grid has " + std::to_string(points) + " points, budget " +
                         std::to_string(budget));
  }
  const double q = inst.total_volume();
  const double tol = 1e-7 * (1.0 + q);

  BruteForceResult res;
  res.cost = std::numeric_limits<double>::infinity();
  std::vector<int> y(n, 0);
  while (true) {
    ++res.enumerated;
    const double cost = plan_cost(inst, y);
    if (cost <= res.cost + 1e-9) {
      const std::vector<double> cap = sort_pair_capacity(inst, y);
      if (std::accumulate(cap.begin(), cap.end(), 0.0) >= q - tol) {
        MaxFlowResult flow = max_flow_allocation(inst, cap);
        if (flow.routed >= q - tol) {
          if (cost < res.cost - 1e-9) {
            res.cost = cost;
            res.optimal.clear();
            res.witness = plan_with_flows(inst, y, flow.flows);
          }
          res.optimal.push_back(y);
        }
      }
    }
    std::size_t i = n;
    while (i > 0 && y[i - 1] == bound[i - 1]) {
      y[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
    ++y[i - 1];
  }
  if (res.optimal.empty()) throw NumericalFailure("no feasible trailer vector within the bounds");
  return res;
}

}  // namespace dlpp
