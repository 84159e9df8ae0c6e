// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   acceptance            all criteria
//   acceptance --fast     skip the proxy pipeline and the criteria that need its model

#include <algorithm>
#include <cstdarg>
#include <limits>
#include <span>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dlpp/datagen.hpp"
#include "dlpp/errors.hpp"
#include "dlpp/experiments.hpp"
#include "dlpp/formulations.hpp"
#include "dlpp/greedy.hpp"
#include "dlpp/metrics.hpp"
#include "dlpp/oracles.hpp"
#include "dlpp/proxy.hpp"
#include "dlpp/random.hpp"
#include "dlpp/restoration.hpp"
#include "dlpp/synthetic.hpp"

using namespace dlpp;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

int total(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

int l1(const std::vector<int>& a, const std::vector<int>& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

std::size_t jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---- oracle equivalence

Verdict oracle_equivalence() {
  const auto start = Clock::now();
  Rng rng(20260101);
  int checked = 0, mismatches = 0, unproven = 0;
  double worst = 0.0;
  for (int which = 1; which <= 5; ++which) {
    for (int trial = 0; trial < 100; ++trial) {
      const Instance inst = random_case_instance(which, rng);
      double oracle = 0.0;
      switch (which) {
        case 1: oracle = case1_solve(inst).objective; break;
        case 2: oracle = case2_solve(inst).objective; break;
        case 3: oracle = case3_solve(inst).objective; break;
        case 4: oracle = case4_solve(inst).objective; break;
        default: oracle = inst.trailer_types[0].cost * static_cast<double>(case5_set_cover(inst).size()); break;
      }
      const PlanSolve r = solve_model1(inst);
      if (r.mip.status != MipStatus::Optimal) {
        ++unproven;
        continue;
      }
      const double diff = std::abs(r.mip.objective - oracle);
      worst = std::max(worst, diff);
      if (diff > 1e-6) ++mismatches;
      ++checked;
    }
  }
  const double t = since(start);
  return {checked == 500 && mismatches == 0 && unproven == 0 && t < 120.0,
          fmt("%d/500 matched, %d mismatches, %d unproven, max diff %.2e, %.1fs (budget 120s)", checked - mismatches,
              mismatches, unproven, worst, t)};
}

// ---- brute-force equivalence

Verdict brute_force_equivalence() {
  const auto start = Clock::now();
  Rng rng(4242);
  int cost_ok = 0, gdo_member = 0, gdo_min_l1 = 0;
  std::size_t enumerated = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = random_small_instance(rng);
    const BruteForceResult bf = brute_force_dlpp(inst);
    enumerated += bf.enumerated;
    const PlanSolve r = solve_model1(inst);
    if (r.mip.status == MipStatus::Optimal && std::abs(r.mip.objective - bf.cost) <= 1e-6) ++cost_ok;
    const GdoResult g = solve_gdo(inst);
    const std::vector<int> gamma = reference_counts(inst);
    int best = std::numeric_limits<int>::max();
    for (const auto& y : bf.optimal) best = std::min(best, l1(y, gamma));
    if (std::find(bf.optimal.begin(), bf.optimal.end(), g.plan.y) != bf.optimal.end()) ++gdo_member;
    if (l1(g.plan.y, gamma) == best) ++gdo_min_l1;
  }
  const double t = since(start);
  return {cost_ok == 50 && gdo_member == 50 && gdo_min_l1 == 50 && t < 300.0,
          fmt("cost equal %d/50, GDO y in optimal set %d/50, GDO minimal L1 %d/50, %zu plans enumerated, %.1fs (budget 300s)",
              cost_ok, gdo_member, gdo_min_l1, enumerated, t)};
}

// ---- fixture T1

Verdict fixture_t1_check() {
  const Instance t1 = fixture_t1();
  const PlanSolve m1 = solve_model1(t1);
  const GdoResult g = solve_gdo(t1);
  const GreedyResult h = greedy_solve(t1);
  const bool m1_ok = m1.mip.status == MipStatus::Optimal && m1.mip.objective == 150.0;
  const bool gdo_ok = g.plan.y == std::vector<int>{2, 1} && hamming_distance(t1, g.plan.y) == 1.0;
  const bool greedy_ok = !find_violation(t1, h.plan) && h.plan.objective >= 150.0;
  return {m1_ok && gdo_ok && greedy_ok,
          fmt("model1 %.0f (%s), GDO y=(%d,%d) hamming %.0f, greedy %.0f %s", m1.mip.objective,
              to_string(m1.mip.status), g.plan.y[0], g.plan.y[1], hamming_distance(t1, g.plan.y), h.plan.objective,
              greedy_ok ? "feasible" : "INFEASIBLE")};
}

// ---- splitting value

Verdict splitting_value() {
  const Instance inst = fixture_splitting();
  const Instance primary = restrict_scenario(inst, Scenario::PrimaryOnly);
  const PlanSolve mp = solve_model1(primary);
  const PlanSolve ma = solve_model1(inst);
  const double bf_primary = brute_force_dlpp(primary).cost;
  const double bf_all = brute_force_dlpp(inst).cost;
  const int saved = total(mp.plan->y) - total(ma.plan->y);
  const bool ok = mp.mip.status == MipStatus::Optimal && ma.mip.status == MipStatus::Optimal &&
                  ma.mip.objective < mp.mip.objective &&
                  std::abs((mp.mip.objective - ma.mip.objective) - (bf_primary - bf_all)) <= 1e-9 && saved == 1;
  return {ok, fmt("primary-only %.0f, all-alt %.0f, saving %.0f (brute force %.0f), trailers saved %d",
                  mp.mip.objective, ma.mip.objective, mp.mip.objective - ma.mip.objective, bf_primary - bf_all, saved)};
}

// ---- restoration

Instance two_pair() {
  Instance inst;
  inst.trailer_types.push_back({"v1", 2.0, 2.0});
  for (const char* d : {"A", "B"}) {
    SortPair sp;
    sp.id = std::string("s-") + d;
    sp.origin = {"O", Sort::Night, 1};
    sp.destination = {d, Sort::Sunrise, 2};
    sp.allowed_trailers = {0};
    inst.sort_pairs.push_back(sp);
  }
  auto add = [&](std::string id, SortPairIndex primary, std::vector<Alternate> alts) {
    Commodity c;
    c.id = std::move(id);
    c.volume = 2.0;
    c.service_class = ServiceClass::TwoDay;
    c.primary = primary;
    c.alternates = std::move(alts);
    inst.commodities.push_back(c);
  };
  add("a", 0, {});
  add("b", 1, {});
  add("c", 0, {{1, 5.0}});
  validate(inst);
  return inst;
}

Verdict restoration_guarantees() {
  struct Case {
    Instance inst;
    double z_star;
    std::vector<int> optimum;
    std::vector<int> upper;
  };
  std::vector<Case> cases;
  std::vector<Instance> pool{fixture_t1(), two_pair(), fixture_splitting()};
  for (std::uint64_t s = 1; s <= 3; ++s) pool.push_back(synthetic_terminal(s));
  Rng small(77);
  for (int i = 0; i < 20; ++i) pool.push_back(random_small_instance(small));
  for (auto& inst : pool) {
    const PlanSolve r = solve_model1(inst);
    if (r.mip.status != MipStatus::Optimal) return {false, "could not prove Z* for a pool instance"};
    const PairIndex pairs(inst);
    std::vector<int> ub;
    for (PairSlot p = 0; p < pairs.size(); ++p) ub.push_back(trailer_upper_bound(inst, pairs[p].first, pairs[p].second));
    cases.push_back({inst, r.mip.objective, r.plan->y, ub});
  }

  Rng rng(99);
  int feasible = 0, above = 0, monotone = 0, zeros = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const Case& c = cases[static_cast<std::size_t>(i) % cases.size()];
    std::vector<int> y_hat(c.optimum.size(), 0);
    if (i % 10 == 0) {
      ++zeros;
    } else if (i % 2 == 0) {
      for (std::size_t j = 0; j < y_hat.size(); ++j) y_hat[j] = static_cast<int>(rng.below(c.upper[j] + 2));
    } else {
      for (std::size_t j = 0; j < y_hat.size(); ++j) {
        y_hat[j] = std::max(0, c.optimum[j] + static_cast<int>(rng.below(5)) - 2);
      }
    }
    const RestoreResult r = restore(c.inst, make_predicted_plan(c.inst, y_hat));
    if (!find_violation(c.inst, r.plan)) ++feasible;
    if (r.plan.objective >= c.z_star - 1e-9) ++above;
    bool kept = true;
    for (std::size_t j = 0; j < y_hat.size(); ++j) kept = kept && r.plan.y[j] >= y_hat[j];
    if (kept) ++monotone;
  }

  const Instance tp = two_pair();
  const RestoreResult ex = restore_with_profile(tp, make_predicted_plan(tp, {1, 1}), size_violations(tp, {1.0, 1.0}));
  const int added = total(ex.report.added);
  return {feasible == n && above == n && added == 1,
          fmt("%d/%d feasible, %d/%d cost >= Z*, %d/%d keep the prediction, %d all-zero predictions; "
              "two-pair example adds %d trailer", feasible, n, above, n, monotone, n, zeros, added)};
}

// ---- metrics and gradient check

double max_relative_error(const ProxyModel& model, std::span<const Sample> batch, bool training) {
  const std::vector<double> analytic = batch_gradient(model, batch, training);
  std::vector<double> theta = get_parameters(model);
  ProxyModel probe = model;
  double worst = 0.0;
  const double h = 1e-6;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double keep = theta[i];
    theta[i] = keep + h;
    set_parameters(probe, theta);
    const double up = batch_loss(probe, batch, training);
    theta[i] = keep - h;
    set_parameters(probe, theta);
    const double down = batch_loss(probe, batch, training);
    theta[i] = keep;
    const double numeric = (up - down) / (2.0 * h);
    const double scale = std::max({std::abs(numeric), std::abs(analytic[i]), 1e-6});
    worst = std::max(worst, std::abs(numeric - analytic[i]) / scale);
  }
  return worst;
}

Verdict metrics_and_gradient() {
  using V = std::vector<std::vector<double>>;
  std::vector<std::pair<std::string, bool>> checks;
  auto check = [&](std::string name, bool ok) { checks.emplace_back(std::move(name), ok); };

  check("distance y=gamma", normalized_distance(std::vector<double>{2, 3}, std::vector<double>{2, 3}) == 0.0);
  check("distance 3 vs 2", normalized_distance(std::vector<double>{3}, std::vector<double>{2}) == 0.5);
  check("distance 2 vs 0", normalized_distance(std::vector<double>{2}, std::vector<double>{0}) == 2.0);
  check("tv identical", total_variation(V{{1, 2}, {1, 2}}).value == 0.0);
  check("tv unit step", total_variation(V{{2, 1}, {3, 1}}).value == 1.0);
  check("tv 3-4-5", total_variation(V{{0, 0}, {3, 4}, {3, 4}}).value == 5.0);
  check("geomean constant", shifted_geomean({7, 7, 7}, 1.0) == 7.0);
  check("geomean zeros", shifted_geomean({0, 0}, 0.01) == 0.0);
  check("geomean 1,100", std::abs(shifted_geomean({1, 100}, 1.0) - 13.21) <= 0.005);
  check("gap 165/150", integrality_gap_report(165.0, 150.0).gap == 0.1);
  check("gap equal", integrality_gap_report(150.0, 150.0).gap == 0.0);
  const GapReport zero = integrality_gap_report(0.0, 0.0);
  check("gap zero reference", zero.gap == 0.0 && zero.zero_reference);

  const Instance t1 = fixture_t1();
  const GdoResult g = solve_gdo(t1);
  const auto rows = evaluate(t1, "t1", {{"gdo", g.plan, 0.5}, {"proxy", g.plan, 0.1}}, 150.0);
  check("identical plans score alike", rows[0].gap == rows[1].gap && rows[0].distance == rows[1].distance);
  LoadPlan over;
  over.y = {2, 1};
  over.x = {{0, 0, 0, 60.0}, {1, 0, 0, 19.999}, {1, 1, 0, 10.001}, {2, 1, 0, 40.0}};
  bool rejected = false;
  try {
    evaluate(t1, "t1", {{"bad", over, 0.0}}, 150.0);
  } catch (const InfeasiblePlan& e) {
    rejected = std::string(e.what()).find("s2") != std::string::npos;
  }
  check("overload by 1e-3 rejected with pair named", rejected);

  ProxyConfig plain;
  plain.num_layers = 2;
  plain.hidden = 6;
  ProxyModel a = init_model(t1, plain, 7);
  for (double& b : a.layers.back().bias) b = 0.3;
  a.input_mean = {60, 20, 40};
  a.input_std = {15, 15, 25};
  const std::vector<Sample> batch{{{60, 30, 40}, {2, 1}}, {{50, 10, 70}, {1, 2}}, {{80, 0, 20}, {3, 0}},
                                  {{40, 25, 45}, {2, 2}}};
  const double e_plain = max_relative_error(a, batch, false);
  ProxyConfig bn = plain;
  bn.num_layers = 3;
  bn.hidden = 5;
  bn.batch_norm = true;
  ProxyModel b = init_model(t1, bn, 9);
  for (double& x : b.layers.back().bias) x = 0.5;
  b.input_mean = a.input_mean;
  b.input_std = a.input_std;
  const double e_bn = std::max(max_relative_error(b, batch, true), max_relative_error(b, batch, false));
  check("gradient 2-layer", e_plain <= 1e-4);
  check("gradient batch norm", e_bn <= 1e-4);

  int passed = 0;
  std::string failed;
  for (const auto& [name, ok] : checks) {
    if (ok) {
      ++passed;
    } else {
      failed += " [" + name + "]";
    }
  }
  return {passed == static_cast<int>(checks.size()),
          fmt("%d/%zu examples exact; gradient rel. error %.2e (plain), %.2e (batch norm)", passed, checks.size(),
              e_plain, e_bn) + (failed.empty() ? "" : "; failed:" + failed)};
}

// ---- determinism

std::map<std::string, std::string> read_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files[fs::relative(e.path(), root).string()] = s.str();
  }
  return files;
}

Verdict determinism() {
  std::vector<std::string> broken;
  const Instance ref = synthetic_terminal(3);
  const GdoOptions gdo = deterministic_gdo_options(500, 500);

  const ProxyModel untrained = init_model(ref, {}, 5);
  auto solve_all = [&] {
    std::string out;
    out += plan_to_json(ref, *solve_model1(ref, gdo.stage1).plan);
    out += plan_to_json(ref, solve_gdo(ref, gdo).plan);
    out += plan_to_json(ref, greedy_solve(ref).plan);
    out += plan_to_json(ref, proxy_solve(untrained, ref).plan);
    return out;
  };
  if (solve_all() != solve_all()) broken.push_back("solve");

  const fs::path base = fs::temp_directory_path() / "dlpp_acceptance_determinism";
  fs::remove_all(base);
  DatagenOptions one;
  one.gdo = gdo;
  DatagenOptions many = one;
  many.jobs = std::max<std::size_t>(2, jobs());
  const Dataset d1 = generate_dataset(ref, 20, 11, one);
  save_dataset(d1, (base / "a").string());
  save_dataset(generate_dataset(ref, 20, 11, one), (base / "b").string());
  save_dataset(generate_dataset(ref, 20, 11, many), (base / "c").string());
  const auto ta = read_tree(base / "a");
  if (ta != read_tree(base / "b") || ta != read_tree(base / "c")) broken.push_back("datagen");

  TrainingConfig cfg;
  cfg.arch.hidden = 32;
  cfg.epochs = 20;
  cfg.seed = 13;
  const std::vector<Sample> tr = samples_of(d1, Split::Train);
  const std::string m1 = model_to_json(train(ref, tr, tr, cfg).model);
  const std::string m2 = model_to_json(train(ref, tr, tr, cfg).model);
  if (m1 != m2) broken.push_back("train");
  fs::remove_all(base);

  std::string which;
  for (const auto& b : broken) which += " " + b;
  return {broken.empty(), broken.empty() ? fmt("solve (4 modes), datagen (%zu files, 1 and %zu jobs), train: byte-identical",
                                               ta.size(), many.jobs)
                                         : "differs:" + which};
}

// ---- proxy pipeline

struct Pipeline {
  Instance ref;
  Dataset data;
  ProxyModel model;
};
std::optional<Pipeline> g_pipeline;

Verdict proxy_pipeline() {
  const auto start = Clock::now();
  Pipeline p;
  p.ref = synthetic_terminal(1);
  DatagenOptions dopt;
  dopt.jobs = jobs();
  p.data = generate_dataset(p.ref, 500, 2026, dopt);
  const double t_data = since(start);

  TrainingConfig base;
  base.seed = 1;
  const GridSpec grid;
  const GridResult gr =
      train_grid(p.ref, samples_of(p.data, Split::Train), samples_of(p.data, Split::Validation), grid, base);
  if (gr.best.curve.empty()) return {false, "every grid configuration diverged"};
  p.model = gr.best.model;
  const double t_train = since(start) - t_data;

  ExperimentOptions eopt;
  const SplitEvaluation ev = evaluate_split(p.data, Split::Test, {"gdo", "proxy"}, &p.model, eopt);
  const double total_time = since(start);
  const MethodSummary& px = ev.report.summary.at("proxy");
  const MethodSummary& gd = ev.report.summary.at("gdo");
  double share = 0.0;
  for (double s : ev.capacity_share) share += s;
  share /= static_cast<double>(std::max<std::size_t>(1, ev.capacity_share.size()));
  const double share_geo = shifted_geomean(ev.capacity_share, 0.0 + 1e-12);
  g_pipeline = std::move(p);

  const bool ok = px.gap_geomean <= 0.10 && share >= 0.90 && px.time_geomean < gd.time_geomean && total_time < 1800.0 &&
                  ev.skipped == 0;
  return {ok, fmt("|S|=%zu |K|=%zu, 500 instances (%zu label failures), test %zu; proxy gap %.4f (<= 0.10), "
                  "capacity share mean %.4f geo %.4f (>= 0.90), time proxy %.4fs vs GDO %.4fs; "
                  "best lr %g layers %zu hidden %zu; data %.0fs train %.0fs total %.0fs (budget 1800s)",
                  g_pipeline->ref.sort_pairs.size(), g_pipeline->ref.commodities.size(), g_pipeline->data.failures(),
                  px.count, px.gap_geomean, share, share_geo, px.time_geomean, gd.time_geomean,
                  gr.best.config.learning_rate, gr.best.config.arch.num_layers, gr.best.config.arch.hidden, t_data,
                  t_train, total_time)};
}

// ---- scenario monotonicity

/// Proves opt(P) >= opt(O) >= opt(A) from bounds: lower(P) >= upper(O) and
/// lower(O) >= upper(A). Unproven solves still give valid bounds.
struct Chain {
  bool holds = false;
  bool all_optimal = false;
};

Chain scenario_chain(const Instance& inst, const MipOptions& opt) {
  double lo[3], hi[3];
  bool optimal = true;
  int i = 0;
  for (Scenario sc : {Scenario::PrimaryOnly, Scenario::OneAlt, Scenario::AllAlt}) {
    const PlanSolve r = solve_model1(restrict_scenario(inst, sc), opt);
    if (!r.plan) return {};
    hi[i] = r.mip.objective;
    lo[i] = r.mip.status == MipStatus::Optimal ? r.mip.objective : r.mip.best_bound;
    optimal = optimal && r.mip.status == MipStatus::Optimal;
    ++i;
  }
  return {lo[0] >= hi[1] && lo[1] >= hi[2], optimal};
}

Verdict scenario_monotonicity() {
  std::vector<Instance> tests{fixture_t1(), fixture_splitting()};
  Rng rng(555);
  for (int i = 0; i < 50; ++i) tests.push_back(random_small_instance(rng));
  std::size_t synthetic = 0;
  if (g_pipeline) {
    for (const auto* item : g_pipeline->data.of(Split::Test)) {
      tests.push_back(g_pipeline->data.instance(*item));
      ++synthetic;
    }
  } else {
    for (std::uint64_t s = 1; s <= 5; ++s) tests.push_back(synthetic_terminal(s));
    synthetic = 5;
  }
  MipOptions opt;
  opt.time_limit = 1e9;
  opt.node_limit = 5000;
  int holds = 0, proven = 0;
  for (const auto& inst : tests) {
    const Chain c = scenario_chain(inst, opt);
    holds += c.holds;
    proven += c.all_optimal;
  }
  const int n = static_cast<int>(tests.size());
  return {holds == n, fmt("%d/%d instances (%zu synthetic test instances); chain certified by bounds, "
                          "%d with all three scenarios solved to optimality", holds, n, synthetic, proven)};
}

// ---- consistency sweep

Verdict consistency_sweep() {
  if (!g_pipeline) return {false, "needs the trained proxy from the pipeline criterion"};
  const auto start = Clock::now();
  ExperimentOptions opt;
  const SweepResult s = run_sweep(g_pipeline->ref, 50, 0.8, 1.2, {"mip", "gdo", "proxy"}, &g_pipeline->model, opt);
  const double tv_m1 = s.total_variation("mip");
  const double tv_gdo = s.total_variation("gdo");
  const double tv_px = s.total_variation("proxy");
  const double d_m1 = s.distance_geomean(g_pipeline->ref, "mip");
  const double d_gdo = s.distance_geomean(g_pipeline->ref, "gdo");
  const bool ok = tv_gdo <= 1.05 * tv_m1 && tv_px <= 1.05 * tv_gdo && d_gdo <= d_m1;
  return {ok, fmt("TV model1 %.2f, GDO %.2f, proxy %.2f (5%% slack); distance geomean GDO %.4f vs model1 %.4f; %.0fs",
                  tv_m1, tv_gdo, tv_px, d_gdo, d_m1, since(start))};
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const bool fast = argc > 1 && std::strcmp(argv[1], "--fast") == 0;
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
    bool heavy;
  };
  const std::vector<Criterion> criteria{
      {"oracle-equivalence", oracle_equivalence, false},
      {"brute-force-equivalence", brute_force_equivalence, false},
      {"fixture-t1", fixture_t1_check, false},
      {"splitting-value", splitting_value, false},
      {"restoration-guarantees", restoration_guarantees, false},
      {"metrics-and-gradient", metrics_and_gradient, false},
      {"determinism", determinism, false},
      {"proxy-pipeline", proxy_pipeline, true},
      {"scenario-monotonicity", scenario_monotonicity, false},
      {"consistency-sweep", consistency_sweep, true},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (fast && c.heavy) {
      std::printf("SKIP %s\n", c.name);
      continue;
    }
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str(), since(start));
    failed += !v.pass;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
