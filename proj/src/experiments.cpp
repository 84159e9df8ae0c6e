#include "dlpp/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <cmath>
#include <optional>
#include <ostream>
#include <thread>

#include "dlpp/errors.hpp"
#include "dlpp/formulations.hpp"
#include "dlpp/greedy.hpp"

namespace dlpp {

namespace {

struct Outcome {
  MethodOutcome method;
  std::optional<double> share;
};

Outcome run_method(const Instance& inst, const std::string& method, const ProxyModel* model,
                   const ExperimentOptions& options) {
  Outcome out;
  out.method.method = method;
  const auto start = std::chrono::steady_clock::now();
  if (method == "mip") {
    PlanSolve r = solve_model1(inst, options.model1);
    if (!r.plan) throw NoIncumbent("model1", "no integral plan within the node limit");
    out.method.plan = std::move(*r.plan);
  } else if (method == "gdo") {
    out.method.plan = solve_gdo(inst, options.gdo).plan;
  } else if (method == "greedy") {
    out.method.plan = greedy_solve(inst).plan;
  } else if (method == "proxy") {
    if (!model) throw std::invalid_argument("the proxy method needs a model");
    ProxySolve r = proxy_solve(*model, inst, options.restore);
    out.share = predicted_capacity_share(inst, r.prediction.y_hat, r.plan.y);
    out.method.plan = std::move(r.plan);
    // Inference plus restoration, without the bookkeeping above.
    out.method.wall_time = r.wall_time();
    return out;
  } else {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
  out.method.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

template <class F>
void for_each_index(std::size_t n, std::size_t jobs, F&& f) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void check_methods(const std::vector<std::string>& methods, const ProxyModel* model) {
  if (methods.empty()) throw std::invalid_argument("no methods given");
  for (const auto& m : methods) {
    if (!known_method(m)) throw std::invalid_argument("unknown method '" + m + "'");
    if (m == "proxy" && !model) throw std::invalid_argument("the proxy method needs a model");
  }
}

}  // namespace

bool known_method(const std::string& method) {
  return method == "mip" || method == "gdo" || method == "greedy" || method == "proxy";
}

std::vector<Sample> samples_of(const Dataset& data, Split split) {
  std::vector<Sample> out;
  for (const LabeledInstance* item : data.of(split)) {
    out.push_back({item->volumes, to_grid(data.structure, item->label)});
  }
  return out;
}

SplitEvaluation evaluate_split(const Dataset& data, Split split, const std::vector<std::string>& methods,
                               const ProxyModel* model, const ExperimentOptions& options) {
  check_methods(methods, model);
  const std::vector<const LabeledInstance*> items = data.of(split);
  std::vector<std::vector<Outcome>> outcomes(items.size());
  for_each_index(items.size(), options.jobs, [&](std::size_t i) {
    const Instance inst = data.instance(*items[i]);
    for (const auto& m : methods) outcomes[i].push_back(run_method(inst, m, model, options));
  });

  SplitEvaluation ev;
  for (const auto& item : data.items) {
    if (item.split == split && item.failed) ++ev.skipped;
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Instance inst = data.instance(*items[i]);
    std::vector<MethodOutcome> plain;
    for (const auto& o : outcomes[i]) {
      plain.push_back(o.method);
      if (o.share) ev.capacity_share.push_back(*o.share);
    }
    char name[32];
    std::snprintf(name, sizeof name, "%05zu", items[i]->index);
    auto rows = evaluate(inst, name, plain, items[i]->z_star);
    ev.report.rows.insert(ev.report.rows.end(), rows.begin(), rows.end());
  }
  if (!ev.report.rows.empty()) ev.report.summarize();
  return ev;
}

std::size_t SweepResult::method_index(const std::string& method) const {
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (methods[i] == method) return i;
  }
  throw std::invalid_argument("method '" + method + "' is not part of this sweep");
}

double SweepResult::total_variation(const std::string& method) const {
  return dlpp::total_variation(plans[method_index(method)]).value;
}

double SweepResult::distance_geomean(const Instance& ref, const std::string& method) const {
  std::vector<double> d;
  for (const auto& y : plans[method_index(method)]) d.push_back(normalized_distance(ref, y));
  return shifted_geomean(d, kDistanceShift);
}

SweepResult run_sweep(const Instance& ref, std::size_t steps, double from, double to,
                      const std::vector<std::string>& methods, const ProxyModel* model,
                      const ExperimentOptions& options) {
  check_methods(methods, model);
  const std::vector<Instance> instances = generate_sweep(ref, steps, from, to);
  SweepResult out;
  out.methods = methods;
  for (std::size_t i = 0; i < steps; ++i) {
    out.scales.push_back(steps == 1 ? from : from + (to - from) * double(i) / double(steps - 1));
    out.total_volume.push_back(instances[i].total_volume());
  }
  out.plans.assign(methods.size(), std::vector<std::vector<int>>(steps));
  out.costs.assign(methods.size(), std::vector<double>(steps, 0.0));
  out.times.assign(methods.size(), std::vector<double>(steps, 0.0));
  for_each_index(steps, options.jobs, [&](std::size_t i) {
    for (std::size_t m = 0; m < methods.size(); ++m) {
      const Outcome o = run_method(instances[i], methods[m], model, options);
      out.plans[m][i] = o.method.plan.y;
      out.costs[m][i] = o.method.plan.objective;
      out.times[m][i] = o.method.wall_time;
    }
  });
  return out;
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << "step,scale,total_volume";
  for (const auto& m : sweep.methods) out << ',' << m << "_trailers," << m << "_cost";
  out << '\n';
  for (std::size_t i = 0; i < sweep.scales.size(); ++i) {
    out << i << ',' << sweep.scales[i] << ',' << sweep.total_volume[i];
    for (std::size_t m = 0; m < sweep.methods.size(); ++m) {
      int trailers = 0;
      for (int y : sweep.plans[m][i]) trailers += y;
      out << ',' << trailers << ',' << sweep.costs[m][i];
    }
    out << '\n';
  }
}

}  // namespace dlpp
