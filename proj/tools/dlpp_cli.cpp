// dlpp: command-line front end for the load planning toolkit.
//
// Exit codes: 0 success, 1 user error (bad flags, bad input files), 2 internal error.

#include <algorithm>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dlpp/datagen.hpp"
#include "dlpp/errors.hpp"
#include "dlpp/experiments.hpp"
#include "dlpp/formulations.hpp"
#include "dlpp/greedy.hpp"
#include "dlpp/instance_io.hpp"
#include "dlpp/metrics.hpp"
#include "dlpp/proxy.hpp"
#include "dlpp/service.hpp"
#include "dlpp/synthetic.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace dlpp;

namespace {

struct UserError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

Level log_level() {
  static const Level level = [] {
    const char* env = std::getenv("DLPP_LOG");
    const std::string v = env ? env : "info";
    if (v == "error") return Level::Error;
    if (v == "warn") return Level::Warn;
    if (v == "debug") return Level::Debug;
    return Level::Info;
  }();
  return level;
}

void log(Level level, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (level <= log_level()) std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << '\n';
}

constexpr const char* kSchemaHelp = R"(instance schema (docs/instance_schema.md has the details):
  sort_pairs:     [{id, origin: {terminal, sort, day}, destination: {terminal, sort, day},
                    allowed_trailers: [trailer id], load_pair: id (optional)}]
  trailer_types:  [{id, capacity > 0, cost > 0}]
  commodities:    [{id, volume >= 0, service_class: OneDay|TwoDay|ThreeDay|Other,
                    primary: sort pair id, alternates: [{sort_pair, distance >= 0}]}]
  reference_plan: [{sort_pair, trailer_type, count}] or null
  sort is one of Sunrise, Day, Twilight, Night)";

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UserError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw UserError("cannot write " + path);
  out << text;
}

Instance read_instance(const std::string& path, const std::string& reference = {}) {
  if (!fs::exists(path)) throw UserError("no such instance file: " + path);
  Instance inst = load_instance_file(path);
  if (!reference.empty()) inst.reference_plan = load_reference_plan_string(inst, read_text(reference));
  return inst;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// ---- solve

struct SolveArgs {
  std::string mode = "mip";
  std::string instance;
  std::string reference;
  std::string model;
  std::string out;
  std::string trace;
  double time_limit = 30.0;
  std::size_t node_limit = 0;
};

int run_solve(const SolveArgs& a) {
  const Instance inst = read_instance(a.instance, a.reference);
  MipOptions mip;
  mip.time_limit = a.time_limit;
  mip.node_limit = a.node_limit;
  const auto start = std::chrono::steady_clock::now();
  LoadPlan plan;
  std::string status = "Feasible";
  if (a.mode == "mip") {
    PlanSolve r = solve_model1(inst, mip);
    if (!r.plan) throw NoIncumbent("model1", to_string(r.mip.status));
    plan = std::move(*r.plan);
    status = to_string(r.mip.status);
  } else if (a.mode == "gdo") {
    GdoResult r = solve_gdo(inst, {mip, mip});
    plan = std::move(r.plan);
    status = to_string(r.stage2.status);
  } else if (a.mode == "greedy") {
    GreedyResult r = greedy_solve(inst);
    if (!a.trace.empty()) {
      std::ostringstream t;
      write_greedy_trace(t, r);
      write_text(a.trace, t.str());
    }
    plan = std::move(r.plan);
  } else {
    if (a.model.empty()) throw UserError("--mode proxy needs --model");
    const ProxyModel model = load_model_file(a.model);
    ProxySolve r = proxy_solve(model, inst, mip);
    log(Level::Info, "restoration added " + std::to_string(r.plan.objective - r.report.predicted_cost) + " in trailer cost");
    plan = std::move(r.plan);
  }
  const double elapsed = seconds_since(start);
  require_feasible(inst, plan);
  if (!a.out.empty()) write_text(a.out, plan_to_json(inst, plan));
  std::cout << "status " << status << "\ncost " << plan.objective << '\n';
  if (inst.reference_plan) {
    std::cout << "distance " << normalized_distance(inst, plan.y) << "\nhamming " << hamming_distance(inst, plan.y)
              << '\n';
  }
  std::cout << "time " << elapsed << '\n';
  return 0;
}

// ---- datagen

struct DatagenArgs {
  std::string ref;
  std::string out_dir;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::size_t stage1_nodes = 2000;
  std::size_t stage2_nodes = 2000;
};

int run_datagen(const DatagenArgs& a) {
  const Instance ref = read_instance(a.ref);
  if (!ref.reference_plan) throw UserError("the reference instance needs a reference_plan");
  DatagenOptions o;
  o.gdo = deterministic_gdo_options(a.stage1_nodes, a.stage2_nodes);
  o.jobs = a.jobs;
  const auto start = std::chrono::steady_clock::now();
  const Dataset d = generate_dataset(ref, a.n, a.seed, o);
  save_dataset(d, a.out_dir);
  log(Level::Info, "labeled " + std::to_string(a.n) + " instances in " + std::to_string(seconds_since(start)) + "s");
  std::cout << "instances " << d.items.size() << "\nfailures " << d.failures() << '\n';
  return 0;
}

// ---- train

struct TrainArgs {
  std::string data;
  std::string grid;
  std::string out_model;
  std::string loss_csv;
  std::uint64_t seed = 0;
  std::size_t epochs = 150;
  std::size_t batch_size = 32;
  double lr = 1e-2;
  std::size_t layers = 3;
  std::size_t hidden = 128;
  double dropout = 0.1;
  bool batch_norm = false;
};

GridSpec read_grid(const std::string& path) {
  const auto doc = nlohmann::json::parse(read_text(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw UserError(path + ": grid must be a JSON object");
  GridSpec g;
  try {
    if (doc.contains("learning_rates")) g.learning_rates = doc["learning_rates"].get<std::vector<double>>();
    if (doc.contains("num_layers")) g.num_layers = doc["num_layers"].get<std::vector<std::size_t>>();
    if (doc.contains("hidden")) g.hidden = doc["hidden"].get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw UserError(path + ": " + e.what());
  }
  if (g.learning_rates.empty() || g.num_layers.empty() || g.hidden.empty()) throw UserError(path + ": empty grid axis");
  return g;
}

int run_train(const TrainArgs& a) {
  const Dataset d = load_dataset(a.data);
  const std::vector<Sample> tr = samples_of(d, Split::Train);
  const std::vector<Sample> va = samples_of(d, Split::Validation);
  TrainingConfig base;
  base.seed = a.seed;
  base.epochs = a.epochs;
  base.batch_size = a.batch_size;
  base.learning_rate = a.lr;
  base.arch.num_layers = a.layers;
  base.arch.hidden = a.hidden;
  base.arch.dropout = a.dropout;
  base.arch.batch_norm = a.batch_norm;
  GridSpec grid;
  if (a.grid.empty()) {
    grid.learning_rates = {a.lr};
    grid.num_layers = {a.layers};
    grid.hidden = {a.hidden};
  } else {
    grid = read_grid(a.grid);
  }
  const auto start = std::chrono::steady_clock::now();
  const GridResult r = train_grid(d.structure, tr, va, grid, base);
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    const auto& run = r.runs[i];
    std::ostringstream msg;
    msg << "run " << i << " lr " << run.config.learning_rate << " layers " << run.config.arch.num_layers << " hidden "
        << run.config.arch.hidden << (run.diverged ? " diverged" : " validation " + std::to_string(run.best_validation));
    log(Level::Info, msg.str());
  }
  if (r.best.curve.empty()) throw UserError("every grid configuration diverged");
  save_model_file(r.best.model, a.out_model);
  if (!a.loss_csv.empty()) {
    std::ostringstream csv;
    write_loss_csv(csv, r);
    write_text(a.loss_csv, csv.str());
  }
  log(Level::Info, "trained in " + std::to_string(seconds_since(start)) + "s");
  std::cout << "best_validation " << r.best.best_validation << "\nbest_epoch " << r.best.best_epoch
            << "\nlearning_rate " << r.best.config.learning_rate << "\nlayers " << r.best.config.arch.num_layers
            << "\nhidden " << r.best.config.arch.hidden << '\n';
  return 0;
}

// ---- eval

struct EvalArgs {
  std::string data;
  std::string methods = "gdo,proxy";
  std::string model;
  std::string report;
  std::string summary;
  std::string split = "test";
  std::size_t jobs = 1;
};

int run_eval(const EvalArgs& a) {
  const Dataset d = load_dataset(a.data);
  const std::vector<std::string> methods = split_list(a.methods);
  for (const auto& m : methods) {
    if (!known_method(m)) throw UserError("unknown method '" + m + "'");
  }
  std::optional<ProxyModel> model;
  if (std::find(methods.begin(), methods.end(), "proxy") != methods.end()) {
    if (a.model.empty()) throw UserError("the proxy method needs --model");
    model = load_model_file(a.model);
  }
  const Split split = a.split == "train" ? Split::Train : a.split == "validation" ? Split::Validation : Split::Test;
  ExperimentOptions o;
  o.jobs = a.jobs;
  const SplitEvaluation ev = evaluate_split(d, split, methods, model ? &*model : nullptr, o);
  if (ev.skipped) log(Level::Warn, std::to_string(ev.skipped) + " items had failed labels and were skipped");
  if (!a.report.empty()) {
    std::ostringstream csv;
    write_report_csv(csv, ev.report);
    write_text(a.report, csv.str());
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::parse(report_summary_json(ev.report));
  if (!ev.capacity_share.empty()) {
    double s = 0.0;
    for (double x : ev.capacity_share) s += x;
    doc["proxy"]["predicted_capacity_share"] = s / static_cast<double>(ev.capacity_share.size());
  }
  const std::string text = doc.dump(2) + "\n";
  if (!a.summary.empty()) write_text(a.summary, text);
  std::cout << text;
  return 0;
}

// ---- sweep

struct SweepArgs {
  std::string ref;
  std::string methods = "mip,gdo";
  std::string model;
  std::string out;
  std::size_t steps = 50;
  double from = 0.8;
  double to = 1.2;
  std::size_t jobs = 1;
};

int run_sweep_cmd(const SweepArgs& a) {
  const Instance ref = read_instance(a.ref);
  std::vector<std::string> methods = split_list(a.methods);
  for (const auto& m : methods) {
    if (!known_method(m)) throw UserError("unknown method '" + m + "'");
  }
  std::optional<ProxyModel> model;
  if (std::find(methods.begin(), methods.end(), "proxy") != methods.end()) {
    if (a.model.empty()) throw UserError("the proxy method needs --model");
    model = load_model_file(a.model);
  }
  if (!(a.from >= 0.0) || !(a.to >= a.from)) throw UserError("need 0 <= --scale-from <= --scale-to");
  ExperimentOptions o;
  o.jobs = a.jobs;
  const SweepResult s = run_sweep(ref, a.steps, a.from, a.to, methods, model ? &*model : nullptr, o);
  std::ostringstream csv;
  write_sweep_csv(csv, s);
  write_text(a.out, csv.str());
  for (const auto& m : methods) {
    std::ostringstream msg;
    msg << m << " total variation " << s.total_variation(m);
    if (ref.reference_plan) msg << ", distance geomean " << s.distance_geomean(ref, m);
    log(Level::Info, msg.str());
  }
  return 0;
}

// ---- restrict

int run_restrict(const std::string& instance, Scenario scenario, const std::string& out) {
  write_text(out, save_instance(restrict_scenario(read_instance(instance), scenario)));
  return 0;
}

// ---- fixture

int run_fixture(const std::string& name, std::uint64_t seed, const std::string& out) {
  Instance inst;
  if (name == "t1") {
    inst = fixture_t1();
  } else if (name == "splitting") {
    inst = fixture_splitting();
  } else {
    inst = synthetic_terminal(seed);
  }
  write_text(out, save_instance(inst));
  return 0;
}

// ---- serve

HttpServer* g_server = nullptr;

int run_serve(const std::string& host, int port, const std::string& store, std::size_t workers,
              const std::vector<std::string>& models) {
  ServiceConfig cfg;
  cfg.store_dir = store;
  cfg.workers = workers;
  PlanningService service(cfg);
  for (const auto& m : models) service.add_model(load_model_file(m));
  HttpServer server(service);
  const int bound = server.bind(host, port);
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  std::cout << "listening on http://" << host << ':' << bound << "/v1" << std::endl;
  server.run();
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dlpp: dynamic load planning for a parcel terminal"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dlpp 0.1.0");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve one instance and write the plan as JSON");
  s->add_option("--mode", solve.mode, "mip, gdo, greedy or proxy")
      ->check(CLI::IsMember({"mip", "gdo", "greedy", "proxy"}));
  s->add_option("--instance", solve.instance, "Instance JSON")->required();
  s->add_option("--reference", solve.reference, "Reference plan JSON, replaces the instance's own");
  s->add_option("--model", solve.model, "Proxy model checkpoint (proxy mode)");
  s->add_option("--time-limit", solve.time_limit, "Seconds per MIP stage")->check(CLI::PositiveNumber);
  s->add_option("--node-limit", solve.node_limit, "Nodes per MIP stage, 0 for none");
  s->add_option("--out", solve.out, "Plan JSON output");
  s->add_option("--trace", solve.trace, "Greedy iteration trace CSV");

  DatagenArgs dg;
  auto* g = app.add_subcommand("datagen", "Perturb a reference instance and label each copy with GDO");
  g->add_option("--ref", dg.ref, "Reference instance JSON (with reference_plan)")->required();
  g->add_option("--n", dg.n, "Number of instances")->required();
  g->add_option("--seed", dg.seed, "Random seed")->required();
  g->add_option("--out-dir", dg.out_dir, "Dataset directory")->required();
  g->add_option("--jobs", dg.jobs, "Parallel labeling workers")->check(CLI::PositiveNumber);
  g->add_option("--stage1-nodes", dg.stage1_nodes, "Node limit for the cost stage");
  g->add_option("--stage2-nodes", dg.stage2_nodes, "Node limit for the distance stage");

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "Train the proxy MLP on a dataset");
  t->add_option("--data", tr.data, "Dataset directory")->required();
  t->add_option("--grid", tr.grid, "JSON with learning_rates, num_layers, hidden lists");
  t->add_option("--seed", tr.seed, "Random seed")->required();
  t->add_option("--out-model", tr.out_model, "Model checkpoint output")->required();
  t->add_option("--loss-csv", tr.loss_csv, "Per-epoch loss curves");
  t->add_option("--epochs", tr.epochs)->check(CLI::PositiveNumber);
  t->add_option("--batch-size", tr.batch_size)->check(CLI::PositiveNumber);
  t->add_option("--lr", tr.lr, "Learning rate when no grid is given")->check(CLI::PositiveNumber);
  t->add_option("--layers", tr.layers, "Dense layers when no grid is given")->check(CLI::PositiveNumber);
  t->add_option("--hidden", tr.hidden, "Hidden width when no grid is given")->check(CLI::PositiveNumber);
  t->add_option("--dropout", tr.dropout)->check(CLI::Range(0.0, 0.99));
  t->add_flag("--batch-norm", tr.batch_norm);

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Compare methods on one split of a dataset");
  e->add_option("--data", ev.data, "Dataset directory")->required();
  e->add_option("--methods", ev.methods, "Comma list of mip, gdo, greedy, proxy");
  e->add_option("--model", ev.model, "Proxy model checkpoint");
  e->add_option("--report", ev.report, "Per-instance CSV");
  e->add_option("--summary", ev.summary, "Summary JSON (also printed)");
  e->add_option("--split", ev.split)->check(CLI::IsMember({"train", "validation", "test"}));
  e->add_option("--jobs", ev.jobs)->check(CLI::PositiveNumber);

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "Solve a linear volume sweep and write trailer counts as CSV");
  w->add_option("--ref", sw.ref, "Reference instance JSON")->required();
  w->add_option("--steps", sw.steps)->check(CLI::PositiveNumber);
  w->add_option("--scale-from", sw.from);
  w->add_option("--scale-to", sw.to);
  w->add_option("--methods", sw.methods, "Comma list of mip, gdo, greedy, proxy");
  w->add_option("--model", sw.model, "Proxy model checkpoint");
  w->add_option("--out", sw.out, "CSV output (stdout when omitted)");
  w->add_option("--jobs", sw.jobs)->check(CLI::PositiveNumber);

  std::string r_instance, r_out;
  Scenario scenario = Scenario::AllAlt;
  auto* r = app.add_subcommand("restrict", "Drop alternates to a routing scenario");
  r->add_option("--instance", r_instance)->required();
  r->add_option("--scenario", scenario)
      ->required()
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Scenario>{
              {"primary-only", Scenario::PrimaryOnly}, {"one-alt", Scenario::OneAlt}, {"all-alt", Scenario::AllAlt}},
          CLI::ignore_case));
  r->add_option("--out", r_out, "Instance JSON output (stdout when omitted)");

  std::string f_name = "synthetic", f_out;
  std::uint64_t f_seed = 1;
  auto* f = app.add_subcommand("fixture", "Write a built-in instance: t1, splitting or synthetic");
  f->add_option("name", f_name)->check(CLI::IsMember({"t1", "splitting", "synthetic"}));
  f->add_option("--seed", f_seed, "Seed for the synthetic terminal");
  f->add_option("--out", f_out);

  std::string host = "127.0.0.1", store = "dlpp-store";
  int port = 8080;
  std::size_t workers = 2;
  std::vector<std::string> models;
  auto* v = app.add_subcommand("serve", "Run the HTTP planning service");
  v->add_option("--host", host);
  v->add_option("--port", port)->check(CLI::Range(0, 65535));
  v->add_option("--store-dir", store);
  v->add_option("--workers", workers)->check(CLI::PositiveNumber);
  v->add_option("--model", models, "Proxy model checkpoints to serve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? 0 : 1;
  }

  try {
    if (s->parsed()) return run_solve(solve);
    if (g->parsed()) return run_datagen(dg);
    if (t->parsed()) return run_train(tr);
    if (e->parsed()) return run_eval(ev);
    if (w->parsed()) return run_sweep_cmd(sw);
    if (r->parsed()) return run_restrict(r_instance, scenario, r_out);
    if (f->parsed()) return run_fixture(f_name, f_seed, f_out);
    if (v->parsed()) return run_serve(host, port, store, workers, models);
  } catch (const ValidationError& err) {
    log(Level::Error, err.what());
    std::cerr << kSchemaHelp << '\n';
    return 1;
  } catch (const ParseError& err) {
    log(Level::Error, err.what());
    std::cerr << kSchemaHelp << '\n';
    return 1;
  } catch (const UserError& err) {
    log(Level::Error, err.what());
    return 1;
  } catch (const std::invalid_argument& err) {
    log(Level::Error, err.what());
    return 1;
  } catch (const MissingReference& err) {
    log(Level::Error, err.what());
    return 1;
  } catch (const SignatureMismatch& err) {
    log(Level::Error, std::string(err.what()) + " (the model was trained on a different network)");
    return 1;
  } catch (const std::exception& err) {
    log(Level::Error, std::string("internal error: ") + err.what());
    return 2;
  }
  return 1;
}
