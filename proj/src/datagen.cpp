#include "dlpp/datagen.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "dlpp/errors.hpp"
#include "dlpp/instance_io.hpp"
#include "json.hpp"

namespace dlpp {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

double sample_scale(Rng& rng) { return rng.uniform(0.8, 1.2); }
double sample_noise(Rng& rng) { return rng.normal(1.0, 0.05); }

Perturbation draw_perturbation(const Instance& ref, std::uint64_t seed, std::uint64_t index) {
  Rng rng(seed, index);
  Perturbation p;
  p.scale = sample_scale(rng);
  p.noise.reserve(ref.commodities.size());
  for (std::size_t k = 0; k < ref.commodities.size(); ++k) p.noise.push_back(sample_noise(rng));
  return p;
}

Instance apply_perturbation(const Instance& ref, const Perturbation& p) {
  if (p.noise.size() != ref.commodities.size()) throw DimensionMismatch("one noise factor per commodity");
  std::vector<double> vol(ref.commodities.size());
  for (std::size_t k = 0; k < vol.size(); ++k) {
    vol[k] = std::max(0.0, p.scale * p.noise[k] * ref.commodities[k].volume);
  }
  return ref.with_volumes(vol);
}

Instance perturb(const Instance& ref, std::uint64_t seed) { return apply_perturbation(ref, draw_perturbation(ref, seed)); }

const char* to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Validation: return "validation";
    case Split::Test: return "test";
  }
  return "train";
}

namespace {

Split parse_split(const std::string& s) {
  if (s == "train") return Split::Train;
  if (s == "validation") return Split::Validation;
  if (s == "test") return Split::Test;
  throw ValidationError("split", "unknown split '" + s + "'");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string item_file(std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof name, "%05zu.json", index);
  return name;
}

void label_one(const Instance& ref, LabeledInstance& item, const GdoOptions& gdo) {
  try {
    const Instance inst = ref.with_volumes(item.volumes);
    GdoResult r = solve_gdo(inst, gdo);
    if (auto v = find_violation(inst, r.plan)) {
      item.failed = true;
      item.failure = "label violates constraints: " + *v;
      return;
    }
    item.label = r.plan.y;
    item.label_cost = r.plan.objective;
    item.z_star = r.z_star;
  } catch (const Error& e) {
    item.failed = true;
    item.failure = e.what();
  }
}

bool signature_differs(const Instance& a, const Instance& b) {
  if (a.commodities.size() != b.commodities.size()) return true;
  return !(a.with_volumes(b.volumes()) == b);
}

}  // namespace

std::size_t Dataset::failures() const {
  return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [](const auto& i) { return i.failed; }));
}

std::vector<const LabeledInstance*> Dataset::of(Split split) const {
  std::vector<const LabeledInstance*> out;
  for (const auto& i : items) {
    if (!i.failed && i.split == split) out.push_back(&i);
  }
  return out;
}

GdoOptions deterministic_gdo_options(std::size_t stage1_nodes, std::size_t stage2_nodes) {
  GdoOptions o;
  o.stage1.time_limit = 1e9;
  o.stage1.node_limit = stage1_nodes;
  o.stage2.time_limit = 1e9;
  o.stage2.node_limit = stage2_nodes;
  return o;
}

void assign_splits(std::vector<LabeledInstance>& items, std::uint64_t seed) {
  const std::size_t n = items.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed, ~0ULL);
  rng.shuffle(order);
  const std::size_t train = n * 8 / 10;
  const std::size_t val = n / 10;
  for (std::size_t r = 0; r < n; ++r) {
    items[order[r]].split = r < train ? Split::Train : (r < train + val ? Split::Validation : Split::Test);
  }
}

Dataset generate_dataset(const Instance& ref, std::size_t n, std::uint64_t seed, const DatagenOptions& options) {
  if (!ref.reference_plan) throw MissingReference("labels need a reference plan");
  Dataset data;
  data.structure = ref;
  data.seed = seed;
  data.items.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    data.items[i].index = i;
    data.items[i].volumes = apply_perturbation(ref, draw_perturbation(ref, seed, i)).volumes();
  }
  assign_splits(data.items, seed);

  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, n));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) label_one(ref, data.items[i], options.gdo);
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return data;
}

std::vector<Instance> generate_sweep(const Instance& ref, std::size_t steps, double from, double to) {
  if (!(from >= 0.0) || !(to >= from)) throw std::invalid_argument("sweep needs 0 <= from <= to");
  std::vector<Instance> out;
  const std::vector<double> base = ref.volumes();
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
    const double scale = from + (to - from) * t;
    std::vector<double> vol(base.size());
    for (std::size_t k = 0; k < vol.size(); ++k) vol[k] = base[k] * scale;
    out.push_back(ref.with_volumes(vol));
  }
  return out;
}

void save_dataset(const Dataset& data, const std::string& dir) {
  const fs::path root(dir);
  fs::create_directories(root / "instances");
  write_text(root / "reference.json", save_instance(data.structure));
  Json manifest;
  manifest["format"] = "dlpp-dataset";
  manifest["version"] = 1;
  manifest["seed"] = data.seed;
  manifest["count"] = data.items.size();
  manifest["failures"] = data.failures();
  Json entries = Json::array();
  Json labels = Json::array();
  for (const auto& item : data.items) {
    const std::string file = "instances/" + item_file(item.index);
    write_text(root / file, save_instance(data.instance(item)));
    Json e{{"index", item.index}, {"file", file}, {"split", to_string(item.split)}, {"failed", item.failed}};
    if (item.failed) e["failure"] = item.failure;
    entries.push_back(std::move(e));
    if (!item.failed) {
      labels.push_back(Json{{"index", item.index}, {"y", item.label}, {"cost", item.label_cost}, {"z_star", item.z_star}});
    }
  }
  manifest["items"] = std::move(entries);
  write_text(root / "manifest.json", manifest.dump(2) + "\n");
  write_text(root / "labels.json", labels.dump(2) + "\n");
}

Dataset load_dataset(const std::string& dir) {
  const fs::path root(dir);
  Dataset data;
  data.structure = load_instance_string(read_text(root / "reference.json"));
  try {
    const auto manifest = nlohmann::json::parse(read_text(root / "manifest.json"));
    const auto labels = nlohmann::json::parse(read_text(root / "labels.json"));
    data.seed = manifest.at("seed").get<std::uint64_t>();
    for (const auto& e : manifest.at("items")) {
      LabeledInstance item;
      item.index = e.at("index").get<std::size_t>();
      item.split = parse_split(e.at("split").get<std::string>());
      item.failed = e.at("failed").get<bool>();
      if (item.failed) item.failure = e.value("failure", std::string{});
      const Instance inst = load_instance_string(read_text(root / e.at("file").get<std::string>()));
      if (signature_differs(inst, data.structure)) {
        throw ValidationError(e.at("file").get<std::string>(), "instance structure differs from the reference");
      }
      item.volumes = inst.volumes();
      data.items.push_back(std::move(item));
    }
    for (const auto& l : labels) {
      const std::size_t idx = l.at("index").get<std::size_t>();
      auto it = std::find_if(data.items.begin(), data.items.end(), [&](const auto& i) { return i.index == idx; });
      if (it == data.items.end()) throw ValidationError("labels", "label for unknown index");
      it->label = l.at("y").get<std::vector<int>>();
      it->label_cost = l.at("cost").get<double>();
      it->z_star = l.at("z_star").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("$", e.what());
  }
  return data;
}

}  // namespace dlpp
