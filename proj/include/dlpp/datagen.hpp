#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dlpp/formulations.hpp"
#include "dlpp/network.hpp"
#include "dlpp/random.hpp"

namespace dlpp {

struct Perturbation {
  double scale = 1.0;          // global factor, U[0.8, 1.2]
  std::vector<double> noise;   // per commodity, N(1, 0.05)
};

double sample_scale(Rng& rng);
double sample_noise(Rng& rng);

/// Draws the perturbation for stream `index` of `seed`.
Perturbation draw_perturbation(const Instance& ref, std::uint64_t seed, std::uint64_t index = 0);

/// Volumes scale * noise_k * q_k, clamped at zero. Structure and reference plan are kept.
Instance apply_perturbation(const Instance& ref, const Perturbation& p);

Instance perturb(const Instance& ref, std::uint64_t seed);

enum class Split { Train, Validation, Test };
const char* to_string(Split split);

struct LabeledInstance {
  std::size_t index = 0;
  std::vector<double> volumes;
  std::vector<int> label;  // stage-2 counts, slot-indexed
  double label_cost = 0.0;
  double z_star = 0.0;
  bool failed = false;
  std::string failure;
  Split split = Split::Train;
};

struct Dataset {
  Instance structure;  // the reference instance
  std::uint64_t seed = 0;
  std::vector<LabeledInstance> items;

  std::size_t failures() const;
  /// Successfully labeled items of one split, in index order.
  std::vector<const LabeledInstance*> of(Split split) const;
  Instance instance(const LabeledInstance& item) const { return structure.with_volumes(item.volumes); }
};

/// GDO options with node limits only, so labels do not depend on machine speed.
GdoOptions deterministic_gdo_options(std::size_t stage1_nodes = 2000, std::size_t stage2_nodes = 2000);

struct DatagenOptions {
  GdoOptions gdo = deterministic_gdo_options();
  std::size_t jobs = 1;
};


/// Split sizes: train n*8/10, validation n/10, test the rest.
void assign_splits(std::vector<LabeledInstance>& items, std::uint64_t seed);

/// Perturbs `ref` n times and labels each instance with GDO. Failed labels are
/// flagged, never fatal. Results are in index order regardless of `jobs`.
Dataset generate_dataset(const Instance& ref, std::size_t n, std::uint64_t seed,
                         const DatagenOptions& options = {});

/// Instances whose volumes are the reference scaled linearly from `from` to
/// `to` over `steps` points, so total volume is nondecreasing.
std::vector<Instance> generate_sweep(const Instance& ref, std::size_t steps, double from, double to);

/// Directory layout: reference.json, manifest.json, labels.json.
void save_dataset(const Dataset& data, const std::string& dir);
Dataset load_dataset(const std::string& dir);

}  // namespace dlpp
