#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dlpp/mip.hpp"
#include "dlpp/network.hpp"
#include "dlpp/plan.hpp"
#include "dlpp/restoration.hpp"

namespace dlpp {

struct ProxyConfig {
  std::size_t num_layers = 3;  // dense layers including the output layer
  std::size_t hidden = 128;
  double dropout = 0.1;        // hidden layers only, training only
  bool batch_norm = false;

  friend bool operator==(const ProxyConfig&, const ProxyConfig&) = default;
};

struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weight;  // out x in, row-major
  std::vector<double> bias;
  // Batch normalization (hidden layers, when enabled).
  std::vector<double> bn_gamma;
  std::vector<double> bn_beta;
  std::vector<double> running_mean;
  std::vector<double> running_var;

  bool has_batch_norm() const { return !bn_gamma.empty(); }
};

/// Shape of the instances a model was trained for.
struct ModelSignature {
  std::size_t sort_pairs = 0;
  std::size_t trailer_types = 0;
  std::size_t commodities = 0;
  std::string structure;  // hash of ids, compatibilities and allowed trailers

  friend bool operator==(const ModelSignature&, const ModelSignature&) = default;
};

ModelSignature signature_of(const Instance& inst);

/// MLP from commodity volumes to trailer counts on the |S| x |V| grid.
struct ProxyModel {
  ProxyConfig config;
  ModelSignature signature;
  std::vector<double> input_mean;
  std::vector<double> input_std;
  std::vector<double> mask;  // 1 on compatible (s, v), 0 elsewhere
  std::vector<DenseLayer> layers;

  std::size_t input_dim() const { return input_mean.size(); }
  std::size_t output_dim() const { return mask.size(); }
  std::size_t parameter_count() const;
};

/// Fresh model for the instance's shape: He-uniform weights, zero biases,
/// identity normalization.
ProxyModel init_model(const Instance& inst, const ProxyConfig& config, std::uint64_t seed);

/// Inference-mode forward pass: masked, nonnegative trailer estimates on the grid.
/// Throws DimensionMismatch.
std::vector<double> forward(const ProxyModel& model, std::span<const double> volumes);

/// Slot-indexed label vector mapped onto the grid.
std::vector<double> to_grid(const Instance& inst, const std::vector<int>& y);

struct Sample {
  std::vector<double> volumes;
  std::vector<double> target;  // grid
};

/// Mean smooth-l1 loss over compatible outputs.
double smooth_l1(double diff, double beta = 1.0);

/// Loss over a batch. `training` uses batch statistics for batch norm;
/// dropout is never applied here so the value is deterministic.
double batch_loss(const ProxyModel& model, std::span<const Sample> batch, bool training = false,
                  double beta = 1.0);

/// Flat parameter vector: per layer weight, bias, then batch-norm scale and shift.
std::vector<double> get_parameters(const ProxyModel& model);
void set_parameters(ProxyModel& model, std::span<const double> flat);

/// Analytic gradient of batch_loss in the same flat layout.
std::vector<double> batch_gradient(const ProxyModel& model, std::span<const Sample> batch,
                                   bool training = false, double beta = 1.0);

struct TrainingConfig {
  ProxyConfig arch;
  double learning_rate = 1e-2;
  std::size_t batch_size = 32;
  std::size_t epochs = 150;
  std::uint64_t seed = 0;
  double smooth_l1_beta = 1.0;
};

struct EpochLoss {
  std::size_t epoch = 0;
  double train = 0.0;
  double validation = 0.0;
};

struct TrainResult {
  ProxyModel model;  // parameters from the epoch with the best validation loss
  TrainingConfig config;
  std::vector<EpochLoss> curve;
  double best_validation = 0.0;
  std::size_t best_epoch = 0;
};

/// Adam on mini-batches with seeded shuffling and dropout. Inputs are
/// standardized with training-set statistics and the output bias starts at the
/// label mean. Throws EmptyDataset and DivergenceDetected.
TrainResult train(const Instance& structure, std::span<const Sample> train_set,
                  std::span<const Sample> validation_set, const TrainingConfig& config);

struct GridSpec {
  std::vector<double> learning_rates{1e-1, 1e-2};
  std::vector<std::size_t> num_layers{3, 4, 5};
  std::vector<std::size_t> hidden{128, 256};
};

struct GridRun {
  TrainingConfig config;
  bool diverged = false;
  double best_validation = 0.0;
  std::vector<EpochLoss> curve;
};

struct GridResult {
  TrainResult best;
  std::vector<GridRun> runs;
};

/// Trains every grid configuration and keeps the lowest validation loss.
/// Diverging configurations are recorded and skipped.
GridResult train_grid(const Instance& structure, std::span<const Sample> train_set,
                      std::span<const Sample> validation_set, const GridSpec& grid,
                      const TrainingConfig& base);

enum class RoundingMode { HalfUp, NearestEven };

double round_count(double raw, RoundingMode mode = RoundingMode::HalfUp);

/// Rounded, nonnegative slot-indexed counts. Throws SignatureMismatch.
PredictedPlan predict_plan(const ProxyModel& model, const Instance& inst,
                           RoundingMode mode = RoundingMode::HalfUp);

struct ProxySolve {
  LoadPlan plan;
  PredictedPlan prediction;
  RestorationReport report;
  double inference_time = 0.0;
  double restoration_time = 0.0;
  double wall_time() const { return inference_time + restoration_time; }
};

/// Predicts, then restores feasibility.
ProxySolve proxy_solve(const ProxyModel& model, const Instance& inst, const MipOptions& restore_options = {},
                       RoundingMode mode = RoundingMode::HalfUp);

std::string model_to_json(const ProxyModel& model);
ProxyModel model_from_json(const std::string& text);
void save_model_file(const ProxyModel& model, const std::string& path);
ProxyModel load_model_file(const std::string& path);

/// CSV with columns run,learning_rate,layers,hidden,epoch,train_loss,validation_loss.
void write_loss_csv(std::ostream& out, const GridResult& result);

}  // namespace dlpp
