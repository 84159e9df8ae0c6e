#include "dlpp/proxy.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "dlpp/errors.hpp"
#include "dlpp/hash.hpp"
#include "dlpp/random.hpp"
#include "json.hpp"

namespace dlpp {

namespace {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVec = Eigen::RowVectorXd;
using ConstMatMap = Eigen::Map<const Mat>;
using ConstRowMap = Eigen::Map<const RowVec>;

constexpr double kBnEps = 1e-5;
constexpr double kMaxParameter = 1e8;
constexpr double kBnMomentum = 0.1;

struct LayerCache {
  Mat input;     // activation entering the layer
  Mat z;         // affine output
  Mat xhat;      // normalized z (batch norm only)
  RowVec mean;   // batch statistics (batch norm, training only)
  RowVec var;
  RowVec inv_std;
  Mat pre;       // value fed to the ReLU
  Mat drop;      // dropout multipliers (empty when unused)
};

struct Pass {
  std::vector<LayerCache> layers;
  Mat out;
};

Mat normalize_inputs(const ProxyModel& m, std::span<const Sample> batch) {
  Mat x(static_cast<Eigen::Index>(batch.size()), static_cast<Eigen::Index>(m.input_dim()));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (batch[i].volumes.size() != m.input_dim()) {
      throw DimensionMismatch("expected " + std::to_string(m.input_dim()) + " volumes, got " +
                              std::to_string(batch[i].volumes.size()));
    }
    for (std::size_t j = 0; j < m.input_dim(); ++j) {
      x(i, j) = (batch[i].volumes[j] - m.input_mean[j]) / m.input_std[j];
    }
  }
  return x;
}

Mat targets_of(const ProxyModel& m, std::span<const Sample> batch) {
  Mat t(static_cast<Eigen::Index>(batch.size()), static_cast<Eigen::Index>(m.output_dim()));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (batch[i].target.size() != m.output_dim()) throw DimensionMismatch("label has the wrong grid size");
    for (std::size_t j = 0; j < m.output_dim(); ++j) t(i, j) = batch[i].target[j];
  }
  return t;
}

Pass run(const ProxyModel& m, Mat x, bool training, Rng* dropout_rng) {
  Pass pass;
  const ConstRowMap mask(m.mask.data(), static_cast<Eigen::Index>(m.mask.size()));
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const DenseLayer& L = m.layers[l];
    const bool last = l + 1 == m.layers.size();
    LayerCache c;
    const ConstMatMap w(L.weight.data(), L.out, L.in);
    const ConstRowMap b(L.bias.data(), L.out);
    c.z = x * w.transpose();
    c.z.rowwise() += b;
    if (!last && L.has_batch_norm()) {
      if (training) {
        c.mean = c.z.colwise().mean();
        c.var = (c.z.rowwise() - c.mean).array().square().colwise().mean();
      } else {
        c.mean = ConstRowMap(L.running_mean.data(), L.out);
        c.var = ConstRowMap(L.running_var.data(), L.out);
      }
      c.inv_std = (c.var.array() + kBnEps).rsqrt();
      c.xhat = (c.z.rowwise() - c.mean).array().rowwise() * c.inv_std.array();
      c.pre = c.xhat.array().rowwise() * ConstRowMap(L.bn_gamma.data(), L.out).array();
      c.pre.rowwise() += ConstRowMap(L.bn_beta.data(), L.out);
    } else {
      c.pre = c.z;
    }
    Mat h = c.pre.cwiseMax(0.0);
    if (last) {
      h.array().rowwise() *= mask.array();
      pass.out = h;
    } else if (training && dropout_rng && m.config.dropout > 0.0) {
      const double keep = 1.0 - m.config.dropout;
      c.drop.resize(h.rows(), h.cols());
      for (Eigen::Index i = 0; i < h.rows(); ++i) {
        for (Eigen::Index j = 0; j < h.cols(); ++j) {
          c.drop(i, j) = dropout_rng->uniform() < keep ? 1.0 / keep : 0.0;
        }
      }
      h.array() *= c.drop.array();
    }
    c.input = std::move(x);
    x = std::move(h);
    pass.layers.push_back(std::move(c));
  }
  return pass;
}

double smooth_l1_grad(double diff, double beta) {
  if (std::abs(diff) < beta) return diff / beta;
  return diff > 0.0 ? 1.0 : -1.0;
}

double mask_count(const ProxyModel& m) {
  return std::max(1.0, std::accumulate(m.mask.begin(), m.mask.end(), 0.0));
}

double loss_of(const ProxyModel& m, const Mat& out, const Mat& target, double beta) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      if (m.mask[j] != 0.0) total += smooth_l1(out(i, j) - target(i, j), beta);
    }
  }
  return total / (static_cast<double>(out.rows()) * mask_count(m));
}

/// Backpropagates through a recorded pass; gradient in get_parameters layout.
std::vector<double> backward(const ProxyModel& m, const Pass& pass, const Mat& target, double beta,
                             bool training) {
  const double scale = 1.0 / (static_cast<double>(pass.out.rows()) * mask_count(m));
  Mat d(pass.out.rows(), pass.out.cols());
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      d(i, j) = m.mask[j] != 0.0 ? smooth_l1_grad(pass.out(i, j) - target(i, j), beta) * scale : 0.0;
    }
  }

  std::vector<std::vector<double>> blocks(m.layers.size());
  for (std::size_t li = m.layers.size(); li-- > 0;) {
    const DenseLayer& L = m.layers[li];
    const LayerCache& c = pass.layers[li];
    const bool last = li + 1 == m.layers.size();
    if (!last && c.drop.size() > 0) d.array() *= c.drop.array();
    // ReLU
    d.array() *= (c.pre.array() > 0.0).cast<double>();

    RowVec dgamma, dbeta;
    Mat dz;
    if (!last && L.has_batch_norm()) {
      dgamma = (d.array() * c.xhat.array()).colwise().sum();
      dbeta = d.colwise().sum();
      Mat dxhat = d.array().rowwise() * ConstRowMap(L.bn_gamma.data(), L.out).array();
      if (!training) {
        // running statistics are constants here
        dz = dxhat.array().rowwise() * c.inv_std.array();
      } else {
      const double n = static_cast<double>(d.rows());
      const RowVec sum_dxhat = dxhat.colwise().sum();
      const RowVec sum_dxhat_xhat = (dxhat.array() * c.xhat.array()).colwise().sum();
      dz = (n * dxhat.array()).matrix();
      dz.rowwise() -= sum_dxhat;
      dz.array() -= c.xhat.array().rowwise() * sum_dxhat_xhat.array();
      dz.array().rowwise() *= (c.inv_std.array() / n);
      }
    } else {
      dz = d;
    }
    const Mat dw = dz.transpose() * c.input;
    const RowVec db = dz.colwise().sum();
    std::vector<double>& blk = blocks[li];
    blk.assign(dw.data(), dw.data() + dw.size());
    blk.insert(blk.end(), db.data(), db.data() + db.size());
    if (L.has_batch_norm()) {
      if (!last) {
        blk.insert(blk.end(), dgamma.data(), dgamma.data() + dgamma.size());
        blk.insert(blk.end(), dbeta.data(), dbeta.data() + dbeta.size());
      } else {
        blk.insert(blk.end(), 2 * L.out, 0.0);
      }
    }
    if (li > 0) {
      const ConstMatMap w(L.weight.data(), L.out, L.in);
      d = dz * w;
    }
  }
  std::vector<double> flat;
  for (auto& b : blocks) flat.insert(flat.end(), b.begin(), b.end());
  return flat;
}

void update_running_stats(ProxyModel& m, const Pass& pass) {
  for (std::size_t l = 0; l + 1 < m.layers.size(); ++l) {
    DenseLayer& L = m.layers[l];
    if (!L.has_batch_norm()) continue;
    const LayerCache& c = pass.layers[l];
    for (std::size_t j = 0; j < L.out; ++j) {
      L.running_mean[j] = (1.0 - kBnMomentum) * L.running_mean[j] + kBnMomentum * c.mean(j);
      L.running_var[j] = (1.0 - kBnMomentum) * L.running_var[j] + kBnMomentum * c.var(j);
    }
  }
}

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

// A huge step can park every unit in the dead ReLU region with finite but
// absurd weights; the loss then stays flat instead of going to inf.
bool blown_up(std::span<const double> v) {
  for (double x : v) {
    if (!(std::abs(x) <= kMaxParameter)) return true;
  }
  return false;
}

std::vector<Sample> gather(std::span<const Sample> data, std::span<const std::size_t> idx) {
  std::vector<Sample> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(data[i]);
  return out;
}

}  // namespace

ModelSignature signature_of(const Instance& inst) {
  std::ostringstream s;
  for (const auto& sp : inst.sort_pairs) {
    s << sp.id << '[';
    for (TrailerIndex v : sp.allowed_trailers) s << v << ',';
    s << ']';
  }
  s << '|';
  for (const auto& t : inst.trailer_types) s << t.id << ',';
  s << '|';
  for (const auto& c : inst.commodities) {
    s << c.id << '[';
    for (SortPairIndex sp : c.compatible()) s << sp << ',';
    s << ']';
  }
  return {inst.sort_pairs.size(), inst.trailer_types.size(), inst.commodities.size(), hex64(fnv1a(s.str()))};
}

std::size_t ProxyModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.weight.size() + l.bias.size() + l.bn_gamma.size() + l.bn_beta.size();
  return n;
}

ProxyModel init_model(const Instance& inst, const ProxyConfig& config, std::uint64_t seed) {
  if (config.num_layers < 1) throw std::invalid_argument("a proxy needs at least one layer");
  if (config.dropout < 0.0 || config.dropout >= 1.0) throw std::invalid_argument("dropout must be in [0, 1)");
  const PairIndex pairs(inst);
  ProxyModel m;
  m.config = config;
  m.signature = signature_of(inst);
  m.input_mean.assign(inst.commodities.size(), 0.0);
  m.input_std.assign(inst.commodities.size(), 1.0);
  m.mask.assign(pairs.grid_size(), 0.0);
  for (PairSlot p = 0; p < pairs.size(); ++p) m.mask[pairs.grid_position(p)] = 1.0;

  Rng rng(seed, 0);
  std::size_t in = m.input_dim();
  for (std::size_t l = 0; l < config.num_layers; ++l) {
    const bool last = l + 1 == config.num_layers;
    DenseLayer L;
    L.in = in;
    L.out = last ? m.output_dim() : config.hidden;
    const double limit = std::sqrt(6.0 / static_cast<double>(std::max<std::size_t>(in, 1)));
    L.weight.resize(L.in * L.out);
    for (double& w : L.weight) w = rng.uniform(-limit, limit);
    L.bias.assign(L.out, 0.0);
    if (config.batch_norm && !last) {
      L.bn_gamma.assign(L.out, 1.0);
      L.bn_beta.assign(L.out, 0.0);
      L.running_mean.assign(L.out, 0.0);
      L.running_var.assign(L.out, 1.0);
    }
    m.layers.push_back(std::move(L));
    in = m.layers.back().out;
  }
  return m;
}

std::vector<double> forward(const ProxyModel& model, std::span<const double> volumes) {
  if (volumes.size() != model.input_dim()) {
    throw DimensionMismatch("expected " + std::to_string(model.input_dim()) + " volumes, got " +
                            std::to_string(volumes.size()));
  }
  Sample s;
  s.volumes.assign(volumes.begin(), volumes.end());
  const Pass pass = run(model, normalize_inputs(model, std::span<const Sample>(&s, 1)), false, nullptr);
  return {pass.out.data(), pass.out.data() + pass.out.size()};
}

std::vector<double> to_grid(const Instance& inst, const std::vector<int>& y) {
  const PairIndex pairs(inst);
  if (y.size() != pairs.size()) throw DimensionMismatch("label has the wrong number of slots");
  std::vector<double> grid(pairs.grid_size(), 0.0);
  for (PairSlot p = 0; p < pairs.size(); ++p) grid[pairs.grid_position(p)] = y[p];
  return grid;
}

double smooth_l1(double diff, double beta) {
  const double a = std::abs(diff);
  return a < beta ? 0.5 * diff * diff / beta : a - 0.5 * beta;
}

double batch_loss(const ProxyModel& model, std::span<const Sample> batch, bool training, double beta) {
  if (batch.empty()) throw EmptyDataset("loss of an empty batch");
  const Pass pass = run(model, normalize_inputs(model, batch), training, nullptr);
  return loss_of(model, pass.out, targets_of(model, batch), beta);
}

std::vector<double> get_parameters(const ProxyModel& model) {
  std::vector<double> flat;
  flat.reserve(model.parameter_count());
  for (const auto& L : model.layers) {
    flat.insert(flat.end(), L.weight.begin(), L.weight.end());
    flat.insert(flat.end(), L.bias.begin(), L.bias.end());
    flat.insert(flat.end(), L.bn_gamma.begin(), L.bn_gamma.end());
    flat.insert(flat.end(), L.bn_beta.begin(), L.bn_beta.end());
  }
  return flat;
}

void set_parameters(ProxyModel& model, std::span<const double> flat) {
  if (flat.size() != model.parameter_count()) throw DimensionMismatch("parameter vector has the wrong size");
  std::size_t at = 0;
  auto fill = [&](std::vector<double>& v) {
    std::copy(flat.begin() + at, flat.begin() + at + v.size(), v.begin());
    at += v.size();
  };
  for (auto& L : model.layers) {
    fill(L.weight);
    fill(L.bias);
    fill(L.bn_gamma);
    fill(L.bn_beta);
  }
}

std::vector<double> batch_gradient(const ProxyModel& model, std::span<const Sample> batch, bool training,
                                   double beta) {
  if (batch.empty()) throw EmptyDataset("gradient of an empty batch");
  const Pass pass = run(model, normalize_inputs(model, batch), training, nullptr);
  return backward(model, pass, targets_of(model, batch), beta, training);
}

TrainResult train(const Instance& structure, std::span<const Sample> train_set,
                  std::span<const Sample> validation_set, const TrainingConfig& config) {
  if (train_set.empty()) throw EmptyDataset("training set is empty");
  if (config.batch_size == 0 || config.epochs == 0 || !(config.learning_rate > 0.0)) {
    throw std::invalid_argument("batch size, epochs and learning rate must be positive");
  }
  if (validation_set.empty()) validation_set = train_set;

  ProxyModel model = init_model(structure, config.arch, config.seed);
  const std::size_t nin = model.input_dim();
  const std::size_t nout = model.output_dim();
  const double n = static_cast<double>(train_set.size());
  for (const auto& s : train_set) {
    if (s.volumes.size() != nin || s.target.size() != nout) throw DimensionMismatch("sample shape mismatch");
  }
  // Input standardization and output bias from the training set.
  for (std::size_t j = 0; j < nin; ++j) {
    double mean = 0.0;
    for (const auto& s : train_set) mean += s.volumes[j];
    mean /= n;
    double var = 0.0;
    for (const auto& s : train_set) var += (s.volumes[j] - mean) * (s.volumes[j] - mean);
    const double sd = std::sqrt(var / n);
    model.input_mean[j] = mean;
    model.input_std[j] = sd > 1e-12 ? sd : 1.0;
  }
  auto& out_bias = model.layers.back().bias;
  for (std::size_t j = 0; j < nout; ++j) {
    double mean = 0.0;
    for (const auto& s : train_set) mean += s.target[j];
    out_bias[j] = model.mask[j] != 0.0 ? mean / n : 0.0;
  }

  TrainResult result;
  result.config = config;
  result.best_validation = std::numeric_limits<double>::infinity();
  result.model = model;

  std::vector<double> params = get_parameters(model);
  std::vector<double> m1(params.size(), 0.0), m2(params.size(), 0.0);
  const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
  std::size_t step = 0;

  Rng order_rng(config.seed, 1);
  Rng dropout_rng(config.seed, 2);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    order_rng.shuffle(order);
    double epoch_loss = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      const std::vector<Sample> batch = gather(train_set, std::span(order).subspan(begin, end - begin));
      const Mat target = targets_of(model, batch);
      const Pass pass = run(model, normalize_inputs(model, batch), true, &dropout_rng);
      const double loss = loss_of(model, pass.out, target, config.smooth_l1_beta);
      std::vector<double> grad = backward(model, pass, target, config.smooth_l1_beta, true);
      if (!std::isfinite(loss) || !all_finite(grad)) {
        throw DivergenceDetected("non-finite loss at epoch " + std::to_string(epoch) + " (lr " +
                                 std::to_string(config.learning_rate) + ")");
      }
      epoch_loss += loss * static_cast<double>(batch.size());
      ++step;
      const double c1 = 1.0 - std::pow(b1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(b2, static_cast<double>(step));
      for (std::size_t i = 0; i < params.size(); ++i) {
        m1[i] = b1 * m1[i] + (1.0 - b1) * grad[i];
        m2[i] = b2 * m2[i] + (1.0 - b2) * grad[i] * grad[i];
        params[i] -= config.learning_rate * (m1[i] / c1) / (std::sqrt(m2[i] / c2) + eps);
      }
      set_parameters(model, params);
      update_running_stats(model, pass);
    }
    EpochLoss row{epoch, epoch_loss / n, batch_loss(model, validation_set, false, config.smooth_l1_beta)};
    if (!std::isfinite(row.train) || !std::isfinite(row.validation) || blown_up(params)) {
      throw DivergenceDetected("training diverged at epoch " + std::to_string(epoch));
    }
    result.curve.push_back(row);
    if (row.validation < result.best_validation) {
      result.best_validation = row.validation;
      result.best_epoch = epoch;
      result.model = model;
    }
  }
  return result;
}

GridResult train_grid(const Instance& structure, std::span<const Sample> train_set,
                      std::span<const Sample> validation_set, const GridSpec& grid,
                      const TrainingConfig& base) {
  GridResult out;
  bool have_best = false;
  for (double lr : grid.learning_rates) {
    for (std::size_t layers : grid.num_layers) {
      for (std::size_t hidden : grid.hidden) {
        TrainingConfig cfg = base;
        cfg.learning_rate = lr;
        cfg.arch.num_layers = layers;
        cfg.arch.hidden = hidden;
        GridRun run;
        run.config = cfg;
        try {
          TrainResult r = train(structure, train_set, validation_set, cfg);
          run.best_validation = r.best_validation;
          run.curve = r.curve;
          if (!have_best || r.best_validation < out.best.best_validation) {
            out.best = std::move(r);
            have_best = true;
          }
        } catch (const DivergenceDetected&) {
          run.diverged = true;
          run.best_validation = std::numeric_limits<double>::infinity();
        }
        out.runs.push_back(std::move(run));
      }
    }
  }
  if (!have_best) throw DivergenceDetected("every grid configuration diverged");
  return out;
}

double round_count(double raw, RoundingMode mode) {
  if (!std::isfinite(raw)) throw NumericalFailure("non-finite prediction");
  const double r = mode == RoundingMode::HalfUp ? std::floor(raw + 0.5) : std::nearbyint(raw);
  return std::max(0.0, r);
}

PredictedPlan predict_plan(const ProxyModel& model, const Instance& inst, RoundingMode mode) {
  if (!(signature_of(inst) == model.signature)) {
    throw SignatureMismatch("instance shape does not match the model (" + model.signature.structure + ")");
  }
  const std::vector<double> raw = forward(model, inst.volumes());
  const PairIndex pairs(inst);
  std::vector<int> y(pairs.size());
  for (PairSlot p = 0; p < pairs.size(); ++p) {
    y[p] = static_cast<int>(round_count(raw[pairs.grid_position(p)], mode));
  }
  return make_predicted_plan(inst, std::move(y));
}

ProxySolve proxy_solve(const ProxyModel& model, const Instance& inst, const MipOptions& restore_options,
                       RoundingMode mode) {
  using Clock = std::chrono::steady_clock;
  ProxySolve out;
  const auto t0 = Clock::now();
  out.prediction = predict_plan(model, inst, mode);
  const auto t1 = Clock::now();
  RestoreResult r = restore(inst, out.prediction, restore_options);
  const auto t2 = Clock::now();
  out.plan = std::move(r.plan);
  out.report = std::move(r.report);
  out.inference_time = std::chrono::duration<double>(t1 - t0).count();
  out.restoration_time = std::chrono::duration<double>(t2 - t1).count();
  return out;
}

std::string model_to_json(const ProxyModel& model) {
  using Json = nlohmann::ordered_json;
  Json doc;
  doc["format"] = "dlpp-proxy";
  doc["version"] = 1;
  doc["config"] = Json{{"num_layers", model.config.num_layers},
                       {"hidden", model.config.hidden},
                       {"dropout", model.config.dropout},
                       {"batch_norm", model.config.batch_norm}};
  doc["signature"] = Json{{"sort_pairs", model.signature.sort_pairs},
                          {"trailer_types", model.signature.trailer_types},
                          {"commodities", model.signature.commodities},
                          {"structure", model.signature.structure}};
  doc["input_mean"] = model.input_mean;
  doc["input_std"] = model.input_std;
  doc["mask"] = model.mask;
  Json layers = Json::array();
  for (const auto& L : model.layers) {
    Json l{{"in", L.in}, {"out", L.out}, {"weight", L.weight}, {"bias", L.bias}};
    if (L.has_batch_norm()) {
      l["bn_gamma"] = L.bn_gamma;
      l["bn_beta"] = L.bn_beta;
      l["running_mean"] = L.running_mean;
      l["running_var"] = L.running_var;
    }
    layers.push_back(std::move(l));
  }
  doc["layers"] = std::move(layers);
  return doc.dump() + "\n";
}

ProxyModel model_from_json(const std::string& text) {
  using Json = nlohmann::json;
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed model checkpoint: ") + e.what());
  }
  ProxyModel m;
  try {
    if (doc.at("format").get<std::string>() != "dlpp-proxy" || doc.at("version").get<int>() != 1) {
      throw ValidationError("format", "unsupported checkpoint format");
    }
    const auto& c = doc.at("config");
    m.config.num_layers = c.at("num_layers").get<std::size_t>();
    m.config.hidden = c.at("hidden").get<std::size_t>();
    m.config.dropout = c.at("dropout").get<double>();
    m.config.batch_norm = c.at("batch_norm").get<bool>();
    const auto& s = doc.at("signature");
    m.signature.sort_pairs = s.at("sort_pairs").get<std::size_t>();
    m.signature.trailer_types = s.at("trailer_types").get<std::size_t>();
    m.signature.commodities = s.at("commodities").get<std::size_t>();
    m.signature.structure = s.at("structure").get<std::string>();
    m.input_mean = doc.at("input_mean").get<std::vector<double>>();
    m.input_std = doc.at("input_std").get<std::vector<double>>();
    m.mask = doc.at("mask").get<std::vector<double>>();
    std::size_t in = m.input_mean.size();
    for (const auto& l : doc.at("layers")) {
      DenseLayer L;
      L.in = l.at("in").get<std::size_t>();
      L.out = l.at("out").get<std::size_t>();
      L.weight = l.at("weight").get<std::vector<double>>();
      L.bias = l.at("bias").get<std::vector<double>>();
      if (l.contains("bn_gamma")) {
        L.bn_gamma = l.at("bn_gamma").get<std::vector<double>>();
        L.bn_beta = l.at("bn_beta").get<std::vector<double>>();
        L.running_mean = l.at("running_mean").get<std::vector<double>>();
        L.running_var = l.at("running_var").get<std::vector<double>>();
      }
      if (L.in != in || L.weight.size() != L.in * L.out || L.bias.size() != L.out) {
        throw ValidationError("layers", "inconsistent layer shapes");
      }
      in = L.out;
      m.layers.push_back(std::move(L));
    }
    if (m.layers.empty() || in != m.mask.size() || m.input_std.size() != m.input_mean.size()) {
      throw ValidationError("layers", "checkpoint shapes do not line up");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("$", e.what());
  }
  return m;
}

void save_model_file(const ProxyModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << model_to_json(model);
}

ProxyModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

void write_loss_csv(std::ostream& out, const GridResult& result) {
  out << "run,learning_rate,layers,hidden,epoch,train_loss,validation_loss\n";
  for (std::size_t r = 0; r < result.runs.size(); ++r) {
    const auto& run = result.runs[r];
    for (const auto& e : run.curve) {
      out << r << ',' << run.config.learning_rate << ',' << run.config.arch.num_layers << ','
          << run.config.arch.hidden << ',' << e.epoch << ',' << e.train << ',' << e.validation << '\n';
    }
  }
}

}  // namespace dlpp
