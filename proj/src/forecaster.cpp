#include "drpso/forecaster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "drpso/error.hpp"
#include "drpso/rng.hpp"

namespace drpso {

namespace {

void check_input(const MlpModel& model, std::size_t n) {
  if (n != model.input_size()) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("model expects {} features, got {}", model.input_size(), n));
  }
}

Eigen::Map<const Eigen::VectorXd> as_vector(std::span<const double> x) {
  return {x.data(), static_cast<Eigen::Index>(x.size())};
}

// Batched forward pass; keeps every layer's output for backpropagation.
std::vector<Eigen::MatrixXd> forward_batch(const MlpModel& model, const Eigen::MatrixXd& x) {
  std::vector<Eigen::MatrixXd> acts;
  acts.reserve(model.weights.size() + 1);
  acts.push_back(x);
  const std::size_t last = model.weights.size() - 1;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    Eigen::MatrixXd z = model.weights[l] * acts.back();
    z.colwise() += model.biases[l];
    if (l != last) z = z.array().tanh().matrix();
    acts.push_back(std::move(z));
  }
  return acts;
}

// Gradient of 0.5 * mean((out - y)^2) over the batch columns.
Gradient backward_batch(const MlpModel& model, const std::vector<Eigen::MatrixXd>& acts,
                        const Eigen::RowVectorXd& residual) {
  const std::size_t layers = model.weights.size();
  const double inv_n = 1.0 / static_cast<double>(residual.size());
  Gradient g;
  g.weights.resize(layers);
  g.biases.resize(layers);
  Eigen::MatrixXd delta = residual * inv_n;  // 1 x B
  for (std::size_t l = layers; l-- > 0;) {
    g.weights[l] = delta * acts[l].transpose();
    g.biases[l] = delta.rowwise().sum();
    if (l > 0) {
      Eigen::MatrixXd back = model.weights[l].transpose() * delta;
      delta = back.array() * (1.0 - acts[l].array().square());
    }
  }
  return g;
}

double mse_of(const MlpModel& model, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  const auto acts = forward_batch(model, x);
  return (acts.back().row(0).transpose() - y).squaredNorm() / static_cast<double>(y.size());
}

Eigen::VectorXd predictions(const MlpModel& model, const Eigen::MatrixXd& x) {
  return forward_batch(model, x).back().row(0).transpose();
}

std::optional<double> correlation_or_none(const Eigen::VectorXd& p, const Eigen::VectorXd& y) {
  return metrics(std::span<const double>(p.data(), p.size()), std::span<const double>(y.data(), y.size()))
      .correlation;
}

}  // namespace

std::size_t MlpModel::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    n += static_cast<std::size_t>(weights[l].size() + biases[l].size());
  }
  return n;
}

std::vector<std::size_t> default_architecture(std::size_t lag) {
  return {WeatherRecord::kFeatureCount + lag, 25, 20, 15, 1};
}

MlpModel init_model(std::span<const std::size_t> layer_sizes, std::uint64_t seed) {
  if (layer_sizes.size() < 2) {
    throw Error(ErrorCode::InvalidArchitecture, "need at least an input and an output layer");
  }
  for (std::size_t i = 0; i < layer_sizes.size(); ++i) {
    if (layer_sizes[i] == 0) {
      throw Error(ErrorCode::InvalidArchitecture, fmt::format("layer {} has zero width", i));
    }
  }
  MlpModel model;
  model.layer_sizes.assign(layer_sizes.begin(), layer_sizes.end());
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    const auto fan_in = static_cast<Eigen::Index>(layer_sizes[l]);
    const auto fan_out = static_cast<Eigen::Index>(layer_sizes[l + 1]);
    const double limit = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (Eigen::Index r = 0; r < fan_out; ++r) {
      for (Eigen::Index c = 0; c < fan_in; ++c) w(r, c) = rng.uniform(-limit, limit);
    }
    model.weights.push_back(std::move(w));
    model.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return model;
}

std::vector<Eigen::VectorXd> forward_activations(const MlpModel& model, std::span<const double> features) {
  check_input(model, features.size());
  std::vector<Eigen::VectorXd> acts;
  acts.emplace_back(as_vector(features));
  const std::size_t last = model.weights.size() - 1;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    Eigen::VectorXd z = model.weights[l] * acts.back() + model.biases[l];
    if (l != last) z = z.array().tanh().matrix();
    acts.push_back(std::move(z));
  }
  return acts;
}

double forward(const MlpModel& model, std::span<const double> features) {
  return forward_activations(model, features).back()(0);
}

Gradient backward(const MlpModel& model, std::span<const double> features, double target) {
  check_input(model, features.size());
  if (model.layer_sizes.back() != 1) {
    throw Error(ErrorCode::DimensionMismatch, "backward expects a single output unit");
  }
  Eigen::MatrixXd x = as_vector(features);
  const auto acts = forward_batch(model, x);
  Eigen::RowVectorXd residual(1);
  residual(0) = acts.back()(0, 0) - target;
  return backward_batch(model, acts, residual);
}

void TrainConfig::validate() const {
  if (epochs < 1) throw Error(ErrorCode::InvalidConfig, "epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw Error(ErrorCode::InvalidConfig, "learning_rate must be > 0");
  if (batch_size < 1) throw Error(ErrorCode::InvalidConfig, "batch_size must be >= 1");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw Error(ErrorCode::InvalidConfig, "momentum must be in [0, 1)");
}

EncodedWindows encode_windows(const NormalizationStats& stats, std::span<const TrainingWindow> windows) {
  if (stats.ranges.size() != NormalizationStats::kLoadIndex + 1) {
    throw Error(ErrorCode::InvalidConfig, "normalization stats are missing");
  }
  std::size_t n_test = 0;
  for (const auto& w : windows) n_test += w.is_test ? 1 : 0;
  const std::size_t n_train = windows.size() - n_test;
  const auto dim = static_cast<Eigen::Index>(windows.empty() ? 0 : windows.front().features.size());

  EncodedWindows enc;
  enc.train_x.resize(dim, static_cast<Eigen::Index>(n_train));
  enc.train_y.resize(static_cast<Eigen::Index>(n_train));
  enc.test_x.resize(dim, static_cast<Eigen::Index>(n_test));
  enc.test_y.resize(static_cast<Eigen::Index>(n_test));
  Eigen::Index i_train = 0, i_test = 0;
  const auto& load = stats.load();
  for (const auto& w : windows) {
    if (static_cast<Eigen::Index>(w.features.size()) != dim) {
      throw Error(ErrorCode::DimensionMismatch, "windows have inconsistent feature lengths");
    }
    Eigen::MatrixXd& x = w.is_test ? enc.test_x : enc.train_x;
    Eigen::VectorXd& y = w.is_test ? enc.test_y : enc.train_y;
    Eigen::Index& col = w.is_test ? i_test : i_train;
    for (Eigen::Index f = 0; f < dim; ++f) {
      const auto fi = static_cast<std::size_t>(f);
      const auto& range = fi < WeatherRecord::kFeatureCount ? stats.ranges[fi] : load;
      x(f, col) = normalize(w.features[fi], range);
    }
    y(col) = normalize(w.target, load);
    ++col;
  }
  return enc;
}

TrainOutcome train(MlpModel model, const EncodedWindows& data, const TrainConfig& config) {
  config.validate();
  const Eigen::Index n = data.train_x.cols();
  if (n == 0) throw Error(ErrorCode::EmptyTrainingSet, "no training windows");
  if (static_cast<std::size_t>(data.train_x.rows()) != model.input_size() ||
      (data.test_x.cols() > 0 && data.test_x.rows() != data.train_x.rows())) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("model expects {} features, data has {}", model.input_size(), data.train_x.rows()));
  }

  Rng rng(config.seed);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});

  std::vector<Eigen::MatrixXd> vel_w;
  std::vector<Eigen::VectorXd> vel_b;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    vel_w.push_back(Eigen::MatrixXd::Zero(model.weights[l].rows(), model.weights[l].cols()));
    vel_b.push_back(Eigen::VectorXd::Zero(model.biases[l].size()));
  }

  FitReport report;
  report.epoch_train_mse.reserve(config.epochs);
  const auto batch = static_cast<Eigen::Index>(config.batch_size);
  Eigen::MatrixXd bx;
  Eigen::RowVectorXd by;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    if (config.shuffle) {
      for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng.index(i + 1)]);
    }
    for (Eigen::Index start = 0; start < n; start += batch) {
      const Eigen::Index len = std::min(batch, n - start);
      bx.resize(data.train_x.rows(), len);
      by.resize(len);
      for (Eigen::Index j = 0; j < len; ++j) {
        const auto col = order[static_cast<std::size_t>(start + j)];
        bx.col(j) = data.train_x.col(col);
        by(j) = data.train_y(col);
      }
      const auto acts = forward_batch(model, bx);
      const Eigen::RowVectorXd residual = acts.back().row(0) - by;
      if (!residual.allFinite()) {
        throw Error(ErrorCode::DivergedTraining, fmt::format("non-finite loss at epoch {}", epoch + 1));
      }
      const Gradient g = backward_batch(model, acts, residual);
      for (std::size_t l = 0; l < model.weights.size(); ++l) {
        vel_w[l] = config.momentum * vel_w[l] - config.learning_rate * g.weights[l];
        vel_b[l] = config.momentum * vel_b[l] - config.learning_rate * g.biases[l];
        model.weights[l] += vel_w[l];
        model.biases[l] += vel_b[l];
      }
    }
    const double epoch_mse = mse_of(model, data.train_x, data.train_y);
    if (!std::isfinite(epoch_mse)) {
      throw Error(ErrorCode::DivergedTraining, fmt::format("non-finite loss at epoch {}", epoch + 1));
    }
    report.epoch_train_mse.push_back(epoch_mse);
  }

  report.train_windows = static_cast<std::size_t>(n);
  report.test_windows = static_cast<std::size_t>(data.test_x.cols());
  report.train_mse = report.epoch_train_mse.back();
  report.train_correlation = correlation_or_none(predictions(model, data.train_x), data.train_y);
  if (data.test_x.cols() > 0) {
    const Eigen::VectorXd p = predictions(model, data.test_x);
    report.test_mse = (p - data.test_y).squaredNorm() / static_cast<double>(p.size());
    report.test_correlation = correlation_or_none(p, data.test_y);
  }
  return {std::move(model), std::move(report)};
}

TrainOutcome train(MlpModel model, std::span<const TrainingWindow> windows, const TrainConfig& config) {
  const EncodedWindows enc = encode_windows(model.norm_stats, windows);
  return train(std::move(model), enc, config);
}

HourlyProfile predict_day(const MlpModel& model, const Dataset& dataset, Date day) {
  if (model.norm_stats.ranges.size() != NormalizationStats::kLoadIndex + 1) {
    throw Error(ErrorCode::InvalidConfig, "model has no normalization stats");
  }
  const auto& stats = model.norm_stats;
  const auto lag = static_cast<int>(model.lag);
  Schedule out{};
  std::vector<double> x(model.input_size());
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    const Timestamp target = Timestamp{day} + std::chrono::hours{static_cast<int>(h)};
    const auto row = dataset.find(target);
    if (!row) {
      throw Error(ErrorCode::InsufficientHistory, fmt::format("no weather row for {}", format_timestamp(target)));
    }
    const auto w = dataset.records[*row].weather.features();
    for (std::size_t f = 0; f < w.size(); ++f) x[f] = normalize(w[f], stats.ranges[f]);
    for (int k = 0; k < lag; ++k) {
      const Timestamp ts = target - std::chrono::hours{kHoursPerDay} - std::chrono::hours{lag - 1 - k};
      const auto idx = dataset.find(ts);
      if (!idx) {
        throw Error(ErrorCode::InsufficientHistory,
                    fmt::format("no load history at {} for {}", format_timestamp(ts), format_timestamp(target)));
      }
      x[w.size() + static_cast<std::size_t>(k)] = normalize(dataset.records[*idx].load_kwh, stats.load());
    }
    out[h] = std::max(0.0, denormalize(forward(model, x), stats.load()));
  }
  return HourlyProfile(ProfileKind::Load, out);
}

Metrics metrics(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size() || predicted.empty()) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("metric inputs have lengths {} and {}", predicted.size(), actual.size()));
  }
  const auto n = static_cast<double>(actual.size());
  double se = 0.0, mp = 0.0, ma = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    se += (predicted[i] - actual[i]) * (predicted[i] - actual[i]);
    mp += predicted[i];
    ma += actual[i];
  }
  mp /= n;
  ma /= n;
  double cov = 0.0, vp = 0.0, va = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double dp = predicted[i] - mp;
    const double da = actual[i] - ma;
    cov += dp * da;
    vp += dp * dp;
    va += da * da;
  }
  Metrics m;
  m.mse = se / n;
  if (vp > 0.0 && va > 0.0) m.correlation = std::clamp(cov / std::sqrt(vp * va), -1.0, 1.0);
  return m;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const auto m = metrics(x, y);
  if (!m.correlation) throw Error(ErrorCode::ZeroVariance, "correlation undefined for a constant series");
  return *m.correlation;
}

}  // namespace drpso
