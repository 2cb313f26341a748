#pragma once

// Feed-forward network for day-ahead hourly load: tanh hidden layers,
// identity output, trained by mini-batch gradient descent (with momentum) on
// mean squared error in normalized units.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "drpso/data_model.hpp"
#include "drpso/ingest.hpp"

namespace drpso {

struct MlpModel {
  std::vector<std::size_t> layer_sizes;
  std::vector<Eigen::MatrixXd> weights;  // layer l: sizes[l+1] x sizes[l]
  std::vector<Eigen::VectorXd> biases;
  NormalizationStats norm_stats;  // empty for a bare network
  std::size_t lag = 24;

  std::size_t input_size() const { return layer_sizes.front(); }
  std::size_t parameter_count() const;
};

/// Same layout as the model parameters.
struct Gradient {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

/// {5 + lag, 25, 20, 15, 1}
std::vector<std::size_t> default_architecture(std::size_t lag);

/// Weights uniform in +-1/sqrt(fan_in), zero biases. Throws InvalidArchitecture
/// for fewer than two layers or a zero-width layer.
MlpModel init_model(std::span<const std::size_t> layer_sizes, std::uint64_t seed);

double forward(const MlpModel& model, std::span<const double> features);

/// Outputs of every layer, input first. Hidden entries lie in (-1, 1).
std::vector<Eigen::VectorXd> forward_activations(const MlpModel& model, std::span<const double> features);

/// Gradient of 0.5 * (forward(x) - target)^2 with respect to every parameter.
Gradient backward(const MlpModel& model, std::span<const double> features, double target);

struct TrainConfig {
  std::size_t epochs = 1000;
  double learning_rate = 0.01;
  double momentum = 0.9;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
  bool shuffle = true;

  /// Throws InvalidConfig.
  void validate() const;
};

struct FitReport {
  double train_mse = 0.0;                   // normalized units
  std::optional<double> test_mse;           // absent without test windows
  std::optional<double> train_correlation;  // absent for zero variance
  std::optional<double> test_correlation;
  std::vector<double> epoch_train_mse;
  std::size_t train_windows = 0;
  std::size_t test_windows = 0;

  friend bool operator==(const FitReport&, const FitReport&) = default;
};

/// Normalized design matrices; one sample per column.
struct EncodedWindows {
  Eigen::MatrixXd train_x;
  Eigen::VectorXd train_y;
  Eigen::MatrixXd test_x;
  Eigen::VectorXd test_y;
};

EncodedWindows encode_windows(const NormalizationStats& stats, std::span<const TrainingWindow> windows);

struct TrainOutcome {
  MlpModel model;
  FitReport report;
};

/// Throws EmptyTrainingSet, DimensionMismatch, or DivergedTraining.
TrainOutcome train(MlpModel model, const EncodedWindows& data, const TrainConfig& config);
/// Encodes `windows` with the model's normalization stats, then trains.
TrainOutcome train(MlpModel model, std::span<const TrainingWindow> windows, const TrainConfig& config);

/// 24 denormalized predictions for `day`, negatives clamped to zero. Needs
/// the weather rows of `day` and `lag` loads ending 24 h before each hour.
HourlyProfile predict_day(const MlpModel& model, const Dataset& dataset, Date day);

struct Metrics {
  double mse = 0.0;
  std::optional<double> correlation;  // absent when either series is constant
};

/// Throws DimensionMismatch on unequal or empty inputs.
Metrics metrics(std::span<const double> predicted, std::span<const double> actual);
/// Pearson r; throws ZeroVariance when undefined.
double pearson(std::span<const double> x, std::span<const double> y);

/// Versioned text format; doubles written with 17 significant digits so a
/// reload reproduces every parameter bit-for-bit.
void write_model(std::ostream& out, const MlpModel& model);
MlpModel read_model(std::istream& in);
void save_model(const std::filesystem::path& path, const MlpModel& model);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace drpso
