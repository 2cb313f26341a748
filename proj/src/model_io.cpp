#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "drpso/error.hpp"
#include "drpso/forecaster.hpp"

// Layout:
//   drpso-mlp 1
//   lag <n>
//   layers <count> <size>...
//   norm <count>
//   <name> <min> <max>        (one line per feature)
//   weights <l> <rows> <cols>
//   <row-major values, one row per line>
//   biases <l> <size>
//   <values>

namespace drpso {

namespace {

constexpr const char* kMagic = "drpso-mlp";
constexpr int kVersion = 1;

std::string num(double v) { return fmt::format("{:.17g}", v); }

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string word() {
    std::string w;
    if (!(in_ >> w)) throw Error(ErrorCode::ModelFormat, "unexpected end of model file");
    return w;
  }

  void expect(std::string_view keyword) {
    const auto w = word();
    if (w != keyword) throw Error(ErrorCode::ModelFormat, fmt::format("expected '{}', found '{}'", keyword, w));
  }

  std::size_t size() {
    const auto w = word();
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc{} || p != w.data() + w.size()) {
      throw Error(ErrorCode::ModelFormat, fmt::format("expected an integer, found '{}'", w));
    }
    return v;
  }

  double real() {
    const auto w = word();
    double v = 0.0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc{} || p != w.data() + w.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::ModelFormat, fmt::format("expected a finite number, found '{}'", w));
    }
    return v;
  }

 private:
  std::istream& in_;
};

}  // namespace

void write_model(std::ostream& out, const MlpModel& model) {
  out << kMagic << ' ' << kVersion << '\n';
  out << "lag " << model.lag << '\n';
  out << "layers " << model.layer_sizes.size();
  for (auto s : model.layer_sizes) out << ' ' << s;
  out << '\n';
  out << "norm " << model.norm_stats.ranges.size() << '\n';
  for (const auto& r : model.norm_stats.ranges) out << r.name << ' ' << num(r.min) << ' ' << num(r.max) << '\n';
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    const auto& w = model.weights[l];
    out << "weights " << l << ' ' << w.rows() << ' ' << w.cols() << '\n';
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) out << (c ? " " : "") << num(w(r, c));
      out << '\n';
    }
    const auto& b = model.biases[l];
    out << "biases " << l << ' ' << b.size() << '\n';
    for (Eigen::Index i = 0; i < b.size(); ++i) out << (i ? " " : "") << num(b(i));
    out << '\n';
  }
}

MlpModel read_model(std::istream& in) {
  Reader rd(in);
  rd.expect(kMagic);
  if (const auto version = rd.size(); version != kVersion) {
    throw Error(ErrorCode::ModelFormat, fmt::format("unsupported model version {}", version));
  }
  MlpModel model;
  rd.expect("lag");
  model.lag = rd.size();
  rd.expect("layers");
  const auto n_layers = rd.size();
  if (n_layers < 2) throw Error(ErrorCode::ModelFormat, "model needs at least two layers");
  for (std::size_t i = 0; i < n_layers; ++i) {
    model.layer_sizes.push_back(rd.size());
    if (model.layer_sizes.back() == 0) throw Error(ErrorCode::ModelFormat, "zero-width layer");
  }
  rd.expect("norm");
  const auto n_norm = rd.size();
  for (std::size_t i = 0; i < n_norm; ++i) {
    FeatureRange r;
    r.name = rd.word();
    r.min = rd.real();
    r.max = rd.real();
    model.norm_stats.ranges.push_back(std::move(r));
  }
  for (std::size_t l = 0; l + 1 < n_layers; ++l) {
    rd.expect("weights");
    const auto idx = rd.size();
    const auto rows = rd.size();
    const auto cols = rd.size();
    if (idx != l || rows != model.layer_sizes[l + 1] || cols != model.layer_sizes[l]) {
      throw Error(ErrorCode::ModelFormat, fmt::format("weight block {} has shape {}x{}", idx, rows, cols));
    }
    Eigen::MatrixXd w(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = rd.real();
    }
    rd.expect("biases");
    const auto bidx = rd.size();
    const auto bsize = rd.size();
    if (bidx != l || bsize != rows) {
      throw Error(ErrorCode::ModelFormat, fmt::format("bias block {} has size {}", bidx, bsize));
    }
    Eigen::VectorXd b(static_cast<Eigen::Index>(bsize));
    for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = rd.real();
    model.weights.push_back(std::move(w));
    model.biases.push_back(std::move(b));
  }
  if (model.input_size() != WeatherRecord::kFeatureCount + model.lag && !model.norm_stats.ranges.empty()) {
    throw Error(ErrorCode::ModelFormat,
                fmt::format("input width {} does not match lag {}", model.input_size(), model.lag));
  }
  return model;
}

void save_model(const std::filesystem::path& path, const MlpModel& model) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, fmt::format("cannot write '{}'", path.string()));
  write_model(out, model);
  if (!out) throw Error(ErrorCode::IoError, fmt::format("write failed for '{}'", path.string()));
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot open '{}'", path.string()));
  return read_model(in);
}

}  // namespace drpso
