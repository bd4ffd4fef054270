#pragma once

// Online sequential extreme learning machine: a random, frozen hidden layer
// and output weights learned by recursive least squares, one chunk (or one
// sample) at a time.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "json.hpp"

#include "error.hpp"
#include "rng.hpp"
#include "siggen.hpp"

namespace pqoselm {

enum class ActivationKind { Sigmoid, Rbf, Sinusoid, Hardlim };

inline constexpr std::array<ActivationKind, 4> kAllActivations = {ActivationKind::Sigmoid, ActivationKind::Rbf,
                                                                  ActivationKind::Sinusoid, ActivationKind::Hardlim};

inline std::string to_string(ActivationKind a) {
  switch (a) {
    case ActivationKind::Sigmoid: return "sigmoid";
    case ActivationKind::Rbf: return "rbf";
    case ActivationKind::Sinusoid: return "sinusoidal";
    case ActivationKind::Hardlim: return "hardlim";
  }
  return "?";
}

inline ActivationKind parse_activation(std::string_view s) {
  if (s == "sigmoid" || s == "sig") return ActivationKind::Sigmoid;
  if (s == "rbf") return ActivationKind::Rbf;
  if (s == "sinusoidal" || s == "sinusoid" || s == "sin") return ActivationKind::Sinusoid;
  if (s == "hardlim") return ActivationKind::Hardlim;
  throw Error(ErrorKind::InvalidArgument, "unknown activation '" + std::string(s) + "'");
}

/// Random hidden layer, fixed at construction. Rows of `weights` are the
/// additive input weights (or RBF centres); `biases` are additive biases
/// (or RBF impact factors, all > 0).
class HiddenLayer {
 public:
  HiddenLayer() = default;

  HiddenLayer(Eigen::MatrixXd weights, Eigen::VectorXd biases, ActivationKind activation)
      : weights_(std::move(weights)), biases_(std::move(biases)), activation_(activation) {
    if (weights_.rows() != biases_.size())
      throw Error(ErrorKind::InvalidArgument, "hidden layer weights/biases size mismatch");
    if (activation_ == ActivationKind::Rbf && (biases_.array() <= 0.0).any())
      throw Error(ErrorKind::InvalidArgument, "RBF impact factors must be positive");
  }

  /// Entries of a_i and additive b_i uniform on [-1, 1]; RBF impact
  /// factors uniform on (0, 1].
  static HiddenLayer random(std::size_t hidden, std::size_t inputs, ActivationKind activation, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXd w(static_cast<Eigen::Index>(hidden), static_cast<Eigen::Index>(inputs));
    Eigen::VectorXd b(static_cast<Eigen::Index>(hidden));
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = rng.closed(-1.0, 1.0);
    for (Eigen::Index i = 0; i < b.size(); ++i)
      b(i) = activation == ActivationKind::Rbf ? 1.0 - rng.unit() : rng.closed(-1.0, 1.0);
    return HiddenLayer(std::move(w), std::move(b), activation);
  }

  std::size_t size() const { return static_cast<std::size_t>(weights_.rows()); }
  std::size_t inputs() const { return static_cast<std::size_t>(weights_.cols()); }
  ActivationKind activation() const { return activation_; }
  const Eigen::MatrixXd& weights() const { return weights_; }
  const Eigen::VectorXd& biases() const { return biases_; }

  /// Hidden outputs for each row of X (N x n) as an N x L matrix.
  Eigen::MatrixXd activate_rows(const Eigen::MatrixXd& X) const {
    if (X.cols() != weights_.cols())
      throw Error(ErrorKind::InvalidArgument, "input has " + std::to_string(X.cols()) + " features, layer expects " +
                                                  std::to_string(weights_.cols()));
    Eigen::MatrixXd H;
    if (activation_ == ActivationKind::Rbf) {
      // ||x - a||^2 = ||x||^2 - 2 x.a + ||a||^2
      Eigen::MatrixXd dist = -2.0 * (X * weights_.transpose());
      dist.colwise() += X.rowwise().squaredNorm();
      dist.rowwise() += weights_.rowwise().squaredNorm().transpose();
      dist = dist.cwiseMax(0.0);
      H = (-(dist.array().rowwise() * biases_.transpose().array())).exp().matrix();
      return H;
    }
    H = X * weights_.transpose();
    H.rowwise() += biases_.transpose();
    switch (activation_) {
      case ActivationKind::Sigmoid: H = (1.0 / (1.0 + (-H.array()).exp())).matrix(); break;
      case ActivationKind::Sinusoid: H = H.array().sin().matrix(); break;
      case ActivationKind::Hardlim: H = (H.array() >= 0.0).cast<double>().matrix(); break;
      case ActivationKind::Rbf: break;
    }
    return H;
  }

  Eigen::VectorXd activate(const Eigen::VectorXd& x) const { return activate_rows(x.transpose()).transpose(); }

 private:
  Eigen::MatrixXd weights_;
  Eigen::VectorXd biases_;
  ActivationKind activation_ = ActivationKind::Sigmoid;
};

/// Per-feature z-score. Zero-spread features get scale 1.
struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;

  static Standardizer identity(std::size_t n) {
    return {Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(n)), Eigen::RowVectorXd::Ones(static_cast<Eigen::Index>(n))};
  }

  static Standardizer fit(const Eigen::MatrixXd& X) {
    Standardizer s;
    s.mean = X.colwise().mean();
    const double denom = X.rows() > 1 ? static_cast<double>(X.rows() - 1) : 1.0;
    s.scale = ((X.rowwise() - s.mean).array().square().colwise().sum() / denom).sqrt().matrix();
    for (Eigen::Index j = 0; j < s.scale.size(); ++j)
      if (!(s.scale(j) > 0.0) || !std::isfinite(s.scale(j))) s.scale(j) = 1.0;
    return s;
  }

  Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const {
    return ((X.rowwise() - mean).array().rowwise() / scale.array()).matrix();
  }
};

/// One-hot targets in {0, 1}^m from class indices in [0, m).
inline Eigen::MatrixXd one_hot(std::span<const int> indices, int m) {
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(indices.size()), m);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= m) throw Error(ErrorKind::InvalidArgument, "target index out of range");
    T(static_cast<Eigen::Index>(i), indices[i]) = 1.0;
  }
  return T;
}

struct Prediction {
  Eigen::VectorXd scores;
  std::size_t index = 0;
  EventClass label = EventClass::S0;
};

/// Condition estimate above which the initial Gram matrix gets a ridge.
inline constexpr double kMaxGramCondition = 1e12;
inline constexpr double kRidgeScale = 1e-8;

class OselmModel {
 public:
  /// Uninitialised; sequential_update throws NotInitialized.
  OselmModel() = default;

  /// Initialisation phase on raw features. Fits the standardiser on this
  /// chunk, draws the hidden layer from `seed`, and solves
  /// beta = (H'H)^-1 H'T. Throws InsufficientInitData when N0 < L.
  static OselmModel init_phase(const Eigen::MatrixXd& X, const Eigen::MatrixXd& T, std::size_t hidden,
                               ActivationKind activation, std::uint64_t seed, std::vector<EventClass> classes = {}) {
    check_init_shapes(X, T, hidden);
    auto layer = HiddenLayer::random(hidden, static_cast<std::size_t>(X.cols()), activation, seed);
    OselmModel m = init_phase(X, T, std::move(layer), Standardizer::fit(X), std::move(classes));
    m.seed_ = seed;
    return m;
  }

  /// Initialisation with a caller-supplied hidden layer and standardiser.
  static OselmModel init_phase(const Eigen::MatrixXd& X, const Eigen::MatrixXd& T, HiddenLayer layer,
                               Standardizer standardizer, std::vector<EventClass> classes = {}) {
    check_init_shapes(X, T, layer.size());
    if (standardizer.mean.size() != X.cols() || standardizer.scale.size() != X.cols())
      throw Error(ErrorKind::InvalidArgument, "standardiser width does not match features");
    OselmModel m;
    m.hidden_ = std::move(layer);
    m.standardizer_ = std::move(standardizer);
    m.classes_ = resolve_classes(std::move(classes), T.cols());

    const Eigen::MatrixXd H = m.hidden_.activate_rows(m.standardizer_.apply(X));
    const auto L = static_cast<Eigen::Index>(m.hidden_.size());
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(L, L);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(H.transpose());
    gram = gram.selfadjointView<Eigen::Lower>();

    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success || llt.rcond() < 1.0 / kMaxGramCondition) {
      const double lambda = kRidgeScale * gram.trace() / static_cast<double>(L);
      gram.diagonal().array() += lambda > 0.0 ? lambda : kRidgeScale;
      llt.compute(gram);
      m.ridge_engaged_ = true;
    }
    m.P_ = llt.solve(Eigen::MatrixXd::Identity(L, L));
    m.symmetrize();
    m.beta_ = m.P_ * (H.transpose() * T);
    m.chunks_seen_ = 0;
    m.initialized_ = true;
    m.rows_seen_ = static_cast<std::size_t>(X.rows());
    return m;
  }

  /// RLS step on a chunk of raw features. A one-row chunk takes the
  /// Sherman-Morrison path; larger chunks solve the N_k x N_k system.
  void sequential_update(const Eigen::MatrixXd& X, const Eigen::MatrixXd& T) {
    if (!initialized_) throw Error(ErrorKind::NotInitialized, "sequential_update before init_phase");
    if (X.rows() == 0) return;
    if (X.rows() != T.rows() || T.cols() != beta_.cols())
      throw Error(ErrorKind::InvalidArgument, "chunk shape mismatch");
    const Eigen::MatrixXd H = hidden_.activate_rows(standardizer_.apply(X));

    if (H.rows() == 1) {
      const Eigen::VectorXd h = H.row(0).transpose();
      const Eigen::VectorXd Ph = P_ * h;
      const double denom = 1.0 + h.dot(Ph);
      P_.noalias() -= (Ph / denom) * Ph.transpose();
      symmetrize();
      const Eigen::RowVectorXd residual = T.row(0) - h.transpose() * beta_;
      beta_.noalias() += (P_ * h) * residual;
    } else {
      const Eigen::MatrixXd PHt = P_ * H.transpose();
      Eigen::MatrixXd S = H * PHt;
      S.diagonal().array() += 1.0;
      // gain = P_{k+1} H' = P_k H' S^-1
      const Eigen::MatrixXd gain = S.ldlt().solve(PHt.transpose()).transpose();
      P_.noalias() -= gain * PHt.transpose();
      symmetrize();
      const Eigen::MatrixXd residual = T - H * beta_;
      beta_.noalias() += gain * residual;
    }
    ++chunks_seen_;
    rows_seen_ += static_cast<std::size_t>(X.rows());
  }

  /// Feeds rows [0, N) in consecutive chunks of `chunk` rows (the last may
  /// be shorter).
  void train_chunked(const Eigen::MatrixXd& X, const Eigen::MatrixXd& T, std::size_t chunk) {
    if (chunk == 0) throw Error(ErrorKind::InvalidArgument, "chunk size must be positive");
    for (Eigen::Index start = 0; start < X.rows(); start += static_cast<Eigen::Index>(chunk)) {
      const Eigen::Index len = std::min<Eigen::Index>(static_cast<Eigen::Index>(chunk), X.rows() - start);
      sequential_update(X.middleRows(start, len), T.middleRows(start, len));
    }
  }

  /// Output scores (N x m) for raw features.
  Eigen::MatrixXd scores(const Eigen::MatrixXd& X) const {
    if (!initialized_) throw Error(ErrorKind::NotInitialized, "model is not trained");
    return hidden_.activate_rows(standardizer_.apply(X)) * beta_;
  }

  /// Argmax of the scores; ties go to the lowest index.
  Prediction predict(const Eigen::VectorXd& x) const {
    Prediction p;
    p.scores = scores(x.transpose()).transpose();
    p.index = argmax(p.scores);
    p.label = classes_[p.index];
    return p;
  }

  /// Predicted class indices for every row.
  std::vector<std::size_t> predict_rows(const Eigen::MatrixXd& X) const {
    const Eigen::MatrixXd S = scores(X);
    std::vector<std::size_t> out(static_cast<std::size_t>(S.rows()));
    for (Eigen::Index i = 0; i < S.rows(); ++i) out[static_cast<std::size_t>(i)] = argmax(S.row(i).transpose());
    return out;
  }

  static std::size_t argmax(const Eigen::VectorXd& v) {
    std::size_t best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i)
      if (v(i) > v(static_cast<Eigen::Index>(best))) best = static_cast<std::size_t>(i);
    return best;
  }

  bool initialized() const { return initialized_; }
  const HiddenLayer& hidden() const { return hidden_; }
  const Standardizer& standardizer() const { return standardizer_; }
  const Eigen::MatrixXd& beta() const { return beta_; }
  const Eigen::MatrixXd& P() const { return P_; }
  std::size_t chunks_seen() const { return chunks_seen_; }
  std::size_t rows_seen() const { return rows_seen_; }
  std::size_t n_classes() const { return static_cast<std::size_t>(beta_.cols()); }
  const std::vector<EventClass>& classes() const { return classes_; }
  bool ridge_engaged() const { return ridge_engaged_; }
  std::uint64_t seed() const { return seed_; }

  // Model file: activation, sizes, hidden layer, beta, standardiser and
  // seed; P and the chunk counter only when `with_state` (resumable).
  nlohmann::json to_json(bool with_state = true) const {
    if (!initialized_) throw Error(ErrorKind::NotInitialized, "cannot serialise an untrained model");
    nlohmann::json j;
    j["activation"] = to_string(hidden_.activation());
    j["L"] = hidden_.size();
    j["n"] = hidden_.inputs();
    j["m"] = n_classes();
    j["seed"] = seed_;
    std::vector<std::string> names;
    for (auto c : classes_) names.push_back(class_name(c));
    j["classes"] = names;
    j["weights_a"] = rows_of(hidden_.weights());
    j["biases_b"] = std::vector<double>(hidden_.biases().data(), hidden_.biases().data() + hidden_.biases().size());
    j["beta"] = rows_of(beta_);
    j["standardizer"] = {{"mean", std::vector<double>(standardizer_.mean.data(), standardizer_.mean.data() + standardizer_.mean.size())},
                         {"scale", std::vector<double>(standardizer_.scale.data(), standardizer_.scale.data() + standardizer_.scale.size())}};
    j["ridge_engaged"] = ridge_engaged_;
    if (with_state) {
      j["P"] = rows_of(P_);
      j["chunks_seen"] = chunks_seen_;
      j["rows_seen"] = rows_seen_;
    }
    return j;
  }

  static OselmModel from_json(const nlohmann::json& j) {
    OselmModel m;
    const auto activation = parse_activation(j.at("activation").get<std::string>());
    const auto L = j.at("L").get<std::size_t>();
    const auto n = j.at("n").get<std::size_t>();
    const auto classes = j.at("m").get<std::size_t>();
    auto weights = matrix_of(j.at("weights_a"), L, n);
    auto b = j.at("biases_b").get<std::vector<double>>();
    if (b.size() != L) throw Error(ErrorKind::InvalidArgument, "biases_b length mismatch");
    m.hidden_ = HiddenLayer(std::move(weights), Eigen::Map<Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(L)), activation);
    m.beta_ = matrix_of(j.at("beta"), L, classes);
    auto mean = j.at("standardizer").at("mean").get<std::vector<double>>();
    auto scale = j.at("standardizer").at("scale").get<std::vector<double>>();
    if (mean.size() != n || scale.size() != n) throw Error(ErrorKind::InvalidArgument, "standardizer length mismatch");
    m.standardizer_.mean = Eigen::Map<Eigen::RowVectorXd>(mean.data(), static_cast<Eigen::Index>(n));
    m.standardizer_.scale = Eigen::Map<Eigen::RowVectorXd>(scale.data(), static_cast<Eigen::Index>(n));
    std::vector<EventClass> labels;
    if (j.contains("classes"))
      for (const auto& s : j.at("classes")) labels.push_back(parse_class(s.get<std::string>()));
    m.classes_ = resolve_classes(std::move(labels), static_cast<Eigen::Index>(classes));
    m.seed_ = j.value("seed", std::uint64_t{0});
    m.ridge_engaged_ = j.value("ridge_engaged", false);
    if (j.contains("P")) {
      m.P_ = matrix_of(j.at("P"), L, L);
      m.chunks_seen_ = j.value("chunks_seen", std::size_t{0});
      m.rows_seen_ = j.value("rows_seen", std::size_t{0});
    }
    m.initialized_ = true;
    return m;
  }

  /// Whether the stored state allows further sequential updates.
  bool resumable() const { return initialized_ && P_.rows() == static_cast<Eigen::Index>(hidden_.size()) && P_.rows() > 0; }

 private:
  static void check_init_shapes(const Eigen::MatrixXd& X, const Eigen::MatrixXd& T, std::size_t hidden) {
    if (hidden == 0) throw Error(ErrorKind::InvalidArgument, "hidden layer must have at least one node");
    if (X.rows() != T.rows()) throw Error(ErrorKind::InvalidArgument, "features and targets differ in row count");
    if (T.cols() < 1) throw Error(ErrorKind::InvalidArgument, "targets need at least one column");
    if (static_cast<std::size_t>(X.rows()) < hidden)
      throw Error(ErrorKind::InsufficientInitData, "initial chunk has " + std::to_string(X.rows()) +
                                                       " rows, fewer than the " + std::to_string(hidden) +
                                                       " hidden nodes");
  }

  static std::vector<EventClass> resolve_classes(std::vector<EventClass> classes, Eigen::Index m) {
    // default labelling S1..Sm
    if (classes.empty()) {
      if (m >= kNumEventClasses) throw Error(ErrorKind::InvalidArgument, "more than 16 outputs need an explicit class list");
      for (Eigen::Index i = 0; i < m; ++i) classes.push_back(class_from_index(static_cast<int>(i + 1)));
    }
    if (static_cast<Eigen::Index>(classes.size()) != m)
      throw Error(ErrorKind::InvalidArgument, "class list length does not match target width");
    return classes;
  }

  static std::vector<std::vector<double>> rows_of(const Eigen::MatrixXd& M) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(M.rows()));
    for (Eigen::Index i = 0; i < M.rows(); ++i)
      for (Eigen::Index k = 0; k < M.cols(); ++k) out[static_cast<std::size_t>(i)].push_back(M(i, k));
    return out;
  }

  static Eigen::MatrixXd matrix_of(const nlohmann::json& j, std::size_t rows, std::size_t cols) {
    if (j.size() != rows) throw Error(ErrorKind::InvalidArgument, "matrix row count mismatch in model file");
    Eigen::MatrixXd M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      const auto& row = j.at(i);
      if (row.size() != cols) throw Error(ErrorKind::InvalidArgument, "matrix column count mismatch in model file");
      for (std::size_t k = 0; k < cols; ++k)
        M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row.at(k).get<double>();
    }
    return M;
  }

  void symmetrize() { P_ = 0.5 * (P_ + P_.transpose()).eval(); }

  HiddenLayer hidden_;
  Standardizer standardizer_;
  Eigen::MatrixXd beta_;
  Eigen::MatrixXd P_;
  std::vector<EventClass> classes_;
  std::size_t chunks_seen_ = 0;
  std::size_t rows_seen_ = 0;
  std::uint64_t seed_ = 0;
  bool ridge_engaged_ = false;
  bool initialized_ = false;
};

}  // namespace pqoselm
