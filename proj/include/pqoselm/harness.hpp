#pragma once

// Experiment orchestration: dataset construction, OS-ELM training and
// evaluation, activation comparisons and hidden-neuron sweeps.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "error.hpp"
#include "features.hpp"
#include "io.hpp"
#include "oselm.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "siggen.hpp"

namespace pqoselm {

struct ExperimentSpec {
  std::vector<EventClass> classes;
  std::vector<ClassCount> train;
  std::vector<ClassCount> test;
  std::string preset;  // "11class" | "13class" | "16class" | "" for custom
  std::vector<ActivationKind> activations{ActivationKind::Sigmoid};
  std::vector<std::size_t> hidden{700};
  std::size_t chunk_size = 50;  // 1 = one-by-one learning
  std::size_t n_seeds = 5;
  std::uint64_t master_seed = 0;
  bool test_on_train = false;  // evaluate on the training signals (memorisation check)
  SignalSpec signal;

  /// Preset-sized experiment: S1..Sn with the preset train/test totals
  /// spread evenly over the classes.
  static ExperimentSpec from_preset(std::string_view name, std::uint64_t master_seed = 0) {
    const auto& p = preset_totals(name);
    ExperimentSpec s;
    s.classes = class_set(p.n_classes);
    s.train = split_evenly(s.classes, p.train);
    s.test = split_evenly(s.classes, p.test);
    s.preset = std::string(p.name);
    s.hidden = {p.n_classes == 16 ? std::size_t{700} : std::size_t{500}};
    s.master_seed = master_seed;
    return s;
  }

  /// Custom experiment with the same per-class counts for every class.
  static ExperimentSpec uniform(std::vector<EventClass> classes, int train_per_class, int test_per_class,
                                std::uint64_t master_seed = 0) {
    ExperimentSpec s;
    s.classes = std::move(classes);
    for (auto c : s.classes) {
      s.train.push_back({c, train_per_class});
      s.test.push_back({c, test_per_class});
    }
    s.master_seed = master_seed;
    return s;
  }

  void validate() const {
    if (classes.empty()) throw Error(ErrorKind::InvalidArgument, "experiment needs at least one class");
    if (activations.empty()) throw Error(ErrorKind::InvalidArgument, "experiment needs at least one activation");
    if (hidden.empty()) throw Error(ErrorKind::InvalidArgument, "experiment needs at least one hidden size");
    if (chunk_size == 0) throw Error(ErrorKind::InvalidArgument, "chunk size must be positive");
    if (n_seeds == 0) throw Error(ErrorKind::InvalidArgument, "n_seeds must be positive");
    for (auto L : hidden)
      if (L == 0) throw Error(ErrorKind::InvalidArgument, "hidden sizes must be positive");
    auto check_counts = [&](const std::vector<ClassCount>& counts, const char* what, bool allow_empty) {
      for (const auto& cc : counts) {
        if (std::find(classes.begin(), classes.end(), cc.label) == classes.end())
          throw Error(ErrorKind::InvalidArgument, std::string(what) + " count for class outside the class set");
        if (cc.count <= 0) throw Error(ErrorKind::InvalidArgument, std::string(what) + " counts must be positive");
      }
      if (counts.empty() && !allow_empty) throw Error(ErrorKind::InvalidArgument, std::string(what) + " counts missing");
    };
    check_counts(train, "train", false);
    check_counts(test, "test", test_on_train);
  }

  int class_position(EventClass c) const {
    auto it = std::find(classes.begin(), classes.end(), c);
    if (it == classes.end()) throw Error(ErrorKind::InvalidArgument, class_name(c) + " not in class set");
    return static_cast<int>(it - classes.begin());
  }

  int total_train() const {
    return std::accumulate(train.begin(), train.end(), 0, [](int a, const ClassCount& c) { return a + c.count; });
  }
  int total_test() const {
    return std::accumulate(test.begin(), test.end(), 0, [](int a, const ClassCount& c) { return a + c.count; });
  }
};

struct EvalReport {
  std::string run_id;
  ActivationKind activation = ActivationKind::Sigmoid;
  std::size_t hidden = 0;
  std::size_t chunk_size = 0;
  std::size_t seed_index = 0;
  std::uint64_t data_seed = 0;
  std::uint64_t model_seed = 0;
  std::vector<EventClass> classes;
  std::vector<std::vector<long>> confusion;  // rows = true class
  std::vector<double> per_class_accuracy;
  double overall_accuracy = 0.0;
  double train_accuracy = 0.0;
  double train_time_s = 0.0;
  double test_time_s = 0.0;
  std::size_t init_rows = 0;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  bool ridge_engaged = false;
};

/// Standardised-later feature matrix with class positions (indices into
/// ExperimentSpec::classes).
struct FeatureTable {
  Eigen::MatrixXd X;
  std::vector<int> y;
  std::vector<std::uint64_t> seeds;
};

struct PreparedData {
  FeatureTable train;
  FeatureTable test;
  std::uint64_t data_seed = 0;
};

inline FeatureTable to_table(const std::vector<Signal>& signals, const ExperimentSpec& spec, unsigned threads) {
  const auto features = extract_all(signals, threads);
  FeatureTable t;
  t.X.resize(static_cast<Eigen::Index>(features.size()), static_cast<Eigen::Index>(kFeatureCount));
  for (std::size_t i = 0; i < features.size(); ++i) {
    for (std::size_t j = 0; j < kFeatureCount; ++j)
      t.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = features[i].values[j];
    t.y.push_back(spec.class_position(features[i].label));
    t.seeds.push_back(signals[i].seed);
  }
  return t;
}

inline FeatureTable permute_rows(const FeatureTable& t, const std::vector<std::size_t>& order) {
  FeatureTable out;
  out.X.resize(t.X.rows(), t.X.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.X.row(static_cast<Eigen::Index>(i)) = t.X.row(static_cast<Eigen::Index>(order[i]));
    out.y.push_back(t.y[order[i]]);
    out.seeds.push_back(t.seeds[order[i]]);
  }
  return out;
}

/// Data seed for replicate `seed_index`.
inline std::uint64_t data_seed_for(const ExperimentSpec& spec, std::size_t seed_index) {
  return derive_seed(spec.master_seed, {0xda7aULL, seed_index});
}

/// Hidden-layer seed for one (activation, L, replicate) cell.
inline std::uint64_t model_seed_for(const ExperimentSpec& spec, ActivationKind a, std::size_t L, std::size_t seed_index) {
  return derive_seed(spec.master_seed, {0x5eedULL, static_cast<std::uint64_t>(a), L, seed_index});
}

/// Generates, featurises and shuffles the training signals of replicate
/// `seed_index`. Training order is shuffled so the initialisation chunk
/// sees every class.
inline PreparedData prepare_data(const ExperimentSpec& spec, std::size_t seed_index,
                                 unsigned threads = default_threads()) {
  DatasetSpec ds;
  ds.train = spec.train;
  ds.test = spec.test;
  ds.signal = spec.signal;
  ds.preset = spec.preset;
  PreparedData out;
  out.data_seed = data_seed_for(spec, seed_index);
  ds.master_seed = out.data_seed;
  const auto signals = generate_dataset(ds, threads);
  const auto train = to_table(signals.train, spec, threads);
  std::vector<std::size_t> order(static_cast<std::size_t>(train.X.rows()));
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(out.data_seed, {0x5b0ffULL}));
  rng.shuffle(order);
  out.train = permute_rows(train, order);
  out.test = spec.test_on_train ? out.train : to_table(signals.test, spec, threads);
  return out;
}

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline double accuracy_of(const std::vector<std::size_t>& predicted, const std::vector<int>& truth) {
  if (truth.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == static_cast<std::size_t>(truth[i]);
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

}  // namespace detail

/// Trains one model on prepared data and evaluates it. The initial chunk is
/// N0 = max(L, chunk) rows (capped at the training size); the rest arrives
/// chunk by chunk. Timings cover training and prediction only.
inline EvalReport run_cell(const ExperimentSpec& spec, const PreparedData& data, ActivationKind activation,
                           std::size_t hidden, std::size_t seed_index) {
  EvalReport r;
  r.activation = activation;
  r.hidden = hidden;
  r.chunk_size = spec.chunk_size;
  r.seed_index = seed_index;
  r.data_seed = data.data_seed;
  r.model_seed = model_seed_for(spec, activation, hidden, seed_index);
  r.classes = spec.classes;
  r.run_id = to_string(activation) + "_L" + std::to_string(hidden) + "_s" + std::to_string(seed_index);

  const auto m = static_cast<int>(spec.classes.size());
  const auto n_train = static_cast<std::size_t>(data.train.X.rows());
  const std::size_t n0 = std::min(std::max(hidden, spec.chunk_size), n_train);
  if (n0 < hidden)
    throw Error(ErrorKind::InsufficientInitData, "training set has " + std::to_string(n_train) + " rows, L = " +
                                                     std::to_string(hidden));
  const Eigen::MatrixXd T = one_hot(data.train.y, m);
  const auto n0i = static_cast<Eigen::Index>(n0);

  auto t0 = std::chrono::steady_clock::now();
  OselmModel model = OselmModel::init_phase(data.train.X.topRows(n0i), T.topRows(n0i), hidden, activation,
                                            r.model_seed, spec.classes);
  const Eigen::Index rest = data.train.X.rows() - n0i;
  model.train_chunked(data.train.X.bottomRows(rest), T.bottomRows(rest), spec.chunk_size);
  r.train_time_s = detail::seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const auto predicted = model.predict_rows(data.test.X);
  r.test_time_s = detail::seconds_since(t0);

  r.train_accuracy = detail::accuracy_of(model.predict_rows(data.train.X), data.train.y);
  r.confusion.assign(static_cast<std::size_t>(m), std::vector<long>(static_cast<std::size_t>(m), 0));
  for (std::size_t i = 0; i < predicted.size(); ++i)
    ++r.confusion[static_cast<std::size_t>(data.test.y[i])][predicted[i]];
  long diag = 0, total = 0;
  for (int c = 0; c < m; ++c) {
    const auto& row = r.confusion[static_cast<std::size_t>(c)];
    const long row_sum = std::accumulate(row.begin(), row.end(), 0L);
    diag += row[static_cast<std::size_t>(c)];
    total += row_sum;
    r.per_class_accuracy.push_back(row_sum > 0 ? static_cast<double>(row[static_cast<std::size_t>(c)]) / static_cast<double>(row_sum) : 0.0);
  }
  r.overall_accuracy = total > 0 ? static_cast<double>(diag) / static_cast<double>(total) : 0.0;
  r.init_rows = n0;
  r.train_rows = n_train;
  r.test_rows = predicted.size();
  r.ridge_engaged = model.ridge_engaged();
  return r;
}

struct RunOptions {
  unsigned threads = default_threads();
  // Cells run one at a time when timings matter; data preparation still
  // uses `threads`.
  bool parallel_cells = false;
};

/// Every (activation, L, replicate) cell of `spec`, ordered replicate-major,
/// then activation, then L. Accuracies are a deterministic function of the
/// spec; only timings vary between runs.
inline std::vector<EvalReport> run_experiment(const ExperimentSpec& spec, const RunOptions& opts = {}) {
  spec.validate();
  std::vector<EvalReport> reports;
  for (std::size_t s = 0; s < spec.n_seeds; ++s) {
    const PreparedData data = prepare_data(spec, s, opts.threads);
    std::vector<std::pair<ActivationKind, std::size_t>> cells;
    for (auto a : spec.activations)
      for (auto L : spec.hidden) cells.emplace_back(a, L);
    std::vector<EvalReport> out(cells.size());
    parallel_for(
        cells.size(), [&](std::size_t i) { out[i] = run_cell(spec, data, cells[i].first, cells[i].second, s); },
        opts.parallel_cells ? opts.threads : 1u);
    for (auto& r : out) reports.push_back(std::move(r));
  }
  return reports;
}

/// Mean (and sample standard deviation) over replicates for one cell key.
struct AggregateRow {
  ActivationKind activation = ActivationKind::Sigmoid;
  std::size_t hidden = 0;
  std::size_t n_runs = 0;
  double test_accuracy = 0.0;
  double test_accuracy_sd = 0.0;
  double min_test_accuracy = 0.0;
  double train_accuracy = 0.0;
  double train_time_s = 0.0;
  double test_time_s = 0.0;
};

inline AggregateRow aggregate(const std::vector<EvalReport>& reports) {
  AggregateRow row;
  if (reports.empty()) return row;
  row.activation = reports.front().activation;
  row.hidden = reports.front().hidden;
  row.n_runs = reports.size();
  row.min_test_accuracy = 1.0;
  const double n = static_cast<double>(reports.size());
  for (const auto& r : reports) {
    row.test_accuracy += r.overall_accuracy / n;
    row.train_accuracy += r.train_accuracy / n;
    row.train_time_s += r.train_time_s / n;
    row.test_time_s += r.test_time_s / n;
    row.min_test_accuracy = std::min(row.min_test_accuracy, r.overall_accuracy);
  }
  if (reports.size() > 1) {
    double ss = 0.0;
    for (const auto& r : reports) ss += (r.overall_accuracy - row.test_accuracy) * (r.overall_accuracy - row.test_accuracy);
    row.test_accuracy_sd = std::sqrt(ss / (n - 1.0));
  }
  return row;
}

inline std::vector<EvalReport> select(const std::vector<EvalReport>& reports, ActivationKind a, std::size_t L) {
  std::vector<EvalReport> out;
  for (const auto& r : reports)
    if (r.activation == a && r.hidden == L) out.push_back(r);
  return out;
}

struct SweepResult {
  std::vector<AggregateRow> rows;
  std::vector<EvalReport> reports;
};

/// One row per L for the spec's first activation. L values must be
/// strictly ascending.
inline SweepResult neuron_sweep(ExperimentSpec spec, const std::vector<std::size_t>& L_values,
                                const RunOptions& opts = {}) {
  if (L_values.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs at least one L value");
  if (!std::is_sorted(L_values.begin(), L_values.end()) ||
      std::adjacent_find(L_values.begin(), L_values.end()) != L_values.end())
    throw Error(ErrorKind::InvalidArgument, "L values must be strictly ascending");
  spec.activations = {spec.activations.front()};
  spec.hidden = L_values;
  SweepResult out;
  out.reports = run_experiment(spec, opts);
  for (auto L : L_values) out.rows.push_back(aggregate(select(out.reports, spec.activations.front(), L)));
  return out;
}

/// One row per activation at the spec's first L.
inline SweepResult compare_activations(ExperimentSpec spec, const RunOptions& opts = {}) {
  if (spec.activations.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "activation comparison needs at least two activations");
  spec.hidden = {spec.hidden.front()};
  SweepResult out;
  out.reports = run_experiment(spec, opts);
  for (auto a : spec.activations) out.rows.push_back(aggregate(select(out.reports, a, spec.hidden.front())));
  return out;
}

// ---------------------------------------------------------------------------
// Published reference figures, reported side by side with our results.

struct ReferenceActivationRow {
  int classes;
  ActivationKind activation;
  double train_time_s;
  double test_time_s;
  double train_accuracy_pct;
  double test_accuracy_pct;
  std::size_t hidden;
};

inline constexpr std::array<ReferenceActivationRow, 12> kReferenceActivations = {{
    {11, ActivationKind::Sigmoid, 2.6052, 0.0624, 99.85, 99.63, 500},
    {11, ActivationKind::Rbf, 2.5584, 0.1872, 97.73, 96.89, 500},
    {11, ActivationKind::Sinusoid, 3.1044, 0.0624, 99.91, 99.51, 500},
    {11, ActivationKind::Hardlim, 2.1372, 0.0624, 89.52, 88.47, 500},
    {13, ActivationKind::Sigmoid, 3.0732, 0.0624, 99.77, 99.43, 500},
    {13, ActivationKind::Rbf, 2.6208, 0.436, 97.01, 95.90, 500},
    {13, ActivationKind::Sinusoid, 2.6832, 0.0, 99.72, 99.09, 500},
    {13, ActivationKind::Hardlim, 2.0436, 0.0312, 84.84, 79.29, 500},
    {16, ActivationKind::Sigmoid, 5.4288, 0.1092, 99.93, 99.72, 700},
    {16, ActivationKind::Rbf, 5.8500, 0.1716, 97.75, 97.25, 700},
    {16, ActivationKind::Sinusoid, 6.2088, 0.0624, 99.93, 99.17, 700},
    {16, ActivationKind::Hardlim, 4.3524, 0.0624, 90.76, 87.98, 700},
}};

struct ReferenceSweepRow {
  std::size_t hidden;
  double test_accuracy_pct;
  double train_time_s;
};

inline constexpr std::array<ReferenceSweepRow, 16> kReferenceSweep = {{
    {50, 85.78, 0.1248},    {100, 91.19, 0.2496},   {150, 94.68, 0.4368},  {200, 97.43, 0.6240},
    {250, 97.98, 0.8763},   {300, 98.44, 1.1856},   {350, 98.53, 1.6848},  {400, 98.99, 2.0124},
    {450, 99.08, 2.2152},   {500, 99.08, 2.8080},   {550, 99.27, 3.6816},  {600, 99.27, 4.6020},
    {700, 99.36, 6.2244},   {800, 99.27, 7.1136},   {900, 99.27, 9.9685},  {1000, 99.27, 13.0729},
}};

inline std::vector<std::size_t> reference_sweep_hidden() {
  std::vector<std::size_t> out;
  for (const auto& r : kReferenceSweep) out.push_back(r.hidden);
  return out;
}

// ---------------------------------------------------------------------------
// Outputs

inline std::string pct(double fraction) { return io::format_fixed(100.0 * fraction, 2); }

/// Columns mirror the activation table; timing columns end in `_time_s`.
inline std::string table4_csv_header() {
  return "classes,activation,hidden_neurons,n_seeds,train_time_s,test_time_s,train_accuracy_pct,"
         "test_accuracy_pct,test_accuracy_sd_pct,min_test_accuracy_pct,reference_train_time_s,"
         "reference_test_time_s,reference_train_accuracy_pct,reference_test_accuracy_pct\n";
}

inline std::string table4_csv_row(int n_classes, const AggregateRow& row) {
  std::ostringstream os;
  os << n_classes << ',' << to_string(row.activation) << ',' << row.hidden << ',' << row.n_runs << ','
     << io::format_fixed(row.train_time_s, 4) << ',' << io::format_fixed(row.test_time_s, 4) << ','
     << pct(row.train_accuracy) << ',' << pct(row.test_accuracy) << ',' << pct(row.test_accuracy_sd) << ','
     << pct(row.min_test_accuracy);
  const ReferenceActivationRow* ref = nullptr;
  for (const auto& r : kReferenceActivations)
    if (r.classes == n_classes && r.activation == row.activation) ref = &r;
  if (ref)
    os << ',' << io::format_fixed(ref->train_time_s, 4) << ',' << io::format_fixed(ref->test_time_s, 4) << ','
       << io::format_fixed(ref->train_accuracy_pct, 2) << ',' << io::format_fixed(ref->test_accuracy_pct, 2);
  else
    os << ",,,,";
  os << '\n';
  return os.str();
}

inline std::string table6_csv(const std::vector<AggregateRow>& rows) {
  std::ostringstream os;
  os << "sl_no,hidden_neurons,n_seeds,test_accuracy_pct,test_accuracy_sd_pct,train_accuracy_pct,train_time_s,"
        "reference_test_accuracy_pct,reference_train_time_s\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    os << i + 1 << ',' << row.hidden << ',' << row.n_runs << ',' << pct(row.test_accuracy) << ','
       << pct(row.test_accuracy_sd) << ',' << pct(row.train_accuracy) << ',' << io::format_fixed(row.train_time_s, 4);
    const ReferenceSweepRow* ref = nullptr;
    for (const auto& r : kReferenceSweep)
      if (r.hidden == row.hidden) ref = &r;
    if (ref)
      os << ',' << io::format_fixed(ref->test_accuracy_pct, 2) << ',' << io::format_fixed(ref->train_time_s, 4);
    else
      os << ",,";
    os << '\n';
  }
  return os.str();
}

/// Confusion matrix with class names as header and row labels.
inline std::string confusion_csv(const EvalReport& r) {
  std::ostringstream os;
  os << "true\\predicted";
  for (auto c : r.classes) os << ',' << class_name(c);
  os << '\n';
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    os << class_name(r.classes[i]);
    for (long v : r.confusion[i]) os << ',' << v;
    os << '\n';
  }
  return os.str();
}

inline nlohmann::json to_json(const ExperimentSpec& s) {
  nlohmann::json j;
  std::vector<std::string> classes;
  for (auto c : s.classes) classes.push_back(class_name(c));
  j["classes"] = classes;
  auto counts = [](const std::vector<ClassCount>& v) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& cc : v) o[class_name(cc.label)] = cc.count;
    return o;
  };
  j["train_counts"] = counts(s.train);
  j["test_counts"] = counts(s.test);
  j["preset"] = s.preset;
  std::vector<std::string> acts;
  for (auto a : s.activations) acts.push_back(to_string(a));
  j["activations"] = acts;
  j["hidden"] = s.hidden;
  j["chunk_size"] = s.chunk_size;
  j["n_seeds"] = s.n_seeds;
  j["master_seed"] = s.master_seed;
  j["test_on_train"] = s.test_on_train;
  j["allocation"] = "per-class counts spread evenly over classes, remainder to lowest class indices";
  return j;
}

/// Experiment file. Either "preset" or explicit "classes" plus
/// "train_per_class"/"test_per_class" or "train_counts"/"test_counts"
/// objects; "class_set": 11|13|16 selects S1..Sn.
inline ExperimentSpec experiment_from_json(const nlohmann::json& j) {
  ExperimentSpec s;
  const std::uint64_t seed = j.value("master_seed", std::uint64_t{0});
  if (j.contains("preset") && !j.at("preset").get<std::string>().empty()) {
    s = ExperimentSpec::from_preset(j.at("preset").get<std::string>(), seed);
  } else {
    if (j.contains("class_set")) {
      s.classes = class_set(j.at("class_set").get<int>());
    } else if (j.contains("classes")) {
      for (const auto& c : j.at("classes")) s.classes.push_back(parse_class(c.get<std::string>()));
    } else {
      throw Error(ErrorKind::InvalidArgument, "experiment needs 'preset', 'class_set' or 'classes'");
    }
    s.master_seed = seed;
    auto read_counts = [&](const char* per_class, const char* explicit_key, std::vector<ClassCount>& out) {
      if (j.contains(explicit_key)) {
        for (const auto& [name, count] : j.at(explicit_key).items()) out.push_back({parse_class(name), count.get<int>()});
      } else if (j.contains(per_class)) {
        for (auto c : s.classes) out.push_back({c, j.at(per_class).get<int>()});
      }
    };
    read_counts("train_per_class", "train_counts", s.train);
    read_counts("test_per_class", "test_counts", s.test);
  }
  if (j.contains("activations")) {
    s.activations.clear();
    for (const auto& a : j.at("activations")) s.activations.push_back(parse_activation(a.get<std::string>()));
  }
  if (j.contains("hidden")) {
    s.hidden.clear();
    if (j.at("hidden").is_array())
      s.hidden = j.at("hidden").get<std::vector<std::size_t>>();
    else
      s.hidden.push_back(j.at("hidden").get<std::size_t>());
  }
  s.chunk_size = j.value("chunk_size", s.chunk_size);
  s.n_seeds = j.value("n_seeds", s.n_seeds);
  s.test_on_train = j.value("test_on_train", s.test_on_train);
  s.validate();
  return s;
}

inline nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json j;
  j["run_id"] = r.run_id;
  j["activation"] = to_string(r.activation);
  j["hidden"] = r.hidden;
  j["chunk_size"] = r.chunk_size;
  j["seed_index"] = r.seed_index;
  j["data_seed"] = r.data_seed;
  j["model_seed"] = r.model_seed;
  std::vector<std::string> classes;
  for (auto c : r.classes) classes.push_back(class_name(c));
  j["classes"] = classes;
  j["confusion"] = r.confusion;
  j["per_class_accuracy"] = r.per_class_accuracy;
  j["overall_accuracy"] = r.overall_accuracy;
  j["train_accuracy"] = r.train_accuracy;
  j["train_time_s"] = r.train_time_s;
  j["test_time_s"] = r.test_time_s;
  j["init_rows"] = r.init_rows;
  j["train_rows"] = r.train_rows;
  j["test_rows"] = r.test_rows;
  j["ridge_engaged"] = r.ridge_engaged;
  return j;
}

inline nlohmann::json to_json(const AggregateRow& r) {
  return {{"activation", to_string(r.activation)}, {"hidden", r.hidden},          {"n_runs", r.n_runs},
          {"test_accuracy", r.test_accuracy},      {"test_accuracy_sd", r.test_accuracy_sd},
          {"min_test_accuracy", r.min_test_accuracy}, {"train_accuracy", r.train_accuracy},
          {"train_time_s", r.train_time_s},        {"test_time_s", r.test_time_s}};
}

inline nlohmann::json report_json(const ExperimentSpec& spec, const SweepResult& result) {
  nlohmann::json j;
  j["spec"] = to_json(spec);
  j["summary"] = nlohmann::json::array();
  for (const auto& row : result.rows) j["summary"].push_back(to_json(row));
  j["runs"] = nlohmann::json::array();
  for (const auto& r : result.reports) j["runs"].push_back(to_json(r));
  return j;
}

}  // namespace pqoselm
