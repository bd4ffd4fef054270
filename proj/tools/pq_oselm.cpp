// pq_oselm: command-line front end for the disturbance generator, wavelet
// features and OS-ELM experiments.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pqoselm/pqoselm.hpp"

namespace fs = std::filesystem;
using namespace pqoselm;

namespace {

constexpr int kUsageError = 2;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto part : io::split(s)) {
    if (!part.empty()) out.emplace_back(part);
  }
  return out;
}

std::vector<EventClass> parse_classes(const std::string& s) {
  std::vector<EventClass> out;
  for (const auto& name : split_list(s)) out.push_back(parse_class(name));
  if (out.empty()) throw Error(ErrorKind::UnknownClass, "no classes given");
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& v : split_list(s)) out.push_back(std::stoul(v));
  return out;
}

fs::path sibling(const fs::path& p, const std::string& suffix) {
  auto out = p;
  out.replace_extension();
  out += suffix;
  return out;
}

void write_dataset(const fs::path& path, const std::vector<Signal>& signals) {
  io::write_atomic(path, formats::dataset_csv(signals));
  io::write_atomic(sibling(path, ".params.json"), formats::params_sidecar(signals).dump(2) + "\n");
}

// Experiment from --spec or --preset, with command-line overrides.
struct ExperimentFlags {
  std::string spec_file;
  std::string preset = "16class";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> seeds;
  std::optional<std::size_t> chunk;

  void add(CLI::App* cmd) {
    cmd->add_option("--spec", spec_file, "Experiment JSON file");
    cmd->add_option("--preset", preset, "Dataset preset: 11class, 13class or 16class")->capture_default_str();
    cmd->add_option("--seed", seed, "Master seed");
    cmd->add_option("--seeds", seeds, "Number of replicates");
    cmd->add_option("--chunk", chunk, "Sequential chunk size (1 = one-by-one)");
  }

  ExperimentSpec build() const {
    ExperimentSpec spec = spec_file.empty()
                              ? ExperimentSpec::from_preset(preset)
                              : experiment_from_json(nlohmann::json::parse(io::read_file(spec_file)));
    if (seed) spec.master_seed = *seed;
    if (seeds) spec.n_seeds = *seeds;
    if (chunk) spec.chunk_size = *chunk;
    return spec;
  }
};

void print_rows(const std::vector<AggregateRow>& rows) {
  for (const auto& r : rows)
    std::cout << to_string(r.activation) << " L=" << r.hidden << " test_acc=" << pct(r.test_accuracy)
              << "% train_acc=" << pct(r.train_accuracy) << "% train_time=" << io::format_fixed(r.train_time_s, 4)
              << "s\n";
}

void write_confusions(const fs::path& dir, const std::string& prefix, const std::vector<EvalReport>& reports) {
  for (const auto& r : reports) io::write_atomic(dir / ("confusion_" + prefix + r.run_id + ".csv"), confusion_csv(r));
}

std::string table3_csv() {
  std::string out = "classes,train_samples,test_samples,reference_train_samples,reference_test_samples\n";
  for (const auto& p : kPresets) {
    auto spec = ExperimentSpec::from_preset(p.name);
    out += std::to_string(p.n_classes) + "," + std::to_string(spec.total_train()) + "," +
           std::to_string(spec.total_test()) + "," + std::to_string(p.train) + "," + std::to_string(p.test) + "\n";
  }
  return out;
}

std::string table4_all(std::size_t seeds, std::uint64_t seed, const RunOptions& opts, nlohmann::json& report,
                       std::vector<std::pair<std::string, std::vector<EvalReport>>>& runs) {
  std::string csv = table4_csv_header();
  report = nlohmann::json::array();
  for (const auto& p : kPresets) {
    auto spec = ExperimentSpec::from_preset(p.name, seed);
    spec.n_seeds = seeds;
    spec.activations = {kAllActivations.begin(), kAllActivations.end()};
    auto result = compare_activations(spec, opts);
    for (const auto& row : result.rows) csv += table4_csv_row(p.n_classes, row);
    report.push_back(report_json(spec, result));
    runs.emplace_back(std::to_string(p.n_classes) + "c_", std::move(result.reports));
  }
  return csv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power-quality disturbance synthesis, db4 wavelet features and OS-ELM classification"};
  app.require_subcommand(1);
  RunOptions run_opts;

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a labelled waveform dataset (CSV + params JSON)");
  std::string gen_classes, gen_out, gen_spec, gen_preset;
  int gen_per_class = 10;
  std::uint64_t gen_seed = 0;
  gen->add_option("--classes", gen_classes, "Comma-separated classes, e.g. S1,S2");
  gen->add_option("--per-class", gen_per_class, "Signals per class")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Master seed")->capture_default_str();
  gen->add_option("--preset", gen_preset, "Write train/test files for a dataset preset instead");
  gen->add_option("--spec", gen_spec, "Write train/test files for an experiment JSON instead");
  gen->add_option("--out", gen_out, "Output CSV path")->required();

  // decompose
  auto* dec = app.add_subcommand("decompose", "Dump the wavelet coefficients of one signal as JSON");
  std::string dec_in, dec_class, dec_out;
  std::size_t dec_row = 0, dec_levels = kFeatureLevels;
  std::uint64_t dec_seed = 0;
  dec->add_option("--in", dec_in, "Dataset CSV");
  dec->add_option("--row", dec_row, "Row of the dataset (0-based)");
  dec->add_option("--class", dec_class, "Generate a signal of this class instead");
  dec->add_option("--seed", dec_seed, "Seed for --class");
  dec->add_option("--levels", dec_levels, "Decomposition levels")->capture_default_str();
  dec->add_option("--out", dec_out, "Output JSON (stdout if omitted)");

  // extract
  auto* ext = app.add_subcommand("extract", "Compute the 66 wavelet features for every row of a dataset");
  std::string ext_in, ext_out;
  ext->add_option("--in", ext_in, "Dataset CSV")->required();
  ext->add_option("--out", ext_out, "Feature CSV")->required();

  // train
  auto* trn = app.add_subcommand("train", "Train an OS-ELM model on a feature CSV");
  std::string trn_features, trn_out, trn_activation = "sigmoid";
  std::size_t trn_hidden = 700, trn_chunk = 50;
  std::uint64_t trn_seed = 0;
  bool trn_no_state = false;
  trn->add_option("--features", trn_features, "Feature CSV")->required();
  trn->add_option("--hidden", trn_hidden, "Hidden neurons L")->capture_default_str();
  trn->add_option("--activation", trn_activation, "sigmoid, rbf, sinusoidal or hardlim")->capture_default_str();
  trn->add_option("--chunk", trn_chunk, "Chunk size (1 = one-by-one)")->capture_default_str();
  trn->add_option("--seed", trn_seed, "Seed for the hidden layer and row shuffle")->capture_default_str();
  trn->add_flag("--no-state", trn_no_state, "Omit P from the model file (not resumable)");
  trn->add_option("--out", trn_out, "Model JSON")->required();

  // eval
  auto* evl = app.add_subcommand("eval", "Evaluate a trained model on a feature CSV");
  std::string evl_model, evl_features, evl_out, evl_confusion;
  evl->add_option("--model", evl_model, "Model JSON")->required();
  evl->add_option("--features", evl_features, "Feature CSV")->required();
  evl->add_option("--out", evl_out, "Report JSON");
  evl->add_option("--confusion", evl_confusion, "Confusion matrix CSV");

  // sweep
  auto* swp = app.add_subcommand("sweep", "Hidden-neuron sweep (table6.csv)");
  ExperimentFlags swp_flags;
  swp_flags.add(swp);
  std::string swp_hidden, swp_activation = "sigmoid", swp_out;
  swp->add_option("--hidden", swp_hidden, "Comma-separated ascending L values (default: 50..1000 reference grid)");
  swp->add_option("--activation", swp_activation, "Activation")->capture_default_str();
  swp->add_option("--out", swp_out, "Output directory")->required();

  // compare
  auto* cmp = app.add_subcommand("compare", "Activation comparison (table4.csv, report.json, confusions)");
  ExperimentFlags cmp_flags;
  cmp_flags.add(cmp);
  std::string cmp_activations = "sigmoid,rbf,sinusoidal,hardlim", cmp_out;
  std::optional<std::size_t> cmp_hidden;
  cmp->add_option("--activations", cmp_activations, "Comma-separated activations")->capture_default_str();
  cmp->add_option("--hidden", cmp_hidden, "Hidden neurons L (default per preset)");
  cmp->add_option("--out", cmp_out, "Output directory")->required();

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "Re-run a reference table (3, 4 or 6) with matching presets");
  int rep_table = 4;
  std::size_t rep_seeds = 5;
  std::uint64_t rep_seed = 0;
  std::string rep_out = "results";
  rep->add_option("--table", rep_table, "Table number")->check(CLI::IsMember({3, 4, 6}))->required();
  rep->add_option("--seeds", rep_seeds, "Replicates per cell")->capture_default_str();
  rep->add_option("--seed", rep_seed, "Master seed")->capture_default_str();
  rep->add_option("--out", rep_out, "Output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const fs::path out = gen_out;
      if (!gen_spec.empty() || !gen_preset.empty()) {
        ExperimentSpec spec = !gen_spec.empty()
                                  ? experiment_from_json(nlohmann::json::parse(io::read_file(gen_spec)))
                                  : ExperimentSpec::from_preset(gen_preset, gen_seed);
        if (gen_spec.empty()) spec.master_seed = gen_seed;
        DatasetSpec ds{spec.train, spec.test, spec.master_seed, spec.signal, spec.preset};
        auto data = generate_dataset(ds, run_opts.threads);
        write_dataset(sibling(out, ".train.csv"), data.train);
        write_dataset(sibling(out, ".test.csv"), data.test);
        std::cout << "wrote " << data.train.size() << " training rows and " << data.test.size() << " test rows\n";
      } else {
        if (gen_per_class < 1) throw Error(ErrorKind::InvalidArgument, "--per-class must be positive");
        DatasetSpec ds;
        for (auto c : parse_classes(gen_classes)) ds.train.push_back({c, gen_per_class});
        ds.master_seed = gen_seed;
        auto data = generate_dataset(ds, run_opts.threads);
        write_dataset(out, data.train);
        std::cout << "wrote " << data.train.size() << " rows\n";
      }
    } else if (*dec) {
      std::vector<double> samples;
      if (!dec_class.empty()) {
        samples = generate_seeded(parse_class(dec_class), dec_seed).samples;
      } else if (!dec_in.empty()) {
        auto rows = formats::parse_dataset_csv(io::read_file(dec_in));
        if (dec_row >= rows.size()) throw Error(ErrorKind::InvalidArgument, "--row beyond the dataset");
        samples = rows[dec_row].samples;
      } else {
        throw Error(ErrorKind::InvalidArgument, "decompose needs --in or --class");
      }
      auto text = to_json(decompose(samples, dec_levels)).dump() + "\n";
      if (dec_out.empty())
        std::cout << text;
      else
        io::write_atomic(dec_out, text);
    } else if (*ext) {
      auto rows = formats::parse_dataset_csv(io::read_file(ext_in));
      std::vector<FeatureVector> feats(rows.size());
      parallel_for(rows.size(), [&](std::size_t i) {
        feats[i] = extract(decompose(rows[i].samples, kFeatureLevels), rows[i].label);
      }, run_opts.threads);
      io::write_atomic(ext_out, formats::features_csv(feats));
      std::cout << "wrote " << feats.size() << " feature rows\n";
    } else if (*trn) {
      auto feats = formats::parse_features_csv(io::read_file(trn_features));
      std::set<EventClass> present;
      for (const auto& f : feats) present.insert(f.label);
      std::vector<EventClass> classes(present.begin(), present.end());
      // the file is usually grouped by class; shuffle so the first chunk sees every class
      std::vector<std::size_t> order(feats.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      Rng(derive_seed(trn_seed, {0x5b0ffULL})).shuffle(order);
      Eigen::MatrixXd X(static_cast<Eigen::Index>(feats.size()), static_cast<Eigen::Index>(kFeatureCount));
      std::vector<int> y;
      for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& f = feats[order[i]];
        for (std::size_t j = 0; j < kFeatureCount; ++j) X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f.values[j];
        y.push_back(static_cast<int>(std::find(classes.begin(), classes.end(), f.label) - classes.begin()));
      }
      const Eigen::MatrixXd T = one_hot(y, static_cast<int>(classes.size()));
      const auto n0 = static_cast<Eigen::Index>(std::min<std::size_t>(std::max(trn_hidden, trn_chunk), feats.size()));
      auto t0 = std::chrono::steady_clock::now();
      auto model = OselmModel::init_phase(X.topRows(n0), T.topRows(n0), trn_hidden, parse_activation(trn_activation),
                                          trn_seed, classes);
      model.train_chunked(X.bottomRows(X.rows() - n0), T.bottomRows(X.rows() - n0), trn_chunk);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      io::write_atomic(trn_out, model.to_json(!trn_no_state).dump() + "\n");
      std::size_t hits = 0;
      auto pred = model.predict_rows(X);
      for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == static_cast<std::size_t>(y[i]);
      std::cout << "trained on " << feats.size() << " rows in " << io::format_fixed(secs, 4) << " s, training accuracy "
                << pct(static_cast<double>(hits) / static_cast<double>(feats.size())) << "%"
                << (model.ridge_engaged() ? " (ridge fallback engaged)" : "") << "\n";
    } else if (*evl) {
      auto model = OselmModel::from_json(nlohmann::json::parse(io::read_file(evl_model)));
      auto feats = formats::parse_features_csv(io::read_file(evl_features));
      const auto& classes = model.classes();
      const std::size_t m = classes.size();
      EvalReport r;
      r.run_id = "eval";
      r.activation = model.hidden().activation();
      r.hidden = model.hidden().size();
      r.model_seed = model.seed();
      r.classes = classes;
      r.confusion.assign(m, std::vector<long>(m, 0));
      Eigen::MatrixXd X(static_cast<Eigen::Index>(feats.size()), static_cast<Eigen::Index>(kFeatureCount));
      for (std::size_t i = 0; i < feats.size(); ++i)
        for (std::size_t j = 0; j < kFeatureCount; ++j) X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = feats[i].values[j];
      auto t0 = std::chrono::steady_clock::now();
      auto pred = model.predict_rows(X);
      r.test_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      long hits = 0;
      for (std::size_t i = 0; i < feats.size(); ++i) {
        auto it = std::find(classes.begin(), classes.end(), feats[i].label);
        if (it == classes.end()) throw Error(ErrorKind::UnknownClass, class_name(feats[i].label) + " not known to the model");
        auto t = static_cast<std::size_t>(it - classes.begin());
        ++r.confusion[t][pred[i]];
        hits += t == pred[i];
      }
      for (std::size_t c = 0; c < m; ++c) {
        long row = 0;
        for (long v : r.confusion[c]) row += v;
        r.per_class_accuracy.push_back(row ? static_cast<double>(r.confusion[c][c]) / static_cast<double>(row) : 0.0);
      }
      r.overall_accuracy = feats.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(feats.size());
      r.test_rows = feats.size();
      if (!evl_out.empty()) io::write_atomic(evl_out, to_json(r).dump(2) + "\n");
      if (!evl_confusion.empty()) io::write_atomic(evl_confusion, confusion_csv(r));
      std::cout << "accuracy " << pct(r.overall_accuracy) << "% on " << feats.size() << " rows\n";
    } else if (*swp) {
      auto spec = swp_flags.build();
      spec.activations = {parse_activation(swp_activation)};
      auto L = swp_hidden.empty() ? reference_sweep_hidden() : parse_sizes(swp_hidden);
      auto result = neuron_sweep(spec, L, run_opts);
      const fs::path dir = swp_out;
      io::write_atomic(dir / "table6.csv", table6_csv(result.rows));
      io::write_atomic(dir / "report.json", report_json(spec, result).dump(2) + "\n");
      print_rows(result.rows);
    } else if (*cmp) {
      auto spec = cmp_flags.build();
      spec.activations.clear();
      for (const auto& a : split_list(cmp_activations)) spec.activations.push_back(parse_activation(a));
      if (cmp_hidden) spec.hidden = {*cmp_hidden};
      auto result = compare_activations(spec, run_opts);
      const fs::path dir = cmp_out;
      std::string csv = table4_csv_header();
      for (const auto& row : result.rows) csv += table4_csv_row(static_cast<int>(spec.classes.size()), row);
      io::write_atomic(dir / "table4.csv", csv);
      io::write_atomic(dir / "report.json", report_json(spec, result).dump(2) + "\n");
      write_confusions(dir, "", result.reports);
      print_rows(result.rows);
    } else if (*rep) {
      const fs::path dir = rep_out;
      if (rep_seeds < 1) throw Error(ErrorKind::InvalidArgument, "--seeds must be positive");
      if (rep_table == 3) {
        auto csv = table3_csv();
        io::write_atomic(dir / "table3.csv", csv);
        std::cout << csv;
      } else if (rep_table == 4) {
        nlohmann::json report;
        std::vector<std::pair<std::string, std::vector<EvalReport>>> runs;
        auto csv = table4_all(rep_seeds, rep_seed, run_opts, report, runs);
        io::write_atomic(dir / "table4.csv", csv);
        io::write_atomic(dir / "report.json", report.dump(2) + "\n");
        for (const auto& [prefix, reports] : runs) write_confusions(dir, prefix, reports);
        std::cout << csv;
      } else {
        auto spec = ExperimentSpec::from_preset("16class", rep_seed);
        spec.n_seeds = rep_seeds;
        auto result = neuron_sweep(spec, reference_sweep_hidden(), run_opts);
        auto csv = table6_csv(result.rows);
        io::write_atomic(dir / "table6.csv", csv);
        io::write_atomic(dir / "report.json", report_json(spec, result).dump(2) + "\n");
        std::cout << csv;
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::UnknownClass:
        std::cerr << "unknown class (expected S0..S16)\n";
        return kUsageError;
      case ErrorKind::UnknownPreset:
      case ErrorKind::InvalidArgument:
        return kUsageError;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
