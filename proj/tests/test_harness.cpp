#include <gtest/gtest.h>

#include <numeric>

#include "pqoselm/harness.hpp"
#include "test_util.hpp"

using namespace pqoselm;

namespace {

ExperimentSpec small_spec() {
  auto spec = ExperimentSpec::uniform({EventClass::S1, EventClass::S2, EventClass::S5, EventClass::S8}, 30, 10, 17);
  spec.hidden = {40};
  spec.chunk_size = 10;
  spec.n_seeds = 2;
  return spec;
}

}  // namespace

TEST(Spec, PresetsMatchPublishedTotals) {
  for (const auto& p : kPresets) {
    auto spec = ExperimentSpec::from_preset(p.name);
    EXPECT_EQ(spec.total_train(), p.train);
    EXPECT_EQ(spec.total_test(), p.test);
    EXPECT_EQ(static_cast<int>(spec.classes.size()), p.n_classes);
  }
  EXPECT_EQ(ExperimentSpec::from_preset("16class").hidden.front(), 700u);
  EXPECT_EQ(ExperimentSpec::from_preset("11class").hidden.front(), 500u);
}

TEST(Spec, ValidationRejectsBadCounts) {
  auto spec = small_spec();
  spec.train[1].count = 0;
  EXPECT_THROW(spec.validate(), Error);
  auto spec2 = small_spec();
  spec2.chunk_size = 0;
  EXPECT_THROW(spec2.validate(), Error);
}

TEST(Spec, JsonParsing) {
  auto j = nlohmann::json::parse(R"({
    "classes": ["S1", "S3"], "train_per_class": 12, "test_per_class": 4,
    "activations": ["sigmoid", "hardlim"], "hidden": [10, 20], "chunk_size": 5,
    "n_seeds": 3, "master_seed": 99})");
  auto spec = experiment_from_json(j);
  EXPECT_EQ(spec.classes, (std::vector<EventClass>{EventClass::S1, EventClass::S3}));
  EXPECT_EQ(spec.total_train(), 24);
  EXPECT_EQ(spec.total_test(), 8);
  EXPECT_EQ(spec.activations.size(), 2u);
  EXPECT_EQ(spec.hidden, (std::vector<std::size_t>{10, 20}));
  EXPECT_EQ(spec.master_seed, 99u);
  auto preset = experiment_from_json(nlohmann::json::parse(R"({"preset": "13class", "n_seeds": 1})"));
  EXPECT_EQ(preset.total_train(), 3510);
  auto round = experiment_from_json(to_json(spec));
  EXPECT_EQ(round.total_train(), spec.total_train());
  EXPECT_EQ(round.hidden, spec.hidden);
  EXPECT_THROW(experiment_from_json(nlohmann::json::parse(R"({"preset": "bogus"})")), Error);
}

TEST(Run, ConfusionRowsSumToTestCounts) {
  auto spec = small_spec();
  spec.activations = {ActivationKind::Sigmoid, ActivationKind::Rbf};
  for (const auto& r : run_experiment(spec)) {
    ASSERT_EQ(r.confusion.size(), 4u);
    for (std::size_t c = 0; c < 4; ++c)
      EXPECT_EQ(std::accumulate(r.confusion[c].begin(), r.confusion[c].end(), 0L), spec.test[c].count);
    EXPECT_GE(r.overall_accuracy, 0.0);
    EXPECT_LE(r.overall_accuracy, 1.0);
    EXPECT_EQ(r.init_rows, 40u);
    EXPECT_EQ(r.train_rows, 120u);
  }
}

TEST(Run, MemorisesTrainingSet) {
  auto spec = small_spec();
  spec.test_on_train = true;
  spec.n_seeds = 1;
  spec.hidden = {120};  // N0 = L = N: interpolation
  auto reports = run_experiment(spec);
  EXPECT_EQ(reports.front().overall_accuracy, 1.0);
}

TEST(Run, ReproducibleAccuracies) {
  auto spec = small_spec();
  auto a = run_experiment(spec), b = run_experiment(spec);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].overall_accuracy, b[i].overall_accuracy);
    EXPECT_EQ(a[i].confusion, b[i].confusion);
    EXPECT_EQ(a[i].model_seed, b[i].model_seed);
  }
  RunOptions par;
  par.parallel_cells = true;
  par.threads = 4;
  auto c = run_experiment(spec, par);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].confusion, c[i].confusion);
}

TEST(Run, ReplicatesDiffer) {
  auto reports = run_experiment(small_spec());
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_NE(reports[0].data_seed, reports[1].data_seed);
  EXPECT_NE(reports[0].model_seed, reports[1].model_seed);
}

TEST(Run, InsufficientInitData) {
  auto spec = small_spec();
  spec.hidden = {500};
  try {
    run_experiment(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientInitData);
  }
}

TEST(Sweep, SingleValueEqualsAggregate) {
  auto spec = small_spec();
  auto sweep = neuron_sweep(spec, {40});
  auto direct = aggregate(run_experiment(spec));
  ASSERT_EQ(sweep.rows.size(), 1u);
  EXPECT_EQ(sweep.rows[0].test_accuracy, direct.test_accuracy);
  EXPECT_EQ(sweep.rows[0].min_test_accuracy, direct.min_test_accuracy);
}

TEST(Sweep, RequiresAscendingValues) {
  EXPECT_THROW(neuron_sweep(small_spec(), {40, 20}), Error);
  EXPECT_THROW(neuron_sweep(small_spec(), {20, 20}), Error);
}

TEST(Compare, RowsEqualPerActivationAggregates) {
  auto spec = small_spec();
  spec.activations = {ActivationKind::Sigmoid, ActivationKind::Sinusoid};
  auto cmp = compare_activations(spec);
  auto all = run_experiment(spec);
  ASSERT_EQ(cmp.rows.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i)
    EXPECT_EQ(cmp.rows[i].test_accuracy, aggregate(select(all, spec.activations[i], 40)).test_accuracy);
  spec.activations = {ActivationKind::Sigmoid};
  EXPECT_THROW(compare_activations(spec), Error);
}

TEST(Aggregate, MeanSdMin) {
  std::vector<EvalReport> rs(3);
  rs[0].overall_accuracy = 0.8;
  rs[1].overall_accuracy = 0.9;
  rs[2].overall_accuracy = 1.0;
  auto row = aggregate(rs);
  EXPECT_NEAR(row.test_accuracy, 0.9, 1e-15);
  EXPECT_NEAR(row.test_accuracy_sd, 0.1, 1e-15);
  EXPECT_EQ(row.min_test_accuracy, 0.8);
  EXPECT_EQ(row.n_runs, 3u);
}

TEST(Outputs, CsvShapes) {
  auto spec = small_spec();
  spec.activations = {ActivationKind::Sigmoid, ActivationKind::Hardlim};
  auto cmp = compare_activations(spec);
  auto header = table4_csv_header();
  auto row = table4_csv_row(4, cmp.rows[0]);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
  auto conf = confusion_csv(cmp.reports[0]);
  EXPECT_EQ(std::count(conf.begin(), conf.end(), '\n'), 5);
  auto t6 = table6_csv(neuron_sweep(spec, {10, 40}).rows);
  EXPECT_EQ(std::count(t6.begin(), t6.end(), '\n'), 3);
  auto j = report_json(spec, cmp);
  EXPECT_TRUE(j.contains("spec"));
  EXPECT_EQ(reference_sweep_hidden().size(), 16u);
  EXPECT_EQ(reference_sweep_hidden().front(), 50u);
  EXPECT_EQ(reference_sweep_hidden().back(), 1000u);
}
