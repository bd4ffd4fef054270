#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pqoselm/features.hpp"
#include "pqoselm/siggen.hpp"
#include "test_util.hpp"

using namespace pqoselm;

namespace {

// Direct evaluation of the six statistics, one pass per quantity.
std::array<double, 6> brute_force(const std::vector<double>& c) {
  const double n = static_cast<double>(c.size());
  double energy = 0.0, sum = 0.0, entropy = 0.0;
  for (double v : c) energy += std::pow(v, 2);
  for (double v : c) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : c) ss += std::pow(v - mean, 2);
  const double sd = std::sqrt(ss / (n - 1.0));
  double m3 = 0.0, m4 = 0.0;
  for (double v : c) m3 += std::pow(v - mean, 3);
  for (double v : c) m4 += std::pow(v - mean, 4);
  m3 /= n;
  m4 /= n;
  for (double v : c)
    if (v != 0.0) entropy -= std::pow(v, 2) * std::log(std::pow(v, 2));
  return {energy, sd, mean, m4 / std::pow(sd, 4), m3 / std::pow(sd, 3), entropy};
}

std::vector<double> random_sequence(std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_int_distribution<std::size_t> len(2, 10000);
  std::uniform_real_distribution<double> offset(-3.0, 3.0), scale(0.1, 5.0);
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t n = len(eng);
  const double o = offset(eng), s = scale(eng);
  const bool skewed = seed % 2 == 0;
  std::vector<double> c(n);
  for (auto& v : c) v = o + s * (skewed ? expo(eng) : normal(eng));
  return c;
}

}  // namespace

TEST(LevelStats, HandExamples) {
  auto a = level_stats(std::vector<double>{3.0, 4.0});
  EXPECT_DOUBLE_EQ(a.energy, 25.0);
  EXPECT_DOUBLE_EQ(a.mean, 3.5);
  auto b = level_stats(std::vector<double>{1.0, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(b.stddev, 1.0);
  EXPECT_NEAR(b.skewness, 0.0, 1e-15);
  // 1/N fourth moment = 2/3, sd^4 = 1
  EXPECT_NEAR(b.kurtosis, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(b.entropy, -(4.0 * std::log(4.0) + 9.0 * std::log(9.0)), 1e-12);
}

TEST(LevelStats, StandardNormalMoments) {
  Rng rng(2024);
  std::vector<double> c(100000);
  // Box-Muller from the library generator
  for (std::size_t i = 0; i < c.size(); i += 2) {
    const double u1 = 1.0 - rng.unit(), u2 = rng.unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    c[i] = r * std::cos(2.0 * std::numbers::pi * u2);
    c[i + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
  }
  auto s = level_stats(c);
  EXPECT_NEAR(s.kurtosis, 3.0, 0.1);
  EXPECT_NEAR(s.skewness, 0.0, 0.05);
}

TEST(LevelStats, ZeroVarianceConvention) {
  auto z = level_stats(std::vector<double>(16, 0.0));
  EXPECT_EQ(z.energy, 0.0);
  EXPECT_EQ(z.entropy, 0.0);
  EXPECT_EQ(z.kurtosis, 0.0);
  EXPECT_EQ(z.skewness, 0.0);
  EXPECT_EQ(z.stddev, 0.0);
  auto k = level_stats(std::vector<double>(5, 2.0));
  EXPECT_EQ(k.kurtosis, 0.0);
  EXPECT_EQ(k.skewness, 0.0);
  EXPECT_DOUBLE_EQ(k.mean, 2.0);
}

TEST(LevelStats, DegenerateSequence) {
  try {
    level_stats(std::vector<double>{1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateSequence);
  }
  EXPECT_THROW(level_stats(std::vector<double>{}), Error);
}

TEST(LevelStats, MatchesBruteForceOracle) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto c = random_sequence(seed);
    auto got = level_stats(c).as_array();
    auto want = brute_force(c);
    for (std::size_t j = 0; j < 6; ++j) EXPECT_LT(pqtest::rel_diff(got[j], want[j]), 1e-10) << seed << ":" << j;
  }
}

TEST(LevelStats, ScalingProperties) {
  auto c = random_sequence(7);
  const double k = 3.25;
  std::vector<double> scaled(c);
  for (auto& v : scaled) v *= k;
  auto a = level_stats(c), b = level_stats(scaled);
  EXPECT_LT(pqtest::rel_diff(b.energy, k * k * a.energy), 1e-9);
  EXPECT_LT(pqtest::rel_diff(b.stddev, k * a.stddev), 1e-9);
  EXPECT_LT(pqtest::rel_diff(b.mean, k * a.mean), 1e-9);
  EXPECT_LT(pqtest::rel_diff(b.kurtosis, a.kurtosis), 1e-9);
  EXPECT_LT(pqtest::rel_diff(b.skewness, a.skewness), 1e-9);
}

TEST(LevelStats, PermutationInvariant) {
  auto c = random_sequence(8);
  auto shuffled = c;
  std::mt19937_64 eng(1);
  std::shuffle(shuffled.begin(), shuffled.end(), eng);
  auto a = level_stats(c).as_array(), b = level_stats(shuffled).as_array();
  for (std::size_t j = 0; j < 6; ++j) EXPECT_LT(pqtest::rel_diff(b[j], a[j]), 1e-10) << j;
}

TEST(LevelStats, NonNegativeEnergyAndSpread) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto s = level_stats(random_sequence(seed));
    EXPECT_GE(s.energy, 0.0);
    EXPECT_GE(s.stddev, 0.0);
  }
}

TEST(Extract, SixtySixLevelMajor) {
  auto sig = generate_seeded(EventClass::S12, 3);
  auto d = decompose(sig.samples, 11);
  auto fv = extract(d, sig.label);
  EXPECT_EQ(fv.values.size(), 66u);
  EXPECT_EQ(fv.label, EventClass::S12);
  for (std::size_t i = 0; i < 11; ++i) {
    auto s = level_stats(d.details[i]).as_array();
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(fv.values[i * 6 + j], s[j]);
  }
  EXPECT_EQ(fv.at(3, Stat::Kurtosis), fv.values[2 * 6 + 3]);
  EXPECT_EQ(feature_name(0), "f1");
  EXPECT_EQ(feature_name(65), "f66");
}

TEST(Extract, WrongLevelCount) {
  auto d = decompose(pqtest::sine(50.0), 10);
  try {
    extract(d, EventClass::S0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WrongLevelCount);
  }
}

TEST(Extract, FiftyHertzEnergyPeak) {
  auto fv = extract(generate(EventClass::S0, {}));
  std::size_t best = 1;
  for (std::size_t i = 2; i <= 11; ++i)
    if (fv.at(i, Stat::Energy) > fv.at(best, Stat::Energy)) best = i;
  EXPECT_TRUE(best == 7 || best == 8) << best;
}

TEST(Extract, HarmonicsRaiseMidBandEnergy) {
  auto normal = extract(generate(EventClass::S0, {}));
  auto band = [](const FeatureVector& f) { return f.at(5, Stat::Energy) + f.at(6, Stat::Energy) + f.at(7, Stat::Energy); };
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) wins += band(extract(generate_seeded(EventClass::S5, seed))) > band(normal);
  EXPECT_GE(wins, 95);
}

TEST(Extract, AllParallelMatchesSerial) {
  std::vector<Signal> sigs;
  for (int c = 0; c < kNumEventClasses; ++c) sigs.push_back(generate_seeded(class_from_index(c), 50 + c));
  auto a = extract_all(sigs, 1), b = extract_all(sigs, 4);
  for (std::size_t i = 0; i < sigs.size(); ++i) EXPECT_EQ(a[i].values, b[i].values);
}
