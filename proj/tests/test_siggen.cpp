#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "pqoselm/siggen.hpp"
#include "test_util.hpp"

using namespace pqoselm;

namespace {

constexpr double kTol = 1e-12;
const SignalSpec kSpec{};

double normal_at(int k) { return std::sin(kSpec.omega() * kSpec.time_at(k)); }

std::vector<EventClass> all_classes() {
  std::vector<EventClass> out;
  for (int i = 0; i < kNumEventClasses; ++i) out.push_back(class_from_index(i));
  return out;
}

}  // namespace

TEST(SignalSpec, DefaultsCoverTenCycles) {
  EXPECT_EQ(kSpec.n_samples / (kSpec.sampling_rate_hz / kSpec.fundamental_hz), 10.0);
  EXPECT_EQ(kSpec.sampling_rate_hz, 256.0 * kSpec.fundamental_hz);
}

TEST(EventClass, SeventeenValuesSplitIntoSingleAndMixed) {
  EXPECT_EQ(kNumEventClasses, 17);
  for (int i = 1; i <= 8; ++i) EXPECT_FALSE(is_mixed(class_from_index(i)));
  for (int i = 9; i <= 16; ++i) EXPECT_TRUE(is_mixed(class_from_index(i)));
  EXPECT_EQ(parse_class("S12"), EventClass::S12);
  EXPECT_EQ(class_name(EventClass::S7), "S7");
  EXPECT_THROW(parse_class("S99"), Error);
  EXPECT_THROW(parse_class("sag"), Error);
}

TEST(SampleParams, SagWithinOpenIntervals) {
  const double T = kSpec.period();
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto p = sample_params(EventClass::S1, seed);
    ASSERT_TRUE(p.depth && p.window);
    EXPECT_GT(*p.depth, 0.16);
    EXPECT_LT(*p.depth, 0.95);
    EXPECT_GT(p.window->duration(), 2.0 * T);
    EXPECT_LT(p.window->duration(), 8.0 * T);
    EXPECT_GE(p.window->start_s, 0.0);
    EXPECT_LE(p.window->end_s, 10.0 * T);
  }
}

TEST(SampleParams, NormalHasNoParameters) { EXPECT_TRUE(sample_params(EventClass::S0, 9).empty()); }

TEST(SampleParams, DeterministicForFixedSeed) {
  for (auto c : all_classes()) EXPECT_EQ(sample_params(c, 42), sample_params(c, 42)) << class_name(c);
  EXPECT_NE(sample_params(EventClass::S1, 42), sample_params(EventClass::S1, 43));
}

TEST(SampleParams, EveryClassPassesValidation) {
  for (auto c : all_classes())
    for (std::uint64_t seed = 0; seed < 200; ++seed) EXPECT_NO_THROW(validate_params(c, sample_params(c, seed)));
}

TEST(SampleParams, MixedWindowsOrderedAndInsideRecord) {
  const double record = kSpec.duration();
  for (auto c : {EventClass::S9, EventClass::S10, EventClass::S11})
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto p = sample_params(c, seed);
      ASSERT_TRUE(p.window2);
      EXPECT_LT(p.window->start_s, p.window->end_s);
      EXPECT_LT(p.window2->start_s, p.window2->end_s);
      EXPECT_LE(p.window2->end_s, record);
    }
}

TEST(SampleParams, HarmonicsFixFundamentalWeight) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto h = *sample_params(EventClass::S5, seed).harmonics;
    EXPECT_EQ(h.h1, 1.0);
    for (double a : {h.h3, h.h5, h.h7, h.h9}) {
      EXPECT_GT(a, 0.0);
      EXPECT_LT(a, 0.3);
    }
  }
}

TEST(SampleParams, PulsesStartEarlyWithIntegerCount) {
  const double T = kSpec.period();
  for (auto c : {EventClass::S6, EventClass::S7})
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto p = sample_params(c, seed);
      EXPECT_LT(p.window->end_s, 0.05 * T);
      EXPECT_GE(p.pulses->count, 2);
      EXPECT_LE(p.pulses->count, 9);
    }
}

TEST(Validate, RejectsOutOfRangeAndMissingGroups) {
  EventParams p;
  p.depth = 0.99;
  p.window = Window{0.05, 0.1};
  EXPECT_THROW(generate(EventClass::S1, p), Error);
  p.depth = 0.5;
  EXPECT_NO_THROW(generate(EventClass::S1, p));
  p.window = Window{0.05, 0.06};  // half a cycle
  EXPECT_THROW(generate(EventClass::S1, p), Error);
  EventParams missing;
  missing.depth = 0.5;
  EXPECT_THROW(generate(EventClass::S1, missing), Error);
  EventParams extra;
  extra.depth = 0.5;
  EXPECT_THROW(generate(EventClass::S0, extra), Error);
  try {
    generate(EventClass::S2, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParamOutOfRange);
  }
}

TEST(Generate, NormalIsPureSine) {
  auto s = generate(EventClass::S0, {});
  ASSERT_EQ(s.samples.size(), 2560u);
  EXPECT_EQ(s.samples[0], 0.0);
  for (int k = 0; k < 2560; ++k)
    EXPECT_NEAR(s.samples[static_cast<std::size_t>(k)], std::sin(2.0 * std::numbers::pi * 50.0 * k / 12800.0), 1e-12);
}

TEST(Generate, SagScalesInsideWindowOnly) {
  EventParams p;
  p.depth = 0.5;
  const double start = 643.0 / 12800.0;
  p.window = Window{start, start + 0.05};
  auto s = generate(EventClass::S1, p);
  for (int k = 0; k < 2560; ++k) {
    const double t = k / 12800.0;
    const double expect = (t > p.window->start_s && t < p.window->end_s) ? 0.5 * normal_at(k) : normal_at(k);
    if (t == p.window->start_s) continue;
    EXPECT_NEAR(s.samples[static_cast<std::size_t>(k)], expect, kTol) << k;
  }
  // u(0) = 1: the start sample is already inside the event
  EXPECT_NEAR(s.samples[643], 0.5 * normal_at(643), kTol);
  EXPECT_NEAR(s.samples[642], normal_at(642), kTol);
}

TEST(Generate, FullInterruptionZeroesWindow) {
  EventParams p;
  p.depth = 1.0;
  p.window = Window{0.04, 0.12};
  auto s = generate(EventClass::S3, p);
  for (int k = 0; k < 2560; ++k) {
    const double t = k / 12800.0;
    if (t > 0.04 && t < 0.12) {
      EXPECT_NEAR(s.samples[static_cast<std::size_t>(k)], 0.0, kTol);
    }
  }
}

TEST(Generate, HarmonicsMatchTrigSum) {
  EventParams p;
  p.harmonics = Harmonics{1.0, 0.2, 0.0, 0.0, 0.0};
  auto s = generate(EventClass::S5, p);
  for (int k = 0; k < 2560; ++k) {
    const double wt = 2.0 * std::numbers::pi * 50.0 * (k / 12800.0);
    EXPECT_NEAR(s.samples[static_cast<std::size_t>(k)], std::sin(wt) + 0.2 * std::sin(3.0 * wt), kTol);
  }
}

TEST(Generate, TransientDecaysFromWindowStart) {
  EventParams p;
  p.window = Window{0.05, 0.1};
  p.transient = Transient{60.0, 50.0, 5.0};
  auto s = generate(EventClass::S4, p);
  for (int k = 0; k < 2560; ++k) {
    const double t = k / 12800.0;
    double expect = normal_at(k);
    if (p.window->active(t)) expect += 5.0 * std::exp(-(t - 0.05) / 0.05) * std::sin(2.0 * std::numbers::pi * 60.0 * t);
    EXPECT_NEAR(s.samples[static_cast<std::size_t>(k)], expect, kTol);
  }
}

TEST(Generate, SwellTimesInterruptionForS11) {
  EventParams p;
  p.depth = 0.5;
  p.window = Window{0.02, 0.1};
  p.depth2 = 0.9;
  p.window2 = Window{0.06, 0.16};
  auto s = generate(EventClass::S11, p);
  const int k = static_cast<int>(0.08 * 12800);  // inside both
  EXPECT_NEAR(s.samples[static_cast<std::size_t>(k + 3)], 1.5 * 0.1 * normal_at(k + 3), kTol);
}

TEST(Generate, BitIdenticalForSameSeed) {
  for (auto c : all_classes()) {
    auto a = generate_seeded(c, 1234);
    auto b = generate_seeded(c, 1234);
    EXPECT_EQ(a.samples, b.samples) << class_name(c);
  }
}

TEST(Generate, FiniteAndFullLength) {
  for (auto c : all_classes())
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      auto s = generate_seeded(c, seed);
      ASSERT_EQ(s.samples.size(), 2560u);
      for (double v : s.samples) ASSERT_TRUE(std::isfinite(v));
    }
}

TEST(Generate, SagEnvelopeBound) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto s = generate_seeded(EventClass::S1, seed);
    const auto& w = *s.params.window;
    double peak = 0.0;
    for (int k = 0; k < 2560; ++k)
      if (w.active(kSpec.time_at(k))) peak = std::max(peak, std::abs(s.samples[static_cast<std::size_t>(k)]));
    EXPECT_LE(peak, (1.0 - *s.params.depth) + kTol);
  }
}

TEST(Generate, SingleEventsMatchNormalOutsideWindow) {
  for (auto c : {EventClass::S1, EventClass::S2, EventClass::S3})
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      auto s = generate_seeded(c, seed);
      for (int k = 0; k < 2560; ++k)
        if (!s.params.window->active(kSpec.time_at(k))) {
          ASSERT_NEAR(s.samples[static_cast<std::size_t>(k)], normal_at(k), kTol);
        }
    }
}

TEST(Dataset, PresetTotals) {
  auto big = generate_dataset(preset_dataset("16class", 1));
  EXPECT_EQ(big.train.size(), 4353u);
  EXPECT_EQ(big.test.size(), 1090u);
  auto small = preset_dataset("11class", 1);
  int train = 0, test = 0;
  for (auto& c : small.train) train += c.count;
  for (auto& c : small.test) test += c.count;
  EXPECT_EQ(train, 3254);
  EXPECT_EQ(test, 815);
  auto mid = preset_dataset("13class", 1);
  EXPECT_EQ(mid.train.size(), 13u);
}

TEST(Dataset, EvenSplitGivesRemainderToLowestIndices) {
  auto counts = split_evenly(class_set(16), 4353);  // 272 * 16 + 1
  EXPECT_EQ(counts.front().count, 273);
  EXPECT_EQ(counts[1].count, 272);
  EXPECT_EQ(counts.back().count, 272);
}

TEST(Dataset, CustomCounts) {
  DatasetSpec spec;
  spec.train = {{EventClass::S1, 2}, {EventClass::S2, 2}};
  auto ds = generate_dataset(spec);
  EXPECT_EQ(ds.size(), 4u);
  EXPECT_EQ(ds.train[0].label, EventClass::S1);
  EXPECT_EQ(ds.train[3].label, EventClass::S2);
}

TEST(Dataset, UnknownPreset) {
  try {
    preset_dataset("12class", 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownPreset);
  }
}

TEST(Dataset, SeedsDistinctAndSplitsDisjoint) {
  auto ds = generate_dataset(preset_dataset("11class", 5));
  std::set<std::uint64_t> train;
  for (auto& s : ds.train) train.insert(s.seed);
  EXPECT_EQ(train.size(), ds.train.size());
  for (auto& s : ds.test) EXPECT_EQ(train.count(s.seed), 0u);
}

TEST(Dataset, IndependentOfThreadCount) {
  auto spec = preset_dataset("11class", 3);
  for (auto& c : spec.train) c.count = 5;
  for (auto& c : spec.test) c.count = 2;
  auto a = generate_dataset(spec, 1);
  auto b = generate_dataset(spec, 4);
  ASSERT_EQ(a.train.size(), b.train.size());
  for (std::size_t i = 0; i < a.train.size(); ++i) EXPECT_EQ(a.train[i].samples, b.train[i].samples);
}

TEST(Params, JsonRoundTrip) {
  for (auto c : all_classes()) {
    auto p = sample_params(c, 77);
    nlohmann::json j = p;
    EXPECT_EQ(j.get<EventParams>(), p) << class_name(c);
  }
}
