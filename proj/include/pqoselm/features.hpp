#pragma once

// Six statistics per wavelet detail band, 11 bands, 66 features.

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "dwt.hpp"
#include "error.hpp"
#include "siggen.hpp"

namespace pqoselm {

inline constexpr std::size_t kFeatureLevels = 11;
inline constexpr std::size_t kStatsPerLevel = 6;
inline constexpr std::size_t kFeatureCount = kFeatureLevels * kStatsPerLevel;

enum class Stat : std::size_t { Energy = 0, StdDev, Mean, Kurtosis, Skewness, Entropy };

inline constexpr std::array<const char*, kStatsPerLevel> kStatNames = {"EDR", "STD", "MEAN", "KRT", "SKW", "ENTP"};

struct LevelStats {
  double energy = 0.0;
  double stddev = 0.0;
  double mean = 0.0;
  double kurtosis = 0.0;
  double skewness = 0.0;
  double entropy = 0.0;

  std::array<double, kStatsPerLevel> as_array() const { return {energy, stddev, mean, kurtosis, skewness, entropy}; }
};

/// Energy, sample standard deviation (N-1), mean, non-excess kurtosis and
/// skewness (1/N central moments over the N-1 stddev), and the
/// non-normalised Shannon entropy -sum c^2 ln c^2.
///
/// Zero-variance input yields kurtosis = skewness = 0. Throws
/// DegenerateSequence for fewer than two coefficients.
inline LevelStats level_stats(std::span<const double> c) {
  const std::size_t n = c.size();
  if (n < 2) throw Error(ErrorKind::DegenerateSequence, "need at least 2 coefficients, got " + std::to_string(n));
  LevelStats s;
  double sum = 0.0;
  for (double v : c) {
    sum += v;
    const double sq = v * v;
    s.energy += sq;
    if (sq > 0.0) s.entropy -= sq * std::log(sq);
  }
  s.mean = sum / static_cast<double>(n);

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : c) {
    const double d = v - s.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  s.stddev = std::sqrt(m2 / static_cast<double>(n - 1));
  if (s.stddev > 0.0) {
    const double var = s.stddev * s.stddev;
    s.skewness = (m3 * inv_n) / (var * s.stddev);
    s.kurtosis = (m4 * inv_n) / (var * var);
  }
  return s;
}

struct FeatureVector {
  std::array<double, kFeatureCount> values{};
  EventClass label = EventClass::S0;

  double at(std::size_t level, Stat stat) const {
    return values[(level - 1) * kStatsPerLevel + static_cast<std::size_t>(stat)];
  }
};

/// Concatenates level_stats of CD_1..CD_11 (level-major). The final
/// approximation is not used. Throws WrongLevelCount unless the
/// decomposition has exactly 11 detail bands.
inline FeatureVector extract(const WaveletDecomposition& d, EventClass label) {
  if (d.levels() != kFeatureLevels)
    throw Error(ErrorKind::WrongLevelCount, "expected 11 detail levels, got " + std::to_string(d.levels()));
  FeatureVector fv;
  fv.label = label;
  for (std::size_t i = 0; i < kFeatureLevels; ++i) {
    const auto stats = level_stats(d.details[i]).as_array();
    for (std::size_t j = 0; j < kStatsPerLevel; ++j) fv.values[i * kStatsPerLevel + j] = stats[j];
  }
  return fv;
}

inline FeatureVector extract(const Signal& s) { return extract(decompose(s.samples, kFeatureLevels), s.label); }

inline std::vector<FeatureVector> extract_all(const std::vector<Signal>& signals, unsigned threads = default_threads()) {
  std::vector<FeatureVector> out(signals.size());
  parallel_for(signals.size(), [&](std::size_t i) { out[i] = extract(signals[i]); }, threads);
  return out;
}

/// "f<k>" with k = 6(i-1) + j: level i, statistic j.
inline std::string feature_name(std::size_t index) { return "f" + std::to_string(index + 1); }

}  // namespace pqoselm
