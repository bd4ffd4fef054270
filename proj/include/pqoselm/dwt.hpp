#pragma once

// Multilevel Daubechies-4 filter bank (8 taps) with half-point symmetric
// boundary extension, matching the usual `wavedec`/`waverec` conventions.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "error.hpp"

namespace pqoselm {

inline constexpr std::size_t kFilterLength = 8;

struct FilterPair {
  std::array<double, kFilterLength> lowpass{};
  std::array<double, kFilterLength> highpass{};
};

/// Analysis filters for db4 in convolution order. The high-pass is the
/// quadrature mirror g[k] = (-1)^k h[N-1-k].
inline FilterPair db4_filters() {
  FilterPair f;
  f.lowpass = {-1.059740178506903210488320852402722918109996490637641983484974e-02,
               3.288301166688519973540751354924438866454194113754971259727278e-02,
               3.084138183556076362721936253495905017031482172003403341821219e-02,
               -1.870348117190930840795706727890814195845441743745800912057770e-01,
               -2.798376941685985421141374718007538541198732022449175284003358e-02,
               6.308807679298589078817163383006152202032229226771951174057473e-01,
               7.148465705529156470899219552739926037076084010993081758450110e-01,
               2.303778133088965008632911830440708500016152482483092977910968e-01};
  for (std::size_t k = 0; k < kFilterLength; ++k) {
    double h = f.lowpass[kFilterLength - 1 - k];
    f.highpass[k] = (k % 2 == 0) ? h : -h;
  }
  return f;
}

enum class BoundaryMode { Symmetric };

/// Detail bands CD_1..CD_J (finest first) and the final approximation CA_J.
struct WaveletDecomposition {
  std::vector<std::vector<double>> details;
  std::vector<double> approx;
  std::size_t original_length = 0;
  BoundaryMode boundary_mode = BoundaryMode::Symmetric;

  std::size_t levels() const { return details.size(); }
};

/// Coefficient count after one analysis step: floor((n + 8 - 1) / 2).
inline constexpr std::size_t coeff_length(std::size_t n) { return (n + kFilterLength - 1) / 2; }

/// Lengths of CD_1..CD_levels for an input of length n.
inline std::vector<std::size_t> level_lengths(std::size_t n, std::size_t levels) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < levels; ++i) {
    n = coeff_length(n);
    out.push_back(n);
  }
  return out;
}

namespace detail {

// Half-point symmetric reflection: x[-1] = x[0], x[n] = x[n-1], repeating.
inline std::size_t reflect(std::ptrdiff_t i, std::size_t n) {
  const auto len = static_cast<std::ptrdiff_t>(n);
  const std::ptrdiff_t period = 2 * len;
  i %= period;
  if (i < 0) i += period;
  return static_cast<std::size_t>(i < len ? i : period - 1 - i);
}

// out[o] = sum_j filter[j] * x[2o + 1 - j] with symmetric extension.
inline void analysis_step(std::span<const double> x, const FilterPair& f, std::vector<double>& approx,
                          std::vector<double>& detail) {
  const std::size_t n = x.size();
  const std::size_t out_len = coeff_length(n);
  approx.assign(out_len, 0.0);
  detail.assign(out_len, 0.0);
  for (std::size_t o = 0; o < out_len; ++o) {
    const auto centre = static_cast<std::ptrdiff_t>(2 * o + 1);
    double a = 0.0;
    double d = 0.0;
    for (std::size_t j = 0; j < kFilterLength; ++j) {
      const std::ptrdiff_t idx = centre - static_cast<std::ptrdiff_t>(j);
      const double v = (idx >= 0 && idx < static_cast<std::ptrdiff_t>(n)) ? x[static_cast<std::size_t>(idx)]
                                                                          : x[reflect(idx, n)];
      a += f.lowpass[j] * v;
      d += f.highpass[j] * v;
    }
    approx[o] = a;
    detail[o] = d;
  }
}

// Adjoint of analysis_step restricted to the 2n - 6 samples the extension
// does not touch; out_len <= 2n - 6 crops the tail.
inline std::vector<double> synthesis_step(std::span<const double> approx, std::span<const double> detail,
                                          const FilterPair& f, std::size_t out_len) {
  std::vector<double> y(out_len, 0.0);
  const std::size_t n = approx.size();
  for (std::size_t k = 0; k < n; ++k) {
    // coefficient k touches y[o] for o = 2k + 1 - j, j in [0, 8)
    for (std::size_t j = 0; j < kFilterLength; ++j) {
      const std::ptrdiff_t o = static_cast<std::ptrdiff_t>(2 * k + 1) - static_cast<std::ptrdiff_t>(j);
      if (o < 0 || o >= static_cast<std::ptrdiff_t>(out_len)) continue;
      y[static_cast<std::size_t>(o)] += f.lowpass[j] * approx[k] + f.highpass[j] * detail[k];
    }
  }
  return y;
}

}  // namespace detail

/// Multilevel analysis. Throws InvalidArgument for levels < 1 and
/// TooManyLevels when some level's input is shorter than the filter.
inline WaveletDecomposition decompose(std::span<const double> signal, std::size_t levels) {
  if (levels < 1) throw Error(ErrorKind::InvalidArgument, "levels must be >= 1");
  WaveletDecomposition out;
  out.original_length = signal.size();
  std::size_t n = signal.size();
  for (std::size_t i = 1; i <= levels; ++i) {
    if (n < kFilterLength)
      throw Error(ErrorKind::TooManyLevels, "level " + std::to_string(i) + " input has " + std::to_string(n) +
                                                " samples, fewer than the filter length");
    n = coeff_length(n);
  }

  static const FilterPair filters = db4_filters();
  std::vector<double> current(signal.begin(), signal.end());
  std::vector<double> approx;
  out.details.resize(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    detail::analysis_step(current, filters, approx, out.details[i]);
    current.swap(approx);
  }
  out.approx = std::move(current);
  return out;
}

/// Inverse of decompose. Throws MalformedDecomposition when the stored
/// band lengths are not those decompose would produce for original_length.
inline std::vector<double> reconstruct(const WaveletDecomposition& d) {
  const std::size_t levels = d.levels();
  if (levels == 0) throw Error(ErrorKind::MalformedDecomposition, "no detail levels");
  // lengths[i] is the length of the level-i approximation, lengths[0] the signal
  std::vector<std::size_t> lengths{d.original_length};
  for (std::size_t i = 0; i < levels; ++i) lengths.push_back(coeff_length(lengths.back()));
  for (std::size_t i = 0; i < levels; ++i) {
    if (d.details[i].size() != lengths[i + 1])
      throw Error(ErrorKind::MalformedDecomposition, "detail level " + std::to_string(i + 1) + " has length " +
                                                         std::to_string(d.details[i].size()) + ", expected " +
                                                         std::to_string(lengths[i + 1]));
  }
  if (d.approx.size() != lengths[levels])
    throw Error(ErrorKind::MalformedDecomposition, "approximation length mismatch");

  static const FilterPair filters = db4_filters();
  std::vector<double> current = d.approx;
  for (std::size_t i = levels; i-- > 0;) {
    current = detail::synthesis_step(current, d.details[i], filters, lengths[i]);
  }
  return current;
}

/// {"details": {"1": [...], ..., "J": [...]}, "approx": [...]} plus metadata.
inline nlohmann::json to_json(const WaveletDecomposition& d) {
  nlohmann::json j;
  j["original_length"] = d.original_length;
  j["boundary_mode"] = "symmetric";
  j["wavelet"] = "db4";
  nlohmann::json levels = nlohmann::json::object();
  for (std::size_t i = 0; i < d.details.size(); ++i) levels[std::to_string(i + 1)] = d.details[i];
  j["details"] = std::move(levels);
  j["approx"] = d.approx;
  return j;
}

}  // namespace pqoselm
