#pragma once

// Parametric power-quality disturbance generator: 16 event classes plus the
// clean fundamental, sampled at 12.8 kHz for ten 50 Hz cycles.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "error.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace pqoselm {

enum class EventClass : int {
  S0 = 0,  // normal
  S1,      // sag
  S2,      // swell
  S3,      // momentary interruption
  S4,      // oscillatory transient
  S5,      // harmonics
  S6,      // notch
  S7,      // spike
  S8,      // flicker
  S9,      // sag + swell
  S10,     // sag + interruption
  S11,     // swell + interruption
  S12,     // sag + transient
  S13,     // swell + transient
  S14,     // sag + harmonics
  S15,     // swell + harmonics
  S16,     // harmonics + transient
};

inline constexpr int kNumEventClasses = 17;

inline constexpr int index_of(EventClass c) { return static_cast<int>(c); }

inline EventClass class_from_index(int i) {
  if (i < 0 || i >= kNumEventClasses)
    throw Error(ErrorKind::UnknownClass, "unknown class index " + std::to_string(i));
  return static_cast<EventClass>(i);
}

inline std::string class_name(EventClass c) { return "S" + std::to_string(index_of(c)); }

inline std::string_view class_description(EventClass c) {
  static constexpr std::array<std::string_view, kNumEventClasses> names = {
      "Normal",          "Voltage Sag",           "Voltage Swell",         "Interruption",
      "Oscillatory Transients", "Harmonic Distortion", "Notch",          "Spike",
      "Flicker",         "Sag with Swell",        "Sag with Interruption", "Swell with Interruption",
      "Sag with Transient", "Swell with Transient", "Sag with Harmonics",  "Swell with Harmonics",
      "Harmonics with Transient"};
  return names[static_cast<std::size_t>(index_of(c))];
}

/// Accepts "S0".."S16" (case-insensitive prefix). Throws UnknownClass otherwise.
inline EventClass parse_class(std::string_view name) {
  if (name.size() >= 2 && (name[0] == 'S' || name[0] == 's')) {
    int v = 0;
    bool ok = true;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9' || i > 2) {
        ok = false;
        break;
      }
      v = v * 10 + (name[i] - '0');
    }
    if (ok && v < kNumEventClasses && !(name.size() == 3 && name[1] == '0'))
      return static_cast<EventClass>(v);
  }
  throw Error(ErrorKind::UnknownClass, "unknown class '" + std::string(name) + "'");
}

inline bool is_mixed(EventClass c) { return index_of(c) >= 9; }

struct SignalSpec {
  double sampling_rate_hz = 12800.0;
  int n_samples = 2560;
  double fundamental_hz = 50.0;
  double amplitude = 1.0;

  double period() const { return 1.0 / fundamental_hz; }
  double duration() const { return n_samples / sampling_rate_hz; }
  double omega() const { return 2.0 * std::numbers::pi * fundamental_hz; }
  double time_at(int k) const { return k / sampling_rate_hz; }
};

/// Half-open activity window [start_s, end_s): u(t - start) - u(t - end)
/// with the right-continuous step u(0) = 1.
struct Window {
  double start_s = 0.0;
  double end_s = 0.0;

  double duration() const { return end_s - start_s; }
  bool active(double t) const { return t >= start_s && t < end_s; }

  friend bool operator==(const Window&, const Window&) = default;
};

struct Transient {
  double freq_hz = 0.0;
  double tau_ms = 0.0;
  double amplitude = 5.0;

  friend bool operator==(const Transient&, const Transient&) = default;
};

struct Harmonics {
  double h1 = 1.0;
  double h3 = 0.0;
  double h5 = 0.0;
  double h7 = 0.0;
  double h9 = 0.0;

  friend bool operator==(const Harmonics&, const Harmonics&) = default;
};

struct Flicker {
  double freq_hz = 0.0;
  double depth = 0.0;

  friend bool operator==(const Flicker&, const Flicker&) = default;
};

struct PulseTrain {
  double depth = 0.0;
  int count = 0;

  friend bool operator==(const PulseTrain&, const PulseTrain&) = default;
};

/// Generation parameters. Which groups are present depends on the class;
/// S0 uses none of them.
struct EventParams {
  std::optional<double> depth;    // envelope depth on `window`
  std::optional<Window> window;   // sag/swell/interruption, transient, or first pulse
  std::optional<double> depth2;   // second envelope event (S9..S11)
  std::optional<Window> window2;
  std::optional<Transient> transient;
  std::optional<Harmonics> harmonics;
  std::optional<Flicker> flicker;
  std::optional<PulseTrain> pulses;

  bool empty() const {
    return !depth && !window && !depth2 && !window2 && !transient && !harmonics && !flicker && !pulses;
  }
  friend bool operator==(const EventParams&, const EventParams&) = default;
};

struct Signal {
  std::vector<double> samples;
  SignalSpec spec;
  EventClass label = EventClass::S0;
  EventParams params;
  std::uint64_t seed = 0;
};

// Parameter intervals. Sampling draws from the open interval; validation
// accepts the closure so boundary cases (alpha = 1 interruption, zero
// harmonic) can be generated on purpose.
struct Interval {
  double lo;
  double hi;
  bool contains_closed(double v) const { return v >= lo && v <= hi; }
};

namespace ranges {
inline constexpr Interval kSagDepth{0.16, 0.95};
inline constexpr Interval kSwellDepth{0.05, 0.8};
inline constexpr Interval kInterruptionDepth{0.87, 1.0};
inline constexpr Interval kEnvelopeCycles{2.0, 8.0};
inline constexpr Interval kSecondEnvelopeCycles{4.0, 9.0};
inline constexpr Interval kTransientCycles{0.15, 10.0};
inline constexpr Interval kTransientFreqHz{10.0, 100.0};
inline constexpr Interval kTauMs{25.0, 100.0};
inline constexpr double kTransientAmplitude = 5.0;
inline constexpr Interval kHarmonic{0.0, 0.3};
inline constexpr Interval kFlickerFreqHz{2.0, 20.0};
inline constexpr Interval kFlickerDepth{0.1, 0.2};
inline constexpr Interval kPulseDepth{0.1, 0.4};
inline constexpr Interval kPulseWidthCycles{0.01, 0.05};
inline constexpr double kPulseStartCycles = 0.05;  // t_a and t_b both below 0.05T
inline constexpr int kPulseCountMin = 2;            // 1 < m < 10, integer
inline constexpr int kPulseCountMax = 9;
inline constexpr double kPulseSpacingPerCount = 0.002;  // seconds, times m
}  // namespace ranges

enum class Envelope { None, Sag, Swell, Interruption };
enum class PulseKind { None, Notch, Spike };

struct ClassTraits {
  Envelope primary = Envelope::None;
  Envelope secondary = Envelope::None;
  bool transient = false;
  bool harmonics = false;
  bool flicker = false;
  PulseKind pulse = PulseKind::None;
  std::optional<Interval> window_cycles;  // duration of `window` in periods
};

inline ClassTraits traits_of(EventClass c) {
  using namespace ranges;
  ClassTraits t;
  switch (c) {
    case EventClass::S0: break;
    case EventClass::S1: t.primary = Envelope::Sag; t.window_cycles = kEnvelopeCycles; break;
    case EventClass::S2: t.primary = Envelope::Swell; t.window_cycles = kEnvelopeCycles; break;
    case EventClass::S3: t.primary = Envelope::Interruption; t.window_cycles = kEnvelopeCycles; break;
    case EventClass::S4: t.transient = true; t.window_cycles = kTransientCycles; break;
    case EventClass::S5: t.harmonics = true; break;
    case EventClass::S6: t.pulse = PulseKind::Notch; t.window_cycles = kPulseWidthCycles; break;
    case EventClass::S7: t.pulse = PulseKind::Spike; t.window_cycles = kPulseWidthCycles; break;
    case EventClass::S8: t.flicker = true; break;
    case EventClass::S9:
      t.primary = Envelope::Sag; t.secondary = Envelope::Swell; t.window_cycles = kEnvelopeCycles; break;
    case EventClass::S10:
      t.primary = Envelope::Sag; t.secondary = Envelope::Interruption; t.window_cycles = kEnvelopeCycles; break;
    case EventClass::S11:
      t.primary = Envelope::Swell; t.secondary = Envelope::Interruption; t.window_cycles = kEnvelopeCycles; break;
    case EventClass::S12:
      t.primary = Envelope::Sag; t.transient = true; t.window_cycles = kEnvelopeCycles; break;
    case EventClass::S13:
      t.primary = Envelope::Swell; t.transient = true; t.window_cycles = kEnvelopeCycles; break;
    case EventClass::S14:
      t.primary = Envelope::Sag; t.harmonics = true; t.window_cycles = kEnvelopeCycles; break;
    case EventClass::S15:
      t.primary = Envelope::Swell; t.harmonics = true; t.window_cycles = kEnvelopeCycles; break;
    case EventClass::S16:
      t.transient = true; t.harmonics = true; t.window_cycles = kTransientCycles; break;
  }
  return t;
}

namespace detail {

inline Interval depth_range(Envelope e) {
  switch (e) {
    case Envelope::Sag: return ranges::kSagDepth;
    case Envelope::Swell: return ranges::kSwellDepth;
    case Envelope::Interruption: return ranges::kInterruptionDepth;
    case Envelope::None: break;
  }
  return {0.0, 0.0};
}

inline double envelope_sign(Envelope e) { return e == Envelope::Swell ? 1.0 : -1.0; }

// Window of duration drawn from `cycles` (in periods) placed uniformly so it
// ends before `latest_end_s`.
inline Window sample_window(Rng& rng, Interval cycles, double period, double latest_end_s) {
  double d = rng.open(cycles.lo * period, cycles.hi * period);
  double start = rng.open(0.0, latest_end_s - d);
  return {start, start + d};
}

[[noreturn]] inline void out_of_range(EventClass c, const std::string& what) {
  throw Error(ErrorKind::ParamOutOfRange, class_name(c) + ": " + what);
}

inline void check_in(EventClass c, const char* name, double v, Interval r) {
  if (!std::isfinite(v) || !r.contains_closed(v))
    out_of_range(c, std::string(name) + "=" + std::to_string(v) + " outside [" + std::to_string(r.lo) + ", " +
                        std::to_string(r.hi) + "]");
}

template <typename T>
inline void check_presence(EventClass c, const char* name, const std::optional<T>& field, bool required) {
  if (required && !field) out_of_range(c, std::string("missing parameter ") + name);
  if (!required && field) out_of_range(c, std::string("unexpected parameter ") + name);
}

// Windows are compared in periods with a little slack so values that
// round-trip through text keep validating.
inline void check_window(EventClass c, const char* name, const Window& w, Interval cycles, double period,
                         double record_s) {
  constexpr double slack = 1e-12;
  if (!(w.start_s < w.end_s)) out_of_range(c, std::string(name) + " start must precede end");
  if (w.start_s < -slack || w.end_s > record_s + slack) out_of_range(c, std::string(name) + " outside the record");
  double len = w.duration() / period;
  if (len < cycles.lo - slack || len > cycles.hi + slack)
    out_of_range(c, std::string(name) + " duration " + std::to_string(len) + "T outside [" +
                        std::to_string(cycles.lo) + "T, " + std::to_string(cycles.hi) + "T]");
}

}  // namespace detail

/// Draws every parameter of `c` uniformly from its open interval. The
/// result depends only on (c, seed, spec.period, spec.duration).
inline EventParams sample_params(EventClass c, std::uint64_t seed, const SignalSpec& spec = {}) {
  using namespace ranges;
  const ClassTraits tr = traits_of(c);
  const double T = spec.period();
  Rng rng(seed);
  EventParams p;
  if (tr.pulse != PulseKind::None) {
    double d = rng.open(kPulseWidthCycles.lo * T, kPulseWidthCycles.hi * T);
    double start = rng.open(0.0, kPulseStartCycles * T - d);
    p.window = Window{start, start + d};
    p.pulses = PulseTrain{rng.open(kPulseDepth.lo, kPulseDepth.hi),
                          static_cast<int>(rng.integer(kPulseCountMin, kPulseCountMax))};
    return p;
  }
  if (tr.window_cycles) p.window = detail::sample_window(rng, *tr.window_cycles, T, spec.duration());
  if (tr.primary != Envelope::None) {
    auto r = detail::depth_range(tr.primary);
    p.depth = rng.open(r.lo, r.hi);
  }
  if (tr.secondary != Envelope::None) {
    auto r = detail::depth_range(tr.secondary);
    p.depth2 = rng.open(r.lo, r.hi);
    p.window2 = detail::sample_window(rng, kSecondEnvelopeCycles, T, spec.duration());
  }
  if (tr.transient)
    p.transient = Transient{rng.open(kTransientFreqHz.lo, kTransientFreqHz.hi), rng.open(kTauMs.lo, kTauMs.hi),
                            kTransientAmplitude};
  if (tr.harmonics) {
    Harmonics h;
    h.h1 = 1.0;
    h.h3 = rng.open(kHarmonic.lo, kHarmonic.hi);
    h.h5 = rng.open(kHarmonic.lo, kHarmonic.hi);
    h.h7 = rng.open(kHarmonic.lo, kHarmonic.hi);
    h.h9 = rng.open(kHarmonic.lo, kHarmonic.hi);
    p.harmonics = h;
  }
  if (tr.flicker) p.flicker = Flicker{rng.open(kFlickerFreqHz.lo, kFlickerFreqHz.hi), rng.open(kFlickerDepth.lo, kFlickerDepth.hi)};
  return p;
}

/// Throws ParamOutOfRange unless `p` carries exactly the groups `c` needs,
/// each inside its (closed) interval.
inline void validate_params(EventClass c, const EventParams& p, const SignalSpec& spec = {}) {
  using namespace ranges;
  using detail::check_in;
  const ClassTraits tr = traits_of(c);
  const double T = spec.period();
  const double record = spec.duration();

  detail::check_presence(c, "depth", p.depth, tr.primary != Envelope::None);
  detail::check_presence(c, "window", p.window, tr.window_cycles.has_value());
  detail::check_presence(c, "depth2", p.depth2, tr.secondary != Envelope::None);
  detail::check_presence(c, "window2", p.window2, tr.secondary != Envelope::None);
  detail::check_presence(c, "transient", p.transient, tr.transient);
  detail::check_presence(c, "harmonics", p.harmonics, tr.harmonics);
  detail::check_presence(c, "flicker", p.flicker, tr.flicker);
  detail::check_presence(c, "pulses", p.pulses, tr.pulse != PulseKind::None);

  if (tr.primary != Envelope::None) check_in(c, "depth", *p.depth, detail::depth_range(tr.primary));
  if (tr.secondary != Envelope::None) {
    check_in(c, "depth2", *p.depth2, detail::depth_range(tr.secondary));
    detail::check_window(c, "window2", *p.window2, kSecondEnvelopeCycles, T, record);
  }
  if (tr.pulse != PulseKind::None) {
    detail::check_window(c, "window", *p.window, kPulseWidthCycles, T, kPulseStartCycles * T);
    check_in(c, "pulse depth", p.pulses->depth, kPulseDepth);
    if (p.pulses->count < kPulseCountMin || p.pulses->count > kPulseCountMax)
      detail::out_of_range(c, "pulse count " + std::to_string(p.pulses->count) + " outside [2, 9]");
  } else if (tr.window_cycles) {
    detail::check_window(c, "window", *p.window, *tr.window_cycles, T, record);
  }
  if (tr.transient) {
    check_in(c, "transient frequency", p.transient->freq_hz, kTransientFreqHz);
    check_in(c, "tau", p.transient->tau_ms, kTauMs);
    if (p.transient->amplitude != kTransientAmplitude) detail::out_of_range(c, "transient amplitude must be 5");
  }
  if (tr.harmonics) {
    const auto& h = *p.harmonics;
    if (h.h1 != 1.0) detail::out_of_range(c, "fundamental harmonic weight must be 1");
    check_in(c, "h3", h.h3, kHarmonic);
    check_in(c, "h5", h.h5, kHarmonic);
    check_in(c, "h7", h.h7, kHarmonic);
    check_in(c, "h9", h.h9, kHarmonic);
  }
  if (tr.flicker) {
    check_in(c, "flicker frequency", p.flicker->freq_hz, kFlickerFreqHz);
    check_in(c, "flicker depth", p.flicker->depth, kFlickerDepth);
  }
}

namespace detail {

inline double step_window(const std::optional<Window>& w, double t) { return w && w->active(t) ? 1.0 : 0.0; }

inline double sign(double v) { return (v > 0.0) - (v < 0.0); }

inline double harmonic_sum(const Harmonics& h, double wt) {
  return h.h1 * std::sin(wt) + h.h3 * std::sin(3.0 * wt) + h.h5 * std::sin(5.0 * wt) + h.h7 * std::sin(7.0 * wt) +
         h.h9 * std::sin(9.0 * wt);
}

inline double sample_at(const ClassTraits& tr, const EventParams& p, const SignalSpec& spec, double t) {
  const double B = spec.amplitude;
  const double wt = spec.omega() * t;
  const double fundamental = std::sin(wt);

  if (tr.pulse != PulseKind::None) {
    const double spacing = ranges::kPulseSpacingPerCount * p.pulses->count;
    double train = 0.0;
    for (int j = 0; j < p.pulses->count; ++j) {
      Window shifted{p.window->start_s + j * spacing, p.window->end_s + j * spacing};
      train += shifted.active(t) ? 1.0 : 0.0;
    }
    const double dir = tr.pulse == PulseKind::Notch ? -1.0 : 1.0;
    return B * fundamental + dir * p.pulses->depth * B * sign(B * fundamental) * train;
  }

  double envelope = 1.0;
  if (tr.primary != Envelope::None) envelope *= 1.0 + envelope_sign(tr.primary) * *p.depth * step_window(p.window, t);
  if (tr.secondary != Envelope::None)
    envelope *= 1.0 + envelope_sign(tr.secondary) * *p.depth2 * step_window(p.window2, t);
  if (tr.flicker) envelope *= 1.0 + p.flicker->depth * std::sin(2.0 * std::numbers::pi * p.flicker->freq_hz * t);

  double y = 0.0;
  // Pure harmonics (S5, S16) replace the fundamental; sag/swell + harmonics
  // (S14, S15) add the harmonic series on top of the scaled fundamental.
  if (tr.harmonics && tr.primary == Envelope::None)
    y = B * harmonic_sum(*p.harmonics, wt);
  else
    y = B * envelope * fundamental;
  if (tr.harmonics && tr.primary != Envelope::None) y += B * harmonic_sum(*p.harmonics, wt);

  if (tr.transient && p.window->active(t)) {
    const auto& tr_p = *p.transient;
    y += tr_p.amplitude * std::exp(-(t - p.window->start_s) / (tr_p.tau_ms * 1e-3)) *
         std::sin(2.0 * std::numbers::pi * tr_p.freq_hz * t);
  }
  return y;
}

}  // namespace detail

/// Evaluates the class model at t = k / fs for every sample.
/// Throws ParamOutOfRange when `params` do not fit the class.
inline Signal generate(EventClass c, const EventParams& params, const SignalSpec& spec = {}, std::uint64_t seed = 0) {
  if (!(spec.sampling_rate_hz > 0) || spec.n_samples <= 0 || !(spec.fundamental_hz > 0) || !(spec.amplitude > 0))
    throw Error(ErrorKind::InvalidArgument, "signal spec must be positive");
  validate_params(c, params, spec);
  const ClassTraits tr = traits_of(c);
  Signal s;
  s.spec = spec;
  s.label = c;
  s.params = params;
  s.seed = seed;
  s.samples.resize(static_cast<std::size_t>(spec.n_samples));
  for (int k = 0; k < spec.n_samples; ++k)
    s.samples[static_cast<std::size_t>(k)] = detail::sample_at(tr, params, spec, spec.time_at(k));
  return s;
}

/// sample_params followed by generate with the same seed.
inline Signal generate_seeded(EventClass c, std::uint64_t seed, const SignalSpec& spec = {}) {
  return generate(c, sample_params(c, seed, spec), spec, seed);
}

// ---------------------------------------------------------------------------
// Datasets

struct ClassCount {
  EventClass label;
  int count;
};

enum class Split : std::uint64_t { Train = 0, Test = 1 };

struct DatasetSpec {
  std::vector<ClassCount> train;
  std::vector<ClassCount> test;
  std::uint64_t master_seed = 0;
  SignalSpec signal;
  std::string preset;  // empty for custom specs
};

struct LabeledDataset {
  std::vector<Signal> train;
  std::vector<Signal> test;

  std::size_t size() const { return train.size() + test.size(); }
};

struct PresetTotals {
  std::string_view name;
  int n_classes;
  int train;
  int test;
};

inline constexpr std::array<PresetTotals, 3> kPresets = {{
    {"11class", 11, 3254, 815},
    {"13class", 13, 3510, 879},
    {"16class", 16, 4353, 1090},
}};

inline const PresetTotals& preset_totals(std::string_view name) {
  for (const auto& p : kPresets)
    if (p.name == name) return p;
  throw Error(ErrorKind::UnknownPreset, "unknown preset '" + std::string(name) + "'");
}

/// S1..S<n>, the classification label set for an n-class experiment.
inline std::vector<EventClass> class_set(int n_classes) {
  if (n_classes < 1 || n_classes >= kNumEventClasses)
    throw Error(ErrorKind::InvalidArgument, "class count must be in 1..16");
  std::vector<EventClass> out;
  for (int i = 1; i <= n_classes; ++i) out.push_back(static_cast<EventClass>(i));
  return out;
}

/// Spreads `total` over `classes` as evenly as possible; the remainder goes
/// to the lowest class indices.
inline std::vector<ClassCount> split_evenly(const std::vector<EventClass>& classes, int total) {
  std::vector<ClassCount> out;
  const int n = static_cast<int>(classes.size());
  if (n == 0) return out;
  for (int i = 0; i < n; ++i) out.push_back({classes[static_cast<std::size_t>(i)], total / n + (i < total % n ? 1 : 0)});
  return out;
}

inline DatasetSpec preset_dataset(std::string_view name, std::uint64_t master_seed, const SignalSpec& signal = {}) {
  const auto& p = preset_totals(name);
  auto classes = class_set(p.n_classes);
  DatasetSpec spec;
  spec.train = split_evenly(classes, p.train);
  spec.test = split_evenly(classes, p.test);
  spec.master_seed = master_seed;
  spec.signal = signal;
  spec.preset = std::string(p.name);
  return spec;
}

/// Per-signal seed: a hash of (master seed, split, class, index), so train
/// and test draw from disjoint streams and generation order is irrelevant.
inline std::uint64_t signal_seed(std::uint64_t master, Split split, EventClass c, int index) {
  return derive_seed(master, {static_cast<std::uint64_t>(split), static_cast<std::uint64_t>(index_of(c)),
                              static_cast<std::uint64_t>(index)});
}

namespace detail {

inline std::vector<Signal> generate_split(const std::vector<ClassCount>& counts, Split split, std::uint64_t master,
                                          const SignalSpec& spec, unsigned threads) {
  std::vector<std::pair<EventClass, int>> jobs;
  for (const auto& cc : counts) {
    if (cc.count < 0) throw Error(ErrorKind::InvalidArgument, "negative count for " + class_name(cc.label));
    for (int i = 0; i < cc.count; ++i) jobs.emplace_back(cc.label, i);
  }
  std::vector<Signal> out(jobs.size());
  parallel_for(
      jobs.size(),
      [&](std::size_t j) {
        auto [c, i] = jobs[j];
        out[j] = generate_seeded(c, signal_seed(master, split, c, i), spec);
      },
      threads);
  return out;
}

}  // namespace detail

/// Generates the train and test signals listed in `spec`, grouped by class
/// in listing order.
inline LabeledDataset generate_dataset(const DatasetSpec& spec, unsigned threads = default_threads()) {
  LabeledDataset ds;
  ds.train = detail::generate_split(spec.train, Split::Train, spec.master_seed, spec.signal, threads);
  ds.test = detail::generate_split(spec.test, Split::Test, spec.master_seed, spec.signal, threads);
  return ds;
}

// ---------------------------------------------------------------------------
// JSON

inline void to_json(nlohmann::json& j, const Window& w) { j = {{"start_s", w.start_s}, {"end_s", w.end_s}}; }
inline void from_json(const nlohmann::json& j, Window& w) {
  j.at("start_s").get_to(w.start_s);
  j.at("end_s").get_to(w.end_s);
}

inline void to_json(nlohmann::json& j, const EventParams& p) {
  j = nlohmann::json::object();
  if (p.depth) j["depth"] = *p.depth;
  if (p.window) j["window"] = *p.window;
  if (p.depth2) j["depth2"] = *p.depth2;
  if (p.window2) j["window2"] = *p.window2;
  if (p.transient)
    j["transient"] = {{"freq_hz", p.transient->freq_hz}, {"tau_ms", p.transient->tau_ms},
                      {"amplitude", p.transient->amplitude}};
  if (p.harmonics)
    j["harmonics"] = {{"h1", p.harmonics->h1}, {"h3", p.harmonics->h3}, {"h5", p.harmonics->h5},
                      {"h7", p.harmonics->h7}, {"h9", p.harmonics->h9}};
  if (p.flicker) j["flicker"] = {{"freq_hz", p.flicker->freq_hz}, {"depth", p.flicker->depth}};
  if (p.pulses) j["pulses"] = {{"depth", p.pulses->depth}, {"count", p.pulses->count}};
}

inline void from_json(const nlohmann::json& j, EventParams& p) {
  p = {};
  if (j.contains("depth")) p.depth = j.at("depth").get<double>();
  if (j.contains("window")) p.window = j.at("window").get<Window>();
  if (j.contains("depth2")) p.depth2 = j.at("depth2").get<double>();
  if (j.contains("window2")) p.window2 = j.at("window2").get<Window>();
  if (j.contains("transient")) {
    const auto& t = j.at("transient");
    p.transient = Transient{t.at("freq_hz").get<double>(), t.at("tau_ms").get<double>(),
                            t.value("amplitude", ranges::kTransientAmplitude)};
  }
  if (j.contains("harmonics")) {
    const auto& h = j.at("harmonics");
    p.harmonics = Harmonics{h.value("h1", 1.0), h.at("h3").get<double>(), h.at("h5").get<double>(),
                            h.at("h7").get<double>(), h.at("h9").get<double>()};
  }
  if (j.contains("flicker")) {
    const auto& f = j.at("flicker");
    p.flicker = Flicker{f.at("freq_hz").get<double>(), f.at("depth").get<double>()};
  }
  if (j.contains("pulses")) {
    const auto& s = j.at("pulses");
    p.pulses = PulseTrain{s.at("depth").get<double>(), s.at("count").get<int>()};
  }
}

}  // namespace pqoselm
