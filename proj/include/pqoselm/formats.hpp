#pragma once

// On-disk formats:
//   dataset CSV   label,seed,s0,...,s<n-1>      (+ sidecar JSON keyed by seed)
//   feature CSV   # <layout comment>
//                 label,f1,...,f66

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "error.hpp"
#include "features.hpp"
#include "io.hpp"
#include "siggen.hpp"

namespace pqoselm::formats {

inline std::string dataset_csv(const std::vector<Signal>& signals) {
  std::size_t n = signals.empty() ? static_cast<std::size_t>(SignalSpec{}.n_samples) : signals.front().samples.size();
  std::string out = "label,seed";
  for (std::size_t k = 0; k < n; ++k) out += ",s" + std::to_string(k);
  out += '\n';
  for (const auto& s : signals) {
    if (s.samples.size() != n) throw Error(ErrorKind::InvalidArgument, "signals differ in length");
    out += class_name(s.label);
    out += ',';
    out += std::to_string(s.seed);
    for (double v : s.samples) {
      out += ',';
      out += io::format_double(v);
    }
    out += '\n';
  }
  return out;
}

/// {"<seed>": {"label": "S1", "params": {...}}, ...}
inline nlohmann::json params_sidecar(const std::vector<Signal>& signals) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& s : signals) j[std::to_string(s.seed)] = {{"label", class_name(s.label)}, {"params", s.params}};
  return j;
}

struct DatasetRow {
  EventClass label = EventClass::S0;
  std::uint64_t seed = 0;
  std::vector<double> samples;
};

inline std::vector<DatasetRow> parse_dataset_csv(std::string_view text) {
  std::vector<DatasetRow> rows;
  std::size_t pos = 0;
  bool header = true;
  std::size_t width = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto cells = io::split(line);
    if (header) {
      if (cells.size() < 3 || cells[0] != "label" || cells[1] != "seed")
        throw Error(ErrorKind::Io, "dataset CSV must start with 'label,seed,s0,...'");
      width = cells.size();
      header = false;
      continue;
    }
    if (cells.size() != width) throw Error(ErrorKind::Io, "dataset CSV row has " + std::to_string(cells.size()) + " cells");
    DatasetRow r;
    r.label = parse_class(cells[0]);
    r.seed = std::stoull(std::string(cells[1]));
    for (std::size_t k = 2; k < cells.size(); ++k) r.samples.push_back(io::parse_double(cells[k]));
    rows.push_back(std::move(r));
  }
  if (header) throw Error(ErrorKind::Io, "dataset CSV is empty");
  return rows;
}

inline constexpr std::string_view kFeatureLayoutComment =
    "# f(6(i-1)+j) = level i, stat j; stats: EDR,STD,MEAN,KRT,SKW,ENTP";

inline std::string features_csv(const std::vector<FeatureVector>& rows) {
  std::string out(kFeatureLayoutComment);
  out += "\nlabel";
  for (std::size_t i = 0; i < kFeatureCount; ++i) out += "," + feature_name(i);
  out += '\n';
  for (const auto& fv : rows) {
    out += class_name(fv.label);
    for (double v : fv.values) {
      out += ',';
      out += io::format_double(v);
    }
    out += '\n';
  }
  return out;
}

inline std::vector<FeatureVector> parse_features_csv(std::string_view text) {
  std::vector<FeatureVector> rows;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto cells = io::split(line);
    if (cells.size() != kFeatureCount + 1)
      throw Error(ErrorKind::Io, "feature CSV rows need 67 cells, got " + std::to_string(cells.size()));
    if (header) {
      if (cells[0] != "label" || cells[1] != "f1") throw Error(ErrorKind::Io, "feature CSV header must be 'label,f1,...,f66'");
      header = false;
      continue;
    }
    FeatureVector fv;
    fv.label = parse_class(cells[0]);
    for (std::size_t i = 0; i < kFeatureCount; ++i) fv.values[i] = io::parse_double(cells[i + 1]);
    rows.push_back(fv);
  }
  if (header) throw Error(ErrorKind::Io, "feature CSV is empty");
  return rows;
}

}  // namespace pqoselm::formats
