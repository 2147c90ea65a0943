#pragma once

#include <string>
#include <vector>

#include "gmrf/cycle.hpp"

namespace gmrf::report {

struct RunSummary {
  CycleConfig config;
  std::vector<SignChangeEvent> events;
  double min_entropy = 0.0;
  double max_entropy = 0.0;
  double hysteresis_area_k = 0.0;
  double hysteresis_area_h = 0.0;
  double runtime_seconds = 0.0;
};

RunSummary summarize(const CycleConfig& config,
                     const std::vector<CycleRecord>& records,
                     double runtime_seconds);

/// {config, events[], min_entropy, max_entropy, hysteresis_area_k,
///  hysteresis_area_h, runtime_seconds}
std::string summary_json(const RunSummary& summary);

struct RunManifest {
  CycleConfig config;
  std::string started_at;  // ISO-8601 UTC
  std::string tool_version;
  std::vector<std::string> output_paths;
};

std::string manifest_json(const RunManifest& manifest);

/// JSON object for `forms`: estimated parameters, both forms, curvatures
/// and entropy of one lattice state.
std::string forms_json(const CycleRecord& record);

void write_text(const std::string& path, const std::string& text);

}  // namespace gmrf::report
