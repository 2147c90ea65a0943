#include "gmrf/report/summary.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "gmrf/error.hpp"
#include "gmrf/report/config.hpp"

namespace gmrf::report {
namespace {

using nlohmann::json;

json number_or_inf(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

json config_json(const CycleConfig& c) {
  json sampler = {{"mode", to_string(c.sampler.mode)},
                  {"sweep_order", to_string(c.sampler.sweep_order)},
                  {"support_sds", number_or_inf(c.sampler.support_sds)},
                  {"feedback", to_string(c.feedback)}};
  sampler["proposal_std"] =
      c.sampler.proposal_std ? json(*c.sampler.proposal_std) : json(nullptr);
  return {{"side", c.side},
          {"delta_beta", c.delta_beta},
          {"half_cycle_steps", c.half_cycle_steps},
          {"beta_max", c.beta_max()},
          {"sweeps_per_step", c.sweeps_per_step},
          {"seed", c.seed},
          {"init_mu", c.init_mu},
          {"init_sigma_sq", c.init_sigma_sq},
          {"ridge", c.ridge},
          {"sampler", sampler}};
}

json matrix_json(const Eigen::Matrix3d& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
  return rows;
}

}  // namespace

RunSummary summarize(const CycleConfig& config,
                     const std::vector<CycleRecord>& records,
                     double runtime_seconds) {
  RunSummary s;
  s.config = config;
  s.events = detect_sign_changes(records);
  if (!records.empty()) {
    const auto [lo, hi] = std::minmax_element(
        records.begin(), records.end(),
        [](const CycleRecord& a, const CycleRecord& b) { return a.entropy < b.entropy; });
    s.min_entropy = lo->entropy;
    s.max_entropy = hi->entropy;
  }
  s.hysteresis_area_k = hysteresis_path(records, CurvatureQuantity::gaussian_k).signed_area;
  s.hysteresis_area_h = hysteresis_path(records, CurvatureQuantity::mean_h).signed_area;
  s.runtime_seconds = runtime_seconds;
  return s;
}

std::string summary_json(const RunSummary& s) {
  json events = json::array();
  for (const SignChangeEvent& e : s.events) {
    events.push_back({{"iteration", e.iteration},
                      {"beta", e.beta},
                      {"direction", to_string(e.direction)}});
  }
  const json out = {{"config", config_json(s.config)},
                    {"events", events},
                    {"min_entropy", s.min_entropy},
                    {"max_entropy", s.max_entropy},
                    {"hysteresis_area_k", s.hysteresis_area_k},
                    {"hysteresis_area_h", s.hysteresis_area_h},
                    {"runtime_seconds", s.runtime_seconds}};
  return out.dump(2) + "\n";
}

std::string manifest_json(const RunManifest& m) {
  const json out = {{"config", config_json(m.config)},
                    {"started_at", m.started_at},
                    {"tool_version", m.tool_version},
                    {"output_paths", m.output_paths}};
  return out.dump(2) + "\n";
}

std::string forms_json(const CycleRecord& record) {
  const FormComponents& f = record.forms;
  Eigen::Matrix3d first = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d second = Eigen::Matrix3d::Zero();
  first(0, 0) = f.A;
  first(1, 1) = f.E;
  first(1, 2) = first(2, 1) = f.F;
  first(2, 2) = f.I;
  second(0, 0) = f.L;
  second(1, 1) = f.P;
  second(1, 2) = second(2, 1) = f.Q;
  second(2, 2) = f.T;
  const json out = {
      {"estimate",
       {{"mu", record.estimate.mu},
        {"sigma_sq", record.estimate.sigma_sq},
        {"beta", record.estimate.beta}}},
      {"first_form", matrix_json(first)},
      {"second_form", matrix_json(second)},
      {"gaussian_curvature", record.gaussian_k},
      {"mean_curvature", record.mean_h},
      {"principal_curvatures", record.principal},
      {"entropy", record.entropy}};
  return out.dump(2) + "\n";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw Error("write failed for '" + path + "'");
}

}  // namespace gmrf::report
