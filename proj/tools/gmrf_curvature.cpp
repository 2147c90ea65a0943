#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gmrf/cycle.hpp"
#include "gmrf/error.hpp"
#include "gmrf/oracle.hpp"
#include "gmrf/report/config.hpp"
#include "gmrf/report/csv.hpp"
#include "gmrf/report/snapshot.hpp"
#include "gmrf/report/summary.hpp"
#include "gmrf/report/svg.hpp"
#include "gmrf/version.hpp"

namespace fs = std::filesystem;

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int run_command(const std::string& config_path, const std::string& out_dir, bool snapshots) {
  const gmrf::CycleConfig config = config_path.empty()
                                       ? gmrf::CycleConfig{}
                                       : gmrf::report::parse_config(config_path);
  gmrf::validate(config);
  fs::create_directories(out_dir);
  const fs::path out(out_dir);

  gmrf::report::RunManifest manifest{config, utc_now(), gmrf::kVersion, {}};
  const auto start = std::chrono::steady_clock::now();

  int previous_sign = 0;
  gmrf::CycleObserver observer;
  if (snapshots) {
    fs::create_directories(out / "snapshots");
    observer = [&](const gmrf::CycleRecord& r, const gmrf::Lattice& lattice) {
      const int sign = (r.gaussian_k > 0) - (r.gaussian_k < 0);
      const bool changed = sign != 0 && previous_sign != 0 && sign != previous_sign;
      if (sign != 0) previous_sign = sign;
      const bool last = r.iteration == config.iterations() - 1;
      if (r.iteration == 0 || changed || last ||
          r.iteration == config.half_cycle_steps) {
        char name[48];
        std::snprintf(name, sizeof name, "iter_%05d.bin", r.iteration);
        const std::string path = (out / "snapshots" / name).string();
        gmrf::report::write_snapshot(lattice, path);
        manifest.output_paths.push_back(path);
      }
    };
  }

  const auto records = gmrf::run_cycle(config, observer);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string csv = (out / "cycle.csv").string();
  gmrf::report::emit_csv(records, csv);
  manifest.output_paths.push_back(csv);

  const auto summary = gmrf::report::summarize(config, records, seconds);
  const std::string summary_path = (out / "summary.json").string();
  gmrf::report::write_text(summary_path, gmrf::report::summary_json(summary));
  manifest.output_paths.push_back(summary_path);

  for (auto& p : gmrf::report::emit_plots(records, summary.events, out.string())) {
    manifest.output_paths.push_back(std::move(p));
  }
  gmrf::report::write_text((out / "manifest.json").string(),
                           gmrf::report::manifest_json(manifest));

  std::cout << records.size() << " iterations in " << seconds << " s, "
            << summary.events.size() << " sign change(s)";
  for (const auto& e : summary.events) {
    std::cout << "; iteration " << e.iteration << " beta " << e.beta;
  }
  std::cout << "\nresults in " << out.string() << "\n";
  return 0;
}

int forms_command(const std::string& snapshot, double beta, double ridge) {
  const gmrf::Lattice lattice = gmrf::report::read_snapshot(snapshot);
  const gmrf::CycleRecord record = gmrf::analyze_lattice(lattice, beta, ridge);
  std::cout << gmrf::report::forms_json(record);
  return 0;
}

int verify_command(std::size_t draws, std::uint64_t seed, int models) {
  const auto checks = gmrf::oracle::run_oracle_suite(draws, seed, models);
  std::size_t failed = 0;
  for (const auto& c : checks) {
    std::printf("%-4s  %-44s  %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
    if (!c.passed) ++failed;
  }
  std::printf("%zu/%zu checks passed\n", checks.size() - failed, checks.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature analysis of pairwise isotropic Gaussian-Markov random fields"};
  app.set_version_flag("--version", std::string(gmrf::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "results";
  bool snapshots = false;
  auto* run = app.add_subcommand("run", "Run a full beta cycle and write CSV, JSON and SVG output");
  run->add_option("--config", config_path, "key = value config file (defaults if omitted)")
      ->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_flag("--snapshots", snapshots,
                "Write lattice snapshots at sign changes, beta_max and both ends");

  std::string snapshot;
  double beta = 0.0;
  double ridge = gmrf::CycleConfig{}.ridge;
  auto* forms = app.add_subcommand("forms", "Print the fundamental forms of a lattice snapshot");
  forms->add_option("--snapshot", snapshot, "Snapshot file")->required();
  forms->add_option("--beta", beta, "Inverse temperature to evaluate at")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  forms->add_option("--ridge", ridge, "Relative ridge for a singular first form")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  std::size_t draws = 100000;
  std::uint64_t seed = 1;
  int models = 5;
  auto* verify = app.add_subcommand("verify", "Run the Monte Carlo and brute-force oracle checks");
  verify->add_option("--draws", draws, "Monte Carlo draws per model (>= 100000)")
      ->capture_default_str();
  verify->add_option("--seed", seed, "Oracle seed")->capture_default_str();
  verify->add_option("--models", models, "Synthetic patch models")->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*run) return run_command(config_path, out_dir, snapshots);
    if (*forms) return forms_command(snapshot, beta, ridge);
    if (*verify) return verify_command(draws, seed, models);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
