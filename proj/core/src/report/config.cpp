#include "gmrf/report/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

#include "gmrf/report/csv.hpp"

namespace gmrf::report {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void malformed(std::string_view key, std::string_view value, int line) {
  throw ConfigError("malformed value for '" + std::string(key) + "' on line " +
                    std::to_string(line) + ": '" + std::string(value) + "'");
}

template <typename T>
T parse_number(std::string_view key, std::string_view value, int line) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) malformed(key, value, line);
  return out;
}

}  // namespace

std::string to_string(SamplerMode mode) {
  return mode == SamplerMode::gibbs ? "gibbs" : "random_walk_mh";
}

std::string to_string(SweepOrder order) {
  return order == SweepOrder::raster ? "raster" : "checkerboard";
}

std::string to_string(SamplerFeedback feedback) {
  switch (feedback) {
    case SamplerFeedback::none: return "none";
    case SamplerFeedback::mean: return "mean";
    case SamplerFeedback::mean_and_variance: return "mean_and_variance";
  }
  return "mean";
}

std::string to_string(Phase phase) {
  return phase == Phase::heating ? "heating" : "cooling";
}

std::string to_string(SignDirection direction) {
  return direction == SignDirection::negative_to_positive ? "negative_to_positive"
                                                          : "positive_to_negative";
}

CycleConfig parse_config_text(const std::string& text) {
  CycleConfig config;
  std::set<std::string, std::less<>> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view content = raw;
    if (const auto hash = content.find('#'); hash != std::string_view::npos) {
      content = content.substr(0, hash);
    }
    content = trim(content);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line) + " is not 'key = value'");
    }
    const std::string_view key = trim(content.substr(0, eq));
    const std::string_view value = trim(content.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError("duplicate key '" + std::string(key) + "' on line " +
                        std::to_string(line));
    }

    if (key == "side") {
      config.side = parse_number<int>(key, value, line);
    } else if (key == "delta_beta") {
      config.delta_beta = parse_number<double>(key, value, line);
    } else if (key == "half_cycle_steps") {
      config.half_cycle_steps = parse_number<int>(key, value, line);
    } else if (key == "sweeps_per_step") {
      config.sweeps_per_step = parse_number<int>(key, value, line);
    } else if (key == "seed") {
      config.seed = parse_number<std::uint64_t>(key, value, line);
    } else if (key == "init_mu") {
      config.init_mu = parse_number<double>(key, value, line);
    } else if (key == "init_sigma_sq") {
      config.init_sigma_sq = parse_number<double>(key, value, line);
    } else if (key == "ridge") {
      config.ridge = parse_number<double>(key, value, line);
    } else if (key == "sampler.mode") {
      if (value == "gibbs") {
        config.sampler.mode = SamplerMode::gibbs;
      } else if (value == "random_walk_mh") {
        config.sampler.mode = SamplerMode::random_walk_mh;
      } else {
        malformed(key, value, line);
      }
    } else if (key == "sampler.proposal_std") {
      config.sampler.proposal_std = parse_number<double>(key, value, line);
    } else if (key == "sampler.sweep_order") {
      if (value == "raster") {
        config.sampler.sweep_order = SweepOrder::raster;
      } else if (value == "checkerboard") {
        config.sampler.sweep_order = SweepOrder::checkerboard;
      } else {
        malformed(key, value, line);
      }
    } else if (key == "sampler.support_sds") {
      config.sampler.support_sds = parse_number<double>(key, value, line);
    } else if (key == "sampler.feedback") {
      if (value == "none") {
        config.feedback = SamplerFeedback::none;
      } else if (value == "mean") {
        config.feedback = SamplerFeedback::mean;
      } else if (value == "mean_and_variance") {
        config.feedback = SamplerFeedback::mean_and_variance;
      } else {
        malformed(key, value, line);
      }
    } else {
      throw ConfigError("unknown key '" + std::string(key) + "' on line " +
                        std::to_string(line));
    }
  }
  try {
    validate(config);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return config;
}

CycleConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

std::string format_config(const CycleConfig& config) {
  std::ostringstream out;
  out << "side = " << config.side << '\n'
      << "delta_beta = " << format_real(config.delta_beta) << '\n'
      << "half_cycle_steps = " << config.half_cycle_steps << '\n'
      << "sweeps_per_step = " << config.sweeps_per_step << '\n'
      << "seed = " << config.seed << '\n'
      << "init_mu = " << format_real(config.init_mu) << '\n'
      << "init_sigma_sq = " << format_real(config.init_sigma_sq) << '\n'
      << "ridge = " << format_real(config.ridge) << '\n'
      << "sampler.mode = " << to_string(config.sampler.mode) << '\n';
  if (config.sampler.proposal_std) {
    out << "sampler.proposal_std = " << format_real(*config.sampler.proposal_std)
        << '\n';
  }
  out << "sampler.sweep_order = " << to_string(config.sampler.sweep_order) << '\n'
      << "sampler.support_sds = " << format_real(config.sampler.support_sds) << '\n'
      << "sampler.feedback = " << to_string(config.feedback) << '\n';
  return out.str();
}

}  // namespace gmrf::report
