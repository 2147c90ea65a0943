#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gmrf/cycle.hpp"

namespace gmrf::report {

inline constexpr std::string_view kCsvHeader =
    "iteration,beta,entropy,A,E,F,I,L,P,Q,T,K,H,k1,k2,k3,phase";

// Shortest representation with at most 17 significant digits; parses back
// to the identical double.
std::string format_real(double value);

/// One row per record; reals printed with 17 significant digits.
void emit_csv(const std::vector<CycleRecord>& records, const std::string& path);
std::string to_csv(const std::vector<CycleRecord>& records);

/// Parses a file written by emit_csv. Fields not stored in the CSV
/// (the estimated mu and sigma^2) are left at their defaults.
std::vector<CycleRecord> read_csv(const std::string& path);

}  // namespace gmrf::report
