#pragma once

#include <cstdint>
#include <string>

#include "gmrf/lattice.hpp"

namespace gmrf::report {

// Binary lattice snapshot: magic "GMRF", version byte, u32 side, then side^2
// little-endian IEEE-754 doubles in row-major order.
inline constexpr std::uint8_t kSnapshotVersion = 1;

void write_snapshot(const Lattice& lattice, const std::string& path);

/// Throws gmrf::Error on a missing file, bad magic, unsupported version or a
/// truncated payload.
Lattice read_snapshot(const std::string& path);

}  // namespace gmrf::report
