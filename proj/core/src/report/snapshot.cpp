#include "gmrf/report/snapshot.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <iterator>
#include <vector>

#include "gmrf/error.hpp"

namespace gmrf::report {
namespace {

constexpr std::array<char, 4> kMagic{'G', 'M', 'R', 'F'};
constexpr std::size_t kHeaderBytes = 4 + 1 + 4;

template <typename T>
void put_le(std::vector<unsigned char>& out, T value) {
  for (std::size_t k = 0; k < sizeof(T); ++k) {
    out.push_back(static_cast<unsigned char>(value >> (8 * k)));
  }
}

template <typename T>
T get_le(const unsigned char* p) {
  T value = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) {
    value |= static_cast<T>(p[k]) << (8 * k);
  }
  return value;
}

}  // namespace

void write_snapshot(const Lattice& lattice, const std::string& path) {
  std::vector<unsigned char> bytes(kMagic.begin(), kMagic.end());
  bytes.push_back(kSnapshotVersion);
  put_le(bytes, static_cast<std::uint32_t>(lattice.side()));
  for (double v : lattice.values()) put_le(bytes, std::bit_cast<std::uint64_t>(v));

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out.flush()) throw Error("write failed for '" + path + "'");
}

Lattice read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("snapshot file not found: '" + path + "'");
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  if (bytes.size() < kHeaderBytes ||
      !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw Error("'" + path + "' is not a lattice snapshot");
  }
  if (bytes[4] != kSnapshotVersion) {
    throw Error("'" + path + "' has unsupported snapshot version " +
                std::to_string(bytes[4]));
  }
  const std::uint32_t side = get_le<std::uint32_t>(bytes.data() + 5);
  const std::size_t count = static_cast<std::size_t>(side) * side;
  if (bytes.size() != kHeaderBytes + 8 * count) {
    throw Error("'" + path + "' payload size does not match side " +
                std::to_string(side));
  }
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) {
    values[k] = std::bit_cast<double>(
        get_le<std::uint64_t>(bytes.data() + kHeaderBytes + 8 * k));
  }
  try {
    return Lattice(static_cast<int>(side), std::move(values));
  } catch (const InvalidArgument& e) {
    throw Error("'" + path + "': " + e.what());
  }
}

}  // namespace gmrf::report
