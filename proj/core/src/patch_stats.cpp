#include "gmrf/patch_stats.hpp"

#include <array>
#include <vector>

#include "gmrf/error.hpp"
#include "gmrf/parallel.hpp"
#include "moments.hpp"

namespace gmrf {
namespace {

// Lags (drow, dcol) with drow > 0, or drow == 0 and dcol >= 0, within the
// 5x5 displacement window of two 3x3 patch positions. The rest follow from
// C(-d) == C(d).
constexpr int kLagRadius = 2;
constexpr int kHalfLags = 13;

constexpr std::array<Offset, kHalfLags> half_lags() {
  std::array<Offset, kHalfLags> lags{};
  int k = 0;
  for (int dr = 0; dr <= kLagRadius; ++dr) {
    for (int dc = -kLagRadius; dc <= kLagRadius; ++dc) {
      if (dr == 0 && dc < 0) continue;
      lags[k++] = {dr, dc};
    }
  }
  return lags;
}

// Per-row partial sums of centered lag products, then a pairwise reduction
// across rows.
template <std::size_t N>
std::array<double, N> lag_covariances(const Lattice& lattice, double mean,
                                      const std::array<Offset, N>& lags) {
  const int side = lattice.side();
  const auto rows = static_cast<std::size_t>(side);
  std::vector<std::array<double, N>> partial(rows);
  parallel_for(rows, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const int row = static_cast<int>(r);
      std::array<double, N> acc{};
      for (int col = 0; col < side; ++col) {
        const double centered = lattice(row, col) - mean;
        for (std::size_t k = 0; k < N; ++k) {
          acc[k] += centered *
                    (lattice.wrapped(row + lags[k].drow, col + lags[k].dcol) - mean);
        }
      }
      partial[r] = acc;
    }
  });
  const double n = static_cast<double>(lattice.size());
  std::array<double, N> out{};
  std::vector<double> column(rows);
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t r = 0; r < rows; ++r) column[r] = partial[r][k];
    out[k] = pairwise_sum(column) / n;
  }
  return out;
}

}  // namespace

namespace detail {

double lattice_mean(const Lattice& lattice) {
  const int side = lattice.side();
  std::vector<double> row_sums(static_cast<std::size_t>(side));
  parallel_for(row_sums.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      row_sums[r] = pairwise_sum(lattice.values().subspan(
          r * static_cast<std::size_t>(side), static_cast<std::size_t>(side)));
    }
  });
  return pairwise_sum(row_sums) / static_cast<double>(lattice.size());
}

double lag_covariance(const Lattice& lattice, double mean, int drow, int dcol) {
  return lag_covariances(lattice, mean, std::array<Offset, 1>{{{drow, dcol}}})[0];
}

}  // namespace detail

PatchCovariance PatchCovariance::from_matrix(const Matrix9& sigma_p) {
  PatchCovariance out;
  out.sigma_p = sigma_p;
  out.sigma_sq_center = sigma_p(kPatchCenter, kPatchCenter);
  for (int a = 0, j = 0; a < 9; ++a) {
    if (a == kPatchCenter) continue;
    out.rho(j) = sigma_p(kPatchCenter, a);
    for (int b = 0, k = 0; b < 9; ++b) {
      if (b == kPatchCenter) continue;
      out.sigma_minus(j, k) = sigma_p(a, b);
      ++k;
    }
    ++j;
  }
  return out;
}

bool PatchCovariance::degenerate() const { return (sigma_p.array() == 0.0).all(); }

Vector9 patch_vectorize(const Lattice& lattice, int row, int col) {
  if (lattice.neighborhood().order() != 2) {
    throw InvalidArgument("patch vectorization needs a second-order neighborhood");
  }
  Vector9 p;
  for (int dr = -1, k = 0; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc, ++k) p(k) = lattice.wrapped(row + dr, col + dc);
  }
  return p;
}

PatchCovariance patch_covariance(const Lattice& lattice) {
  if (lattice.side() < Lattice::kMinSide) {
    throw InvalidArgument("patch covariance needs side >= 5");
  }
  static constexpr auto lags = half_lags();
  const double mean = detail::lattice_mean(lattice);
  const auto values = lag_covariances(lattice, mean, lags);

  auto lookup = [&](int dr, int dc) {
    if (dr < 0 || (dr == 0 && dc < 0)) {
      dr = -dr;
      dc = -dc;
    }
    for (int k = 0; k < kHalfLags; ++k) {
      if (lags[k].drow == dr && lags[k].dcol == dc) return values[k];
    }
    throw Error("lag outside the patch window");
  };

  Matrix9 sigma_p;
  for (int a = 0; a < 9; ++a) {
    for (int b = 0; b < 9; ++b) {
      sigma_p(a, b) = lookup(b / 3 - a / 3, b % 3 - a % 3);
    }
  }
  return PatchCovariance::from_matrix(sigma_p);
}

}  // namespace gmrf
