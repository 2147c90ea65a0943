#pragma once

#include "gmrf/lattice.hpp"

namespace gmrf::detail {

// Lattice mean, reduced per row then pairwise across rows.
double lattice_mean(const Lattice& lattice);

// (1/n^2) sum_i (x_i - mean)(x_{i + (drow, dcol)} - mean) with toroidal wrap.
double lag_covariance(const Lattice& lattice, double mean, int drow, int dcol);

}  // namespace gmrf::detail
