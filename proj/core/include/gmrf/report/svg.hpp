#pragma once

#include <string>
#include <vector>

#include "gmrf/cycle.hpp"

namespace gmrf::report {

/// Writes the seven cycle figures as self-contained SVG files into out_dir
/// and returns their paths:
///   beta.svg, entropy.svg, second_form_tq.svg, gaussian_curvature.svg
///   (one <circle class="event"> per sign change), mean_principal.svg,
///   hysteresis_k.svg and hysteresis_h.svg (exactly two <path> elements,
///   heating then cooling).
std::vector<std::string> emit_plots(const std::vector<CycleRecord>& records,
                                    const std::vector<SignChangeEvent>& events,
                                    const std::string& out_dir);

}  // namespace gmrf::report
