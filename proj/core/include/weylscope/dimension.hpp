#pragma once

#include <optional>
#include <vector>

#include "weylscope/cover.hpp"

namespace weylscope {

struct DimensionEstimate {
    double slope = 0;
    double stderr_ = 0;
    std::vector<double> scales_used; // log2(1/zeta) of every regressed scale
    std::optional<double> theoretical;
};

/// Least-squares slope of log(hit_count) against log(1/zeta). Needs >= 3
/// scales with positive hit counts; when >= 5 are available the two coarsest
/// are discarded (transient constants dominate there).
DimensionEstimate estimate_dimension(const std::vector<CoverReport>& reports,
                                     std::optional<double> theoretical = {});

} // namespace weylscope
