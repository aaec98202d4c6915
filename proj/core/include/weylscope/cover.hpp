#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "weylscope/budget.hpp"
#include "weylscope/sequence_spec.hpp"
#include "weylscope/sequence_sums.hpp"

namespace weylscope {

enum class CoverMode { interval_cover, cube_cover, box_count };

const char* cover_mode_name(CoverMode m);

struct CoverWitness {
    std::vector<double> x;
    double measured = 0;   // |sum| or W at the witness point
    std::uint64_t n = 0;   // sum length that met the threshold
    std::uint64_t box = 0; // box index at this report's scale
};

struct CoverReport {
    int scale_index = 0;
    double zeta = 1; // box side length
    std::uint64_t hit_count = 0;
    int ambient_dim = 1;
    double alpha = 0;
    std::uint64_t n_max = 0;
    CoverMode mode = CoverMode::box_count;
    std::vector<CoverWitness> witnesses;
    // recorded constants of the budget comparison, when one applies
    double budget_bound = 0;
    bool within_budget = true;
    double c = 0;
    double eps = 0;
};

/// Interval cover of {x : W_f(x; N) >= N^alpha} at the continuity scale
/// zeta = 1/ceil(N^(tau+1+eps-alpha)). Probes each interval at its endpoints
/// and midpoint; a hit interval carries points with W >= N^alpha/2 throughout.
/// When a moment bound pair (s, t) is supplied the hit count is compared
/// against C N^(t - s alpha + tau + 1 - alpha + 2 eps).
CoverReport cover_level_set_1d(const SequenceSpec& f, double alpha, std::uint64_t n, double eps,
                               std::optional<std::pair<double, double>> moment_st = {},
                               double c = 4.0, int workers = 0, const Budget& budget = Budget());

/// Finite-N surrogate of the exceptional set: a grid point is exceptional iff
/// max over N in n_list of |sum(x; N)| / N^alpha >= 1 (W_f in completion mode).
struct LevelSetSpec {
    enum class Target { weyl, sequence };
    Target target = Target::weyl;
    int weyl_d = 2;
    std::optional<SequenceSpec> f;
    bool completion_mode = false;
    double alpha = 0.75;
    std::vector<std::uint64_t> n_list;
};

/// Counts hit dyadic boxes of side 2^-k for every k in `scales`
/// (default 1..grid_log2) over a 2^grid_log2-per-axis probe grid.
std::vector<CoverReport> box_count_exceptional(const LevelSetSpec& spec, int grid_log2,
                                               std::vector<int> scales = {}, int workers = 0,
                                               const Budget& budget = Budget());

/// Cube cover of {x in T_d : |V_{S,h}(x; N)| >= c_level * N} with cube side
/// 1/floor(N^tau / eps); the hit count is compared against C N^(d tau - 1).
CoverReport cube_cover_matrix(const SequenceSpec& family, const std::vector<std::int64_t>& h,
                              double c_level, std::uint64_t n, double eps, double c_bound = 8.0,
                              int workers = 0, const Budget& budget = Budget());

} // namespace weylscope
