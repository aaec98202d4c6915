#pragma once

#include <cstdint>

#include "weylscope/budget.hpp"
#include "weylscope/complex_sum.hpp"

namespace weylscope {

/// Complete quadratic sum sum_{n=0..p-1} e((a n + b n^2)/p) for an odd prime p
/// and b not divisible by p. Its magnitude is sqrt(p).
ComplexSum eval_complete_gauss(std::int64_t a, std::int64_t b, std::uint64_t p,
                               const Budget& budget = Budget());

struct IncompleteGaussMax {
    double max_abs = 0;
    std::uint64_t best_m = 0; // window (m, m+n]
    std::uint64_t best_n = 0;
    double bound = 0; // c * sqrt(p) * log p
    double c = 0;
    bool within_bound = false;
};

/// max over probed (M, N) in [1,p]^2 of |sum_{M < n <= M+N} e(a n^2 / p)|.
/// probe = 0 scans every window; probe = g restricts M, N to a g x g grid.
IncompleteGaussMax max_incomplete_gauss(std::int64_t a, std::uint64_t p, std::uint32_t probe = 0,
                                        double c = 4.0, const Budget& budget = Budget());

} // namespace weylscope
