#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "weylscope/budget.hpp"
#include "weylscope/complex_sum.hpp"
#include "weylscope/sequence_spec.hpp"

namespace weylscope {

/// Scalar phase multiplier x in [0,1), optionally an exact fraction a/q.
struct ScalarPhase {
    double value = 0;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> rational; // (a, q), a < q

    static ScalarPhase of(double x);
    static ScalarPhase fraction(std::int64_t a, std::uint64_t q);
};

/// V_f(x; M, N) = sum_{n=1..N} e(x f(M+n)).
ComplexSum eval_sequence_sum(const SequenceSpec& f, const ScalarPhase& x, std::uint64_t m,
                             std::uint64_t n, const Budget& budget = Budget());

/// Running sums at every length 1..n (one pass): entry M-1 is V_f(x; M).
std::vector<ComplexSum> eval_sequence_prefixes(const SequenceSpec& f, const ScalarPhase& x,
                                               std::uint64_t n, const Budget& budget = Budget());

/// Completion aggregate
///   W_f(x; N) = sum_{h=-N..N} |sum_{n=1..N} e(h n/N + x f(n))| / (|h|+1),
/// which dominates every partial sum V_f(x; M), M <= N, up to a constant.
/// Cost is (2N+1) * N terms; callers must budget.
double eval_completion_sum(const SequenceSpec& f, const ScalarPhase& x, std::uint64_t n,
                           const Budget& budget = Budget());

/// W_f over an explicit set of x values, reusing the twist table.
std::vector<double> eval_completion_sum_many(const SequenceSpec& f,
                                             const std::vector<ScalarPhase>& xs, std::uint64_t n,
                                             const Budget& budget = Budget());

} // namespace weylscope
