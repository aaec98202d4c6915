#pragma once

#include <cstdint>
#include <vector>

#include "weylscope/budget.hpp"
#include "weylscope/complex_sum.hpp"
#include "weylscope/phase_vector.hpp"
#include "weylscope/sequence_spec.hpp"

namespace weylscope {

/// V_{S,h}(x; N) = sum_{n=1..N} e(<x A_n, h>) for a matrix family S = (A_n).
ComplexSum eval_matrix_sum(const SequenceSpec& family, const std::vector<std::int64_t>& h,
                           const PhaseVector& x, std::uint64_t n, const Budget& budget = Budget());

/// The frequency vectors A_n h for n = 1..N (exact, overflow-checked).
std::vector<std::vector<std::int64_t>> matrix_frequencies(const SequenceSpec& family,
                                                          const std::vector<std::int64_t>& h,
                                                          std::uint64_t n);

} // namespace weylscope
