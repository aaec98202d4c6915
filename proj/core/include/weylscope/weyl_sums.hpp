#pragma once

#include <cstdint>
#include <vector>

#include "weylscope/budget.hpp"
#include "weylscope/complex_sum.hpp"
#include "weylscope/phase_vector.hpp"

namespace weylscope {

/// Phase of x_1*k + x_2*k^2 + ... + x_d*k^d mod 1, exact in turns.
phase64 poly_phase_at(const std::vector<phase64>& turns, std::uint64_t k);

/// Walks the polynomial phase over consecutive integers with a forward-
/// difference table of degree+1 accumulators. Wraparound keeps every entry
/// reduced mod 1, so the walk is exact for any start point and length.
class PolyPhaseStepper {
  public:
    PolyPhaseStepper(const std::vector<phase64>& turns, std::uint64_t first_n);

    phase64 current() const { return diffs_[0]; }

    void advance() {
        for (size_t j = 0; j + 1 < diffs_.size(); ++j) diffs_[j] += diffs_[j + 1];
    }

  private:
    std::vector<phase64> diffs_;
};

/// sum_{n=1..N} e(x_1(M+n) + ... + x_d(M+n)^d). M=0 gives the plain length-N sum.
ComplexSum eval_weyl_sum(const PhaseVector& x, std::uint64_t m, std::uint64_t n,
                         const Budget& budget = Budget());

/// Running sums at each length in `n_list` (sorted ascending), one pass.
std::vector<ComplexSum> eval_weyl_prefixes(const PhaseVector& x, std::uint64_t m,
                                           const std::vector<std::uint64_t>& n_list,
                                           const Budget& budget = Budget());

/// Absorbs the range shift M into the coefficients:
/// y_k = sum_{j=k..d} binom(j,k) M^(j-k) x_j mod 1, so that
/// |eval_weyl_sum(x, M, N)| = |eval_weyl_sum(y, 0, N)|.
PhaseVector shift_coefficients(const PhaseVector& x, std::uint64_t m);

} // namespace weylscope
