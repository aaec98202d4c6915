#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace weylscope {

/// Result of an exponential-sum evaluation together with the accumulated
/// floating-point error bound. Invariant: |value| <= n_terms + phase_error_bound.
struct ComplexSum {
    double re = 0;
    double im = 0;
    std::uint64_t n_terms = 0;
    double phase_error_bound = 0;

    std::complex<double> value() const { return {re, im}; }
    double abs() const { return std::hypot(re, im); }
};

} // namespace weylscope
