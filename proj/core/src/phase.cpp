#include "weylscope/phase.hpp"

#include <cmath>

#include "weylscope/errors.hpp"

namespace weylscope {

phase64 phase_from_unit(double x) {
    if (!(x >= 0.0 && x < 1.0)) throw invalid_input("phase must lie in [0,1)");
    if (x == 0.0) return 0;
    int e2 = 0;
    double fr = std::frexp(x, &e2); // x = fr * 2^e2, fr in [0.5, 1)
    auto m = static_cast<std::uint64_t>(std::ldexp(fr, 53)); // exact 53-bit integer
    int shift = e2 + 11;                                     // 64 - (53 - e2)
    if (shift >= 0) return m << shift;
    unsigned s = static_cast<unsigned>(-shift);
    if (s >= 64) return 0;
    return (m + (1ull << (s - 1))) >> s; // round to nearest
}

} // namespace weylscope
