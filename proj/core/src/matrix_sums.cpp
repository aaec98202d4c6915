#include "weylscope/matrix_sums.hpp"

#include <cfloat>
#include <limits>

#include "weylscope/errors.hpp"
#include "weylscope/phase.hpp"

namespace weylscope {

namespace {

void check_args(const SequenceSpec& family, const std::vector<std::int64_t>& h, std::uint64_t n) {
    if (family.kind() != SeqKind::matrix_family)
        throw invalid_input("matrix sum needs a matrix-family sequence");
    int d = family.matrix_dim();
    if (static_cast<int>(h.size()) != d) throw invalid_input("h must have dimension d");
    bool all_zero = true;
    for (auto v : h)
        if (v != 0) all_zero = false;
    if (all_zero) throw invalid_input("h must be nonzero");
    if (n == 0 || n > family.max_n()) throw invalid_input("family provides A_1..A_N only");
}

} // namespace

ComplexSum eval_matrix_sum(const SequenceSpec& family, const std::vector<std::int64_t>& h,
                           const PhaseVector& x, std::uint64_t n, const Budget& budget) {
    check_args(family, h, n);
    int d = family.matrix_dim();
    if (x.degree() != d) throw invalid_input("x must have dimension d");
    budget.charge(n);

    const auto& mats = family.matrices();
    CompensatedSum acc;
    for (std::uint64_t k = 0; k < n; ++k) {
        const IntMatrix& a = mats[k];
        phase64 ph = 0;
        for (int r = 0; r < d; ++r) {
            // w_r = (A_k h)_r; wraparound is exact mod 1 in turns
            std::uint64_t w = 0;
            for (int c = 0; c < d; ++c)
                w += static_cast<std::uint64_t>(a.at(r, c)) * static_cast<std::uint64_t>(h[c]);
            ph += x.turns(r + 1) * w;
        }
        acc.add(unit_circle(ph));
    }
    auto v = acc.value();
    return {v.real(), v.imag(), n, 4.0 * DBL_EPSILON * static_cast<double>(n)};
}

std::vector<std::vector<std::int64_t>> matrix_frequencies(const SequenceSpec& family,
                                                          const std::vector<std::int64_t>& h,
                                                          std::uint64_t n) {
    check_args(family, h, n);
    int d = family.matrix_dim();
    const auto& mats = family.matrices();
    std::vector<std::vector<std::int64_t>> out(n, std::vector<std::int64_t>(d));
    for (std::uint64_t k = 0; k < n; ++k) {
        for (int r = 0; r < d; ++r) {
            __int128 w = 0;
            for (int c = 0; c < d; ++c)
                w += static_cast<__int128>(mats[k].at(r, c)) * h[c];
            if (w > std::numeric_limits<std::int64_t>::max() ||
                w < std::numeric_limits<std::int64_t>::min())
                throw invalid_input("frequency vector overflows 64-bit range");
            out[k][r] = static_cast<std::int64_t>(w);
        }
    }
    return out;
}

} // namespace weylscope
