#include "weylscope/gauss_sums.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "weylscope/errors.hpp"
#include "weylscope/numtheory.hpp"
#include "weylscope/phase.hpp"
#include "weylscope/phase_vector.hpp"
#include "weylscope/weyl_sums.hpp"

namespace weylscope {

ComplexSum eval_complete_gauss(std::int64_t a, std::int64_t b, std::uint64_t p,
                               const Budget& budget) {
    if (p < 3 || p % 2 == 0 || !is_prime(p)) throw invalid_input("p must be an odd prime");
    if (b % static_cast<std::int64_t>(p) == 0)
        throw invalid_input("b must be nonzero mod p (the magnitude identity fails otherwise)");
    // n = 1..p covers the full period, same multiset of phases as n = 0..p-1
    PhaseVector x = PhaseVector::from_rational({a, b}, p);
    return eval_weyl_sum(x, 0, p, budget);
}

IncompleteGaussMax max_incomplete_gauss(std::int64_t a, std::uint64_t p, std::uint32_t probe,
                                        double c, const Budget& budget) {
    if (p < 3 || !is_prime(p)) throw invalid_input("p must be an odd prime");
    if (a % static_cast<std::int64_t>(p) == 0) throw invalid_input("a must be nonzero mod p");
    budget.charge(2 * p);

    // prefix sums S(t) = sum_{n<=t} e(a n^2/p), t <= 2p
    std::int64_t am = a % static_cast<std::int64_t>(p);
    if (am < 0) am += static_cast<std::int64_t>(p);
    PhaseVector x = PhaseVector::from_rational({0, am}, p);
    std::vector<std::uint64_t> lens(2 * p);
    for (std::uint64_t t = 1; t <= 2 * p; ++t) lens[t - 1] = t;
    std::vector<ComplexSum> pre = eval_weyl_prefixes(x, 0, lens, budget);

    auto at = [&](std::uint64_t t) -> std::complex<double> {
        return t == 0 ? std::complex<double>{0, 0} : pre[t - 1].value();
    };

    std::uint64_t stride = 1;
    if (probe > 0 && p > probe) stride = (p + probe - 1) / probe;

    IncompleteGaussMax out;
    for (std::uint64_t m = 1; m <= p; m += stride) {
        std::complex<double> sm = at(m);
        for (std::uint64_t n = 1; n <= p; n += stride) {
            double v = std::abs(at(m + n) - sm);
            if (v > out.max_abs) {
                out.max_abs = v;
                out.best_m = m;
                out.best_n = n;
            }
        }
    }
    out.c = c;
    out.bound = c * std::sqrt(static_cast<double>(p)) * std::log(static_cast<double>(p));
    out.within_bound = out.max_abs <= out.bound;
    return out;
}

} // namespace weylscope
