#include "weylscope/rynne.hpp"

#include <cmath>

#include "weylscope/errors.hpp"
#include "weylscope/numtheory.hpp"
#include "weylscope/rng.hpp"

namespace weylscope {

std::array<double, 2> rynne_thetas(double alpha) {
    if (!(alpha > 0.5 && alpha < 1.0)) throw invalid_input("alpha must lie in (1/2, 1)");
    return {1.0 / (2.0 * (1.0 - alpha)) - 1.0, 1.0 / (1.0 - alpha) - 1.0};
}

double witness_distance(const PhaseVector& x, int coord, std::uint64_t p) {
    phase64 t = x.turns(coord) * p; // p*x mod 1, exact
    // distance to nearest integer in turns
    phase64 d = t > (~t) + 1 ? (~t) + 1 : t; // min(t, 2^64 - t)
    return static_cast<double>(d) * 0x1p-64;
}

bool witness_holds(const RynnePoint& pt) {
    double pd = static_cast<double>(pt.p);
    return witness_distance(pt.x, 1, pt.p) < std::pow(pd, -pt.thetas[0]) &&
           witness_distance(pt.x, 2, pt.p) < std::pow(pd, -pt.thetas[1]);
}

std::vector<RynnePoint> rynne_sample(double alpha, std::uint64_t p_max, std::size_t count,
                                     std::uint64_t seed, double eta) {
    auto thetas = rynne_thetas(alpha);
    if (p_max < 3) throw invalid_input("p_max must be >= 3");
    if (!(eta >= 0.0 && eta < 1.0)) throw invalid_input("eta must lie in [0, 1)");
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p : primes_up_to(p_max))
        if (p >= 3) ps.push_back(p);
    if (ps.empty()) throw invalid_input("no odd primes up to p_max");

    double r1_exp = -1.0 / (2.0 * (1.0 - alpha));
    double r2_exp = -1.0 / (1.0 - alpha);

    std::vector<RynnePoint> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        SplitMix64 rng = SplitMix64::for_unit(seed, k);
        std::uint64_t p = ps[rng.below(ps.size())];
        auto a = static_cast<std::int64_t>(rng.below(p));
        auto b = static_cast<std::int64_t>(1 + rng.below(p - 1));
        if (eta == 0.0) {
            out.push_back({PhaseVector::from_rational({a, b}, p), p, a, b, thetas});
            continue;
        }
        double pd = static_cast<double>(p);
        double r1 = eta * std::pow(pd, r1_exp);
        double r2 = eta * std::pow(pd, r2_exp);
        double x1 = static_cast<double>(a) / pd + (2.0 * rng.uniform01() - 1.0) * r1;
        double x2 = static_cast<double>(b) / pd + (2.0 * rng.uniform01() - 1.0) * r2;
        x1 -= std::floor(x1);
        x2 -= std::floor(x2);
        out.push_back({PhaseVector({x1, x2}), p, a, b, thetas});
    }
    return out;
}

std::uint64_t rynne_sum_length(std::uint64_t p, double alpha) {
    if (!(alpha > 0.5 && alpha < 1.0)) throw invalid_input("alpha must lie in (1/2, 1)");
    double target = std::pow(static_cast<double>(p), 1.0 / (2.0 * (1.0 - alpha)));
    // tolerant of pow() landing a hair above an exact multiple
    auto mult = static_cast<std::uint64_t>(
                    std::floor((target - 1e-9) / static_cast<double>(p))) + 1;
    if (mult == 0) mult = 1;
    return mult * p;
}

} // namespace weylscope
