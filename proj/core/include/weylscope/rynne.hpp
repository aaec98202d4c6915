#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "weylscope/phase_vector.hpp"

namespace weylscope {

/// A point of T_2 inside the simultaneous-approximation neighborhood of a
/// prime rational (a/p, b/p): |x_1 - a/p| < eta p^(-1/(2(1-alpha))) and
/// |x_2 - b/p| < eta p^(-1/(1-alpha)). Witness property: ||p x_i|| < p^(-theta_i)
/// with theta_1 = 1/(2(1-alpha)) - 1 and theta_2 = 1/(1-alpha) - 1.
struct RynnePoint {
    PhaseVector x;
    std::uint64_t p = 3;
    std::int64_t a = 0;
    std::int64_t b = 1;
    std::array<double, 2> thetas{0, 0};
};

std::array<double, 2> rynne_thetas(double alpha);

/// Distance of p*x_i to the nearest integer, exact on the canonical coordinate.
double witness_distance(const PhaseVector& x, int coord, std::uint64_t p);

bool witness_holds(const RynnePoint& pt);

/// Samples `count` points with primes p <= p_max and b != 0 mod p. eta = 0
/// yields the exact rational centers.
std::vector<RynnePoint> rynne_sample(double alpha, std::uint64_t p_max, std::size_t count,
                                     std::uint64_t seed, double eta = 0.02);

/// Smallest multiple of p that is >= p^(1/(2(1-alpha))): the sum length at
/// which the neighborhood produces magnitudes of order N^alpha.
std::uint64_t rynne_sum_length(std::uint64_t p, double alpha);

} // namespace weylscope
