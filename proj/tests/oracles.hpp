#pragma once

// Test-only reference implementations, kept independent of the library's
// evaluation path: plain term-by-term summation in extended precision.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracles {

inline constexpr long double kTwoPi = 6.283185307179586476925286766559L;

inline std::complex<long double> e_of(long double phase_mod1) {
    long double ang = kTwoPi * phase_mod1;
    return {std::cos(ang), std::sin(ang)};
}

inline std::complex<long double> naive_weyl(const std::vector<double>& coeffs, std::uint64_t m,
                                            std::uint64_t n) {
    std::complex<long double> acc{0, 0};
    for (std::uint64_t i = 1; i <= n; ++i) {
        long double k = static_cast<long double>(m + i);
        long double ph = 0, kp = 1;
        for (double c : coeffs) {
            kp *= k;
            ph = std::fmod(ph + std::fmod(static_cast<long double>(c) * kp, 1.0L), 1.0L);
        }
        acc += e_of(ph);
    }
    return acc;
}

inline std::complex<long double> naive_sequence(const std::vector<long double>& fvals, double x,
                                                std::uint64_t m, std::uint64_t n) {
    std::complex<long double> acc{0, 0};
    for (std::uint64_t i = 1; i <= n; ++i) {
        long double ph = std::fmod(static_cast<long double>(x) * fvals[m + i - 1], 1.0L);
        if (ph < 0) ph += 1.0L;
        acc += e_of(ph);
    }
    return acc;
}

inline long double naive_completion(const std::vector<long double>& fvals, double x,
                                    std::uint64_t n) {
    long double w = 0;
    for (std::int64_t h = -static_cast<std::int64_t>(n); h <= static_cast<std::int64_t>(n); ++h) {
        std::complex<long double> inner{0, 0};
        for (std::uint64_t i = 1; i <= n; ++i) {
            long double ph = static_cast<long double>(h) * i / static_cast<long double>(n) +
                             static_cast<long double>(x) * fvals[i - 1];
            ph = std::fmod(ph, 1.0L);
            if (ph < 0) ph += 1.0L;
            inner += e_of(ph);
        }
        w += std::abs(inner) / static_cast<long double>(std::abs(h) + 1);
    }
    return w;
}

inline std::complex<long double> naive_mod_p(std::int64_t a, std::int64_t b, std::uint64_t p,
                                             std::uint64_t from, std::uint64_t to) {
    std::complex<long double> acc{0, 0};
    auto pp = static_cast<std::int64_t>(p);
    for (std::uint64_t n = from; n <= to; ++n) {
        auto nn = static_cast<std::int64_t>(n % p);
        std::int64_t r = (a % pp * nn % pp + b % pp * nn % pp * nn % pp) % pp;
        if (r < 0) r += pp;
        acc += e_of(static_cast<long double>(r) / static_cast<long double>(p));
    }
    return acc;
}

} // namespace oracles
