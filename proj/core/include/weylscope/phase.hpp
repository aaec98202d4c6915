#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace weylscope {

/// A phase in [0,1) stored as a 64-bit fraction of a full turn: the integer v
/// represents v / 2^64. Addition and integer multiplication wrap mod 2^64,
/// which is exactly reduction mod 1 — the renormalization step of the
/// forward-difference evaluators is the natural integer wraparound, so phases
/// never drift no matter how many terms are accumulated.
using phase64 = std::uint64_t;

/// Rounds x in [0,1) to the nearest multiple of 2^-64. Exact whenever x is a
/// dyadic rational with denominator <= 2^64 (every double >= 2^-11 is).
phase64 phase_from_unit(double x);

inline double phase_to_unit(phase64 v) { return static_cast<double>(v) * 0x1p-64; }

/// (x * k) mod 1 in turns; two's-complement wraparound handles negative k.
inline phase64 phase_mul(phase64 x, std::uint64_t k) { return x * k; }

/// floor(2^64 * num/den) for 0 <= num < den. Phase of the rational num/den.
inline phase64 phase_from_ratio(std::uint64_t num, std::uint64_t den) {
    return static_cast<phase64>((static_cast<unsigned __int128>(num) << 64) / den);
}

/// e(v) = exp(2*pi*i * v/2^64), evaluated by folding into the first octant.
/// The folding is exact on the integer representation, so algebraic symmetries
/// hold bit-for-bit: unit_circle(-v) == conj(unit_circle(v)), and quarter-turn
/// rotations are exact sign/swap maps.
inline std::complex<double> unit_circle(phase64 v) {
    constexpr std::uint64_t kOctant = 1ull << 61;
    unsigned oct = static_cast<unsigned>(v >> 61);
    std::uint64_t r = v & (kOctant - 1);
    if (oct & 1u) r = kOctant - r;
    // theta in [0, pi/4]; conversion of r (< 2^61) to double rounds once.
    double theta = static_cast<double>(r) * 0x1p-63 * 3.14159265358979323846;
    double c = std::cos(theta);
    double s = std::sin(theta);
    switch (oct) {
        case 0: return {c, s};
        case 1: return {s, c};
        case 2: return {-s, c};
        case 3: return {-c, s};
        case 4: return {-c, -s};
        case 5: return {-s, -c};
        case 6: return {s, -c};
        default: return {c, -s};
    }
}

/// Neumaier-compensated accumulator for complex sums of unit vectors.
class CompensatedSum {
  public:
    void add(std::complex<double> z) {
        add_part(re_, re_c_, z.real());
        add_part(im_, im_c_, z.imag());
    }

    std::complex<double> value() const { return {re_ + re_c_, im_ + im_c_}; }

  private:
    static void add_part(double& sum, double& comp, double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }

    double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

} // namespace weylscope
