#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weylscope/budget.hpp"
#include "weylscope/phase_vector.hpp"

namespace weylscope {

/// Rational structure detected behind a large sum: the common denominator q,
/// numerators a_i, and the exact approximation errors |x_i - a_i/q| with a
/// per-coordinate flag against the bound C (N/A)^? q^-1 N^(-i) with slack eps.
struct RationalApprox {
    std::uint64_t q = 1;
    std::vector<std::int64_t> numerators;
    std::vector<double> errors;
    std::vector<bool> bound_ok;
    // gcd-reduced copy of each coordinate a_i/q
    std::vector<std::int64_t> reduced_num;
    std::vector<std::uint64_t> reduced_den;
};

/// Multiplicative split of q into the prime-power classes used by the
/// large-sum classification: q_2 collects exponents <= 2 (cube free), q_i
/// collects exponents exactly i for 3 <= i <= d-1 (i-full, (i+1)-free) and
/// q_d everything with exponent >= d (d-full). Parts are coprime and their
/// product is q.
struct PowerfulDecomposition {
    std::uint64_t q = 1;
    int d = 3;
    std::vector<std::uint64_t> parts; // parts[i-2] = q_i for i = 2..d
    bool flags_verified = false;
    bool pairwise_coprime = false;

    std::uint64_t part(int i) const { return parts.at(static_cast<size_t>(i - 2)); }
};

/// Detector constants: all << and o(1) in the bounds are materialized as an
/// explicit constant C and exponent slack eps, recorded with every result.
struct DetectorConfig {
    double c = 16.0;
    double eps = 0.05;
};

/// Structured record emitted when no admissible q exists for a verified large
/// sum; expected never to occur, kept for manual review.
struct ViolationRecord {
    std::string op;
    std::vector<double> x;
    std::uint64_t n = 0;
    double a = 0;
    double c = 0;
    double eps = 0;
    std::uint64_t q_limit = 0;
    std::string note;

    std::string to_json() const;
};

struct GaussDetection {
    RationalApprox approx;
    std::uint64_t q_limit = 0;
    double c = 0;
    double eps = 0;
};

/// For |G(x; N)| >= A with A > sqrt(N), finds q <= C (N/A)^2 N^eps with
/// |x_i - a_i/q| <= C (N/A)^2 q^-1 N^(-i+eps), i = 1, 2. Candidates come from
/// the continued-fraction convergents of x_2, then x_1, then their lcm merge;
/// the smallest qualifying q wins.
std::optional<GaussDetection> detect_gauss_structure(const PhaseVector& x, std::uint64_t n,
                                                     double a, const DetectorConfig& cfg = {},
                                                     ViolationRecord* violation = nullptr);

struct WeylDetection {
    RationalApprox approx;
    PowerfulDecomposition decomposition;
    double product_power = 0; // prod q_i^(1/i)
    std::uint64_t q_limit = 0;
    double c = 0;
    double eps = 0;
};

/// Degree d >= 3 analogue: q = q_2...q_d with prod q_i^(1/i) <= C N^(1+eps)/A
/// and |x_j - b_j/q| <= C (N/A)^d N^(-j+eps) prod q_i^(-d/i).
std::optional<WeylDetection> detect_weyl_structure(const PhaseVector& x, std::uint64_t n, double a,
                                                   const DetectorConfig& cfg = {},
                                                   ViolationRecord* violation = nullptr);

/// Canonical decomposition of any q >= 1 (greedy by prime exponent).
PowerfulDecomposition decompose_powerful(std::uint64_t q, int d);

struct GaussGridHit {
    double x1 = 0, x2 = 0;
    double abs_sum = 0;
    bool detected = false;
    RationalApprox approx; // valid when detected
};

struct GaussGridScan {
    std::uint64_t points = 0;
    std::uint64_t n = 0;
    double threshold = 0;
    std::vector<GaussGridHit> hits;
    std::vector<ViolationRecord> violations;
    std::uint64_t max_q = 0;
};

/// Evaluates |G(x; N)| on the 2^grid_log2 x 2^grid_log2 grid and runs the
/// structure detector on every point with |G| >= N^alpha (A = the measured
/// magnitude). Deterministic for any worker count.
GaussGridScan scan_gauss_grid(int grid_log2, std::uint64_t n, double alpha,
                              const DetectorConfig& cfg = {}, int workers = 0,
                              const Budget& budget = Budget());

} // namespace weylscope
