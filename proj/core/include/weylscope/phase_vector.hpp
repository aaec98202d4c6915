#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "weylscope/phase.hpp"

namespace weylscope {

/// Exact-rational form of a phase vector: coordinate j is num[j]/den.
struct RationalPhases {
    std::vector<std::uint64_t> num; // already reduced mod den
    std::uint64_t den = 1;

    static constexpr std::uint64_t kMaxDenominator = 1'000'000ull;
};

/// A point of T_d = [0,1)^d: coefficient j (1-based power) of n^j lives at
/// index j-1. On construction every coordinate is reduced mod 1 and
/// canonicalized to 2^-64-turn resolution; all sum evaluation is exact in
/// phase from then on, for any shift M and length N.
class PhaseVector {
  public:
    /// Coefficients of n, n^2, ..., n^d. Values are reduced mod 1.
    explicit PhaseVector(std::vector<double> coeffs);

    /// Exact fraction input a_j/q; q <= 10^6 enables the mod-q fast path.
    static PhaseVector from_rational(const std::vector<std::int64_t>& numerators,
                                     std::uint64_t q);

    /// Adopts already-canonical 2^-64-turn coordinates.
    static PhaseVector from_turns(std::vector<phase64> turns);

    int degree() const { return static_cast<int>(turns_.size()); }

    /// x_j for j in [1, degree].
    double coeff(int j) const { return phase_to_unit(turns_.at(static_cast<size_t>(j - 1))); }
    phase64 turns(int j) const { return turns_.at(static_cast<size_t>(j - 1)); }
    const std::vector<phase64>& turns() const { return turns_; }

    const std::optional<RationalPhases>& rational() const { return rational_; }

    /// Coordinate-wise (-x mod 1).
    PhaseVector negated() const;

    std::vector<double> coeffs() const;

  private:
    PhaseVector() = default;

    std::vector<phase64> turns_;
    std::optional<RationalPhases> rational_;
};

} // namespace weylscope
