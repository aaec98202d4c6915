#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weylscope/budget.hpp"
#include "weylscope/sequence_spec.hpp"

namespace weylscope {

enum class MomentMethod { exact_count, monte_carlo, quadrature };

const char* moment_method_name(MomentMethod m);

struct MomentResult {
    double s = 2;
    std::uint64_t n = 0;
    double value = 0;
    MomentMethod method = MomentMethod::exact_count;
    double error = 0; // 0 for exact counts, stderr for MC, refinement gap for quadrature
    std::optional<double> predicted_exponent;
    double c = 0;
    double eps = 0;
    std::uint64_t exact_count = 0; // populated by exact counting
    double compare_bound = 0;      // recorded bound when a comparison applies
    bool within_bound = true;
};

/// Histogram of the (s/2)-fold sums f(n_1)+...+f(n_k) over n_i in [1,N].
/// total = sum of squared counts = the 2k-th moment of |V_f| (orthogonality).
struct SolutionCount {
    std::vector<std::pair<std::int64_t, std::uint64_t>> histogram;
    std::uint64_t total = 0;
};

SolutionCount solution_count(const SequenceSpec& f, int half_s, std::uint64_t n,
                             const Budget& budget = Budget());

/// Integral of |V_f(x;N)|^s over T for even s, via exact counting.
MomentResult exact_even_moment(const SequenceSpec& f, int s, std::uint64_t n,
                               const Budget& budget = Budget());

/// Monte Carlo moment for arbitrary real s > 0.
MomentResult mc_moment(const SequenceSpec& f, double s, std::uint64_t n, std::size_t samples,
                       std::uint64_t seed, const Budget& budget = Budget());

/// Quadrature of W_f(x;N)^s over T; compared against
/// C * exact_even_moment(f,s,N) * (log N)^s when the exact count is feasible.
MomentResult completion_moment(const SequenceSpec& f, int s, std::uint64_t n, double c = 8.0,
                               const Budget& budget = Budget());

/// Exact second moment of |V_{S,h}| by counting collisions of A_n h.
std::uint64_t matrix_second_moment_exact(const SequenceSpec& family,
                                         const std::vector<std::int64_t>& h, std::uint64_t n);

enum class ClaimKind { hua, wooley, monomial, convex4, convex_s, ps4, separated2, matrix2 };

struct Claim {
    ClaimKind kind = ClaimKind::hua;
    int r = 2;        // hua/wooley index
    int s = 6;        // convex_s even exponent
    int d = 2;        // monomial degree
    double tau = 1.5; // ps4 exponent

    std::string name() const;
    /// (s, claimed exponent, log power) of the asserted bound C N^t (log N)^L.
    void parameters(double& s_out, double& exponent, double& log_power) const;
};

struct ExponentRow {
    std::uint64_t n = 0;
    double value = 0;
    MomentMethod method = MomentMethod::exact_count;
    double error = 0;
    double bound = 0;
    bool point_ok = true;
};

struct ExponentReport {
    std::string claim;
    double s = 2;
    double claimed_exponent = 1;
    double log_power = 0;
    std::vector<ExponentRow> rows;
    double fitted_slope = 0;
    bool slope_ok = true;
    bool pass = true;
    double c = 8;
    double eps = 0.05;
    double slope_tol = 0.15;
    const std::vector<std::int64_t>* h = nullptr; // matrix2 only
};

/// Computes the claim's moment over n_list, fits the log-log slope on the
/// largest three lengths, and checks slope <= claimed + slope_tol plus the
/// pointwise bound value <= C N^(claimed+eps) (log N)^log_power.
ExponentReport verify_exponent(const Claim& claim, const SequenceSpec& f,
                               const std::vector<std::uint64_t>& n_list, double c = 8.0,
                               double eps = 0.05, double slope_tol = 0.15,
                               const std::vector<std::int64_t>* h = nullptr,
                               std::size_t mc_samples = 100000, std::uint64_t seed = 1,
                               const Budget& budget = Budget());

} // namespace weylscope
