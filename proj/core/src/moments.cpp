#include "weylscope/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weylscope/errors.hpp"
#include "weylscope/matrix_sums.hpp"
#include "weylscope/phase.hpp"
#include "weylscope/rng.hpp"
#include "weylscope/sequence_sums.hpp"

namespace weylscope {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

constexpr u64 kTupleCap = 100'000'000; // memory guard for the sort join

std::vector<i64> integer_values(const SequenceSpec& f, u64 n) {
    if (!f.integer_valued()) throw invalid_input("exact counting needs an integer sequence");
    if (n > f.max_n()) throw invalid_input("sequence values unavailable up to N");
    std::vector<i64> v(n);
    for (u64 i = 0; i < n; ++i) v[i] = f.ivalue(i + 1);
    return v;
}

// all k-fold sums of v, odometer order
std::vector<i64> fold_sums(const std::vector<i64>& v, int k) {
    i64 maxabs = 0;
    for (i64 x : v) maxabs = std::max(maxabs, std::abs(x));
    if (maxabs > (std::numeric_limits<i64>::max() / std::max(k, 1)) / 2)
        throw invalid_input("fold sums overflow 64-bit range");

    u64 n = v.size();
    u64 total = 1;
    for (int j = 0; j < k; ++j) {
        if (total > kTupleCap / n + 1) throw budget_exceeded("tuple space above memory cap");
        total *= n;
    }
    if (total > kTupleCap) throw budget_exceeded("tuple space above memory cap");

    std::vector<i64> sums(total);
    std::vector<u64> idx(static_cast<size_t>(k), 0);
    std::vector<i64> partial(static_cast<size_t>(k) + 1, 0);
    for (int j = 0; j < k; ++j) partial[static_cast<size_t>(j) + 1] = partial[static_cast<size_t>(j)] + v[0];
    for (u64 pos = 0;;) {
        sums[pos++] = partial[static_cast<size_t>(k)];
        if (pos == total) break;
        int j = k - 1;
        while (idx[static_cast<size_t>(j)] + 1 == n) {
            idx[static_cast<size_t>(j)] = 0;
            --j;
        }
        ++idx[static_cast<size_t>(j)];
        for (int t = j; t < k; ++t)
            partial[static_cast<size_t>(t) + 1] =
                partial[static_cast<size_t>(t)] + v[idx[static_cast<size_t>(t)]];
    }
    return sums;
}

u64 sum_sq_counts(std::vector<i64>& sums, SolutionCount* hist) {
    std::sort(sums.begin(), sums.end());
    unsigned __int128 acc = 0;
    for (size_t i = 0; i < sums.size();) {
        size_t j = i;
        while (j < sums.size() && sums[j] == sums[i]) ++j;
        u64 cnt = j - i;
        acc += static_cast<unsigned __int128>(cnt) * cnt;
        if (hist) hist->histogram.emplace_back(sums[i], cnt);
        i = j;
    }
    if (acc > static_cast<unsigned __int128>(std::numeric_limits<u64>::max()))
        throw invalid_input("solution count overflows 64-bit range");
    return static_cast<u64>(acc);
}

double fit_tail_slope(const std::vector<ExponentRow>& rows, double log_power) {
    // slope of log(value / (log N)^L) vs log N on the largest three lengths
    size_t take = std::min<size_t>(3, rows.size());
    size_t from = rows.size() - take;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = from; i < rows.size(); ++i) {
        double x = std::log(static_cast<double>(rows[i].n));
        double y = std::log(std::max(rows[i].value, 1e-300)) - log_power * std::log(x);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    double n = static_cast<double>(take);
    double denom = sxx - sx * sx / n;
    if (denom == 0) return 0;
    return (sxy - sx * sy / n) / denom;
}

} // namespace

const char* moment_method_name(MomentMethod m) {
    switch (m) {
        case MomentMethod::exact_count: return "exact-count";
        case MomentMethod::monte_carlo: return "monte-carlo";
        case MomentMethod::quadrature: return "quadrature";
    }
    return "?";
}

SolutionCount solution_count(const SequenceSpec& f, int half_s, u64 n, const Budget& budget) {
    if (half_s < 1) throw invalid_input("fold count must be >= 1");
    if (n == 0) throw invalid_input("N must be >= 1");
    double tuples = std::pow(static_cast<double>(n), half_s);
    if (tuples > static_cast<double>(budget.max_terms()))
        throw budget_exceeded("tuple space above term budget");
    std::vector<i64> v = integer_values(f, n);
    std::vector<i64> sums = fold_sums(v, half_s);
    SolutionCount out;
    out.total = sum_sq_counts(sums, &out);
    return out;
}

MomentResult exact_even_moment(const SequenceSpec& f, int s, u64 n, const Budget& budget) {
    if (s < 2 || s % 2 != 0) throw invalid_input("exact counting needs even s >= 2");
    if (n == 0) throw invalid_input("N must be >= 1");
    double tuples = std::pow(static_cast<double>(n), s / 2);
    if (tuples > static_cast<double>(budget.max_terms()))
        throw budget_exceeded("tuple space above term budget");
    std::vector<i64> v = integer_values(f, n);
    std::vector<i64> sums = fold_sums(v, s / 2);
    u64 count = sum_sq_counts(sums, nullptr);

    MomentResult r;
    r.s = s;
    r.n = n;
    r.value = static_cast<double>(count);
    r.method = MomentMethod::exact_count;
    r.error = 0;
    r.exact_count = count;
    return r;
}

MomentResult mc_moment(const SequenceSpec& f, double s, u64 n, std::size_t samples,
                       std::uint64_t seed, const Budget& budget) {
    if (!(s > 0)) throw invalid_input("s must be > 0");
    if (samples < 100) throw invalid_input("need >= 100 samples");
    if (n == 0) throw invalid_input("N must be >= 1");
    budget.charge(samples * n);

    // jittered stratification: one point per stratum k/K + u/K. The integrand
    // has narrow spikes at rationals, which plain iid sampling misses often
    // enough to corrupt both the mean and the error estimate. The stderr comes
    // from interleaved subsample means (each subsample is itself stratified).
    constexpr std::size_t kGroups = 16;
    std::size_t k_total = samples;
    std::vector<double> group_sum(kGroups, 0.0);
    std::vector<std::size_t> group_n(kGroups, 0);
    SplitMix64 rng(seed);
    Budget unlimited(budget.max_terms());
    double total = 0;
    for (std::size_t k = 0; k < k_total; ++k) {
        double x = (static_cast<double>(k) + rng.uniform01()) / static_cast<double>(k_total);
        if (x >= 1.0) x = std::nextafter(1.0, 0.0);
        double v = std::pow(eval_sequence_sum(f, ScalarPhase::of(x), 0, n, unlimited).abs(), s);
        total += v;
        group_sum[k % kGroups] += v;
        group_n[k % kGroups] += 1;
    }
    double mean = total / static_cast<double>(k_total);
    double var = 0;
    for (std::size_t g = 0; g < kGroups; ++g) {
        double gm = group_sum[g] / static_cast<double>(group_n[g]);
        var += (gm - mean) * (gm - mean);
    }
    var /= static_cast<double>(kGroups - 1);

    MomentResult r;
    r.s = s;
    r.n = n;
    r.value = mean;
    r.method = MomentMethod::monte_carlo;
    r.error = std::sqrt(var / static_cast<double>(kGroups));
    return r;
}

MomentResult completion_moment(const SequenceSpec& f, int s, u64 n, double c,
                               const Budget& budget) {
    if (s < 1) throw invalid_input("s must be >= 1");
    if (n == 0) throw invalid_input("N must be >= 1");
    u64 k = std::max<u64>(256, n * n); // midpoint rule resolution
    u64 cost_one = (2 * n + 1) * n;
    if (k > budget.max_terms() / cost_one) throw budget_exceeded("quadrature above term budget");

    std::vector<ScalarPhase> xs;
    xs.reserve(k);
    for (u64 j = 0; j < k; ++j)
        xs.push_back(ScalarPhase::of((static_cast<double>(j) + 0.5) / static_cast<double>(k)));
    std::vector<double> w = eval_completion_sum_many(f, xs, n, budget);

    auto integrate = [&](u64 stride) {
        double acc = 0;
        u64 used = 0;
        for (u64 j = 0; j < k; j += stride) {
            acc += std::pow(w[j], s);
            ++used;
        }
        return acc / static_cast<double>(used);
    };
    double full = integrate(1);
    double halfres = integrate(2);

    MomentResult r;
    r.s = s;
    r.n = n;
    r.value = full;
    r.method = MomentMethod::quadrature;
    r.error = std::abs(full - halfres);
    r.c = c;
    // dominated by the plain moment up to (log N)^s, when that is computable
    if (f.integer_valued() && s % 2 == 0 &&
        std::pow(static_cast<double>(n), s / 2) <= 1e7) {
        double vmoment = exact_even_moment(f, s, n, budget).value;
        double lg = std::log(std::max<double>(n, 3));
        r.compare_bound = c * vmoment * std::pow(lg, s);
        r.within_bound = r.value <= r.compare_bound;
    }
    return r;
}

u64 matrix_second_moment_exact(const SequenceSpec& family, const std::vector<i64>& h, u64 n) {
    auto freqs = matrix_frequencies(family, h, n);
    std::sort(freqs.begin(), freqs.end());
    unsigned __int128 acc = 0;
    for (size_t i = 0; i < freqs.size();) {
        size_t j = i;
        while (j < freqs.size() && freqs[j] == freqs[i]) ++j;
        acc += static_cast<unsigned __int128>(j - i) * (j - i);
        i = j;
    }
    return static_cast<u64>(acc);
}

std::string Claim::name() const {
    switch (kind) {
        case ClaimKind::hua: return "hua(" + std::to_string(r) + ")";
        case ClaimKind::wooley: return "wooley(" + std::to_string(r) + ")";
        case ClaimKind::monomial: return "monomial(" + std::to_string(d) + ")";
        case ClaimKind::convex4: return "convex4";
        case ClaimKind::convex_s: return "convex_s(" + std::to_string(s) + ")";
        case ClaimKind::ps4: return "ps4(tau=" + std::to_string(tau) + ")";
        case ClaimKind::separated2: return "separated2";
        case ClaimKind::matrix2: return "matrix2";
    }
    return "?";
}

void Claim::parameters(double& s_out, double& exponent, double& log_power) const {
    log_power = 0;
    switch (kind) {
        case ClaimKind::hua:
            s_out = std::pow(2.0, r);
            exponent = s_out - r;
            return;
        case ClaimKind::wooley:
            s_out = static_cast<double>(r) * (r + 1);
            exponent = static_cast<double>(r) * r;
            return;
        case ClaimKind::monomial: {
            double best = std::numeric_limits<double>::infinity();
            for (int rr = 1; rr <= d; ++rr)
                best = std::min(best, (2.0 * d + (rr - 1.0) * (rr - 2.0)) / rr);
            s_out = d * (d - 1.0) + best;
            exponent = s_out - d;
            return;
        }
        case ClaimKind::convex4:
            s_out = 4;
            exponent = 32.0 / 13.0;
            return;
        case ClaimKind::convex_s:
            s_out = s;
            exponent = s - 2.0 + std::pow(2.0, 1.0 - s / 2.0);
            return;
        case ClaimKind::ps4:
            s_out = 4;
            exponent = std::max(2.0, 4.0 - tau);
            return;
        case ClaimKind::separated2:
            s_out = 2;
            exponent = 1;
            log_power = 3;
            return;
        case ClaimKind::matrix2:
            s_out = 2;
            exponent = 1;
            return;
    }
    throw invalid_input("unknown claim");
}

namespace {

void check_claim_class(const Claim& claim, const SequenceSpec& f, u64 n_max) {
    switch (claim.kind) {
        case ClaimKind::hua:
        case ClaimKind::wooley: {
            int deg = f.poly_degree(); // throws for non-polynomial kinds
            if (!f.integer_valued()) throw invalid_input("claim needs an integer polynomial");
            if (deg < 2) throw invalid_input("claim needs degree >= 2");
            if (claim.r < 1 || claim.r > deg)
                throw invalid_input("claim index r must lie in [1, deg f]");
            return;
        }
        case ClaimKind::monomial:
            if (f.kind() != SeqKind::monomial || f.poly_degree() != claim.d)
                throw invalid_input("claim needs the monomial n^d");
            return;
        case ClaimKind::convex4:
        case ClaimKind::convex_s: {
            if (!f.integer_valued()) throw invalid_input("claim needs an integer sequence");
            if (claim.kind == ClaimKind::convex_s && (claim.s < 6 || claim.s % 2 != 0))
                throw invalid_input("convex_s needs even s >= 6");
            // verify strict convexity over the used range
            for (u64 n = 2; n < n_max; ++n)
                if (!(f.ivalue(n + 1) - f.ivalue(n) > f.ivalue(n) - f.ivalue(n - 1)))
                    throw invalid_input("sequence is not strictly convex on [1, N]");
            return;
        }
        case ClaimKind::ps4:
            if (f.kind() != SeqKind::floor_power)
                throw invalid_input("claim needs a floor-power sequence");
            return;
        case ClaimKind::separated2: {
            // separated values: |f(n)-f(m)| >= ~1 for n != m
            std::vector<double> vals;
            for (u64 n = 1; n <= n_max; ++n) vals.push_back(f.rvalue(n));
            std::sort(vals.begin(), vals.end());
            for (size_t i = 0; i + 1 < vals.size(); ++i)
                if (vals[i + 1] - vals[i] < 0.999)
                    throw invalid_input("sequence values are not 1-separated");
            return;
        }
        case ClaimKind::matrix2:
            if (f.kind() != SeqKind::matrix_family)
                throw invalid_input("claim needs a matrix family");
            return;
    }
}

} // namespace

ExponentReport verify_exponent(const Claim& claim, const SequenceSpec& f,
                               const std::vector<u64>& n_list, double c, double eps,
                               double slope_tol, const std::vector<i64>* h,
                               std::size_t mc_samples, std::uint64_t seed, const Budget& budget) {
    if (n_list.empty() || !std::is_sorted(n_list.begin(), n_list.end()))
        throw invalid_input("n_list must be sorted and nonempty");
    check_claim_class(claim, f, n_list.back());

    ExponentReport rep;
    rep.claim = claim.name();
    claim.parameters(rep.s, rep.claimed_exponent, rep.log_power);
    rep.c = c;
    rep.eps = eps;
    rep.slope_tol = slope_tol;
    rep.h = h;

    bool s_is_even_int = std::abs(rep.s - 2.0 * std::round(rep.s / 2.0)) < 1e-12;
    for (u64 n : n_list) {
        ExponentRow row;
        row.n = n;
        if (claim.kind == ClaimKind::matrix2) {
            if (!h) throw invalid_input("matrix2 needs the frequency vector h");
            row.value = static_cast<double>(matrix_second_moment_exact(f, *h, n));
            row.method = MomentMethod::exact_count;
            row.bound = static_cast<double>(n);
            row.point_ok = row.value == row.bound; // exact equality, not a bound
        } else if (claim.kind == ClaimKind::separated2) {
            MomentResult m = completion_moment(f, 2, n, c, budget);
            row.value = m.value;
            row.method = MomentMethod::quadrature;
            row.error = m.error;
            double lg = std::log(static_cast<double>(n));
            row.bound = c * static_cast<double>(n) * std::pow(lg, 3.0);
            row.point_ok = row.value <= row.bound;
        } else {
            MomentResult m;
            if (s_is_even_int && f.integer_valued())
                m = exact_even_moment(f, static_cast<int>(std::round(rep.s)), n, budget);
            else
                m = mc_moment(f, rep.s, n, mc_samples, seed, budget);
            row.value = m.value;
            row.method = m.method;
            row.error = m.error;
            double lg = std::log(std::max<double>(n, 3));
            if (claim.kind == ClaimKind::ps4) {
                row.bound = c * (std::pow(static_cast<double>(n), 2.0 + eps) +
                                 std::pow(static_cast<double>(n), 4.0 - claim.tau + eps));
            } else {
                row.bound = c * std::pow(static_cast<double>(n), rep.claimed_exponent + eps) *
                            std::pow(lg, rep.log_power);
            }
            row.point_ok = row.value <= row.bound + 3.0 * row.error;
        }
        rep.rows.push_back(row);
    }

    if (claim.kind == ClaimKind::matrix2) {
        rep.fitted_slope = 1.0;
        rep.slope_ok = true;
    } else {
        rep.fitted_slope = fit_tail_slope(rep.rows, rep.log_power);
        rep.slope_ok = rep.fitted_slope <= rep.claimed_exponent + slope_tol;
    }
    rep.pass = rep.slope_ok;
    for (const auto& row : rep.rows) rep.pass = rep.pass && row.point_ok;
    return rep;
}

} // namespace weylscope
