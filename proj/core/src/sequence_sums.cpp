#include "weylscope/sequence_sums.hpp"

#include <cfloat>
#include <cmath>
#include <complex>

#include "weylscope/errors.hpp"
#include "weylscope/phase.hpp"
#include "weylscope/phase_vector.hpp"

namespace weylscope {

namespace {

// Phase of x*f(n) in turns plus an error slack in turns for the real-valued path.
struct TermPhases {
    std::vector<phase64> ph;
    double slack_turns = 0;
};

TermPhases sequence_phases(const SequenceSpec& f, const ScalarPhase& x, std::uint64_t m,
                           std::uint64_t n) {
    if (f.kind() == SeqKind::matrix_family)
        throw invalid_input("matrix families need eval_matrix_sum");
    if (m + n > f.max_n()) throw invalid_input("sequence value unavailable in (M, M+N]");

    TermPhases out;
    out.ph.resize(n);
    if (f.integer_valued() && x.rational) {
        auto [a, q] = *x.rational;
        for (std::uint64_t i = 0; i < n; ++i) {
            std::int64_t v = f.ivalue(m + i + 1) % static_cast<std::int64_t>(q);
            if (v < 0) v += static_cast<std::int64_t>(q);
            std::uint64_t r = (a * static_cast<std::uint64_t>(v)) % q;
            out.ph[i] = phase_from_ratio(r, q);
        }
    } else if (f.integer_valued()) {
        phase64 xt = phase_from_unit(x.value);
        for (std::uint64_t i = 0; i < n; ++i)
            out.ph[i] = xt * static_cast<std::uint64_t>(f.ivalue(m + i + 1));
    } else {
        // real values: mod-1 in extended precision, quantized once per term
        for (std::uint64_t i = 0; i < n; ++i) {
            long double prod = static_cast<long double>(x.value) * f.rvalue(m + i + 1);
            long double r = prod - std::floor(prod);
            if (r >= 1.0L) r = 0.0L;
            out.ph[i] = phase_from_unit(static_cast<double>(r));
            out.slack_turns += std::abs(static_cast<double>(prod)) * 0x1p-63 + 0x1p-53;
        }
    }
    return out;
}

double error_bound(std::uint64_t n, double slack_turns) {
    return 4.0 * DBL_EPSILON * static_cast<double>(n) + 6.2832 * slack_turns;
}

} // namespace

ScalarPhase ScalarPhase::of(double x) {
    if (!(x >= 0.0 && x < 1.0)) throw invalid_input("x must lie in [0,1)");
    return {x, std::nullopt};
}

ScalarPhase ScalarPhase::fraction(std::int64_t a, std::uint64_t q) {
    if (q == 0 || q > RationalPhases::kMaxDenominator)
        throw invalid_input("rational denominator must lie in [1, 10^6]");
    std::int64_t r = a % static_cast<std::int64_t>(q);
    if (r < 0) r += static_cast<std::int64_t>(q);
    ScalarPhase sp;
    sp.rational = {static_cast<std::uint64_t>(r), q};
    sp.value = static_cast<double>(r) / static_cast<double>(q);
    return sp;
}

ComplexSum eval_sequence_sum(const SequenceSpec& f, const ScalarPhase& x, std::uint64_t m,
                             std::uint64_t n, const Budget& budget) {
    if (n == 0) throw invalid_input("sum length must be >= 1");
    budget.charge(n);
    TermPhases tp = sequence_phases(f, x, m, n);
    CompensatedSum acc;
    for (phase64 p : tp.ph) acc.add(unit_circle(p));
    auto v = acc.value();
    return {v.real(), v.imag(), n, error_bound(n, tp.slack_turns)};
}

std::vector<ComplexSum> eval_sequence_prefixes(const SequenceSpec& f, const ScalarPhase& x,
                                               std::uint64_t n, const Budget& budget) {
    if (n == 0) throw invalid_input("sum length must be >= 1");
    budget.charge(n);
    TermPhases tp = sequence_phases(f, x, 0, n);
    std::vector<ComplexSum> out;
    out.reserve(n);
    CompensatedSum acc;
    for (std::uint64_t i = 0; i < n; ++i) {
        acc.add(unit_circle(tp.ph[i]));
        auto v = acc.value();
        out.push_back({v.real(), v.imag(), i + 1, error_bound(i + 1, tp.slack_turns)});
    }
    return out;
}

double eval_completion_sum(const SequenceSpec& f, const ScalarPhase& x, std::uint64_t n,
                           const Budget& budget) {
    std::vector<ScalarPhase> xs{x};
    return eval_completion_sum_many(f, xs, n, budget).front();
}

std::vector<double> eval_completion_sum_many(const SequenceSpec& f,
                                             const std::vector<ScalarPhase>& xs, std::uint64_t n,
                                             const Budget& budget) {
    if (n == 0) throw invalid_input("sum length must be >= 1");
    budget.charge(xs.size() * (2 * n + 1) * n);

    // e(k/N) twist table shared across all x and h
    std::vector<std::complex<double>> tw(n);
    for (std::uint64_t k = 0; k < n; ++k) tw[k] = unit_circle(phase_from_ratio(k, n));

    std::vector<double> out;
    out.reserve(xs.size());
    for (const auto& x : xs) {
        TermPhases tp = sequence_phases(f, x, 0, n);
        std::vector<std::complex<double>> t(n);
        for (std::uint64_t i = 0; i < n; ++i) t[i] = unit_circle(tp.ph[i]);

        double w = 0;
        for (std::int64_t h = -static_cast<std::int64_t>(n); h <= static_cast<std::int64_t>(n);
             ++h) {
            std::uint64_t hm = static_cast<std::uint64_t>(
                ((h % static_cast<std::int64_t>(n)) + static_cast<std::int64_t>(n)) %
                static_cast<std::int64_t>(n));
            std::complex<double> inner{0, 0};
            std::uint64_t r = 0;
            for (std::uint64_t i = 0; i < n; ++i) {
                r += hm;
                if (r >= n) r -= n; // r = h*(i+1) mod n
                inner += t[i] * tw[r];
            }
            w += std::abs(inner) / static_cast<double>(std::abs(h) + 1);
        }
        out.push_back(w);
    }
    return out;
}

} // namespace weylscope
