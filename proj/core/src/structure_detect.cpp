#include "weylscope/structure_detect.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <json.hpp>

#include "weylscope/errors.hpp"
#include "weylscope/numtheory.hpp"
#include "weylscope/parallel.hpp"
#include "weylscope/weyl_sums.hpp"

namespace weylscope {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr double kMinSlack = 0.01;     // precondition slack on A
constexpr u64 kQScanCap = 20'000'000;  // candidate-set guard

// nearest numerator a = round(q * x_j) and the exact error |x_j - a/q|,
// through the rational form when the input is an exact fraction.
struct CoordFit {
    std::int64_t a;
    double err;
};

CoordFit fit_coordinate(const PhaseVector& x, int j, u64 q) {
    if (const auto& rat = x.rational()) {
        u64 num = rat->num[static_cast<size_t>(j - 1)];
        u128 prod = u128(num) * q; // a = round(num*q/den)
        u64 a = static_cast<u64>((prod + rat->den / 2) / rat->den);
        u128 lhs = u128(num) * q, rhs = u128(a) * rat->den;
        u128 diff = lhs > rhs ? lhs - rhs : rhs - lhs;
        return {static_cast<std::int64_t>(a),
                static_cast<double>(diff) /
                    (static_cast<double>(rat->den) * static_cast<double>(q))};
    }
    phase64 turns = x.turns(j);
    u128 prod = u128(turns) * q;
    u64 hi = static_cast<u64>(prod >> 64);
    u64 lo = static_cast<u64>(prod);
    u64 a = hi + (lo >> 63);
    u128 lhs = prod, rhs = u128(a) << 64;
    u128 diff = lhs > rhs ? lhs - rhs : rhs - lhs;
    return {static_cast<std::int64_t>(a),
            static_cast<double>(diff) * 0x1p-64 / static_cast<double>(q)};
}

void fill_reduced(RationalApprox& ra) {
    ra.reduced_num.clear();
    ra.reduced_den.clear();
    for (std::int64_t a : ra.numerators) {
        u64 g = std::gcd(static_cast<u64>(std::abs(a)), ra.q);
        if (g == 0) g = 1;
        ra.reduced_num.push_back(a / static_cast<std::int64_t>(g));
        ra.reduced_den.push_back(ra.q / g);
    }
}

std::vector<u64> merged_candidate_denominators(const PhaseVector& x, u64 q_limit) {
    std::set<u64> qs;
    qs.insert(1);
    if (const auto& rat = x.rational()) {
        if (rat->den <= q_limit) qs.insert(rat->den);
        for (u64 num : rat->num) {
            u64 g = std::gcd(num, rat->den);
            if (g > 0 && rat->den / g <= q_limit) qs.insert(rat->den / g);
        }
    }
    std::vector<std::vector<u64>> per_coord;
    for (int j = x.degree(); j >= 1; --j) { // highest coordinate first: dominant constraint
        std::vector<u64> dens;
        for (const auto& cv : convergents(x.coeff(j), q_limit)) {
            dens.push_back(cv.q);
            qs.insert(cv.q);
        }
        per_coord.push_back(std::move(dens));
    }
    // lcm merge across coordinates, capped
    for (size_t i = 0; i < per_coord.size(); ++i) {
        for (size_t j = i + 1; j < per_coord.size(); ++j) {
            for (u64 a : per_coord[i]) {
                for (u64 b : per_coord[j]) {
                    u64 g = std::gcd(a, b);
                    u128 l = u128(a / g) * b;
                    if (l <= q_limit) qs.insert(static_cast<u64>(l));
                }
            }
        }
    }
    return {qs.begin(), qs.end()};
}

int d_exponent_cap(int d) { return std::min(1 << (d - 1), 2 * d * (d - 1)); }

} // namespace

std::string ViolationRecord::to_json() const {
    nlohmann::ordered_json j;
    j["record"] = "lemma-violation-candidate";
    j["op"] = op;
    j["x"] = x;
    j["n"] = n;
    j["a"] = a;
    j["c"] = c;
    j["eps"] = eps;
    j["q_limit"] = q_limit;
    j["note"] = note;
    return j.dump();
}

std::optional<GaussDetection> detect_gauss_structure(const PhaseVector& x, std::uint64_t n,
                                                     double a, const DetectorConfig& cfg,
                                                     ViolationRecord* violation) {
    if (x.degree() != 2) throw invalid_input("gauss detection needs degree 2");
    if (n == 0) throw invalid_input("n must be >= 1");
    double nd = static_cast<double>(n);
    if (!(a > std::pow(nd, 0.5 + kMinSlack)))
        throw invalid_input("threshold A must exceed N^(1/2+eps)");

    double ratio2 = (nd / a) * (nd / a);
    double q_bound = cfg.c * ratio2 * std::pow(nd, cfg.eps);
    u64 q_limit = static_cast<u64>(std::min(q_bound, 9.0e18));
    if (q_limit == 0) q_limit = 1;

    double err_scale = cfg.c * ratio2 * std::pow(nd, cfg.eps);
    for (u64 q : merged_candidate_denominators(x, q_limit)) {
        RationalApprox ra;
        ra.q = q;
        bool ok = true;
        for (int i = 1; i <= 2; ++i) {
            CoordFit fit = fit_coordinate(x, i, q);
            double bound = err_scale / static_cast<double>(q) * std::pow(nd, -i);
            ra.numerators.push_back(fit.a);
            ra.errors.push_back(fit.err);
            ra.bound_ok.push_back(fit.err <= bound);
            if (fit.err > bound) ok = false;
        }
        if (ok) {
            fill_reduced(ra);
            return GaussDetection{std::move(ra), q_limit, cfg.c, cfg.eps};
        }
    }

    if (violation) {
        violation->op = "detect_gauss_structure";
        violation->x = x.coeffs();
        violation->n = n;
        violation->a = a;
        violation->c = cfg.c;
        violation->eps = cfg.eps;
        violation->q_limit = q_limit;
        violation->note = "no admissible q among convergent/lcm candidates";
    }
    return std::nullopt;
}

PowerfulDecomposition decompose_powerful(std::uint64_t q, int d) {
    if (q == 0) throw invalid_input("q must be >= 1");
    if (d < 3) throw invalid_input("decomposition needs d >= 3");
    PowerfulDecomposition out;
    out.q = q;
    out.d = d;
    out.parts.assign(static_cast<size_t>(d - 1), 1);
    for (auto [p, e] : factorize(q)) {
        int slot = e <= 2 ? 2 : std::min(e, d);
        u128 pe = 1;
        for (int k = 0; k < e; ++k) pe *= p;
        out.parts[static_cast<size_t>(slot - 2)] *= static_cast<u64>(pe);
    }

    // verify the declared class of every part independently
    out.flags_verified = is_i_free(out.part(2), 3);
    for (int i = 3; i <= d - 1; ++i)
        out.flags_verified = out.flags_verified && is_i_full(out.part(i), i) &&
                             is_i_free(out.part(i), i + 1);
    out.flags_verified = out.flags_verified && is_i_full(out.part(d), d);

    out.pairwise_coprime = true;
    for (int i = 2; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j)
            if (std::gcd(out.part(i), out.part(j)) != 1) out.pairwise_coprime = false;

    u128 prod = 1;
    for (u64 p : out.parts) prod *= p;
    if (prod != q) throw invalid_input("internal: decomposition product mismatch");
    return out;
}

std::optional<WeylDetection> detect_weyl_structure(const PhaseVector& x, std::uint64_t n, double a,
                                                   const DetectorConfig& cfg,
                                                   ViolationRecord* violation) {
    int d = x.degree();
    if (d < 3) throw invalid_input("weyl detection needs degree >= 3");
    if (n == 0) throw invalid_input("n must be >= 1");
    double nd = static_cast<double>(n);
    int dd = d_exponent_cap(d);
    if (!(a > std::pow(nd, 1.0 - 1.0 / dd + kMinSlack)))
        throw invalid_input("threshold A must exceed N^(1-1/D+eps)");

    // admissible decompositions: prod q_i^(1/i) <= b_prod
    double b_prod = cfg.c * std::pow(nd, 1.0 + cfg.eps) / a;
    double q2_max_d = b_prod * b_prod;
    if (q2_max_d > static_cast<double>(kQScanCap))
        throw budget_exceeded("admissible denominator range too large to enumerate");
    u64 q2_max = static_cast<u64>(q2_max_d);

    // class lists: q_2 cube free; q_i i-full (i+1)-free; q_d d-full
    std::vector<std::vector<u64>> lists(static_cast<size_t>(d - 1));
    {
        SpfSieve sieve(static_cast<std::uint32_t>(std::max<u64>(q2_max, 2)));
        for (u64 v = 1; v <= q2_max; ++v) {
            bool cube_free = true;
            for (auto [p, e] : sieve.factorize(static_cast<std::uint32_t>(v)))
                if (e >= 3) cube_free = false;
            if (cube_free) lists[0].push_back(v);
        }
    }
    for (int i = 3; i <= d; ++i) {
        double cap_d = std::pow(b_prod, i);
        u64 cap = cap_d > 1e12 ? static_cast<u64>(1e12) : static_cast<u64>(cap_d);
        std::vector<u64> full = enumerate_powerful(i, cap);
        if (i < d) {
            std::vector<u64> filtered;
            for (u64 v : full)
                if (is_i_free(v, i + 1)) filtered.push_back(v);
            full = std::move(filtered);
        }
        lists[static_cast<size_t>(i - 2)] = std::move(full);
    }

    // DFS over coprime tuples under the product-power constraint
    struct Candidate {
        u64 q;
        std::vector<u64> parts;
        double prod_power;
    };
    std::vector<Candidate> cands;
    std::vector<u64> parts(static_cast<size_t>(d - 1), 1);
    auto dfs = [&](auto&& self, int slot, double log_power, u128 q_so_far) -> void {
        if (slot > d) {
            if (q_so_far > kQScanCap) return;
            cands.push_back({static_cast<u64>(q_so_far), parts, std::exp(log_power)});
            return;
        }
        const auto& lst = lists[static_cast<size_t>(slot - 2)];
        for (u64 v : lst) {
            double lp = log_power + std::log(static_cast<double>(v)) / slot;
            if (lp > std::log(b_prod) + 1e-12) break; // lists sorted ascending
            bool coprime = true;
            for (int i = 2; i < slot; ++i)
                if (std::gcd(parts[static_cast<size_t>(i - 2)], v) != 1) coprime = false;
            if (!coprime) continue;
            parts[static_cast<size_t>(slot - 2)] = v;
            self(self, slot + 1, lp, q_so_far * v);
            parts[static_cast<size_t>(slot - 2)] = 1;
        }
    };
    dfs(dfs, 2, 0.0, 1);
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& l, const Candidate& r) { return l.q < r.q; });

    double ratio_d = std::pow(nd / a, d);
    for (const auto& cand : cands) {
        double part_factor = 1.0;
        for (int i = 2; i <= d; ++i)
            part_factor *= std::pow(static_cast<double>(cand.parts[static_cast<size_t>(i - 2)]),
                                    -static_cast<double>(d) / i);
        RationalApprox ra;
        ra.q = cand.q;
        bool ok = true;
        for (int j = 1; j <= d; ++j) {
            CoordFit fit = fit_coordinate(x, j, cand.q);
            double bound = cfg.c * ratio_d * std::pow(nd, -j + cfg.eps) * part_factor;
            ra.numerators.push_back(fit.a);
            ra.errors.push_back(fit.err);
            ra.bound_ok.push_back(fit.err <= bound);
            if (fit.err > bound) ok = false;
        }
        if (ok) {
            fill_reduced(ra);
            PowerfulDecomposition dec = decompose_powerful(cand.q, d);
            return WeylDetection{std::move(ra), std::move(dec), cand.prod_power,
                                 static_cast<u64>(q2_max), cfg.c, cfg.eps};
        }
    }

    if (violation) {
        violation->op = "detect_weyl_structure";
        violation->x = x.coeffs();
        violation->n = n;
        violation->a = a;
        violation->c = cfg.c;
        violation->eps = cfg.eps;
        violation->q_limit = q2_max;
        violation->note = "no admissible decomposition satisfies the approximation bounds";
    }
    return std::nullopt;
}

GaussGridScan scan_gauss_grid(int grid_log2, std::uint64_t n, double alpha,
                              const DetectorConfig& cfg, int workers, const Budget& budget) {
    if (grid_log2 < 1 || grid_log2 > 14) throw invalid_input("grid_log2 must lie in [1,14]");
    if (!(alpha > 0.5 && alpha < 1.0)) throw invalid_input("alpha must lie in (1/2, 1)");
    if (n == 0) throw invalid_input("n must be >= 1");
    std::uint64_t g = 1ull << grid_log2;
    std::uint64_t points = g * g;
    if (points > budget.max_terms() / n) throw budget_exceeded("grid scan above term budget");
    budget.charge(points * n);

    GaussGridScan out;
    out.points = points;
    out.n = n;
    out.threshold = std::pow(static_cast<double>(n), alpha);

    std::vector<float> mag(points);
    int nw = workers > 0 ? workers : default_workers();
    parallel_for(g, nw, [&](size_t row) {
        std::vector<phase64> turns(2);
        turns[0] = static_cast<phase64>(row) << (64 - grid_log2);
        for (std::uint64_t col = 0; col < g; ++col) {
            turns[1] = col << (64 - grid_log2);
            PolyPhaseStepper step(turns, 1);
            CompensatedSum acc;
            for (std::uint64_t t = 0; t < n; ++t) {
                acc.add(unit_circle(step.current()));
                step.advance();
            }
            mag[row * g + col] = static_cast<float>(std::abs(acc.value()));
        }
    });

    // hits re-measured in double before detection; borderline float rounding
    // must not enroll points that are actually below the threshold
    for (std::uint64_t idx = 0; idx < points; ++idx) {
        if (static_cast<double>(mag[idx]) < out.threshold * (1.0 - 1e-6)) continue;
        std::uint64_t i = idx / g, j = idx % g;
        PhaseVector x = PhaseVector::from_rational(
            {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)}, g);
        double a = eval_weyl_sum(x, 0, n, Budget(budget.max_terms())).abs();
        if (a < out.threshold) continue;
        GaussGridHit hit;
        hit.x1 = static_cast<double>(i) / static_cast<double>(g);
        hit.x2 = static_cast<double>(j) / static_cast<double>(g);
        hit.abs_sum = a;
        ViolationRecord vr;
        auto det = detect_gauss_structure(x, n, a, cfg, &vr);
        if (det) {
            hit.detected = true;
            hit.approx = det->approx;
            out.max_q = std::max(out.max_q, det->approx.q);
        } else {
            out.violations.push_back(vr);
        }
        out.hits.push_back(std::move(hit));
    }
    return out;
}

} // namespace weylscope
