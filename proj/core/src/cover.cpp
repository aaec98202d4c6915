#include "weylscope/cover.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "weylscope/errors.hpp"
#include "weylscope/matrix_sums.hpp"
#include "weylscope/parallel.hpp"
#include "weylscope/phase.hpp"
#include "weylscope/weyl_sums.hpp"

namespace weylscope {

namespace {

constexpr size_t kMaxWitnesses = 8;

int pick_workers(int workers) { return workers > 0 ? workers : default_workers(); }

std::uint64_t charge_product(const Budget& budget, std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > budget.max_terms() / b)
        throw budget_exceeded("term budget exceeded by grid size");
    std::uint64_t total = a * b;
    budget.charge(total);
    return total;
}

} // namespace

const char* cover_mode_name(CoverMode m) {
    switch (m) {
        case CoverMode::interval_cover: return "interval-cover";
        case CoverMode::cube_cover: return "cube-cover";
        case CoverMode::box_count: return "box-count";
    }
    return "?";
}

CoverReport cover_level_set_1d(const SequenceSpec& f, double alpha, std::uint64_t n, double eps,
                               std::optional<std::pair<double, double>> moment_st, double c,
                               int workers, const Budget& budget) {
    if (!(alpha > 0 && alpha < 1)) throw invalid_input("alpha must lie in (0,1)");
    if (n == 0) throw invalid_input("n must be >= 1");
    double tau = f.growth_tau();
    double nd = static_cast<double>(n);
    double k_real = std::ceil(std::pow(nd, tau + 1.0 + eps - alpha));
    if (!(k_real <= 1e8)) throw budget_exceeded("interval count above 10^8");
    auto k = static_cast<std::uint64_t>(k_real);
    if (k == 0) k = 1;
    charge_product(budget, 2 * k, (2 * n + 1) * n);

    double threshold = std::pow(nd, alpha);

    // probes: left endpoints j/K and midpoints (j+1/2)/K; interval j is hit
    // if its left endpoint, midpoint, or right endpoint (= next left, wrapped)
    // reaches the threshold
    std::vector<double> w_left(k), w_mid(k);
    Budget unlimited(budget.max_terms());
    parallel_for(k, pick_workers(workers), [&](size_t j) {
        double kd = static_cast<double>(k);
        w_left[j] = eval_completion_sum(f, ScalarPhase::of(static_cast<double>(j) / kd), n,
                                        unlimited);
        w_mid[j] = eval_completion_sum(f, ScalarPhase::of((static_cast<double>(j) + 0.5) / kd), n,
                                       unlimited);
    });

    CoverReport rep;
    rep.mode = CoverMode::interval_cover;
    rep.zeta = 1.0 / static_cast<double>(k);
    rep.ambient_dim = 1;
    rep.alpha = alpha;
    rep.n_max = n;
    rep.c = c;
    rep.eps = eps;
    double kd = static_cast<double>(k);
    for (std::uint64_t j = 0; j < k; ++j) {
        double right = w_left[(j + 1) % k];
        if (std::max({w_left[j], w_mid[j], right}) < threshold) continue;
        ++rep.hit_count;
        if (rep.witnesses.size() < kMaxWitnesses) {
            double xw, vw;
            if (w_left[j] >= threshold) { xw = static_cast<double>(j) / kd; vw = w_left[j]; }
            else if (w_mid[j] >= threshold) { xw = (static_cast<double>(j) + 0.5) / kd; vw = w_mid[j]; }
            else { xw = static_cast<double>((j + 1) % k) / kd; vw = right; }
            rep.witnesses.push_back({{xw}, vw, n, j});
        }
    }
    if (moment_st) {
        auto [s, t] = *moment_st;
        rep.budget_bound = std::pow(nd, t - s * alpha + tau + 1.0 - alpha + 2.0 * eps);
        rep.within_budget = static_cast<double>(rep.hit_count) <= c * rep.budget_bound;
    }
    return rep;
}

namespace {

struct GridScanResult {
    std::vector<float> ratio;          // max_N |sum|/N^alpha per grid point
    std::vector<std::uint8_t> best_n;  // index into n_list of the max
};

GridScanResult scan_grid(const LevelSetSpec& spec, int grid_log2, int d, std::uint64_t g,
                         std::uint64_t points, const std::vector<double>& thresholds, int workers,
                         const Budget& budget) {
    GridScanResult res;
    res.ratio.assign(points, 0.0f);
    res.best_n.assign(points, 0);
    std::uint64_t n_max = spec.n_list.back();

    std::vector<std::int64_t> fvals;
    bool f_integer = false;
    if (spec.target == LevelSetSpec::Target::sequence) {
        f_integer = spec.f->integer_valued();
        if (f_integer && !spec.completion_mode) {
            fvals.resize(n_max);
            for (std::uint64_t i = 0; i < n_max; ++i) fvals[i] = spec.f->ivalue(i + 1);
        }
    }

    Budget unlimited(budget.max_terms());
    std::uint64_t rows = points / g;
    parallel_for(rows, pick_workers(workers), [&](size_t row) {
        std::vector<phase64> turns(static_cast<size_t>(d));
        for (std::uint64_t col = 0; col < g; ++col) {
            std::uint64_t idx = row * g + col;
            std::uint64_t rest = idx;
            for (int j = d - 1; j >= 0; --j) {
                turns[static_cast<size_t>(j)] = (rest % g) << (64 - grid_log2);
                rest /= g;
            }
            double best = 0;
            std::uint8_t bidx = 0;
            if (spec.target == LevelSetSpec::Target::weyl) {
                PolyPhaseStepper step(turns, 1);
                CompensatedSum acc;
                size_t next = 0;
                for (std::uint64_t nn = 1; nn <= n_max; ++nn) {
                    acc.add(unit_circle(step.current()));
                    step.advance();
                    if (next < spec.n_list.size() && spec.n_list[next] == nn) {
                        double r = std::abs(acc.value()) / thresholds[next];
                        if (r > best) { best = r; bidx = static_cast<std::uint8_t>(next); }
                        ++next;
                    }
                }
            } else if (spec.completion_mode) {
                double x = phase_to_unit(turns[0]);
                for (size_t ni = 0; ni < spec.n_list.size(); ++ni) {
                    double w = eval_completion_sum(*spec.f, ScalarPhase::of(x), spec.n_list[ni],
                                                   unlimited);
                    double r = w / thresholds[ni];
                    if (r > best) { best = r; bidx = static_cast<std::uint8_t>(ni); }
                }
            } else if (f_integer) {
                phase64 xt = turns[0];
                CompensatedSum acc;
                size_t next = 0;
                for (std::uint64_t nn = 1; nn <= n_max; ++nn) {
                    acc.add(unit_circle(xt * static_cast<std::uint64_t>(fvals[nn - 1])));
                    if (next < spec.n_list.size() && spec.n_list[next] == nn) {
                        double r = std::abs(acc.value()) / thresholds[next];
                        if (r > best) { best = r; bidx = static_cast<std::uint8_t>(next); }
                        ++next;
                    }
                }
            } else {
                double x = phase_to_unit(turns[0]);
                auto pre = eval_sequence_prefixes(*spec.f, ScalarPhase::of(x), n_max, unlimited);
                for (size_t ni = 0; ni < spec.n_list.size(); ++ni) {
                    double r = pre[spec.n_list[ni] - 1].abs() / thresholds[ni];
                    if (r > best) { best = r; bidx = static_cast<std::uint8_t>(ni); }
                }
            }
            res.ratio[idx] = static_cast<float>(best);
            res.best_n[idx] = bidx;
        }
    });
    return res;
}

// exact |sum| at one grid point for the recorded length (witness re-measure)
double measure_point(const LevelSetSpec& spec, int d, std::uint64_t g, int grid_log2,
                     std::uint64_t idx, std::uint64_t n, const Budget& budget) {
    std::vector<phase64> turns(static_cast<size_t>(d));
    std::uint64_t rest = idx;
    for (int j = d - 1; j >= 0; --j) {
        turns[static_cast<size_t>(j)] = (rest % g) << (64 - grid_log2);
        rest /= g;
    }
    if (spec.target == LevelSetSpec::Target::weyl) {
        PhaseVector pv = PhaseVector::from_turns(turns);
        return eval_weyl_sum(pv, 0, n, budget).abs();
    }
    double x = phase_to_unit(turns[0]);
    if (spec.completion_mode) return eval_completion_sum(*spec.f, ScalarPhase::of(x), n, budget);
    return eval_sequence_sum(*spec.f, ScalarPhase::of(x), 0, n, budget).abs();
}

} // namespace

std::vector<CoverReport> box_count_exceptional(const LevelSetSpec& spec, int grid_log2,
                                               std::vector<int> scales, int workers,
                                               const Budget& budget) {
    if (!(spec.alpha > 0 && spec.alpha < 1)) throw invalid_input("alpha must lie in (0,1)");
    if (spec.n_list.empty() || !std::is_sorted(spec.n_list.begin(), spec.n_list.end()) ||
        std::adjacent_find(spec.n_list.begin(), spec.n_list.end()) != spec.n_list.end())
        throw invalid_input("n_list must be strictly increasing and nonempty");
    if (grid_log2 < 1 || grid_log2 > 16) throw invalid_input("grid_log2 must lie in [1,16]");

    int d = spec.target == LevelSetSpec::Target::weyl ? spec.weyl_d : 1;
    if (d < 1 || d > 3) throw invalid_input("grid scans support ambient dimension 1..3");
    if (spec.target == LevelSetSpec::Target::sequence) {
        if (!spec.f) throw invalid_input("sequence target needs f");
        if (spec.n_list.back() > spec.f->max_n())
            throw invalid_input("sequence values unavailable up to N");
    }
    std::uint64_t g = 1ull << grid_log2;
    double points_d = std::pow(static_cast<double>(g), d);
    if (points_d > 3e7) throw budget_exceeded("grid too large");
    auto points = static_cast<std::uint64_t>(points_d);
    std::uint64_t n_max = spec.n_list.back();
    charge_product(budget, points,
                   spec.completion_mode ? (2 * n_max + 1) * n_max : n_max);

    if (scales.empty())
        for (int k = 1; k <= grid_log2; ++k) scales.push_back(k);
    for (int k : scales)
        if (k < 1 || k > grid_log2) throw invalid_input("scale outside [1, grid_log2]");

    std::vector<double> thresholds(spec.n_list.size());
    for (size_t i = 0; i < spec.n_list.size(); ++i)
        thresholds[i] = std::pow(static_cast<double>(spec.n_list[i]), spec.alpha);

    GridScanResult scan = scan_grid(spec, grid_log2, d, g, points, thresholds, workers, budget);

    // witness sample: first exceptional points in index order, re-measured in
    // full precision so stored values are sound
    Budget unlimited(budget.max_terms());
    struct W { std::uint64_t idx; double measured; std::uint64_t n; };
    std::vector<W> wits;
    for (std::uint64_t idx = 0; idx < points && wits.size() < kMaxWitnesses; ++idx) {
        if (scan.ratio[idx] < 1.0f) continue;
        std::uint64_t nn = spec.n_list[scan.best_n[idx]];
        double v = measure_point(spec, d, g, grid_log2, idx, nn, unlimited);
        if (v >= std::pow(static_cast<double>(nn), spec.alpha)) wits.push_back({idx, v, nn});
    }

    std::vector<CoverReport> out;
    for (int k : scales) {
        CoverReport rep;
        rep.scale_index = k;
        rep.zeta = std::ldexp(1.0, -k);
        rep.ambient_dim = d;
        rep.alpha = spec.alpha;
        rep.n_max = n_max;
        rep.mode = CoverMode::box_count;

        int shift = grid_log2 - k;
        std::uint64_t boxes_per_axis = 1ull << k;
        std::uint64_t total_boxes = 1;
        for (int j = 0; j < d; ++j) total_boxes *= boxes_per_axis;
        std::vector<std::uint8_t> hit_box(total_boxes, 0);
        auto box_of = [&](std::uint64_t idx) {
            std::uint64_t rest = idx, box = 0;
            for (int j = 0; j < d; ++j) {
                box = box * boxes_per_axis + ((rest % g) >> shift);
                rest /= g;
            }
            return box;
        };
        for (std::uint64_t idx = 0; idx < points; ++idx)
            if (scan.ratio[idx] >= 1.0f) hit_box[box_of(idx)] = 1;
        for (std::uint64_t b = 0; b < total_boxes; ++b) rep.hit_count += hit_box[b];

        for (const W& w : wits) {
            CoverWitness cw;
            std::uint64_t rest = w.idx;
            for (int j = 0; j < d; ++j) {
                cw.x.insert(cw.x.begin(), static_cast<double>(rest % g) / static_cast<double>(g));
                rest /= g;
            }
            cw.measured = w.measured;
            cw.n = w.n;
            cw.box = box_of(w.idx);
            rep.witnesses.push_back(std::move(cw));
        }
        out.push_back(std::move(rep));
    }
    return out;
}

CoverReport cube_cover_matrix(const SequenceSpec& family, const std::vector<std::int64_t>& h,
                              double c_level, std::uint64_t n, double eps, double c_bound,
                              int workers, const Budget& budget) {
    // c >= 1 is allowed: |V| <= N makes the cover trivially empty above 1
    if (!(c_level > 0)) throw invalid_input("c must be > 0");
    if (!(eps > 0 && eps <= 1)) throw invalid_input("eps must lie in (0,1]");
    int d = family.matrix_dim();
    double tau = family.growth_tau();
    if (tau < 1.0 / d) throw invalid_input("declared tau must be >= 1/d");
    if (n == 0 || n > family.max_n()) throw invalid_input("family provides A_1..A_N only");
    auto k = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(n), tau) / eps));
    if (k == 0) k = 1;
    double cubes_d = std::pow(static_cast<double>(k), d);
    if (cubes_d > 2e7) throw budget_exceeded("cube count above 2*10^7");
    auto cubes = static_cast<std::uint64_t>(cubes_d + 0.5);
    charge_product(budget, 2 * cubes, n);

    // frequencies A_n h, wraparound exact for phases
    std::vector<std::vector<std::uint64_t>> w(n, std::vector<std::uint64_t>(static_cast<size_t>(d)));
    const auto& mats = family.matrices();
    for (std::uint64_t t = 0; t < n; ++t)
        for (int r = 0; r < d; ++r) {
            std::uint64_t acc = 0;
            for (int cidx = 0; cidx < d; ++cidx)
                acc += static_cast<std::uint64_t>(mats[t].at(r, cidx)) *
                       static_cast<std::uint64_t>(h[static_cast<size_t>(cidx)]);
            w[t][static_cast<size_t>(r)] = acc;
        }

    double thr = c_level * static_cast<double>(n);
    auto decode = [&](std::uint64_t idx, double offset, std::vector<phase64>& xt) {
        std::uint64_t rest = idx;
        for (int j = d - 1; j >= 0; --j) {
            double coord = (static_cast<double>(rest % k) + offset) / static_cast<double>(k);
            xt[static_cast<size_t>(j)] = phase_from_unit(coord);
            rest /= k;
        }
    };
    auto eval_at = [&](const std::vector<phase64>& xt) {
        CompensatedSum acc;
        for (std::uint64_t t = 0; t < n; ++t) {
            phase64 ph = 0;
            for (int j = 0; j < d; ++j) ph += xt[static_cast<size_t>(j)] * w[t][static_cast<size_t>(j)];
            acc.add(unit_circle(ph));
        }
        return std::abs(acc.value());
    };
    auto eval_grid = [&](double offset) {
        std::vector<std::uint8_t> big(cubes, 0);
        std::uint64_t row_count = cubes / k;
        parallel_for(row_count, pick_workers(workers), [&](size_t row) {
            std::vector<phase64> xt(static_cast<size_t>(d));
            for (std::uint64_t col = 0; col < k; ++col) {
                std::uint64_t idx = row * k + col;
                decode(idx, offset, xt);
                if (eval_at(xt) >= thr) big[idx] = 1;
            }
        });
        return big;
    };
    std::vector<std::uint8_t> corner_big = eval_grid(0.0);
    std::vector<std::uint8_t> mid_big = eval_grid(0.5);

    CoverReport rep;
    rep.mode = CoverMode::cube_cover;
    rep.zeta = 1.0 / static_cast<double>(k);
    rep.ambient_dim = d;
    rep.alpha = c_level;
    rep.n_max = n;
    rep.c = c_bound;
    rep.eps = eps;

    std::vector<std::uint64_t> strides(static_cast<size_t>(d));
    {
        std::uint64_t s = 1;
        for (int j = d - 1; j >= 0; --j) {
            strides[static_cast<size_t>(j)] = s;
            s *= k;
        }
    }
    std::vector<phase64> xt(static_cast<size_t>(d));
    for (std::uint64_t idx = 0; idx < cubes; ++idx) {
        int hit_kind = mid_big[idx] ? 1 : 0; // 1 midpoint, 2 corner
        std::uint64_t hit_corner = 0;
        for (unsigned mask = 0; hit_kind == 0 && mask < (1u << d); ++mask) {
            std::uint64_t cidx = 0, rest = idx;
            for (int j = d - 1; j >= 0; --j) {
                std::uint64_t coord = rest % k;
                rest /= k;
                if (mask & (1u << static_cast<unsigned>(j))) coord = (coord + 1) % k;
                cidx += coord * strides[static_cast<size_t>(j)];
            }
            if (corner_big[cidx]) { hit_kind = 2; hit_corner = cidx; }
        }
        if (hit_kind == 0) continue;
        ++rep.hit_count;
        if (rep.witnesses.size() < kMaxWitnesses) {
            CoverWitness wit;
            std::uint64_t widx = hit_kind == 1 ? idx : hit_corner;
            double offset = hit_kind == 1 ? 0.5 : 0.0;
            decode(widx, offset, xt);
            std::uint64_t rest = widx;
            for (int j = d - 1; j >= 0; --j) {
                wit.x.insert(wit.x.begin(),
                             (static_cast<double>(rest % k) + offset) / static_cast<double>(k));
                rest /= k;
            }
            wit.measured = eval_at(xt);
            wit.n = n;
            wit.box = idx;
            rep.witnesses.push_back(std::move(wit));
        }
    }
    // the counting bound carries the eps dependence: N^2 #Q (eps/N^tau)^d << N
    rep.budget_bound = std::pow(eps, -d) * std::pow(static_cast<double>(n), d * tau - 1.0);
    rep.within_budget = static_cast<double>(rep.hit_count) <= c_bound * rep.budget_bound;
    return rep;
}

} // namespace weylscope
