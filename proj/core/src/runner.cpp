#include "weylscope/runner.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "weylscope/budget.hpp"
#include "weylscope/cover.hpp"
#include "weylscope/dimension.hpp"
#include "weylscope/errors.hpp"
#include "weylscope/formulas.hpp"
#include "weylscope/gauss_sums.hpp"
#include "weylscope/io.hpp"
#include "weylscope/matrix_sums.hpp"
#include "weylscope/moments.hpp"
#include "weylscope/numtheory.hpp"
#include "weylscope/parallel.hpp"
#include "weylscope/rynne.hpp"
#include "weylscope/sequence_sums.hpp"
#include "weylscope/structure_detect.hpp"
#include "weylscope/version.hpp"
#include "weylscope/weyl_sums.hpp"

namespace weylscope {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// strict config parsing
// ---------------------------------------------------------------------------

void expect_keys(const json& j, const std::set<std::string>& allowed, const std::string& ctx) {
    if (!j.is_object()) throw invalid_input(ctx + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw invalid_input("unknown key '" + it.key() + "' in " + ctx);
}

template <class T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw invalid_input("bad value for '" + key + "'");
    }
}

template <class T>
T require(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key)) throw invalid_input("missing key '" + key + "' in " + ctx);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw invalid_input("bad value for '" + key + "' in " + ctx);
    }
}

SequenceSpec parse_sequence(const json& j) {
    expect_keys(j, {"kind", "coeffs", "d", "tau", "values", "matrices"}, "sequence spec");
    std::string kind = require<std::string>(j, "kind", "sequence spec");
    std::optional<double> tau;
    if (j.contains("tau")) tau = j.at("tau").get<double>();
    if (kind == "monomial") return SequenceSpec::monomial(require<int>(j, "d", kind));
    if (kind == "integer-polynomial")
        return SequenceSpec::integer_polynomial(
            require<std::vector<std::int64_t>>(j, "coeffs", kind), tau);
    if (kind == "real-polynomial")
        return SequenceSpec::real_polynomial(require<std::vector<double>>(j, "coeffs", kind), tau);
    if (kind == "floor-power") return SequenceSpec::floor_power(require<double>(j, "tau", kind));
    if (kind == "convex-table")
        return SequenceSpec::convex_table(require<std::vector<std::int64_t>>(j, "values", kind),
                                          tau);
    if (kind == "explicit-table") {
        const json& vals = j.at("values");
        bool all_int = true;
        for (const auto& v : vals)
            if (!v.is_number_integer()) all_int = false;
        if (all_int)
            return SequenceSpec::explicit_table(vals.get<std::vector<std::int64_t>>(), tau);
        return SequenceSpec::explicit_real_table(vals.get<std::vector<double>>(), tau);
    }
    if (kind == "matrix-family") {
        auto rows = require<std::vector<std::vector<std::int64_t>>>(j, "matrices", kind);
        std::vector<IntMatrix> mats;
        for (const auto& flat : rows) {
            auto dim = static_cast<int>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
            if (static_cast<size_t>(dim) * dim != flat.size())
                throw invalid_input("matrix entries must form a d x d block");
            mats.push_back(IntMatrix{dim, flat});
        }
        return SequenceSpec::matrix_family(std::move(mats), tau);
    }
    throw invalid_input("unknown sequence kind: " + kind);
}

PhaseVector parse_phase_vector(const json& j) {
    if (j.is_array()) return PhaseVector(j.get<std::vector<double>>());
    expect_keys(j, {"num", "den"}, "x");
    return PhaseVector::from_rational(require<std::vector<std::int64_t>>(j, "num", "x"),
                                      require<std::uint64_t>(j, "den", "x"));
}

ScalarPhase parse_scalar_phase(const json& j) {
    if (j.is_number()) return ScalarPhase::of(j.get<double>());
    expect_keys(j, {"num", "den"}, "x");
    return ScalarPhase::fraction(require<std::int64_t>(j, "num", "x"),
                                 require<std::uint64_t>(j, "den", "x"));
}

// ---------------------------------------------------------------------------
// experiment results
// ---------------------------------------------------------------------------

struct TableResult {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    json summary = json::object();
    std::vector<std::string> violation_lines;
    int exit_code = 0;
    std::string stdout_line;
};

struct Ctx {
    std::uint64_t seed = 0;
    int workers = 0;
    Budget budget{Budget::global_max_terms()};
};

std::string short_num(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

std::string complex_text(const ComplexSum& s) {
    std::ostringstream os;
    os.precision(10);
    os << s.re << (s.im < 0 ? "" : "+") << s.im << "i";
    return os.str();
}

// ---------------------------------------------------------------------------
// sum
// ---------------------------------------------------------------------------

TableResult handle_sum(const json& p, Ctx& ctx) {
    expect_keys(p, {"kind", "x", "m", "n", "a", "b", "p", "f", "h", "probe"}, "params");
    std::string kind = require<std::string>(p, "kind", "params");
    auto m = get_or<std::uint64_t>(p, "m", 0);
    TableResult t;
    t.columns = {"kind", "m", "n", "re", "im", "abs", "n_terms", "phase_error_bound"};
    ComplexSum s;
    std::uint64_t n = 0;
    if (kind == "weyl") {
        n = require<std::uint64_t>(p, "n", kind);
        s = eval_weyl_sum(parse_phase_vector(p.at("x")), m, n, ctx.budget);
    } else if (kind == "sequence") {
        n = require<std::uint64_t>(p, "n", kind);
        s = eval_sequence_sum(parse_sequence(p.at("f")), parse_scalar_phase(p.at("x")), m, n,
                              ctx.budget);
    } else if (kind == "gauss") {
        auto pp = require<std::uint64_t>(p, "p", kind);
        n = pp;
        s = eval_complete_gauss(require<std::int64_t>(p, "a", kind),
                                require<std::int64_t>(p, "b", kind), pp, ctx.budget);
    } else if (kind == "matrix") {
        n = require<std::uint64_t>(p, "n", kind);
        s = eval_matrix_sum(parse_sequence(p.at("f")),
                            require<std::vector<std::int64_t>>(p, "h", kind),
                            parse_phase_vector(p.at("x")), n, ctx.budget);
    } else if (kind == "completion") {
        n = require<std::uint64_t>(p, "n", kind);
        double w = eval_completion_sum(parse_sequence(p.at("f")), parse_scalar_phase(p.at("x")), n,
                                       ctx.budget);
        s = {w, 0, (2 * n + 1) * n, 0};
    } else {
        throw invalid_input("unknown sum kind: " + kind);
    }
    t.rows.push_back({kind, format_number(m), format_number(n), format_number(s.re),
                      format_number(s.im), format_number(s.abs()), format_number(s.n_terms),
                      format_number(s.phase_error_bound)});
    t.summary["value_re"] = s.re;
    t.summary["value_im"] = s.im;
    t.summary["abs"] = s.abs();
    t.stdout_line = complex_text(s);
    return t;
}

// ---------------------------------------------------------------------------
// formula
// ---------------------------------------------------------------------------

FormulaParams parse_formula_params(const json& p) {
    FormulaParams fp;
    fp.d = get_or<int>(p, "d", 2);
    fp.alpha = get_or<double>(p, "alpha", 0.75);
    fp.tau = get_or<double>(p, "tau", 2.0);
    fp.nu = get_or<double>(p, "nu", 1.0);
    if (p.contains("thetas")) fp.thetas = p.at("thetas").get<std::vector<double>>();
    return fp;
}

TableResult handle_formula(const json& p, Ctx&) {
    expect_keys(p, {"name", "d", "alpha", "tau", "thetas", "nu"}, "params");
    std::string name = require<std::string>(p, "name", "params");
    FormulaParams fp = parse_formula_params(p);
    FormulaResult r = theoretical_dims(name, fp);
    TableResult t;
    t.columns = {"name", "d", "alpha", "tau", "value", "in_domain", "argmin"};
    t.rows.push_back({name, format_number(static_cast<std::int64_t>(fp.d)),
                      format_number(fp.alpha), format_number(fp.tau), format_number(r.value),
                      r.in_domain ? "true" : "false",
                      format_number(static_cast<std::int64_t>(r.argmin))});
    t.summary["value"] = r.value;
    t.summary["in_domain"] = r.in_domain;
    t.stdout_line = short_num(r.value);
    return t;
}

// ---------------------------------------------------------------------------
// scan (grid scan with structure detection)
// ---------------------------------------------------------------------------

TableResult handle_scan(const json& p, Ctx& ctx) {
    expect_keys(p, {"grid_log2", "n", "alpha", "c", "eps"}, "params");
    int grid_log2 = require<int>(p, "grid_log2", "params");
    auto n = require<std::uint64_t>(p, "n", "params");
    double alpha = require<double>(p, "alpha", "params");
    DetectorConfig cfg;
    cfg.c = get_or<double>(p, "c", cfg.c);
    cfg.eps = get_or<double>(p, "eps", cfg.eps);

    GaussGridScan scan = scan_gauss_grid(grid_log2, n, alpha, cfg, ctx.workers, ctx.budget);

    TableResult t;
    t.columns = {"x1", "x2", "abs_sum", "n", "detected", "q", "a1", "a2", "err1", "err2"};
    for (const auto& h : scan.hits) {
        std::vector<std::string> row{format_number(h.x1), format_number(h.x2),
                                     format_number(h.abs_sum), format_number(n),
                                     h.detected ? "true" : "false"};
        if (h.detected) {
            row.push_back(format_number(h.approx.q));
            row.push_back(format_number(h.approx.numerators[0]));
            row.push_back(format_number(h.approx.numerators[1]));
            row.push_back(format_number(h.approx.errors[0]));
            row.push_back(format_number(h.approx.errors[1]));
        } else {
            row.insert(row.end(), {"", "", "", "", ""});
        }
        t.rows.push_back(std::move(row));
    }
    for (const auto& v : scan.violations) t.violation_lines.push_back(v.to_json());
    t.summary["points"] = scan.points;
    t.summary["threshold"] = scan.threshold;
    t.summary["hits"] = scan.hits.size();
    t.summary["violations"] = scan.violations.size();
    t.summary["max_q"] = scan.max_q;
    t.summary["c"] = cfg.c;
    t.summary["eps"] = cfg.eps;
    t.exit_code = scan.violations.empty() ? 0 : 4;
    t.stdout_line = "hits=" + std::to_string(scan.hits.size()) +
                    " violations=" + std::to_string(scan.violations.size()) +
                    " max_q=" + std::to_string(scan.max_q);
    return t;
}

// ---------------------------------------------------------------------------
// structure (one-shot detectors, decompositions, enumerations, samples)
// ---------------------------------------------------------------------------

TableResult handle_structure(const json& p, Ctx& ctx) {
    expect_keys(p, {"op", "x", "n", "a", "c", "eps", "q", "d", "i", "limit", "alpha", "p_max",
                    "count", "eta"},
                "params");
    std::string op = require<std::string>(p, "op", "params");
    TableResult t;
    if (op == "detect_gauss" || op == "detect_weyl") {
        PhaseVector x = parse_phase_vector(p.at("x"));
        auto n = require<std::uint64_t>(p, "n", op);
        DetectorConfig cfg;
        cfg.c = get_or<double>(p, "c", cfg.c);
        cfg.eps = get_or<double>(p, "eps", cfg.eps);
        double a = p.contains("a") ? p.at("a").get<double>()
                                   : eval_weyl_sum(x, 0, n, ctx.budget).abs();
        t.columns = {"q", "numerators", "errors", "bound_ok"};
        ViolationRecord vr;
        std::optional<RationalApprox> ra;
        if (op == "detect_gauss") {
            auto det = detect_gauss_structure(x, n, a, cfg, &vr);
            if (det) ra = det->approx;
        } else {
            auto det = detect_weyl_structure(x, n, a, cfg, &vr);
            if (det) {
                ra = det->approx;
                t.summary["parts"] = det->decomposition.parts;
                t.summary["product_power"] = det->product_power;
            }
        }
        if (ra) {
            std::string nums, errs, oks;
            for (size_t i = 0; i < ra->numerators.size(); ++i) {
                nums += (i ? ";" : "") + format_number(ra->numerators[i]);
                errs += (i ? ";" : "") + format_number(ra->errors[i]);
                oks += (i ? ";" : "") + std::string(ra->bound_ok[i] ? "true" : "false");
            }
            t.rows.push_back({format_number(ra->q), nums, errs, oks});
            t.summary["q"] = ra->q;
            t.stdout_line = "q=" + std::to_string(ra->q);
        } else {
            t.violation_lines.push_back(vr.to_json());
            t.exit_code = 4;
            t.stdout_line = "no structure found (violation record emitted)";
        }
        t.summary["a"] = a;
        return t;
    }
    if (op == "decompose") {
        auto q = require<std::uint64_t>(p, "q", op);
        int d = require<int>(p, "d", op);
        PowerfulDecomposition dec = decompose_powerful(q, d);
        t.columns = {"q", "d", "parts", "flags_verified", "pairwise_coprime"};
        std::string parts;
        for (size_t i = 0; i < dec.parts.size(); ++i)
            parts += (i ? ";" : "") + format_number(dec.parts[i]);
        t.rows.push_back({format_number(q), format_number(static_cast<std::int64_t>(d)), parts,
                          dec.flags_verified ? "true" : "false",
                          dec.pairwise_coprime ? "true" : "false"});
        t.summary["parts"] = dec.parts;
        t.stdout_line = "parts=" + parts;
        return t;
    }
    if (op == "powerful") {
        int i = require<int>(p, "i", op);
        auto limit = require<std::uint64_t>(p, "limit", op);
        auto nums = enumerate_powerful(i, limit);
        t.columns = {"i", "limit", "count", "bound_c_x_root"};
        double root = std::pow(static_cast<double>(limit), 1.0 / i);
        t.rows.push_back({format_number(static_cast<std::int64_t>(i)), format_number(limit),
                          format_number(static_cast<std::uint64_t>(nums.size())),
                          format_number(static_cast<double>(nums.size()) / root)});
        t.summary["count"] = nums.size();
        t.summary["ratio_to_root"] = static_cast<double>(nums.size()) / root;
        t.stdout_line = "count=" + std::to_string(nums.size());
        return t;
    }
    if (op == "rynne") {
        double alpha = require<double>(p, "alpha", op);
        auto p_max = require<std::uint64_t>(p, "p_max", op);
        auto count = require<std::uint64_t>(p, "count", op);
        double eta = get_or<double>(p, "eta", 0.02);
        auto pts = rynne_sample(alpha, p_max, count, ctx.seed, eta);
        t.columns = {"p", "a", "b", "x1", "x2", "theta1", "theta2", "witness_ok", "n", "abs_sum",
                     "c_measured"};
        double min_c = std::numeric_limits<double>::infinity();
        for (const auto& pt : pts) {
            std::uint64_t n = rynne_sum_length(pt.p, alpha);
            double mag = eval_weyl_sum(pt.x, 0, n, ctx.budget).abs();
            double cmeas = mag / std::pow(static_cast<double>(n), alpha);
            min_c = std::min(min_c, cmeas);
            t.rows.push_back({format_number(pt.p), format_number(pt.a), format_number(pt.b),
                              format_number(pt.x.coeff(1)), format_number(pt.x.coeff(2)),
                              format_number(pt.thetas[0]), format_number(pt.thetas[1]),
                              witness_holds(pt) ? "true" : "false", format_number(n),
                              format_number(mag), format_number(cmeas)});
        }
        t.summary["min_c"] = min_c;
        t.stdout_line = "min_c=" + short_num(min_c);
        return t;
    }
    throw invalid_input("unknown structure op: " + op);
}

// ---------------------------------------------------------------------------
// cover / boxdim
// ---------------------------------------------------------------------------

std::vector<std::string> cover_row(const CoverReport& r) {
    return {format_number(static_cast<std::int64_t>(r.scale_index)), format_number(r.zeta),
            format_number(r.hit_count), format_number(static_cast<std::int64_t>(r.ambient_dim)),
            format_number(r.alpha), format_number(r.n_max), cover_mode_name(r.mode)};
}

const std::vector<std::string> kCoverColumns = {"scale_index", "zeta",  "hit_count",
                                                "dim_ambient", "alpha", "N_max",
                                                "mode"};

TableResult handle_cover(const json& p, Ctx& ctx) {
    expect_keys(p, {"mode", "f", "alpha", "n", "eps", "s", "t", "c", "h", "c_level"}, "params");
    std::string mode = get_or<std::string>(p, "mode", "interval");
    auto n = require<std::uint64_t>(p, "n", "params");
    double eps = get_or<double>(p, "eps", 0.05);
    double c = get_or<double>(p, "c", 4.0);
    TableResult t;
    t.columns = kCoverColumns;
    CoverReport rep;
    if (mode == "interval") {
        std::optional<std::pair<double, double>> st;
        if (p.contains("s") && p.contains("t"))
            st = std::make_pair(p.at("s").get<double>(), p.at("t").get<double>());
        rep = cover_level_set_1d(parse_sequence(p.at("f")), require<double>(p, "alpha", "params"),
                                 n, eps, st, c, ctx.workers, ctx.budget);
    } else if (mode == "cube") {
        rep = cube_cover_matrix(parse_sequence(p.at("f")),
                                require<std::vector<std::int64_t>>(p, "h", "params"),
                                require<double>(p, "c_level", "params"), n, eps, c, ctx.workers,
                                ctx.budget);
    } else {
        throw invalid_input("unknown cover mode: " + mode);
    }
    t.rows.push_back(cover_row(rep));
    t.summary["hit_count"] = rep.hit_count;
    t.summary["zeta"] = rep.zeta;
    t.summary["budget_bound"] = rep.budget_bound;
    t.summary["within_budget"] = rep.within_budget;
    t.summary["c"] = rep.c;
    t.summary["eps"] = rep.eps;
    t.exit_code = rep.within_budget ? 0 : 4;
    t.stdout_line = "hit_count=" + std::to_string(rep.hit_count);
    return t;
}

TableResult handle_boxdim(const json& p, Ctx& ctx) {
    expect_keys(p, {"target", "d", "f", "completion", "alpha", "n_list", "grid_log2", "scales",
                    "theoretical"},
                "params");
    LevelSetSpec spec;
    std::string target = get_or<std::string>(p, "target", "weyl");
    spec.target =
        target == "weyl" ? LevelSetSpec::Target::weyl : LevelSetSpec::Target::sequence;
    spec.weyl_d = get_or<int>(p, "d", 2);
    if (p.contains("f")) spec.f = parse_sequence(p.at("f"));
    spec.completion_mode = get_or<bool>(p, "completion", false);
    spec.alpha = require<double>(p, "alpha", "params");
    spec.n_list = require<std::vector<std::uint64_t>>(p, "n_list", "params");
    int grid_log2 = require<int>(p, "grid_log2", "params");
    std::vector<int> scales;
    if (p.contains("scales")) scales = p.at("scales").get<std::vector<int>>();

    auto reports = box_count_exceptional(spec, grid_log2, scales, ctx.workers, ctx.budget);

    std::optional<double> theo;
    if (p.contains("theoretical")) {
        FormulaParams fp;
        fp.d = spec.weyl_d;
        fp.alpha = spec.alpha;
        if (spec.f && spec.f->kind() != SeqKind::matrix_family) fp.tau = spec.f->growth_tau();
        theo = theoretical_dims(p.at("theoretical").get<std::string>(), fp).value;
    }

    TableResult t;
    t.columns = kCoverColumns;
    for (const auto& r : reports) t.rows.push_back(cover_row(r));
    try {
        DimensionEstimate est = estimate_dimension(reports, theo);
        t.summary["slope"] = est.slope;
        t.summary["stderr"] = est.stderr_;
        t.summary["scales_used"] = est.scales_used;
        if (theo) {
            t.summary["theoretical"] = *theo;
            t.summary["delta"] = est.slope - *theo;
        }
        t.stdout_line = "slope=" + short_num(est.slope);
    } catch (const insufficient_data& e) {
        t.summary["slope_error"] = e.what();
        t.stdout_line = std::string("no estimate: ") + e.what();
    }
    return t;
}

// ---------------------------------------------------------------------------
// moment / verify
// ---------------------------------------------------------------------------

const std::vector<std::string> kMomentColumns = {"claim", "N",     "s",   "value", "method",
                                                 "error", "claimed_exponent", "C", "eps",
                                                 "pass"};

TableResult handle_verify(const json& p, Ctx& ctx);

TableResult handle_moment(const json& p, Ctx& ctx) {
    // a claim key turns a moment run into the matching exponent verification
    if (p.contains("claim")) return handle_verify(p, ctx);
    expect_keys(p, {"method", "f", "s", "n", "samples", "c"}, "params");
    std::string method = require<std::string>(p, "method", "params");
    SequenceSpec f = parse_sequence(p.at("f"));
    auto n = require<std::uint64_t>(p, "n", "params");
    MomentResult m;
    if (method == "exact")
        m = exact_even_moment(f, require<int>(p, "s", "params"), n, ctx.budget);
    else if (method == "mc")
        m = mc_moment(f, require<double>(p, "s", "params"), n,
                      get_or<std::uint64_t>(p, "samples", 100000), ctx.seed, ctx.budget);
    else if (method == "completion")
        m = completion_moment(f, require<int>(p, "s", "params"), n, get_or<double>(p, "c", 8.0),
                              ctx.budget);
    else
        throw invalid_input("unknown moment method: " + method);

    TableResult t;
    t.columns = kMomentColumns;
    t.rows.push_back({"", format_number(m.n), format_number(m.s), format_number(m.value),
                      moment_method_name(m.method), format_number(m.error), "",
                      format_number(m.c), format_number(m.eps),
                      m.within_bound ? "true" : "false"});
    t.summary["value"] = m.value;
    t.summary["error"] = m.error;
    t.exit_code = m.within_bound ? 0 : 4;
    t.stdout_line = short_num(m.value);
    return t;
}

Claim parse_claim(const json& p) {
    std::string name = require<std::string>(p, "claim", "params");
    Claim c;
    if (name == "hua") { c.kind = ClaimKind::hua; c.r = get_or<int>(p, "r", 2); }
    else if (name == "wooley") { c.kind = ClaimKind::wooley; c.r = get_or<int>(p, "r", 2); }
    else if (name == "monomial") { c.kind = ClaimKind::monomial; c.d = get_or<int>(p, "d", 2); }
    else if (name == "convex4") c.kind = ClaimKind::convex4;
    else if (name == "convex_s") { c.kind = ClaimKind::convex_s; c.s = get_or<int>(p, "s", 6); }
    else if (name == "ps4") { c.kind = ClaimKind::ps4; c.tau = get_or<double>(p, "tau", 1.5); }
    else if (name == "separated2") c.kind = ClaimKind::separated2;
    else if (name == "matrix2") c.kind = ClaimKind::matrix2;
    else throw invalid_input("unknown claim: " + name);
    return c;
}

TableResult handle_verify(const json& p, Ctx& ctx) {
    expect_keys(p, {"claim", "r", "s", "d", "tau", "f", "n_list", "c", "eps", "slope_tol", "h",
                    "samples"},
                "params");
    Claim claim = parse_claim(p);
    SequenceSpec f = parse_sequence(p.at("f"));
    auto n_list = require<std::vector<std::uint64_t>>(p, "n_list", "params");
    double c = get_or<double>(p, "c", 8.0);
    double eps = get_or<double>(p, "eps", 0.05);
    double slope_tol = get_or<double>(p, "slope_tol", 0.15);
    std::optional<std::vector<std::int64_t>> h;
    if (p.contains("h")) h = p.at("h").get<std::vector<std::int64_t>>();

    ExponentReport rep =
        verify_exponent(claim, f, n_list, c, eps, slope_tol, h ? &*h : nullptr,
                        get_or<std::uint64_t>(p, "samples", 100000), ctx.seed, ctx.budget);

    TableResult t;
    t.columns = kMomentColumns;
    for (const auto& row : rep.rows)
        t.rows.push_back({rep.claim, format_number(row.n), format_number(rep.s),
                          format_number(row.value), moment_method_name(row.method),
                          format_number(row.error), format_number(rep.claimed_exponent),
                          format_number(rep.c), format_number(rep.eps),
                          row.point_ok ? "true" : "false"});
    t.summary["claim"] = rep.claim;
    t.summary["fitted_slope"] = rep.fitted_slope;
    t.summary["claimed_exponent"] = rep.claimed_exponent;
    t.summary["slope_ok"] = rep.slope_ok;
    t.summary["pass"] = rep.pass;
    t.exit_code = rep.pass ? 0 : 4;
    t.stdout_line = rep.claim + (rep.pass ? " pass" : " FAIL") +
                    " slope=" + short_num(rep.fitted_slope);
    return t;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

TableResult run_named(const std::string& experiment, const json& params, Ctx& ctx);

TableResult handle_sweep(const json& p, Ctx& ctx) {
    expect_keys(p, {"experiment", "over", "base"}, "params");
    std::string inner = require<std::string>(p, "experiment", "params");
    if (inner == "sweep") throw invalid_input("nested sweeps are not supported");
    const json& over = p.at("over");
    if (!over.is_object() || over.empty()) throw invalid_input("'over' must name swept keys");
    json base = p.contains("base") ? p.at("base") : json::object();

    // expand each swept key to its value list
    std::vector<std::string> keys;
    std::vector<std::vector<json>> values;
    for (auto it = over.begin(); it != over.end(); ++it) {
        keys.push_back(it.key());
        std::vector<json> vals;
        const json& v = it.value();
        if (v.is_array()) {
            for (const auto& e : v) vals.push_back(e);
        } else if (v.is_object()) {
            expect_keys(v, {"from", "to", "step", "values"}, "sweep range");
            if (v.contains("values")) {
                for (const auto& e : v.at("values")) vals.push_back(e);
            } else {
                double from = require<double>(v, "from", "sweep range");
                double to = require<double>(v, "to", "sweep range");
                double step = require<double>(v, "step", "sweep range");
                if (!(step > 0)) throw invalid_input("sweep step must be > 0");
                for (int i = 0;; ++i) {
                    double x = from + i * step;
                    if (x > to + 1e-12) break;
                    vals.push_back(x);
                }
            }
        } else {
            throw invalid_input("sweep values must be an array or range object");
        }
        if (vals.empty()) throw invalid_input("empty sweep for key " + it.key());
        values.push_back(std::move(vals));
    }

    std::uint64_t combos = 1;
    for (const auto& v : values) {
        combos *= v.size();
        if (combos > 100000) throw budget_exceeded("sweep cross product above 10^5");
    }

    TableResult out;
    out.exit_code = 0;
    for (std::uint64_t c = 0; c < combos; ++c) {
        json params = base;
        std::uint64_t rest = c;
        for (size_t k = 0; k < keys.size(); ++k) {
            size_t i = rest % values[k].size();
            rest /= values[k].size();
            params[keys[k]] = values[k][i];
        }
        TableResult one = run_named(inner, params, ctx);
        if (out.columns.empty()) {
            out.columns = keys;
            out.columns.insert(out.columns.end(), one.columns.begin(), one.columns.end());
        }
        for (auto& row : one.rows) {
            std::vector<std::string> full;
            rest = c;
            for (size_t k = 0; k < keys.size(); ++k) {
                size_t i = rest % values[k].size();
                rest /= values[k].size();
                const json& v = values[k][i];
                full.push_back(v.is_string() ? v.get<std::string>()
                                             : format_number(v.get<double>()));
            }
            full.insert(full.end(), row.begin(), row.end());
            out.rows.push_back(std::move(full));
        }
        for (auto& vl : one.violation_lines) out.violation_lines.push_back(std::move(vl));
        out.exit_code = std::max(out.exit_code, one.exit_code);
    }
    out.summary["combos"] = combos;
    out.summary["rows"] = out.rows.size();
    out.stdout_line = "rows=" + std::to_string(out.rows.size());
    return out;
}

TableResult run_named(const std::string& experiment, const json& params, Ctx& ctx) {
    if (experiment == "sum") return handle_sum(params, ctx);
    if (experiment == "formula") return handle_formula(params, ctx);
    if (experiment == "scan") return handle_scan(params, ctx);
    if (experiment == "structure") return handle_structure(params, ctx);
    if (experiment == "cover") return handle_cover(params, ctx);
    if (experiment == "boxdim") return handle_boxdim(params, ctx);
    if (experiment == "moment") return handle_moment(params, ctx);
    if (experiment == "verify") return handle_verify(params, ctx);
    if (experiment == "sweep") return handle_sweep(params, ctx);
    throw invalid_input("unknown experiment: " + experiment);
}

// ---------------------------------------------------------------------------
// config + outputs
// ---------------------------------------------------------------------------

json parse_override_value(const std::string& text) {
    json v = json::parse(text, nullptr, false);
    if (!v.is_discarded() && (v.is_number() || v.is_boolean() || v.is_array())) return v;
    return json(text);
}

} // namespace

RunOutput run_from_config_text(const std::string& config_json, const CliOverrides& overrides) {
    json cfg = json::parse(config_json, nullptr, false);
    if (cfg.is_discarded()) throw invalid_input("config is not valid JSON");
    expect_keys(cfg, {"experiment", "seed", "workers", "budgets", "output", "params"}, "config");
    if (cfg.contains("budgets"))
        expect_keys(cfg.at("budgets"), {"terms"}, "budgets");
    if (cfg.contains("output"))
        expect_keys(cfg.at("output"), {"path", "format"}, "output");
    if (!cfg.contains("params")) cfg["params"] = json::object();

    // --set overrides: top-level scalars and params.<key>
    for (const std::string& kv : overrides.sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw invalid_input("--set needs key=value: " + kv);
        std::string key = kv.substr(0, eq);
        json val = parse_override_value(kv.substr(eq + 1));
        if (key == "seed" || key == "workers" || key == "experiment") cfg[key] = val;
        else if (key == "budgets.terms") cfg["budgets"]["terms"] = val;
        else if (key == "output.path") cfg["output"]["path"] = val;
        else if (key == "output.format") cfg["output"]["format"] = val;
        else if (key.rfind("params.", 0) == 0) cfg["params"][key.substr(7)] = val;
        else throw invalid_input("--set cannot target key: " + key);
    }
    if (overrides.seed) cfg["seed"] = *overrides.seed;
    if (overrides.workers) cfg["workers"] = *overrides.workers;
    if (overrides.out_path) cfg["output"]["path"] = *overrides.out_path;
    if (overrides.out_format) cfg["output"]["format"] = *overrides.out_format;

    std::string experiment = require<std::string>(cfg, "experiment", "config");
    Ctx ctx;
    ctx.seed = get_or<std::uint64_t>(cfg, "seed", 0);
    ctx.workers = get_or<int>(cfg, "workers", 0);
    std::uint64_t terms = Budget::global_max_terms();
    if (cfg.contains("budgets")) terms = get_or<std::uint64_t>(cfg.at("budgets"), "terms", terms);
    ctx.budget = Budget(terms);
    std::string out_path, out_format = "csv";
    if (cfg.contains("output")) {
        out_path = get_or<std::string>(cfg.at("output"), "path", "");
        out_format = get_or<std::string>(cfg.at("output"), "format", "csv");
    }
    if (out_format != "csv" && out_format != "json")
        throw invalid_input("output format must be csv or json");

    // canonical config hash: sorted keys, compact dump
    nlohmann::json canonical = nlohmann::json::parse(cfg.dump());
    std::uint64_t config_hash = fnv1a64(canonical.dump());

    auto t0 = std::chrono::steady_clock::now();
    TableResult result = run_named(experiment, cfg.at("params"), ctx);
    auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();

    RunOutput out;
    out.exit_code = result.exit_code;

    if (!out_path.empty()) {
        if (out_format == "csv") {
            write_text_file(out_path, csv_document(result.columns, result.rows));
            if (!result.summary.empty()) {
                write_text_file(out_path + ".summary.json", result.summary.dump(2) + "\n");
                out.files.push_back(out_path + ".summary.json");
            }
        } else {
            json doc;
            doc["columns"] = result.columns;
            doc["rows"] = result.rows;
            doc["summary"] = result.summary;
            write_text_file(out_path, doc.dump(2) + "\n");
        }
        out.files.push_back(out_path);
        if (!result.violation_lines.empty()) {
            std::string vpath = out_path + ".violations.jsonl";
            std::string body;
            for (const auto& line : result.violation_lines) body += line + "\n";
            write_text_file(vpath, body);
            out.files.push_back(vpath);
        }
        // manifest carries wall time; result files stay byte-identical per config
        json manifest;
        char hash_hex[20];
        std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                      static_cast<unsigned long long>(config_hash));
        manifest["config_hash"] = hash_hex;
        manifest["version"] = kVersion;
        manifest["wall_ms"] = wall_ms;
        manifest["budget_terms"] = terms;
        manifest["constants"] = {{"c", cfg["params"].contains("c")
                                           ? cfg["params"]["c"].get<double>()
                                           : 0.0},
                                 {"eps", cfg["params"].contains("eps")
                                             ? cfg["params"]["eps"].get<double>()
                                             : 0.0}};
        std::string mpath = out_path + ".manifest.json";
        write_text_file(mpath, manifest.dump(2) + "\n");
        out.files.push_back(mpath);
    }

    std::ostringstream os;
    os << result.stdout_line << "\n";
    os << "summary: " << result.summary.dump() << "\n";
    out.summary = os.str();
    return out;
}

} // namespace weylscope
