#include "weylscope/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "weylscope/errors.hpp"

namespace weylscope {

namespace {

bool alpha_in_unit_half(double alpha) { return alpha > 0.5 && alpha < 1.0; }

FormulaResult minimize(int lo, int hi, const std::function<double(int)>& f) {
    FormulaResult r;
    r.value = std::numeric_limits<double>::infinity();
    for (int i = lo; i <= hi; ++i) {
        double v = f(i);
        if (v < r.value) {
            r.value = v;
            r.argmin = i;
        }
    }
    return r;
}

} // namespace

int weyl_exponent_cap(int d) {
    if (d < 2) throw invalid_input("exponent cap needs d >= 2");
    double p2 = std::pow(2.0, d - 1);
    double quad = 2.0 * d * (d - 1);
    return static_cast<int>(std::min(p2, quad));
}

FormulaResult gauss_dim(double alpha) {
    FormulaResult r;
    r.value = std::min(3.5 - 3.0 * alpha, 6.0 * (1.0 - alpha));
    r.argmin = 3.5 - 3.0 * alpha <= 6.0 * (1.0 - alpha) ? 1 : 2;
    r.in_domain = alpha_in_unit_half(alpha);
    return r;
}

FormulaResult weyl_upper(int d, double alpha) {
    if (d < 3) throw invalid_input("weyl_upper needs d >= 3");
    FormulaResult r = minimize(1, d, [&](int h) {
        return (d * d + 1) * (1.0 - alpha) / h + (h - 1) / 2.0;
    });
    int dd = weyl_exponent_cap(d);
    r.in_domain = alpha > 1.0 - 1.0 / dd && alpha < 1.0;
    return r;
}

FormulaResult one_param_upper(int d, double alpha) {
    if (d < 2) throw invalid_input("one_param_upper needs d >= 2");
    FormulaResult r;
    r.value = d == 2 ? 2.0 * (1.0 - alpha) : (1.0 + 1.0 / d) * (1.0 - alpha);
    int dd = weyl_exponent_cap(d);
    r.in_domain = alpha > 1.0 - 1.0 / dd && alpha < 1.0;
    return r;
}

FormulaResult conjecture_dim(int d, double alpha) {
    if (d < 1) throw invalid_input("conjecture_dim needs d >= 1");
    std::vector<double> th(static_cast<size_t>(d) + 1, 0.0);
    for (int i = 1; i <= d; ++i) th[static_cast<size_t>(i)] = i / (2.0 * (1.0 - alpha)) - 1.0;
    double prefix = 0;
    FormulaResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= d; ++j) {
        prefix += th[static_cast<size_t>(j)];
        double v = (d + 1 + j * th[static_cast<size_t>(j)] - prefix) /
                   (1.0 + th[static_cast<size_t>(j)]);
        if (v < best.value) {
            best.value = v;
            best.argmin = j;
        }
    }
    best.in_domain = alpha_in_unit_half(alpha);
    return best;
}

FormulaResult old_upper(int d, double alpha) {
    if (d < 2) throw invalid_input("old_upper needs d >= 2");
    FormulaResult r = minimize(0, d - 1, [&](int k) {
        return ((2.0 * d * d + 4.0 * d) * (1.0 - alpha) + k * (k + 1.0)) /
               (4.0 - 2.0 * alpha + 2.0 * k);
    });
    r.in_domain = alpha_in_unit_half(alpha);
    return r;
}

FormulaResult kappa_lower(int d, double alpha) {
    if (d < 2) throw invalid_input("kappa_lower needs d >= 2");
    FormulaResult r;
    if (d == 2) {
        r.value = 1.5 * (1.0 - alpha);
    } else {
        double kappa = 0;
        for (int nu = 1; nu <= d; ++nu) {
            double v = std::min(1.0 / (2.0 * nu), 1.0 / (2.0 * d - nu));
            if (v > kappa) {
                kappa = v;
                r.argmin = nu;
            }
        }
        r.value = 2.0 * kappa * (1.0 - alpha);
    }
    r.in_domain = alpha_in_unit_half(alpha);
    return r;
}

FormulaResult poly_u1u2(int d, double alpha) {
    if (d < 2) throw invalid_input("poly_u1u2 needs d >= 2");
    double denom = d + 1 - alpha;
    FormulaResult u1 = minimize(1, d, [&](int r) {
        return (d + 1 - alpha + std::pow(2.0, r) * (1.0 - alpha) - r) / denom;
    });
    FormulaResult u2 = minimize(1, d, [&](int r) {
        return (d + 1 - alpha + r * (r + 1.0) * (1.0 - alpha) - r) / denom;
    });
    FormulaResult r = u1.value <= u2.value ? u1 : u2;
    r.value = std::min(u1.value, u2.value);
    r.in_domain = alpha_in_unit_half(alpha);
    return r;
}

FormulaResult monom_upper(int d, double alpha) {
    if (d < 2) throw invalid_input("monom_upper needs d >= 2");
    FormulaResult inner = minimize(1, d, [&](int r) {
        return (2.0 * d + (r - 1.0) * (r - 2.0)) / r;
    });
    double s0 = d * (d - 1.0) + inner.value;
    FormulaResult r;
    r.value = (1.0 + s0) * (1.0 - alpha) / (d + 1 - alpha);
    r.argmin = inner.argmin;
    r.in_domain = alpha_in_unit_half(alpha);
    return r;
}

FormulaResult ps_upper(double tau, double alpha) {
    FormulaResult r;
    if (tau < 2.0)
        r.value = 1.0 - (4.0 * alpha + tau - 4.0) / (tau + 1.0 - alpha);
    else
        r.value = 1.0 - (4.0 * alpha - 2.0) / (tau + 1.0 - alpha);
    r.in_domain = tau >= 1.0 && alpha_in_unit_half(alpha);
    return r;
}

FormulaResult separated_upper(double tau, double alpha) {
    FormulaResult r;
    r.value = 1.0 - (2.0 * alpha - 1.0) / (tau + 1.0 - alpha);
    r.in_domain = tau > 0.0 && alpha_in_unit_half(alpha);
    return r;
}

FormulaResult convex_upper(double tau, double alpha) {
    double u1 = (tau + 45.0 / 13.0 - 5.0 * alpha) / (tau - alpha);
    // the k-infimand rises once 2 - 2 alpha exceeds 2^-k, so the scan is exact
    // after the first local increase
    double best = std::numeric_limits<double>::infinity();
    int best_k = 3;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 3; k <= 64; ++k) {
        double v = (tau - alpha + 2.0 * k - 1.0 + std::pow(2.0, 1 - k) - 2.0 * k * alpha) /
                   (tau + 1.0 - alpha);
        if (v < best) {
            best = v;
            best_k = k;
        }
        if (v > prev) break;
        prev = v;
    }
    FormulaResult r;
    if (u1 <= best) {
        r.value = u1;
        r.argmin = -1;
    } else {
        r.value = best;
        r.argmin = best_k;
    }
    r.in_domain = tau > alpha && alpha_in_unit_half(alpha);
    return r;
}

FormulaResult increasing_upper(double tau, double alpha) {
    FormulaResult r;
    r.value = 1.0 - (2.0 * alpha - 1.0) / tau;
    r.in_domain = tau >= 1.0 && alpha_in_unit_half(alpha);
    return r;
}

FormulaResult matrix_upper(int d, double tau) {
    if (d < 1) throw invalid_input("matrix_upper needs d >= 1");
    FormulaResult r;
    r.value = d - 1.0 / tau;
    r.in_domain = tau >= 1.0 / d;
    return r;
}

FormulaResult rynne_dim(std::vector<double> thetas, double nu) {
    if (thetas.empty()) throw invalid_input("rynne_dim needs at least one exponent");
    std::sort(thetas.begin(), thetas.end());
    int d = static_cast<int>(thetas.size());
    double prefix = 0;
    FormulaResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= d; ++j) {
        prefix += thetas[static_cast<size_t>(j - 1)];
        double v = (d + nu + j * thetas[static_cast<size_t>(j - 1)] - prefix) /
                   (1.0 + thetas[static_cast<size_t>(j - 1)]);
        if (v < best.value) {
            best.value = v;
            best.argmin = j;
        }
    }
    double sum = prefix;
    best.in_domain = sum >= nu;
    return best;
}

double compare_f(int d, int h, double beta) {
    return (d * d + 1.0) * beta / h + (h - 1.0) / 2.0;
}

double compare_g(int d, int k, double beta) {
    return ((2.0 * d * d + 4.0 * d) * beta + k * (k + 1.0)) / (2.0 + 2.0 * beta + 2.0 * k);
}

Rat Rat::of(long long n, long long d) {
    if (d == 0) throw invalid_input("zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(std::abs(n), d);
    if (g > 1) { n /= g; d /= g; }
    return {n, d};
}

namespace {
Rat make_checked(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min() ||
        d > std::numeric_limits<long long>::max())
        throw invalid_input("rational overflow");
    return {static_cast<long long>(n), static_cast<long long>(d)};
}
} // namespace

Rat Rat::operator+(const Rat& o) const {
    return make_checked(__int128(num) * o.den + __int128(o.num) * den, __int128(den) * o.den);
}
Rat Rat::operator-(const Rat& o) const {
    return make_checked(__int128(num) * o.den - __int128(o.num) * den, __int128(den) * o.den);
}
Rat Rat::operator*(const Rat& o) const {
    return make_checked(__int128(num) * o.num, __int128(den) * o.den);
}
Rat Rat::operator/(const Rat& o) const {
    if (o.num == 0) throw invalid_input("rational division by zero");
    return make_checked(__int128(num) * o.den, __int128(den) * o.num);
}
bool Rat::operator<(const Rat& o) const {
    return __int128(num) * o.den < __int128(o.num) * den;
}

Rat gauss_dim_exact(const Rat& alpha) {
    Rat a = Rat::of(7, 2) - Rat::of(3, 1) * alpha;
    Rat b = Rat::of(6, 1) * (Rat::of(1, 1) - alpha);
    return a < b ? a : b;
}

Rat conjecture_dim_exact(int d, const Rat& alpha) {
    if (d < 1) throw invalid_input("conjecture_dim needs d >= 1");
    Rat one = Rat::of(1, 1);
    Rat half_inv = one / (Rat::of(2, 1) * (one - alpha)); // 1/(2(1-alpha))
    Rat prefix = Rat::of(0, 1);
    std::optional<Rat> best;
    for (int j = 1; j <= d; ++j) {
        Rat theta_j = Rat::of(j, 1) * half_inv - one;
        prefix = prefix + theta_j;
        Rat v = (Rat::of(d + 1, 1) + Rat::of(j, 1) * theta_j - prefix) / (one + theta_j);
        if (!best || v < *best) best = v;
    }
    return *best;
}

FormulaResult theoretical_dims(const std::string& name, const FormulaParams& p) {
    if (name == "gauss_dim") return gauss_dim(p.alpha);
    if (name == "weyl_upper") return weyl_upper(p.d, p.alpha);
    if (name == "one_param_upper") return one_param_upper(p.d, p.alpha);
    if (name == "conjecture_dim") return conjecture_dim(p.d, p.alpha);
    if (name == "old_upper") return old_upper(p.d, p.alpha);
    if (name == "kappa_lower") return kappa_lower(p.d, p.alpha);
    if (name == "poly_U1U2") return poly_u1u2(p.d, p.alpha);
    if (name == "monom_upper") return monom_upper(p.d, p.alpha);
    if (name == "ps_upper") return ps_upper(p.tau, p.alpha);
    if (name == "separated_upper") return separated_upper(p.tau, p.alpha);
    if (name == "convex_upper") return convex_upper(p.tau, p.alpha);
    if (name == "increasing_upper") return increasing_upper(p.tau, p.alpha);
    if (name == "matrix_upper") return matrix_upper(p.d, p.tau);
    if (name == "rynne_dim") return rynne_dim(p.thetas, p.nu);
    throw invalid_input("unknown formula name: " + name);
}

std::vector<std::string> formula_names() {
    return {"gauss_dim",     "weyl_upper",      "one_param_upper", "conjecture_dim",
            "old_upper",     "kappa_lower",     "poly_U1U2",       "monom_upper",
            "ps_upper",      "separated_upper", "convex_upper",    "increasing_upper",
            "matrix_upper",  "rynne_dim"};
}

} // namespace weylscope
