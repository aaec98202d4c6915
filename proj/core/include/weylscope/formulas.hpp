#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace weylscope {

/// Closed-form dimension bound evaluation. Out-of-domain parameters still
/// produce a value (full curves are useful for plotting) with in_domain
/// cleared; argmin reports the minimizing index of min/inf forms.
struct FormulaResult {
    double value = 0;
    bool in_domain = true;
    int argmin = -1;
};

/// D = min(2^(d-1), 2d(d-1)), the mean-value exponent cap for degree d.
int weyl_exponent_cap(int d);

FormulaResult gauss_dim(double alpha);                 // min{7/2-3a, 6(1-a)}
FormulaResult weyl_upper(int d, double alpha);         // min_h (d^2+1)(1-a)/h + (h-1)/2
FormulaResult one_param_upper(int d, double alpha);    // 2(1-a) / (1+1/d)(1-a)
FormulaResult conjecture_dim(int d, double alpha);     // min_j over theta_j profile
FormulaResult old_upper(int d, double alpha);          // min_k ((2d^2+4d)(1-a)+k(k+1))/(4-2a+2k)
FormulaResult kappa_lower(int d, double alpha);        // 3(1-a)/2 at d=2, else 2 kappa_d (1-a)
FormulaResult poly_u1u2(int d, double alpha);          // min{U1, U2}
FormulaResult monom_upper(int d, double alpha);        // (1+s0)(1-a)/(d+1-a)
FormulaResult ps_upper(double tau, double alpha);      // floor-power sequences
FormulaResult separated_upper(double tau, double alpha);
FormulaResult convex_upper(double tau, double alpha);  // min{U1, inf_k U2(k)}
FormulaResult increasing_upper(double tau, double alpha);
FormulaResult matrix_upper(int d, double tau);         // d - 1/tau
FormulaResult rynne_dim(std::vector<double> thetas, double nu);

/// The two sides of the upper-bound comparison at beta = 1 - alpha:
/// F(h, beta) = (d^2+1) beta/h + (h-1)/2,
/// G(k, beta) = ((2d^2+4d) beta + k(k+1)) / (2 + 2 beta + 2k).
double compare_f(int d, int h, double beta);
double compare_g(int d, int k, double beta);

/// Exact rational arithmetic twin for crossover identities.
struct Rat {
    long long num = 0;
    long long den = 1;

    static Rat of(long long n, long long d);
    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const;
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rat& o) const;
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Rat gauss_dim_exact(const Rat& alpha);
Rat conjecture_dim_exact(int d, const Rat& alpha);

struct FormulaParams {
    int d = 2;
    double alpha = 0.75;
    double tau = 2;
    std::vector<double> thetas;
    double nu = 1;
};

/// Dispatch by name: gauss_dim, weyl_upper, one_param_upper, conjecture_dim,
/// old_upper, kappa_lower, poly_U1U2, monom_upper, ps_upper, separated_upper,
/// convex_upper, increasing_upper, matrix_upper, rynne_dim.
FormulaResult theoretical_dims(const std::string& name, const FormulaParams& params);

std::vector<std::string> formula_names();

} // namespace weylscope
