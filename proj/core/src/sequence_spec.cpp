#include "weylscope/sequence_spec.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "weylscope/errors.hpp"

namespace weylscope {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 checked_narrow(i128 v, const char* what) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw invalid_input(std::string(what) + " overflows 64-bit range");
    return static_cast<i64>(v);
}

double table_growth(double mean_abs, size_t len) {
    if (len < 2 || mean_abs <= 1.0) return 0.0;
    return std::log(mean_abs) / std::log(static_cast<double>(len));
}

} // namespace

__int128 int_determinant(const IntMatrix& m) {
    // fraction-free Gaussian elimination
    int d = m.dim;
    std::vector<i128> a(m.a.begin(), m.a.end());
    auto at = [&](int r, int c) -> i128& { return a[static_cast<size_t>(r) * d + c]; };
    i128 sign = 1, prev = 1;
    for (int k = 0; k < d - 1; ++k) {
        if (at(k, k) == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < d; ++r)
                if (at(r, k) != 0) { swap_row = r; break; }
            if (swap_row < 0) return 0;
            for (int c = 0; c < d; ++c) std::swap(at(k, c), at(swap_row, c));
            sign = -sign;
        }
        for (int r = k + 1; r < d; ++r) {
            for (int c = k + 1; c < d; ++c)
                at(r, c) = (at(r, c) * at(k, k) - at(r, k) * at(k, c)) / prev;
            at(r, k) = 0;
        }
        prev = at(k, k);
    }
    return sign * at(d - 1, d - 1);
}

SequenceSpec SequenceSpec::integer_polynomial(std::vector<i64> coeffs, std::optional<double> tau) {
    if (coeffs.empty() || coeffs.back() == 0)
        throw invalid_input("integer polynomial needs a nonzero leading coefficient");
    SequenceSpec s;
    s.kind_ = SeqKind::integer_polynomial;
    s.icoeffs_ = std::move(coeffs);
    s.tau_ = tau.value_or(static_cast<double>(s.icoeffs_.size() - 1));
    return s;
}

SequenceSpec SequenceSpec::real_polynomial(std::vector<double> coeffs, std::optional<double> tau) {
    if (coeffs.empty() || coeffs.back() == 0)
        throw invalid_input("real polynomial needs a nonzero leading coefficient");
    SequenceSpec s;
    s.kind_ = SeqKind::real_polynomial;
    s.rcoeffs_ = std::move(coeffs);
    s.tau_ = tau.value_or(static_cast<double>(s.rcoeffs_.size() - 1));
    return s;
}

SequenceSpec SequenceSpec::monomial(int d) {
    if (d < 1) throw invalid_input("monomial exponent must be >= 1");
    SequenceSpec s;
    s.kind_ = SeqKind::monomial;
    s.mono_d_ = d;
    s.tau_ = d;
    return s;
}

SequenceSpec SequenceSpec::floor_power(double tau) {
    if (!(tau >= 1.0)) throw invalid_input("floor-power needs tau >= 1");
    SequenceSpec s;
    s.kind_ = SeqKind::floor_power;
    s.fp_tau_ = tau;
    s.tau_ = tau;
    return s;
}

SequenceSpec SequenceSpec::convex_table(std::vector<i64> values, std::optional<double> tau) {
    for (size_t n = 1; n + 1 < values.size(); ++n) {
        if (!(values[n + 1] - values[n] > values[n] - values[n - 1]))
            throw invalid_input("table is not strictly convex at index " + std::to_string(n + 1));
    }
    SequenceSpec s;
    s.kind_ = SeqKind::convex_table;
    s.itable_ = std::move(values);
    double mean = 0;
    for (i64 v : s.itable_) mean += std::abs(static_cast<double>(v));
    if (!s.itable_.empty()) mean /= static_cast<double>(s.itable_.size());
    s.tau_ = tau.value_or(table_growth(mean, s.itable_.size()));
    return s;
}

SequenceSpec SequenceSpec::explicit_table(std::vector<i64> values, std::optional<double> tau) {
    SequenceSpec s;
    s.kind_ = SeqKind::explicit_table;
    s.itable_ = std::move(values);
    double mean = 0;
    for (i64 v : s.itable_) mean += std::abs(static_cast<double>(v));
    if (!s.itable_.empty()) mean /= static_cast<double>(s.itable_.size());
    s.tau_ = tau.value_or(table_growth(mean, s.itable_.size()));
    return s;
}

SequenceSpec SequenceSpec::explicit_real_table(std::vector<double> values,
                                               std::optional<double> tau) {
    SequenceSpec s;
    s.kind_ = SeqKind::explicit_table;
    s.table_is_real_ = true;
    s.rtable_ = std::move(values);
    double mean = 0;
    for (double v : s.rtable_) mean += std::abs(v);
    if (!s.rtable_.empty()) mean /= static_cast<double>(s.rtable_.size());
    s.tau_ = tau.value_or(table_growth(mean, s.rtable_.size()));
    return s;
}

SequenceSpec SequenceSpec::matrix_family(std::vector<IntMatrix> matrices,
                                         std::optional<double> tau) {
    if (matrices.empty()) throw invalid_input("matrix family must be nonempty");
    int d = matrices.front().dim;
    if (d < 1) throw invalid_input("matrix dimension must be >= 1");
    for (const auto& m : matrices) {
        if (m.dim != d || m.a.size() != static_cast<size_t>(d) * d)
            throw invalid_input("matrix family entries must all be d x d");
    }
    // A_n - A_m must be invertible for all n != m in the stored range
    for (size_t n = 0; n < matrices.size(); ++n) {
        for (size_t m = n + 1; m < matrices.size(); ++m) {
            IntMatrix diff{d, {}};
            diff.a.resize(static_cast<size_t>(d) * d);
            for (size_t k = 0; k < diff.a.size(); ++k)
                diff.a[k] = matrices[n].a[k] - matrices[m].a[k];
            if (int_determinant(diff) == 0)
                throw invalid_input("matrix family has a singular difference A_" +
                                    std::to_string(n + 1) + " - A_" + std::to_string(m + 1));
        }
    }
    SequenceSpec s;
    s.kind_ = SeqKind::matrix_family;
    s.mats_ = std::move(matrices);
    double mean = 0;
    for (const auto& m : s.mats_) {
        double fro = 0;
        for (i64 v : m.a) fro += static_cast<double>(v) * static_cast<double>(v);
        mean += std::sqrt(fro);
    }
    mean /= static_cast<double>(s.mats_.size());
    s.tau_ = tau.value_or(std::max(1.0 / d, table_growth(mean, s.mats_.size())));
    return s;
}

bool SequenceSpec::integer_valued() const {
    switch (kind_) {
        case SeqKind::integer_polynomial:
        case SeqKind::monomial:
        case SeqKind::floor_power:
        case SeqKind::convex_table:
            return true;
        case SeqKind::explicit_table:
            return !table_is_real_;
        default:
            return false;
    }
}

std::uint64_t SequenceSpec::max_n() const {
    switch (kind_) {
        case SeqKind::convex_table:
        case SeqKind::explicit_table:
            return table_is_real_ ? rtable_.size() : itable_.size();
        case SeqKind::matrix_family:
            return mats_.size();
        default:
            return std::numeric_limits<std::uint64_t>::max();
    }
}

std::int64_t SequenceSpec::ivalue(std::uint64_t n) const {
    if (n == 0 || n > max_n()) throw invalid_input("sequence value unavailable at n");
    switch (kind_) {
        case SeqKind::integer_polynomial: {
            i128 acc = 0;
            for (size_t j = icoeffs_.size(); j-- > 0;) {
                acc = acc * static_cast<i128>(n) + icoeffs_[j];
                if (acc > (i128(1) << 100) || acc < -(i128(1) << 100))
                    throw invalid_input("polynomial value overflows");
            }
            return checked_narrow(acc, "polynomial value");
        }
        case SeqKind::monomial: {
            i128 acc = 1;
            for (int j = 0; j < mono_d_; ++j) {
                acc *= static_cast<i128>(n);
                if (acc > (i128(1) << 100)) throw invalid_input("monomial value overflows");
            }
            return checked_narrow(acc, "monomial value");
        }
        case SeqKind::floor_power: {
            long double v = std::floor(std::pow(static_cast<long double>(n), fp_tau_));
            if (v > 9.0e18L) throw invalid_input("floor-power value overflows");
            return static_cast<i64>(v);
        }
        case SeqKind::convex_table:
            return itable_[n - 1];
        case SeqKind::explicit_table:
            if (table_is_real_) throw invalid_input("table holds real values");
            return itable_[n - 1];
        default:
            throw invalid_input("sequence kind is not integer-valued");
    }
}

double SequenceSpec::rvalue(std::uint64_t n) const {
    if (kind_ == SeqKind::real_polynomial) {
        if (n == 0) throw invalid_input("sequence value unavailable at n");
        double acc = 0;
        for (size_t j = rcoeffs_.size(); j-- > 0;) acc = acc * static_cast<double>(n) + rcoeffs_[j];
        return acc;
    }
    if (kind_ == SeqKind::explicit_table && table_is_real_) {
        if (n == 0 || n > rtable_.size()) throw invalid_input("sequence value unavailable at n");
        return rtable_[n - 1];
    }
    if (kind_ == SeqKind::matrix_family) throw invalid_input("matrix family has no scalar values");
    return static_cast<double>(ivalue(n));
}

int SequenceSpec::matrix_dim() const {
    if (kind_ != SeqKind::matrix_family) throw invalid_input("not a matrix family");
    return mats_.front().dim;
}

const std::vector<IntMatrix>& SequenceSpec::matrices() const {
    if (kind_ != SeqKind::matrix_family) throw invalid_input("not a matrix family");
    return mats_;
}

int SequenceSpec::poly_degree() const {
    switch (kind_) {
        case SeqKind::integer_polynomial: return static_cast<int>(icoeffs_.size()) - 1;
        case SeqKind::real_polynomial: return static_cast<int>(rcoeffs_.size()) - 1;
        case SeqKind::monomial: return mono_d_;
        default: throw invalid_input("sequence has no polynomial degree");
    }
}

std::string SequenceSpec::describe() const {
    switch (kind_) {
        case SeqKind::integer_polynomial: {
            std::string s = "int-poly[";
            for (size_t j = 0; j < icoeffs_.size(); ++j)
                s += (j ? "," : "") + std::to_string(icoeffs_[j]);
            return s + "]";
        }
        case SeqKind::real_polynomial: return "real-poly(deg " + std::to_string(poly_degree()) + ")";
        case SeqKind::monomial: return "n^" + std::to_string(mono_d_);
        case SeqKind::floor_power: return "floor(n^" + std::to_string(fp_tau_) + ")";
        case SeqKind::convex_table: return "convex-table(" + std::to_string(itable_.size()) + ")";
        case SeqKind::explicit_table:
            return "table(" + std::to_string(table_is_real_ ? rtable_.size() : itable_.size()) + ")";
        case SeqKind::matrix_family:
            return "matrices(d=" + std::to_string(mats_.front().dim) + ", " +
                   std::to_string(mats_.size()) + ")";
    }
    return "?";
}

} // namespace weylscope
