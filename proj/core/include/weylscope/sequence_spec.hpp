#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace weylscope {

struct IntMatrix {
    int dim = 0;
    std::vector<std::int64_t> a; // row-major, dim*dim entries

    std::int64_t at(int r, int c) const { return a[static_cast<size_t>(r) * dim + c]; }
};

enum class SeqKind {
    integer_polynomial,
    real_polynomial,
    monomial,
    floor_power,
    convex_table,
    explicit_table,
    matrix_family,
};

/// Description of the sequence f(n) driving a one-parameter sum, plus its
/// declared growth rate tau with (1/N) sum |f(n)| << N^tau.
///
/// Construction validates the class invariants: monomial degree >= 1,
/// floor-power tau >= 1, strict convexity of convex tables, and pairwise
/// invertibility of matrix differences within the stored range.
class SequenceSpec {
  public:
    static SequenceSpec integer_polynomial(std::vector<std::int64_t> coeffs,
                                           std::optional<double> tau = {});
    static SequenceSpec real_polynomial(std::vector<double> coeffs,
                                        std::optional<double> tau = {});
    static SequenceSpec monomial(int d);
    static SequenceSpec floor_power(double tau);
    static SequenceSpec convex_table(std::vector<std::int64_t> values,
                                     std::optional<double> tau = {});
    static SequenceSpec explicit_table(std::vector<std::int64_t> values,
                                       std::optional<double> tau = {});
    static SequenceSpec explicit_real_table(std::vector<double> values,
                                            std::optional<double> tau = {});
    static SequenceSpec matrix_family(std::vector<IntMatrix> matrices,
                                      std::optional<double> tau = {});

    SeqKind kind() const { return kind_; }
    bool integer_valued() const;
    double growth_tau() const { return tau_; }

    /// Largest n with f(n) available; UINT64_MAX when unbounded.
    std::uint64_t max_n() const;

    /// f(n) for integer-valued kinds. Throws invalid_input otherwise.
    std::int64_t ivalue(std::uint64_t n) const;

    /// f(n) as a double for scalar kinds.
    double rvalue(std::uint64_t n) const;

    int matrix_dim() const;
    const std::vector<IntMatrix>& matrices() const;

    int poly_degree() const;

    std::string describe() const;

  private:
    SequenceSpec() = default;

    SeqKind kind_ = SeqKind::monomial;
    double tau_ = 1;
    int mono_d_ = 1;
    double fp_tau_ = 1;
    std::vector<std::int64_t> icoeffs_;
    std::vector<double> rcoeffs_;
    std::vector<std::int64_t> itable_;
    std::vector<double> rtable_;
    bool table_is_real_ = false;
    std::vector<IntMatrix> mats_;
};

/// Integer determinant (Bareiss), exact for the desk-scale entries used here.
__int128 int_determinant(const IntMatrix& m);

} // namespace weylscope
