#include "weylscope/weyl_sums.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <string>

#include "weylscope/errors.hpp"

namespace weylscope {

namespace {

constexpr std::uint64_t kCircleTableCap = 1ull << 16;

// Integer residue walk of the same polynomial mod q (q <= 10^6), used for
// exact-rational coefficients. Products stay below q^2 <= 10^12 < 2^63.
class ModQStepper {
  public:
    ModQStepper(const RationalPhases& r, std::uint64_t first_n) : q_(r.den) {
        size_t d = r.num.size();
        diffs_.resize(d + 1);
        for (size_t t = 0; t <= d; ++t) {
            std::uint64_t k = (first_n + t) % q_;
            std::uint64_t kp = 1, acc = 0;
            for (size_t j = 0; j < d; ++j) {
                kp = (kp * k) % q_;
                acc = (acc + r.num[j] * kp) % q_;
            }
            diffs_[t] = acc;
        }
        for (size_t lvl = 1; lvl <= d; ++lvl)
            for (size_t j = d; j >= lvl; --j)
                diffs_[j] = (diffs_[j] + q_ - diffs_[j - 1]) % q_;
    }

    std::uint64_t residue() const { return diffs_[0]; }

    void advance() {
        for (size_t j = 0; j + 1 < diffs_.size(); ++j) {
            diffs_[j] += diffs_[j + 1];
            if (diffs_[j] >= q_) diffs_[j] -= q_;
        }
    }

  private:
    std::uint64_t q_;
    std::vector<std::uint64_t> diffs_;
};

std::vector<std::complex<double>> circle_table(std::uint64_t q) {
    std::vector<std::complex<double>> tbl(q);
    for (std::uint64_t k = 0; k < q; ++k) tbl[k] = unit_circle(phase_from_ratio(k, q));
    return tbl;
}

double error_bound(std::uint64_t n) { return 4.0 * DBL_EPSILON * static_cast<double>(n); }

void check_range(const PhaseVector& x, std::uint64_t m, std::uint64_t n) {
    if (x.degree() < 1) throw invalid_input("empty phase vector");
    if (n == 0) throw invalid_input("sum length must be >= 1");
    if (m > (1ull << 62) || n > (1ull << 62) || m + n > (1ull << 62))
        throw invalid_input("sum range exceeds 2^62");
}

} // namespace

phase64 poly_phase_at(const std::vector<phase64>& turns, std::uint64_t k) {
    phase64 acc = 0;
    std::uint64_t kp = 1;
    for (phase64 t : turns) {
        kp *= k;
        acc += t * kp;
    }
    return acc;
}

PolyPhaseStepper::PolyPhaseStepper(const std::vector<phase64>& turns, std::uint64_t first_n) {
    size_t d = turns.size();
    diffs_.resize(d + 1);
    for (size_t t = 0; t <= d; ++t) diffs_[t] = poly_phase_at(turns, first_n + t);
    for (size_t lvl = 1; lvl <= d; ++lvl)
        for (size_t j = d; j >= lvl; --j)
            diffs_[j] -= diffs_[j - 1];
}

ComplexSum eval_weyl_sum(const PhaseVector& x, std::uint64_t m, std::uint64_t n,
                         const Budget& budget) {
    std::vector<std::uint64_t> one{n};
    return eval_weyl_prefixes(x, m, one, budget).front();
}

std::vector<ComplexSum> eval_weyl_prefixes(const PhaseVector& x, std::uint64_t m,
                                           const std::vector<std::uint64_t>& n_list,
                                           const Budget& budget) {
    if (n_list.empty() || !std::is_sorted(n_list.begin(), n_list.end()))
        throw invalid_input("prefix lengths must be sorted and nonempty");
    std::uint64_t n_max = n_list.back();
    check_range(x, m, n_max);
    budget.charge(n_max);

    std::vector<ComplexSum> out;
    out.reserve(n_list.size());
    CompensatedSum acc;
    size_t next = 0;

    auto emit_at = [&](std::uint64_t n) {
        while (next < n_list.size() && n_list[next] == n) {
            std::complex<double> v = acc.value();
            out.push_back({v.real(), v.imag(), n, error_bound(n)});
            ++next;
        }
    };

    const auto& rat = x.rational();
    if (rat && rat->den <= RationalPhases::kMaxDenominator) {
        ModQStepper step(*rat, m + 1);
        if (rat->den <= kCircleTableCap) {
            auto tbl = circle_table(rat->den);
            for (std::uint64_t n = 1; n <= n_max; ++n) {
                acc.add(tbl[step.residue()]);
                step.advance();
                emit_at(n);
            }
        } else {
            for (std::uint64_t n = 1; n <= n_max; ++n) {
                acc.add(unit_circle(phase_from_ratio(step.residue(), rat->den)));
                step.advance();
                emit_at(n);
            }
        }
    } else {
        PolyPhaseStepper step(x.turns(), m + 1);
        for (std::uint64_t n = 1; n <= n_max; ++n) {
            acc.add(unit_circle(step.current()));
            step.advance();
            emit_at(n);
        }
    }
    return out;
}

PhaseVector shift_coefficients(const PhaseVector& x, std::uint64_t m) {
    size_t d = static_cast<size_t>(x.degree());

    // binom(j,k) for j,k <= d; wraparound is harmless (everything is mod 1).
    std::vector<std::vector<std::uint64_t>> binom(d + 1, std::vector<std::uint64_t>(d + 1, 0));
    for (size_t j = 0; j <= d; ++j) {
        binom[j][0] = 1;
        for (size_t k = 1; k <= j; ++k)
            binom[j][k] = binom[j - 1][k - 1] + (k <= j - 1 ? binom[j - 1][k] : 0);
    }

    std::vector<phase64> yt(d, 0);
    for (size_t k = 1; k <= d; ++k) {
        phase64 acc = 0;
        std::uint64_t mpow = 1; // m^(j-k), with 0^0 = 1
        for (size_t j = k; j <= d; ++j) {
            acc += x.turns(static_cast<int>(j)) * (binom[j][k] * mpow);
            mpow *= m;
        }
        yt[k - 1] = acc;
    }

    const auto& rat = x.rational();
    if (rat) {
        std::uint64_t q = rat->den;
        std::uint64_t mq = m % q;
        std::vector<std::int64_t> nums(d, 0);
        for (size_t k = 1; k <= d; ++k) {
            std::uint64_t acc = 0;
            std::uint64_t mpow = 1;
            for (size_t j = k; j <= d; ++j) {
                std::uint64_t c = (binom[j][k] % q) * mpow % q;
                acc = (acc + c * rat->num[j - 1]) % q;
                mpow = (mpow * mq) % q;
            }
            nums[k - 1] = static_cast<std::int64_t>(acc);
        }
        return PhaseVector::from_rational(nums, q);
    }

    return PhaseVector::from_turns(std::move(yt));
}

} // namespace weylscope
