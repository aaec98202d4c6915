#include "weylscope/phase_vector.hpp"

#include <cmath>
#include <string>

#include "weylscope/errors.hpp"

namespace weylscope {

namespace {

double reduce_mod1(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r = 0.0; // floor rounding at negative values just below an integer
    return r;
}

} // namespace

PhaseVector::PhaseVector(std::vector<double> coeffs) {
    if (coeffs.empty()) throw invalid_input("phase vector needs degree >= 1");
    turns_.reserve(coeffs.size());
    for (double c : coeffs) {
        if (!std::isfinite(c)) throw invalid_input("phase coefficient must be finite");
        turns_.push_back(phase_from_unit(reduce_mod1(c)));
    }
}

PhaseVector PhaseVector::from_rational(const std::vector<std::int64_t>& numerators,
                                       std::uint64_t q) {
    if (numerators.empty()) throw invalid_input("phase vector needs degree >= 1");
    if (q == 0 || q > RationalPhases::kMaxDenominator)
        throw invalid_input("rational denominator must lie in [1, 10^6]");
    PhaseVector pv;
    RationalPhases rp;
    rp.den = q;
    for (std::int64_t a : numerators) {
        std::int64_t r = a % static_cast<std::int64_t>(q);
        if (r < 0) r += static_cast<std::int64_t>(q);
        rp.num.push_back(static_cast<std::uint64_t>(r));
        pv.turns_.push_back(phase_from_ratio(static_cast<std::uint64_t>(r), q));
    }
    pv.rational_ = std::move(rp);
    return pv;
}

PhaseVector PhaseVector::from_turns(std::vector<phase64> turns) {
    if (turns.empty()) throw invalid_input("phase vector needs degree >= 1");
    PhaseVector pv;
    pv.turns_ = std::move(turns);
    return pv;
}

PhaseVector PhaseVector::negated() const {
    PhaseVector out;
    out.turns_.reserve(turns_.size());
    for (phase64 t : turns_) out.turns_.push_back(static_cast<phase64>(0) - t);
    if (rational_) {
        RationalPhases rp;
        rp.den = rational_->den;
        for (std::uint64_t a : rational_->num) rp.num.push_back(a == 0 ? 0 : rational_->den - a);
        out.rational_ = std::move(rp);
    }
    return out;
}

std::vector<double> PhaseVector::coeffs() const {
    std::vector<double> out;
    out.reserve(turns_.size());
    for (phase64 t : turns_) out.push_back(phase_to_unit(t));
    return out;
}

} // namespace weylscope
