#pragma once

#include <cstdint>

namespace weylscope {

/// Per-call term budget. Every sum/scan operation charges its estimated term
/// count up front and refuses to start when the budget would be exceeded.
class Budget {
  public:
    static constexpr std::uint64_t kDefaultTerms = 1'000'000'000ull;

    Budget() : max_terms_(global_max_terms()) {}
    explicit Budget(std::uint64_t max_terms) : max_terms_(max_terms) {}

    std::uint64_t max_terms() const { return max_terms_; }

    /// Throws budget_exceeded if `terms` exceeds the budget.
    void charge(std::uint64_t terms) const;

    /// Default budget: kDefaultTerms, overridable via WEYLSCOPE_BUDGET_TERMS.
    static std::uint64_t global_max_terms();

  private:
    std::uint64_t max_terms_;
};

} // namespace weylscope
