#include "weylscope/budget.hpp"

#include <cstdlib>
#include <string>

#include "weylscope/errors.hpp"

namespace weylscope {

void Budget::charge(std::uint64_t terms) const {
    if (terms > max_terms_) {
        throw budget_exceeded("term budget exceeded: need " + std::to_string(terms) +
                              " terms, budget is " + std::to_string(max_terms_));
    }
}

std::uint64_t Budget::global_max_terms() {
    if (const char* env = std::getenv("WEYLSCOPE_BUDGET_TERMS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultTerms;
}

} // namespace weylscope
