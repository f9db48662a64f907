#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace seqlab {

// Thrown on malformed user input: alphabet mismatches, bad spec strings,
// out-of-range indices.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an exhaustive operation would exceed its enumeration budget.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Caps for the exhaustive operations.  One counter is shared across a single
// top-level call; exceeding it aborts the call with BudgetError.
struct EnumBudget {
    std::uint64_t max_evals = 8'000'000;

    struct Meter {
        const EnumBudget* budget;
        std::uint64_t used = 0;
        void tick(std::uint64_t n = 1) {
            used += n;
            if (used > budget->max_evals)
                throw BudgetError("enumeration budget exceeded (" +
                                  std::to_string(budget->max_evals) + " evals)");
        }
    };

    Meter meter() const { return Meter{this}; }
};

inline const EnumBudget& default_budget() {
    static const EnumBudget b{};
    return b;
}

}  // namespace seqlab
