#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace subshift {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Typed budget overflow; carries the estimate that tripped the limit.
struct budget_error : error {
    budget_error(const std::string& what, std::uint64_t estimate, std::uint64_t limit)
        : error(what + " (estimate " + std::to_string(estimate) + ", limit " + std::to_string(limit) + ")"),
          estimate(estimate), limit(limit) {}
    std::uint64_t estimate;
    std::uint64_t limit;
};

struct validation_error : error {
    using error::error;
};

struct budgets {
    std::uint64_t max_vertices = 2'000'000;  // strip graph vertices
    std::uint64_t max_language = 1'000'000;  // enumerated words per language set
    int max_threads = 1;

    static budgets& global() {
        static budgets b = init();
        return b;
    }

  private:
    static budgets init() {
        budgets b;
        if (const char* env = std::getenv("SUBSHIFT_BUDGET_VERTICES")) {
            char* end = nullptr;
            auto v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) b.max_vertices = v;
        }
        return b;
    }
};

}  // namespace subshift
