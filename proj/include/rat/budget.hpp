#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rat {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Node and wall-clock cap for exponential searches. Zero means unlimited.
// Exceeding it throws; a search never returns a partial answer.
struct SearchBudget {
    std::uint64_t max_nodes = 0;
    std::uint64_t max_ms = 0;
    std::uint64_t nodes = 0;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    static SearchBudget unlimited() { return {}; }
    static SearchBudget of_nodes(std::uint64_t n) { SearchBudget b; b.max_nodes = n; return b; }

    void tick(const char* who = "search") {
        ++nodes;
        if (max_nodes && nodes > max_nodes)
            throw BudgetExceeded(std::string(who) + ": node budget of " + std::to_string(max_nodes) + " exceeded");
        if (max_ms && (nodes & 1023) == 0) {
            auto el = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
            if (std::uint64_t(el.count()) > max_ms)
                throw BudgetExceeded(std::string(who) + ": time budget of " + std::to_string(max_ms) + " ms exceeded");
        }
    }
};

} // namespace rat
