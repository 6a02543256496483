#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lsinfer/lsystem.hpp"

namespace lsinfer {

enum class SearchMode { Raw, Bounded };

struct OracleOptions {
    /// Candidate successors tried before giving up with BudgetExceeded.
    std::uint64_t candidate_cap = 1'000'000'000;
};

/// Candidate successors per symbol, shortest first, then lexicographic in
/// alphabet order. Empty when the bounds are infeasible.
struct SearchSpace {
    std::vector<std::vector<Word>> candidates;
    bool feasible = true;
};

SearchSpace build_search_space(const ObservationSequence& obs, SearchMode mode,
                               const OracleOptions& options = {});

/// First consistent system in enumeration order (the last symbol varies fastest).
std::optional<LSystem> brute_force_infer(const ObservationSequence& obs, SearchMode mode,
                                         const OracleOptions& options = {});

std::vector<LSystem> enumerate_consistent(const ObservationSequence& obs, SearchMode mode,
                                          std::size_t limit, const OracleOptions& options = {});

}  // namespace lsinfer
