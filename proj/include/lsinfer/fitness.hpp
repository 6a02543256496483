#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "lsinfer/lsystem.hpp"

namespace lsinfer {

/// Worst possible fitness; lower values are better and 0 means every word matches.
inline constexpr double kSentinel = std::numeric_limits<double>::infinity();

inline bool is_sentinel(double f) { return std::isinf(f); }

/// max(|observed|, |predicted|) minus their longest common prefix.
std::size_t prefix_errors(const Word& observed, const Word& predicted);

/// Derive each word from the previous observed one and score the mismatch.
/// Words after the first wrong one add 1.0 each.
double fitness(std::span<const Word> productions, const ObservationSequence& obs);

std::string format_fitness(double f);

}  // namespace lsinfer
