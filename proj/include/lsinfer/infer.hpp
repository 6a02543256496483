#pragma once

#include <optional>
#include <string>

#include "lsinfer/ga.hpp"
#include "lsinfer/lsystem.hpp"

namespace lsinfer {

enum class FailReason { None, Infeasible, Time, Stopped };

const char* to_string(FailReason r);

struct InferOptions {
    ProgressHook progress;
    /// Stop after this many sub-problems are solved; 0 runs them all.
    std::size_t max_stages = 0;
};

struct InferenceResult {
    std::optional<LSystem> system;
    FailReason reason = FailReason::None;
    std::string message;
    std::size_t generations = 0;
    std::size_t stages_solved = 0;
    std::size_t restarts = 0;
    double elapsed_seconds = 0.0;
    double best_fitness = 0.0;
    std::uint64_t seed = 0;

    bool solved() const { return system.has_value(); }
};

/// Deduce bounds, then solve the sub-problems in turn, backtracking into the
/// previous stage when a stage finds no solution. Solved only when the final
/// system reproduces every observed word.
InferenceResult infer(const ObservationSequence& obs, const GAConfig& config,
                      const InferOptions& options = {});

}  // namespace lsinfer
