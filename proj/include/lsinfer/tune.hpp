#pragma once

#include <span>
#include <vector>

#include "lsinfer/ga.hpp"
#include "lsinfer/lsystem.hpp"

namespace lsinfer {

struct TuneOptions {
    double trial_budget_seconds = 60.0;
    std::size_t trials_per_round = 16;
    std::size_t max_rounds = 100;
};

struct TrialScore {
    double mean_fitness = 0.0;  // sentinel counts as 2n + 1
    double mean_seconds = 0.0;

    bool better_than(const TrialScore& other) const {
        if (mean_fitness != other.mean_fitness) return mean_fitness < other.mean_fitness;
        return mean_seconds < other.mean_seconds;
    }
};

struct TrialRecord {
    std::size_t round = 0;
    GAConfig config;
    TrialScore score;
};

struct TuneResult {
    GAConfig best;
    TrialScore best_score;
    std::size_t rounds = 0;
    std::vector<TrialRecord> trials;
};

/// Population 10..125 step 5, crossover 0.60..0.95 step 0.05, mutation
/// 0.01..0.20 step 0.01 plus 0.001 and 0.0001.
std::vector<std::size_t> population_grid();
std::vector<double> crossover_grid();
std::vector<double> mutation_grid();

bool on_grid(const GAConfig& config);

/// Draw one grid point; other fields come from `base`.
GAConfig sample_config(Rng& rng, const GAConfig& base = {});

using TrialRunner = std::function<TrialScore(const GAConfig&)>;

/// Random search in rounds; stops after the first round without improvement.
TuneResult tune_hyperparameters(const TrialRunner& run_trial, const TuneOptions& options, Rng& rng,
                                const GAConfig& base = {});

/// Trials run infer() on every calibration sequence under the reduced budget.
TuneResult tune_hyperparameters(std::span<const ObservationSequence> calibration,
                                const TuneOptions& options, Rng& rng, const GAConfig& base = {});

}  // namespace lsinfer
