#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "lsinfer/genome.hpp"
#include "lsinfer/lsystem.hpp"

namespace lsinfer {

using Rng = std::mt19937_64;
using Clock = std::chrono::steady_clock;

struct GAConfig {
    std::size_t population_size = 100;
    double crossover_weight = 0.85;
    double mutation_weight = 0.10;
    double time_budget_seconds = 14400.0;
    std::size_t min_generations = 1000;
    std::uint64_t seed = 0;
    /// 0 picks default_worker_count().
    std::size_t workers = 0;
    /// Hard stop per sub-problem run; 0 means none.
    std::size_t max_generations = 0;

    /// Throws std::invalid_argument on a population below 2 or weights outside [0, 1].
    void validate() const;
};

struct Progress {
    std::size_t generation = 0;
    double best_fitness = 0.0;
    double elapsed_seconds = 0.0;
};

using ProgressHook = std::function<void(const Progress&)>;

double uniform_gene(Rng& rng);

/// `count` distinct unordered pairs (i < j) drawn with rank weights: the best
/// member weighs P, the next P-1, and so on; equal fitness shares a weight.
std::vector<std::pair<std::size_t, std::size_t>> select_pairs(std::span<const double> fitness,
                                                              std::size_t count, Rng& rng);

/// Uniform crossover: each gene swapped with probability `weight`.
std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, double weight, Rng& rng);

/// Each gene resampled with probability `weight`.
void mutate(Genome& genome, double weight, Rng& rng);

enum class StopReason { Solved, Deadline, Converged, GenerationCap };

const char* to_string(StopReason r);

struct EvolveOptions {
    Clock::time_point deadline = Clock::time_point::max();
    /// Successor sets that must not count as solutions.
    const std::set<Productions>* tabu = nullptr;
    /// Record the best fitness after every generation.
    std::vector<double>* history = nullptr;
    ProgressHook progress;
    std::size_t progress_every = 100;
    Clock::time_point started = Clock::now();
};

struct EvolveResult {
    Productions best;
    Genome genome;
    double fitness = 0.0;
    std::size_t generations = 0;
    std::size_t gen_best = 0;
    StopReason stop = StopReason::Converged;
};

class WorkerPool;

/// Generational GA with elite survival. Randomness is drawn only here, so
/// results do not depend on the size of `pool`.
EvolveResult evolve_subproblem(const GenomeSchema& schema, const ObservationSequence& obs,
                               const GAConfig& config, Rng& rng, WorkerPool& pool,
                               const EvolveOptions& options = {});

}  // namespace lsinfer
