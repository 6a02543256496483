#include "lsinfer/tune.hpp"

#include <cmath>
#include <stdexcept>

#include "lsinfer/fitness.hpp"
#include "lsinfer/infer.hpp"

namespace lsinfer {

std::vector<std::size_t> population_grid() {
    std::vector<std::size_t> out;
    for (std::size_t p = 10; p <= 125; p += 5) out.push_back(p);
    return out;
}

std::vector<double> crossover_grid() {
    std::vector<double> out;
    for (int i = 60; i <= 95; i += 5) out.push_back(i / 100.0);
    return out;
}

std::vector<double> mutation_grid() {
    std::vector<double> out;
    for (int i = 1; i <= 20; ++i) out.push_back(i / 100.0);
    out.push_back(0.001);
    out.push_back(0.0001);
    return out;
}

namespace {

template <typename T>
bool contains(const std::vector<T>& values, T v) {
    for (auto x : values) {
        if (std::abs(static_cast<double>(x) - static_cast<double>(v)) < 1e-12) return true;
    }
    return false;
}

template <typename T>
T pick(const std::vector<T>& values, Rng& rng) {
    return values[std::uniform_int_distribution<std::size_t>(0, values.size() - 1)(rng)];
}

}  // namespace

bool on_grid(const GAConfig& config) {
    return contains(population_grid(), config.population_size) &&
           contains(crossover_grid(), config.crossover_weight) &&
           contains(mutation_grid(), config.mutation_weight);
}

GAConfig sample_config(Rng& rng, const GAConfig& base) {
    GAConfig c = base;
    c.population_size = pick(population_grid(), rng);
    c.crossover_weight = pick(crossover_grid(), rng);
    c.mutation_weight = pick(mutation_grid(), rng);
    return c;
}

TuneResult tune_hyperparameters(const TrialRunner& run_trial, const TuneOptions& options, Rng& rng,
                                const GAConfig& base) {
    if (options.trials_per_round == 0) throw std::invalid_argument("a round needs trials");
    TuneResult result;
    bool have_best = false;
    for (std::size_t round = 1; round <= options.max_rounds; ++round) {
        result.rounds = round;
        bool improved = false;
        for (std::size_t t = 0; t < options.trials_per_round; ++t) {
            auto config = sample_config(rng, base);
            const auto score = run_trial(config);
            result.trials.push_back({round, config, score});
            if (!have_best || score.better_than(result.best_score)) {
                result.best = config;
                result.best_score = score;
                have_best = true;
                improved = true;
            }
        }
        if (!improved) break;
    }
    return result;
}

TuneResult tune_hyperparameters(std::span<const ObservationSequence> calibration,
                                const TuneOptions& options, Rng& rng, const GAConfig& base) {
    if (calibration.empty()) throw std::invalid_argument("calibration set is empty");
    auto runner = [&](const GAConfig& config) {
        TrialScore score;
        for (const auto& obs : calibration) {
            GAConfig run = config;
            run.time_budget_seconds = options.trial_budget_seconds;
            run.seed = rng();
            const auto r = infer(obs, run);
            const double worst = 2.0 * static_cast<double>(obs.steps()) + 1.0;
            score.mean_fitness += is_sentinel(r.best_fitness) ? worst : r.best_fitness;
            score.mean_seconds += r.elapsed_seconds;
        }
        const auto n = static_cast<double>(calibration.size());
        score.mean_fitness /= n;
        score.mean_seconds /= n;
        return score;
    };
    return tune_hyperparameters(runner, options, rng, base);
}

}  // namespace lsinfer
