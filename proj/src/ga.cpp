#include "lsinfer/ga.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "lsinfer/fitness.hpp"
#include "lsinfer/worker_pool.hpp"

namespace lsinfer {

void GAConfig::validate() const {
    if (population_size < 2) throw std::invalid_argument("population size must be at least 2");
    auto weight_ok = [](double w) { return w >= 0.0 && w <= 1.0; };
    if (!weight_ok(crossover_weight) || !weight_ok(mutation_weight)) {
        throw std::invalid_argument("crossover and mutation weights must lie in [0, 1]");
    }
    if (time_budget_seconds < 0.0) throw std::invalid_argument("time budget is negative");
}

double uniform_gene(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

namespace {

bool coin(double p, Rng& rng) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform_gene(rng) < p;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> select_pairs(std::span<const double> fitness,
                                                              std::size_t count, Rng& rng) {
    const auto p = fitness.size();
    if (p < 2) throw std::invalid_argument("selection needs at least two genomes");
    count = std::min(count, p * (p - 1) / 2);

    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });
    std::vector<double> weight(p);
    std::size_t rank = 0;
    for (std::size_t r = 0; r < p; ++r) {
        if (r > 0 && fitness[order[r]] != fitness[order[r - 1]]) rank = r;
        weight[order[r]] = static_cast<double>(p - rank);
    }

    std::discrete_distribution<std::size_t> pick(weight.begin(), weight.end());
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(count);
    while (out.size() < count) {
        const auto a = pick(rng);
        const auto b = pick(rng);
        if (a == b) continue;
        const auto key = std::minmax(a, b);
        if (seen.insert(key).second) out.push_back(key);
    }
    return out;
}

std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, double weight, Rng& rng) {
    if (a.size() != b.size()) throw std::invalid_argument("crossover of unequal genomes");
    std::pair<Genome, Genome> out{a, b};
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (coin(weight, rng)) std::swap(out.first[i], out.second[i]);
    }
    return out;
}

void mutate(Genome& genome, double weight, Rng& rng) {
    for (auto& g : genome) {
        if (coin(weight, rng)) g = uniform_gene(rng);
    }
}

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::Solved: return "solved";
        case StopReason::Deadline: return "deadline";
        case StopReason::Converged: return "converged";
        case StopReason::GenerationCap: return "generation-cap";
    }
    return "unknown";
}

namespace {

struct Member {
    Genome genome;
    double fitness = kSentinel;
};

class Evaluator {
public:
    Evaluator(const GenomeSchema& schema, const ObservationSequence& obs,
              const std::set<Productions>* tabu)
        : schema_(schema), obs_(obs), tabu_(tabu) {}

    double operator()(const Genome& genome) const {
        const auto productions = decode(schema_, genome);
        const double f = fitness(productions, obs_);
        // A rejected earlier answer scores like a fully wrong last word.
        if (f == 0.0 && tabu_ && tabu_->count(productions)) return 1.0;
        return f;
    }

private:
    const GenomeSchema& schema_;
    const ObservationSequence& obs_;
    const std::set<Productions>* tabu_;
};

void evaluate_all(std::vector<Member>& members, std::size_t from, const Evaluator& eval,
                  WorkerPool& pool) {
    pool.parallel_for(members.size() - from,
                      [&](std::size_t i) { members[from + i].fitness = eval(members[from + i].genome); });
}

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

}  // namespace

EvolveResult evolve_subproblem(const GenomeSchema& schema, const ObservationSequence& obs,
                               const GAConfig& config, Rng& rng, WorkerPool& pool,
                               const EvolveOptions& options) {
    config.validate();
    const Evaluator eval(schema, obs, options.tabu);
    EvolveResult result;

    if (schema.gene_count == 0) {
        result.genome = {};
        result.best = decode(schema, result.genome);
        result.fitness = eval(result.genome);
        result.stop = result.fitness == 0.0 ? StopReason::Solved : StopReason::Converged;
        if (options.history) options.history->push_back(result.fitness);
        return result;
    }

    const auto size = config.population_size;
    std::vector<Member> population(size);
    for (auto& m : population) {
        m.genome.resize(schema.gene_count);
        for (auto& g : m.genome) g = uniform_gene(rng);
    }
    evaluate_all(population, 0, eval, pool);
    auto by_fitness = [](const Member& a, const Member& b) { return a.fitness < b.fitness; };
    std::stable_sort(population.begin(), population.end(), by_fitness);

    double best = population.front().fitness;
    std::size_t gen_best = 0;
    std::size_t gen = 0;
    if (options.history) options.history->push_back(best);

    const std::size_t pairs = std::min(size / 2, size * (size - 1) / 2);
    std::vector<double> fit(size);
    StopReason stop = StopReason::Converged;
    for (;;) {
        if (best == 0.0) {
            stop = StopReason::Solved;
            break;
        }
        if (Clock::now() >= options.deadline) {
            stop = StopReason::Deadline;
            break;
        }
        if (gen >= config.min_generations && gen - gen_best >= gen_best) {
            stop = StopReason::Converged;
            break;
        }
        if (config.max_generations > 0 && gen >= config.max_generations) {
            stop = StopReason::GenerationCap;
            break;
        }
        ++gen;

        for (std::size_t i = 0; i < size; ++i) fit[i] = population[i].fitness;
        const auto chosen = select_pairs(fit, pairs, rng);
        std::vector<Member> merged = population;
        merged.reserve(size + 2 * chosen.size());
        for (const auto& [a, b] : chosen) {
            auto [x, y] = crossover(population[a].genome, population[b].genome,
                                    config.crossover_weight, rng);
            mutate(x, config.mutation_weight, rng);
            mutate(y, config.mutation_weight, rng);
            merged.push_back({std::move(x), kSentinel});
            merged.push_back({std::move(y), kSentinel});
        }
        evaluate_all(merged, size, eval, pool);
        std::stable_sort(merged.begin(), merged.end(), by_fitness);
        merged.resize(size);

        std::size_t finite = 0;
        while (finite < size && !is_sentinel(merged[finite].fitness)) ++finite;
        for (std::size_t i = finite; finite > 0 && i < size; ++i) merged[i] = merged[i % finite];
        population = std::move(merged);

        if (population.front().fitness < best) {
            best = population.front().fitness;
            gen_best = gen;
        }
        if (options.history) options.history->push_back(best);
        if (options.progress && options.progress_every > 0 && gen % options.progress_every == 0) {
            options.progress({gen, best, seconds_since(options.started)});
        }
    }

    result.genome = population.front().genome;
    result.best = decode(schema, result.genome);
    result.fitness = best;
    result.generations = gen;
    result.gen_best = gen_best;
    result.stop = stop;
    return result;
}

}  // namespace lsinfer
