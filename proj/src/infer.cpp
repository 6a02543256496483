#include "lsinfer/infer.hpp"

#include <set>

#include "lsinfer/deduce.hpp"
#include "lsinfer/fitness.hpp"
#include "lsinfer/subproblem.hpp"
#include "lsinfer/worker_pool.hpp"

namespace lsinfer {

const char* to_string(FailReason r) {
    switch (r) {
        case FailReason::None: return "none";
        case FailReason::Infeasible: return "infeasible";
        case FailReason::Time: return "time";
        case FailReason::Stopped: return "stopped";
    }
    return "unknown";
}

namespace {

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

Clock::time_point deadline_after(Clock::time_point start, double seconds) {
    const auto limit = std::chrono::duration<double>(seconds);
    if (limit >= std::chrono::hours(24 * 365)) return Clock::time_point::max();
    return start + std::chrono::duration_cast<Clock::duration>(limit);
}

}  // namespace

InferenceResult infer(const ObservationSequence& obs, const GAConfig& config,
                      const InferOptions& options) {
    config.validate();
    const auto started = Clock::now();
    const auto deadline = deadline_after(started, config.time_budget_seconds);
    InferenceResult result;
    result.seed = config.seed;
    auto finish = [&](InferenceResult& r) -> InferenceResult& {
        r.elapsed_seconds = seconds_since(started);
        return r;
    };

    if (config.time_budget_seconds <= 0.0) {
        result.reason = FailReason::Time;
        result.best_fitness = kSentinel;
        result.message = "time budget is zero";
        return finish(result);
    }

    const auto& alphabet = obs.alphabet();
    BoundsTable full;
    try {
        full = deduce_fixpoint(obs);
    } catch (const Infeasible& e) {
        result.reason = FailReason::Infeasible;
        result.best_fitness = kSentinel;
        result.message = e.what();
        return finish(result);
    }

    if (alphabet.variables().empty()) {
        LSystem identity(alphabet, obs.word(0), identity_productions(alphabet));
        if (check_consistency(identity, obs)) {
            result.system = std::move(identity);
        } else {
            result.reason = FailReason::Infeasible;
            result.best_fitness = kSentinel;
            result.message = "turtle symbols alone cannot change the word";
        }
        return finish(result);
    }

    const auto stages = subproblem_sequence(alphabet);
    std::vector<ObservationSequence> projected;
    for (const auto& sub : stages) projected.push_back(project_observations(obs, sub.scope));

    Rng rng(config.seed);
    WorkerPool pool(config.workers > 0 ? config.workers : default_worker_count());
    const std::size_t goal =
        options.max_stages > 0 ? std::min(options.max_stages, stages.size()) : stages.size();

    std::vector<Productions> solutions(stages.size());
    std::vector<std::set<Productions>> tabu(stages.size());
    std::size_t level = 0;
    double last_best = kSentinel;
    while (level < goal) {
        if (Clock::now() >= deadline) {
            result.reason = FailReason::Time;
            result.message = "time budget exhausted in sub-problem " + std::to_string(level);
            result.best_fitness = last_best;
            return finish(result);
        }
        const auto& sub = stages[level];
        const Productions* base = nullptr;
        const Alphabet* base_scope = nullptr;
        Productions lifted;
        if (level > 0) {
            base = &solutions[level - 1];
            base_scope = &stages[level - 1].scope;
        }

        bool solved = false;
        try {
            const auto table = deduce_scope(obs, full, sub, base, base_scope);
            if (base) lifted = lift_productions(*base, *base_scope, sub.scope);
            const auto schema = build_schema(table, sub, projected[level], base ? &lifted : nullptr);
            EvolveOptions eo;
            eo.deadline = deadline;
            eo.tabu = &tabu[level];
            eo.progress = options.progress;
            eo.started = started;
            const auto run = evolve_subproblem(schema, projected[level], config, rng, pool, eo);
            result.generations += run.generations;
            last_best = run.fitness;
            if (run.stop == StopReason::Solved) {
                solutions[level] = base ? merge_solution(*base, *base_scope, run.best, sub.scope)
                                        : run.best;
                solved = true;
            }
        } catch (const Infeasible& e) {
            if (level == 0) {
                result.reason = FailReason::Infeasible;
                result.best_fitness = kSentinel;
                result.message = e.what();
                return finish(result);
            }
            // Otherwise the previous stage's answer admits no extension.
        } catch (const SubwordViolation&) {
        }

        if (solved) {
            ++level;
            result.stages_solved = std::max(result.stages_solved, level);
            continue;
        }
        if (Clock::now() >= deadline) continue;
        if (level == 0) {
            for (auto& t : tabu) t.clear();
            ++result.restarts;
            continue;
        }
        tabu[level].clear();
        --level;
        tabu[level].insert(solutions[level]);
    }

    if (goal < stages.size()) {
        result.reason = FailReason::Stopped;
        result.best_fitness = 0.0;
        result.message = "stopped after " + std::to_string(goal) + " sub-problems";
        return finish(result);
    }

    const auto& final_scope = stages.back().scope;
    auto productions = lift_productions(solutions.back(), final_scope, alphabet);
    try {
        LSystem system(alphabet, obs.word(0), std::move(productions));
        if (check_consistency(system, obs)) {
            result.system = std::move(system);
            result.best_fitness = 0.0;
            return finish(result);
        }
    } catch (const Error&) {
    }
    result.reason = FailReason::Infeasible;
    result.best_fitness = last_best;
    result.message = "final candidate failed the consistency check";
    return finish(result);
}

}  // namespace lsinfer
