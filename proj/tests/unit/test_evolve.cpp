#include <doctest.h>

#include <set>

#include "lsinfer/corpus.hpp"
#include "lsinfer/deduce.hpp"
#include "lsinfer/fitness.hpp"
#include "lsinfer/ga.hpp"
#include "lsinfer/infer.hpp"
#include "lsinfer/subproblem.hpp"
#include "lsinfer/text_format.hpp"
#include "lsinfer/tune.hpp"
#include "lsinfer/worker_pool.hpp"
#include "random_systems.hpp"

using namespace lsinfer;
using lsinfer::testing::word;

namespace {

ObservationSequence algae_obs(std::size_t n) {
    return derive_sequence(parse_lsystem("axiom: A\nA -> AB\nB -> A\n"), n);
}

/// Free schema over A and B with the given successor length ranges.
GenomeSchema loose_schema(const ObservationSequence& obs, std::int64_t lo, std::int64_t hi) {
    auto t = initialize_bounds(obs);
    for (auto v : obs.alphabet().variables()) {
        t.length.min[v] = lo;
        t.length.max[v] = hi;
    }
    const SubProblem sub{SubProblemKind::VariablesOnly, "", obs.alphabet()};
    return build_schema(t, sub, obs);
}

GAConfig quick_config(std::uint64_t seed) {
    GAConfig c;
    c.seed = seed;
    c.min_generations = 50;
    c.time_budget_seconds = 60;
    c.workers = 1;
    return c;
}

}  // namespace

TEST_CASE("fitness counts errors from the first mismatch") {
    const auto a = Alphabet::from_glyphs("AB");
    CHECK(prefix_errors(word(a, "ABAAB"), word(a, "ABBA")) == 3);
    CHECK(prefix_errors(word(a, "AB"), word(a, "AB")) == 0);
    CHECK(prefix_errors(word(a, "AB"), word(a, "ABBB")) == 2);

    const ObservationSequence obs(a, {word(a, "A"), word(a, "ABAAB")});
    const Productions p = {word(a, "ABBA"), word(a, "B")};
    CHECK(fitness(p, obs) == doctest::Approx(3.0 / 5.0));
}

TEST_CASE("words after the first wrong one add one each") {
    const auto obs = algae_obs(4);
    const auto& a = obs.alphabet();
    const Productions p = {word(a, "AA"), word(a, "A")};
    CHECK(fitness(p, obs) == doctest::Approx(0.5 + 3.0));
    const Productions truth = {word(a, "AB"), word(a, "A")};
    CHECK(fitness(truth, obs) == 0.0);
}

TEST_CASE("overlong predictions and unbalanced successors are sentinel") {
    const auto a = Alphabet::from_glyphs("AB");
    const ObservationSequence obs(a, {word(a, "A"), word(a, "AB")});
    CHECK(is_sentinel(fitness(Productions{word(a, "AAAAA"), word(a, "B")}, obs)));
    CHECK_FALSE(is_sentinel(fitness(Productions{word(a, "AAAA"), word(a, "B")}, obs)));

    const auto b = Alphabet::from_glyphs("A[]");
    const ObservationSequence br(b, {word(b, "A"), word(b, "[A]")});
    CHECK(is_sentinel(fitness(Productions{word(b, "]A["), word(b, "["), word(b, "]")}, br)));
    CHECK(fitness(Productions{word(b, "[A]"), word(b, "["), word(b, "]")}, br) == 0.0);
    CHECK(format_fitness(kSentinel) == "sentinel");
    CHECK(format_fitness(0.25) == "0.25");
}

TEST_CASE("zero fitness exactly when the system reproduces the observations") {
    for (const auto& e : builtin_corpus()) {
        CAPTURE(e.name);
        const auto obs = e.observe();
        CHECK(fitness(e.system.successors(), obs) == 0.0);
        const auto& a = e.system.alphabet();
        for (auto v : a.variables()) {
            Productions p = e.system.successors();
            for (auto& s : p[v]) {
                if (a.is_variable(s) || a.glyph(s) == 'F') {
                    s = s == a.variables().front() ? a.variables().back() : a.variables().front();
                    break;
                }
            }
            const bool zero = fitness(p, obs) == 0.0;
            bool consistent = false;
            try {
                consistent = check_consistency(LSystem(a, e.system.axiom(), p), obs);
            } catch (const Error&) {
            }
            CHECK(zero == consistent);
        }
    }
}

TEST_CASE("selection draws distinct pairs") {
    Rng rng(1);
    const std::vector<double> two = {0.5, 0.1};
    const auto only = select_pairs(two, 5, rng);
    REQUIRE(only.size() == 1);
    CHECK(only[0] == std::pair<std::size_t, std::size_t>{0, 1});

    const std::vector<double> sentinel(6, kSentinel);
    const auto pairs = select_pairs(sentinel, 3, rng);
    CHECK(pairs.size() == 3);

    std::vector<double> fit;
    for (int i = 0; i < 20; ++i) fit.push_back(i * 0.1);
    Rng r1(7);
    Rng r2(7);
    const auto p1 = select_pairs(fit, 10, r1);
    CHECK(p1 == select_pairs(fit, 10, r2));
    std::set<std::pair<std::size_t, std::size_t>> unique(p1.begin(), p1.end());
    CHECK(unique.size() == p1.size());
    for (auto [i, j] : p1) CHECK(i < j);

    std::size_t best_hits = 0;
    std::size_t worst_hits = 0;
    for (int k = 0; k < 200; ++k) {
        for (auto [i, j] : select_pairs(fit, 10, rng)) {
            best_hits += (i == 0) + (j == 0);
            worst_hits += (i == 19) + (j == 19);
        }
    }
    CHECK(best_hits > worst_hits);
    CHECK_THROWS_AS(select_pairs(std::vector<double>{0.0}, 1, rng), std::invalid_argument);
}

TEST_CASE("crossover swaps and mutation resamples") {
    Rng rng(2);
    const Genome a = {0.1, 0.2, 0.3, 0.4};
    const Genome b = {0.9, 0.8, 0.7, 0.6};
    auto [c0, d0] = crossover(a, b, 0.0, rng);
    CHECK(c0 == a);
    CHECK(d0 == b);
    auto [c1, d1] = crossover(a, b, 1.0, rng);
    CHECK(c1 == b);
    CHECK(d1 == a);
    auto [c2, d2] = crossover(a, a, 0.5, rng);
    CHECK(c2 == a);
    CHECK(d2 == a);
    CHECK_THROWS_AS(crossover(a, Genome{0.5}, 0.5, rng), std::invalid_argument);

    Genome g = a;
    mutate(g, 0.0, rng);
    CHECK(g == a);
    mutate(g, 1.0, rng);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] != a[i]);
    Genome big(1000, 0.5);
    mutate(big, 0.3, rng);
    for (double v : big) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("configuration validation") {
    GAConfig c;
    CHECK_NOTHROW(c.validate());
    c.population_size = 1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.mutation_weight = 1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("a schema without genes is evaluated once") {
    const auto obs = algae_obs(4);
    const auto t = deduce_fixpoint(obs);
    const auto schema = build_schema(t, subproblem_sequence(obs.alphabet())[0], obs);
    REQUIRE(schema.gene_count == 0);
    Rng rng(1);
    WorkerPool pool(1);
    std::vector<double> history;
    EvolveOptions o;
    o.history = &history;
    const auto r = evolve_subproblem(schema, obs, quick_config(1), rng, pool, o);
    CHECK(r.generations == 0);
    CHECK(r.fitness == 0.0);
    CHECK(r.stop == StopReason::Solved);
    CHECK(history.size() == 1);
}

TEST_CASE("evolution finds the algae successors") {
    const auto obs = algae_obs(4);
    const auto schema = loose_schema(obs, 1, 3);
    CHECK(schema.gene_count > 0);
    Rng rng(4);
    WorkerPool pool(1);
    std::vector<double> history;
    EvolveOptions o;
    o.history = &history;
    const auto r = evolve_subproblem(schema, obs, quick_config(4), rng, pool, o);
    CHECK(r.stop == StopReason::Solved);
    CHECK(r.fitness == 0.0);
    CHECK(fitness(r.best, obs) == 0.0);
    for (std::size_t i = 1; i < history.size(); ++i) CHECK(history[i] <= history[i - 1]);
}

TEST_CASE("evolution stops on convergence, deadline and generation cap") {
    const auto obs = algae_obs(4);
    // Successors of length one cannot grow the word, so fitness never reaches zero.
    const auto stuck = loose_schema(obs, 1, 1);
    WorkerPool pool(1);
    {
        Rng rng(5);
        auto config = quick_config(5);
        config.population_size = 10;
        const auto r = evolve_subproblem(stuck, obs, config, rng, pool);
        CHECK(r.stop == StopReason::Converged);
        CHECK(r.generations >= config.min_generations);
        CHECK(r.generations - r.gen_best >= r.gen_best);
        CHECK(r.fitness > 0.0);
    }
    {
        Rng rng(5);
        EvolveOptions o;
        o.deadline = Clock::now();
        const auto r = evolve_subproblem(stuck, obs, quick_config(5), rng, pool, o);
        CHECK(r.stop == StopReason::Deadline);
        CHECK(r.generations == 0);
    }
    {
        Rng rng(5);
        auto config = quick_config(5);
        config.max_generations = 7;
        config.min_generations = 1000;
        const auto r = evolve_subproblem(stuck, obs, config, rng, pool);
        CHECK(r.stop == StopReason::GenerationCap);
        CHECK(r.generations == 7);
    }
}

TEST_CASE("rejected answers do not count as solutions") {
    const auto obs = algae_obs(3);
    const auto schema = loose_schema(obs, 1, 2);
    const auto& a = obs.alphabet();
    std::set<Productions> tabu = {{word(a, "AB"), word(a, "A")}};
    Rng rng(6);
    WorkerPool pool(1);
    EvolveOptions o;
    o.tabu = &tabu;
    auto config = quick_config(6);
    config.max_generations = 100;
    const auto r = evolve_subproblem(schema, obs, config, rng, pool, o);
    CHECK(r.stop != StopReason::Solved);
    CHECK(r.fitness > 0.0);
}

TEST_CASE("inference end to end") {
    SUBCASE("algae") {
        const auto obs = algae_obs(5);
        const auto r = infer(obs, quick_config(1));
        REQUIRE(r.solved());
        CHECK(check_consistency(*r.system, obs));
        CHECK(r.best_fitness == 0.0);
        CHECK(r.seed == 1);
    }
    SUBCASE("zero budget") {
        auto config = quick_config(1);
        config.time_budget_seconds = 0;
        const auto r = infer(algae_obs(5), config);
        CHECK_FALSE(r.solved());
        CHECK(r.reason == FailReason::Time);
        CHECK(is_sentinel(r.best_fitness));
    }
    SUBCASE("length law violation") {
        const auto a = Alphabet::from_glyphs("A");
        const ObservationSequence obs(a, {word(a, "A"), word(a, "AA"), word(a, "A")});
        const auto r = infer(obs, quick_config(1));
        CHECK_FALSE(r.solved());
        CHECK(r.reason == FailReason::Infeasible);
    }
    SUBCASE("turtle symbols only") {
        const auto a = Alphabet::from_glyphs("F+");
        const ObservationSequence obs(a, {word(a, "F+F"), word(a, "F+F"), word(a, "F+F")});
        const auto r = infer(obs, quick_config(1));
        REQUIRE(r.solved());
        CHECK(r.system->successors() == identity_productions(a));
    }
    SUBCASE("stage limit") {
        const auto entry = find_entry(builtin_corpus(), "Koch Curve");
        InferOptions o;
        o.max_stages = 1;
        const auto r = infer(entry.observe(), quick_config(1), o);
        CHECK(r.reason == FailReason::Stopped);
        CHECK(r.stages_solved == 1);
    }
}

TEST_CASE("inference is deterministic for a seed and any worker count") {
    const auto entry = grid_entry(3, 5, 1);
    const auto obs = entry.observe();
    auto config = quick_config(42);
    const auto r1 = infer(obs, config);
    const auto r2 = infer(obs, config);
    config.workers = 3;
    const auto r3 = infer(obs, config);
    REQUIRE(r1.solved());
    CHECK(r1.system == r2.system);
    CHECK(r1.system == r3.system);
    CHECK(r1.generations == r2.generations);
    CHECK(r1.generations == r3.generations);
    CHECK(r1.restarts == r3.restarts);
}

TEST_CASE("worker pool runs every index once") {
    for (std::size_t workers : {1, 2, 4}) {
        WorkerPool pool(workers);
        CHECK(pool.size() == workers);
        std::vector<int> hits(1000, 0);
        pool.parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
        for (int h : hits) CHECK(h == 1);
        pool.parallel_for(0, [&](std::size_t) { FAIL("no work expected"); });
    }
}

TEST_CASE("tuning samples the declared grid") {
    Rng rng(3);
    for (int i = 0; i < 500; ++i) CHECK(on_grid(sample_config(rng)));
    GAConfig reported;
    reported.population_size = 100;
    reported.crossover_weight = 0.85;
    reported.mutation_weight = 0.10;
    CHECK(on_grid(reported));
    reported.population_size = 101;
    CHECK_FALSE(on_grid(reported));
    CHECK(population_grid().front() == 10);
    CHECK(population_grid().back() == 125);
    CHECK(mutation_grid().size() == 22);
}

TEST_CASE("tuning stops after a round without improvement") {
    Rng rng(8);
    TuneOptions options;
    const auto tie = tune_hyperparameters([](const GAConfig&) { return TrialScore{1.0, 1.0}; },
                                          options, rng);
    CHECK(tie.rounds == 2);
    CHECK(tie.trials.size() == 2 * options.trials_per_round);
    CHECK(tie.best.population_size == tie.trials.front().config.population_size);
    CHECK(tie.best.crossover_weight == tie.trials.front().config.crossover_weight);

    double next = 100.0;
    options.max_rounds = 4;
    const auto falling = tune_hyperparameters(
        [&](const GAConfig&) { return TrialScore{next -= 1.0, 0.0}; }, options, rng);
    CHECK(falling.rounds == 4);
    CHECK(falling.best_score.mean_fitness == doctest::Approx(100.0 - 4.0 * 16.0));

    TrialScore fast{0.5, 1.0};
    TrialScore slow{0.5, 2.0};
    CHECK(fast.better_than(slow));
    CHECK_FALSE(slow.better_than(fast));
    CHECK(TrialScore{0.1, 9.0}.better_than(fast));
}

TEST_CASE("tuning on real calibration sequences") {
    Rng rng(9);
    TuneOptions options;
    options.trial_budget_seconds = 2.0;
    options.trials_per_round = 2;
    options.max_rounds = 2;
    const std::vector<ObservationSequence> calibration = {algae_obs(4)};
    GAConfig base;
    base.min_generations = 20;
    base.workers = 1;
    const auto r = tune_hyperparameters(calibration, options, rng, base);
    CHECK(on_grid(r.best));
    CHECK(r.best.min_generations == 20);
    CHECK(r.best_score.mean_fitness == 0.0);
}
