#include <doctest.h>

#include <functional>
#include <set>

#include "lsinfer/deduce.hpp"
#include "lsinfer/genome.hpp"
#include "lsinfer/subproblem.hpp"
#include "lsinfer/text_format.hpp"
#include "random_systems.hpp"

using namespace lsinfer;
using lsinfer::testing::word;

namespace {

SubProblem variables_only(const Alphabet& scope) {
    return {SubProblemKind::VariablesOnly, "", scope};
}

BoundsTable open_table(const Alphabet& scope) {
    BoundsTable t(scope.size());
    for (auto a : scope.ids()) {
        if (scope.is_turtle(a)) {
            t.length.min[a] = 1;
            t.length.max[a] = 1;
            for (auto b : scope.ids()) {
                t.growth.lo(a, b) = a == b;
                t.growth.hi(a, b) = a == b;
            }
        }
    }
    return t;
}

std::string decoded(const SuccessorSchema& s, const Genome& g, const Alphabet& scope,
                    const std::vector<SymbolId>& inserted = {}) {
    return format_word(decode_successor(s, g, inserted), scope);
}

/// Every genome with genes drawn from `levels`.
void for_each_genome(std::size_t genes, const std::vector<double>& levels,
                     const std::function<void(const Genome&)>& visit) {
    Genome g(genes, 0.0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == genes) {
            visit(g);
            return;
        }
        for (double v : levels) {
            g[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
}

const std::vector<double> kLevels = {0.05, 0.3, 0.55, 0.8, 0.99};

/// Words over `scope` that satisfy the length and growth bounds of `a`.
std::set<std::string> admissible(const BoundsTable& t, const Alphabet& scope, SymbolId a) {
    std::set<std::string> out;
    const auto hi = t.length.max[a].value();
    std::function<void(Word&)> rec = [&](Word& w) {
        if (static_cast<std::int64_t>(w.size()) >= t.length.min[a]) {
            bool ok = true;
            for (auto b : scope.ids()) {
                const auto c = static_cast<std::int64_t>(count_symbol(w, b));
                ok = ok && c >= t.growth.lo(a, b) && Bound(c) <= t.growth.hi(a, b);
            }
            if (ok) out.insert(format_word(w, scope));
        }
        if (static_cast<std::int64_t>(w.size()) == hi) return;
        for (auto b : scope.ids()) {
            w.push_back(b);
            rec(w);
            w.pop_back();
        }
    };
    Word w;
    rec(w);
    return out;
}

Productions truth_over(const LSystem& system, const Alphabet& scope) {
    Productions out = identity_productions(scope);
    for (auto v : scope.variables()) {
        const auto id = system.alphabet().id_of(scope.glyph(v));
        out[v] = project_word(system.successor(id), system.alphabet(), scope);
    }
    return out;
}

}  // namespace

TEST_CASE("sub-problems start with the variables and add turtle symbols in order") {
    const auto seq = subproblem_sequence(Alphabet::from_glyphs("ABF+"));
    REQUIRE(seq.size() == 3);
    CHECK(seq[0].kind == SubProblemKind::VariablesOnly);
    CHECK(seq[0].scope.glyphs() == "AB");
    CHECK(seq[1].kind == SubProblemKind::Graphical);
    CHECK(seq[1].added == "F");
    CHECK(seq[1].scope.glyphs() == "ABF");
    CHECK(seq[2].added == "+");
    CHECK(seq[2].scope.glyphs() == "ABF+");

    CHECK(subproblem_sequence(Alphabet::from_glyphs("AB")).size() == 1);

    const auto br = subproblem_sequence(Alphabet::from_glyphs("A[]"));
    REQUIRE(br.size() == 2);
    CHECK(br[1].added == "[]");
    CHECK(br[1].paired());
}

TEST_CASE("projection erases symbols outside the scope") {
    const auto a = Alphabet::from_glyphs("ABF[+]-");
    const auto obs = ObservationSequence(a, {word(a, "A"), word(a, "F[+F]B"), word(a, "+++A[-FF][+F]BF")});
    const auto vars = a.restrict_to("AB");
    const auto p = project_observations(obs, vars);
    CHECK(format_word(p.word(1), vars) == "B");
    CHECK(format_word(p.word(2), vars) == "AB");
    CHECK(project_observations(obs, a).words() == obs.words());
    CHECK_THROWS_AS(project_observations(obs, a.restrict_to("A+")), std::invalid_argument);
}

TEST_CASE("inserting a turtle symbol around a base successor needs one gene per copy") {
    const auto scope = Alphabet::from_glyphs("AB+");
    const auto A = scope.id_of('A');
    const auto plus = scope.id_of('+');
    auto t = open_table(scope);
    t.length.min[A] = 2;
    t.length.max[A] = 5;
    t.growth.lo(A, 0) = 1;
    t.growth.hi(A, 0) = 1;
    t.growth.lo(A, 1) = 1;
    t.growth.hi(A, 1) = 1;
    const SubProblem sub{SubProblemKind::Graphical, "+", scope};
    const Word base = word(scope, "AB");
    const auto s = build_successor_schema(t, sub, A, &base);
    CHECK(s.mode == SuccessorMode::Insertion);
    CHECK(s.gene_count() == 3);
    CHECK(s.min_inserts == 0);
    CHECK(s.max_inserts == 3);

    const std::vector<SymbolId> ins = {plus};
    CHECK(decoded(s, {0.1, 0.2, 0.3}, scope, ins) == "AB");
    CHECK(decoded(s, {0.5, 0.0, 0.0}, scope, ins) == "+AB");
    CHECK(decoded(s, {0.75, 0.0, 0.4}, scope, ins) == "A+B");
    CHECK(decoded(s, {1.0, 1.0, 1.0}, scope, ins) == "AB+++");
}

TEST_CASE("placement genes pick among the open slots") {
    const auto scope = Alphabet::from_glyphs("AB");
    auto t = open_table(scope);
    t.length.min[0] = 4;
    t.length.max[0] = 4;
    t.growth.lo(0, 0) = 1;
    t.growth.hi(0, 0) = 1;
    const auto s = build_successor_schema(t, variables_only(scope), 0);
    CHECK(s.placement_genes == 1);
    CHECK(s.filler_genes == 3);
    // One A at the second position, the rest filled with the only remaining option.
    CHECK(decoded(s, {0.3, 0.0, 0.0, 0.0}, scope) == "BABB");
    CHECK(decoded(s, {0.2, 0.5, 0.5, 0.5}, scope) == "ABBB");
    CHECK(decoded(s, {1.0, 0.5, 0.5, 0.5}, scope) == "BBBA");
}

TEST_CASE("filler genes cover every length between the bounds") {
    const auto scope = Alphabet::from_glyphs("AB");
    auto t = open_table(scope);
    t.length.min[0] = 2;
    t.length.max[0] = 3;
    const auto s = build_successor_schema(t, variables_only(scope), 0);
    CHECK(s.placement_genes == 0);
    CHECK(s.filler_genes == 3);
    CHECK(decoded(s, {0.0, 0.0, 0.0}, scope) == "AA");
    CHECK(decoded(s, {1.0, 1.0, 1.0}, scope) == "BBB");
    CHECK(decoded(s, {0.5, 0.0, 0.99}, scope) == "AB");
}

TEST_CASE("an exhausted growth maximum removes the symbol from later options") {
    const auto scope = Alphabet::from_glyphs("AB");
    auto t = open_table(scope);
    t.length.min[0] = 4;
    t.length.max[0] = 4;
    t.growth.hi(0, 0) = 2;
    const auto s = build_successor_schema(t, variables_only(scope), 0);
    REQUIRE(s.gene_count() == 4);
    CHECK(decoded(s, {0.0, 0.0, 0.9, 0.0}, scope) == "AABB");
    for (double v = 0.0; v <= 1.0; v += 0.05) {
        const auto w = decode_successor(s, Genome{0.0, 0.0, 0.0, v}, {});
        CHECK(count_symbol(w, 0) == 2);
    }
}

TEST_CASE("fully determined successors need no genes") {
    const auto obs_alpha = Alphabet::from_glyphs("AB");
    const auto obs = ObservationSequence(obs_alpha, {word(obs_alpha, "A"), word(obs_alpha, "AB")});
    auto t = open_table(obs_alpha);
    t.length.min[0] = 2;
    t.length.max[0] = 2;
    t.fragments.prefix[0] = word(obs_alpha, "AB");
    const auto schema = build_schema(t, variables_only(obs_alpha), obs);
    CHECK(schema.gene_count == 0);
    CHECK(schema.successors.empty());
    const auto p = decode(schema, Genome{});
    CHECK(format_word(p[0], obs_alpha) == "AB");
    CHECK(format_word(p[1], obs_alpha) == "B");
    CHECK_THROWS_AS(decode(schema, Genome{0.5}), std::invalid_argument);
    CHECK_FALSE(schema.describe().empty());
}

TEST_CASE("unbounded or contradictory bounds are rejected") {
    const auto scope = Alphabet::from_glyphs("AB");
    auto t = open_table(scope);
    CHECK_THROWS_AS(build_successor_schema(t, variables_only(scope), 0), UnboundedSchema);
    t.length.max[0] = 2;
    t.growth.lo(0, 0) = 2;
    t.growth.lo(0, 1) = 2;
    CHECK_THROWS_AS(build_successor_schema(t, variables_only(scope), 0), SchemaConflict);
}

TEST_CASE("merging keeps the previous solution as a subword") {
    const auto vars = Alphabet::from_glyphs("AB");
    const auto scope = Alphabet::from_glyphs("AB+");
    const Productions base = {word(vars, "B"), word(vars, "A")};
    const Productions placed = {word(scope, "+B"), word(scope, "A"), word(scope, "+")};
    CHECK(merge_solution(base, vars, placed, scope) == placed);

    const auto lifted = lift_productions(base, vars, scope);
    CHECK(merge_solution(base, vars, lifted, scope) == lifted);
    CHECK(lifted[2] == word(scope, "+"));

    const Productions wrong = {word(scope, "+A"), word(scope, "A"), word(scope, "+")};
    CHECK_THROWS_AS(merge_solution(base, vars, wrong, scope), SubwordViolation);
}

TEST_CASE("decoding is total, pinned and within bounds") {
    Rng rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t schemas = 0;
    for (int i = 0; i < 150; ++i) {
        const auto system = lsinfer::testing::random_small_system(rng);
        const auto obs = lsinfer::testing::observe(system, 4);
        const auto full = deduce_fixpoint(obs);
        const Alphabet* prev = nullptr;
        Productions prev_truth;
        const auto seq = subproblem_sequence(obs.alphabet());
        for (const auto& sub : seq) {
            CAPTURE(format_lsystem(system));
            CAPTURE(sub.scope.glyphs());
            const auto table = deduce_scope(obs, full, sub, prev ? &prev_truth : nullptr, prev);
            std::optional<Productions> lifted;
            if (prev) lifted = lift_productions(prev_truth, *prev, sub.scope);
            const auto projected = project_observations(obs, sub.scope);
            GenomeSchema schema;
            try {
                schema = build_schema(table, sub, projected, lifted ? &*lifted : nullptr);
            } catch (const UnboundedSchema&) {
                break;
            }
            ++schemas;
            for (int k = 0; k < 30; ++k) {
                Genome g(schema.gene_count);
                for (auto& v : g) v = unit(rng);
                const auto p = decode(schema, g);
                for (const auto& s : schema.successors) {
                    const auto& w = p[s.symbol];
                    const auto a = s.symbol;
                    CHECK(static_cast<std::int64_t>(w.size()) >= table.length.min[a]);
                    CHECK(Bound(static_cast<std::int64_t>(w.size())) <= table.length.max[a]);
                    for (auto b : sub.scope.ids()) {
                        CHECK(Bound(static_cast<std::int64_t>(count_symbol(w, b))) <=
                              table.growth.hi(a, b));
                    }
                    REQUIRE(w.size() >= s.prefix.size() + s.suffix.size());
                    CHECK(std::equal(s.prefix.begin(), s.prefix.end(), w.begin()));
                    CHECK(std::equal(s.suffix.rbegin(), s.suffix.rend(), w.rbegin()));
                    CHECK(branch_balanced(w, sub.scope));
                }
                if (prev) CHECK_NOTHROW(merge_solution(prev_truth, *prev, p, sub.scope));
            }
            prev_truth = truth_over(system, sub.scope);
            prev = &sub.scope;
        }
    }
    CHECK(schemas > 100);
}

TEST_CASE("small constrained spaces are covered completely") {
    const auto scope = Alphabet::from_glyphs("AB");
    struct Case {
        std::int64_t min, max;
        std::int64_t aa_lo, aa_hi, ab_lo, ab_hi;
    };
    const std::vector<Case> cases = {
        {1, 3, 0, 3, 0, 3}, {2, 3, 0, 3, 0, 3}, {1, 3, 1, 3, 0, 3}, {1, 3, 0, 1, 0, 3},
        {2, 2, 0, 2, 1, 2}, {1, 2, 0, 2, 0, 2}, {3, 3, 1, 2, 1, 2}, {1, 3, 0, 2, 1, 1},
    };
    for (const auto& c : cases) {
        auto t = open_table(scope);
        t.length.min[0] = c.min;
        t.length.max[0] = c.max;
        t.growth.lo(0, 0) = c.aa_lo;
        t.growth.hi(0, 0) = c.aa_hi;
        t.growth.lo(0, 1) = c.ab_lo;
        t.growth.hi(0, 1) = c.ab_hi;
        const auto s = build_successor_schema(t, variables_only(scope), 0);
        std::set<std::string> reached;
        for_each_genome(s.gene_count(), kLevels,
                        [&](const Genome& g) { reached.insert(decoded(s, g, scope)); });
        CHECK(reached == admissible(t, scope, 0));
    }

    const auto plus_scope = Alphabet::from_glyphs("AB+");
    auto t = open_table(plus_scope);
    t.length.min[0] = 2;
    t.length.max[0] = 4;
    t.growth.lo(0, 0) = t.growth.lo(0, 1) = 1;
    t.growth.hi(0, 0) = t.growth.hi(0, 1) = 1;
    const Word base = word(plus_scope, "AB");
    const auto s =
        build_successor_schema(t, {SubProblemKind::Graphical, "+", plus_scope}, 0, &base);
    std::set<std::string> reached;
    for_each_genome(s.gene_count(), kLevels, [&](const Genome& g) {
        reached.insert(decoded(s, g, plus_scope, {plus_scope.id_of('+')}));
    });
    std::set<std::string> expected;
    for (const auto& w : admissible(t, plus_scope, 0)) {
        if (format_word(project_word(word(plus_scope, w), plus_scope, scope), scope) == "AB") {
            expected.insert(w);
        }
    }
    CHECK(reached == expected);
}

TEST_CASE("bracket insertion emits matched pairs only") {
    const auto scope = Alphabet::from_glyphs("AB[]");
    auto t = open_table(scope);
    t.length.min[0] = 2;
    t.length.max[0] = 8;
    t.growth.lo(0, 0) = t.growth.lo(0, 1) = 1;
    t.growth.hi(0, 0) = t.growth.hi(0, 1) = 1;
    t.fragments.prefix[0] = word(scope, "[]A");
    const Word base = word(scope, "AB");
    const SubProblem sub{SubProblemKind::Graphical, "[]", scope};
    const auto s = build_successor_schema(t, sub, 0, &base);
    CHECK(s.max_inserts == 2);
    const std::vector<SymbolId> ins = {scope.id_of('['), scope.id_of(']')};
    Rng rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::set<std::string> seen;
    for (int k = 0; k < 2000; ++k) {
        Genome g(s.gene_count());
        for (auto& v : g) v = unit(rng);
        const auto w = decode_successor(s, g, ins);
        CHECK(branch_balanced(w, scope));
        CHECK(w.size() <= 8);
        CHECK(format_word(project_word(w, scope, scope.restrict_to("AB")), scope.restrict_to("AB")) ==
              "AB");
        CHECK(w.front() == scope.id_of('['));
        seen.insert(format_word(w, scope));
    }
    CHECK(seen.count("[]AB"));
    CHECK(seen.count("[]A[B]"));
    CHECK(seen.count("[]A[][]B"));
}
