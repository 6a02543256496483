#include "lsinfer/subproblem.hpp"

#include <stdexcept>

#include "lsinfer/deduce.hpp"
#include "lsinfer/error.hpp"

namespace lsinfer {

std::vector<SubProblem> subproblem_sequence(const Alphabet& alphabet) {
    std::string glyphs;
    for (auto v : alphabet.variables()) glyphs += alphabet.glyph(v);

    std::vector<SubProblem> out;
    out.push_back({SubProblemKind::VariablesOnly, "", alphabet.restrict_to(glyphs)});

    bool brackets_done = false;
    for (auto t : alphabet.turtle()) {
        const char g = alphabet.glyph(t);
        std::string added(1, g);
        if (g == '[' || g == ']') {
            if (brackets_done) continue;
            brackets_done = true;
            added.clear();
            if (alphabet.contains('[')) added += '[';
            if (alphabet.contains(']')) added += ']';
        }
        glyphs += added;
        out.push_back({SubProblemKind::Graphical, added, alphabet.restrict_to(glyphs)});
    }
    return out;
}

ObservationSequence project_observations(const ObservationSequence& obs, const Alphabet& vim) {
    const auto& alphabet = obs.alphabet();
    for (auto v : alphabet.variables()) {
        if (!vim.contains(alphabet.glyph(v))) {
            throw std::invalid_argument("projection scope must keep every variable");
        }
    }
    return obs.project(vim);
}

BoundsTable seed_scope_bounds(const BoundsTable& full, const Alphabet& full_alphabet,
                              const Alphabet& scope, const Productions* base,
                              const Alphabet* base_scope) {
    const auto n = scope.size();
    const std::int64_t min_length = n < full_alphabet.size() ? 0 : 1;
    std::vector<SymbolId> full_id(n);
    std::vector<bool> in_scope(full_alphabet.size(), false);
    for (auto s : scope.ids()) {
        full_id[s] = full_alphabet.id_of(scope.glyph(s));
        in_scope[full_id[s]] = true;
    }

    BoundsTable table(n);
    for (auto a : scope.ids()) {
        if (scope.is_turtle(a)) {
            table.length.min[a] = 1;
            table.length.max[a] = 1;
            for (auto b : scope.ids()) {
                const std::int64_t v = a == b ? 1 : 0;
                table.growth.lo(a, b) = v;
                table.growth.hi(a, b) = v;
            }
            continue;
        }
        const auto fa = full_id[a];
        for (auto b : scope.ids()) {
            table.growth.lo(a, b) = full.growth.lo(fa, full_id[b]);
            table.growth.hi(a, b) = full.growth.hi(fa, full_id[b]);
        }
        std::int64_t out_lo = 0;
        Bound out_hi(0);
        for (auto b : full_alphabet.ids()) {
            if (in_scope[b]) continue;
            out_lo += full.growth.lo(fa, b);
            out_hi = out_hi + full.growth.hi(fa, b);
        }
        std::int64_t lo = min_length;
        if (out_hi.bounded()) lo = std::max(lo, full.length.min[fa] - out_hi.value());
        table.length.min[a] = lo;
        const Bound hi = full.length.max[fa];
        table.length.max[a] = hi.bounded() ? Bound(hi.value() - out_lo) : hi;

        const auto& frags = full.fragments;
        table.fragments.prefix[a] = project_word(frags.prefix[fa], full_alphabet, scope);
        table.fragments.suffix[a] = project_word(frags.suffix[fa], full_alphabet, scope);
        if (frags.superstring[fa]) {
            table.fragments.superstring[a] =
                project_word(*frags.superstring[fa], full_alphabet, scope);
        }
        if (frags.subword[fa]) {
            table.fragments.subword[a] = project_word(*frags.subword[fa], full_alphabet, scope);
        }
    }

    if (base && base_scope) {
        for (auto v : base_scope->variables()) {
            const auto a = scope.id_of(base_scope->glyph(v));
            const Word lifted = project_word((*base)[v], *base_scope, scope);
            for (auto b : base_scope->ids()) {
                const auto sb = scope.id_of(base_scope->glyph(b));
                const auto c = static_cast<std::int64_t>(count_symbol(lifted, sb));
                table.growth.lo(a, sb) = std::max(table.growth.lo(a, sb), c);
                lower(table.growth.hi(a, sb), Bound(c));
            }
            table.fragments.subword[a] = lifted;
        }
    }
    return table;
}

BoundsTable deduce_scope(const ObservationSequence& obs, const BoundsTable& full,
                         const SubProblem& sub, const Productions* base,
                         const Alphabet* base_scope) {
    const auto projected = project_observations(obs, sub.scope);
    auto seed = seed_scope_bounds(full, obs.alphabet(), sub.scope, base, base_scope);
    return deduce_fixpoint(projected, std::move(seed));
}

Productions lift_productions(const Productions& productions, const Alphabet& from,
                             const Alphabet& to) {
    Productions out(to.size());
    for (auto s : to.ids()) {
        if (auto f = from.find(to.glyph(s))) {
            out[s] = project_word(productions[*f], from, to);
        } else if (to.is_turtle(s)) {
            out[s] = Word{s};
        }
    }
    return out;
}

Productions merge_solution(const Productions& base, const Alphabet& base_scope,
                           const Productions& placed, const Alphabet& scope) {
    for (auto b : base_scope.ids()) {
        const auto s = scope.id_of(base_scope.glyph(b));
        if (project_word(placed[s], scope, base_scope) != base[b]) {
            throw SubwordViolation("successor of '" + std::string(1, scope.glyph(s)) +
                                   "' does not preserve the previous solution");
        }
    }
    return placed;
}

}  // namespace lsinfer
