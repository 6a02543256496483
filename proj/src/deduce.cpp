#include "lsinfer/deduce.hpp"

#include <algorithm>

#include "lsinfer/error.hpp"

namespace lsinfer {
namespace {

struct Brackets {
    std::optional<SymbolId> open;
    std::optional<SymbolId> close;

    explicit Brackets(const Alphabet& alphabet)
        : open(alphabet.find('[')), close(alphabet.find(']')) {}

    bool is_open(SymbolId s) const { return open && s == *open; }
    bool is_close(SymbolId s) const { return close && s == *close; }
};

std::optional<std::size_t> first_variable(const Word& w, const Alphabet& alphabet) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (alphabet.is_variable(w[i])) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> last_variable(const Word& w, const Alphabet& alphabet) {
    for (std::size_t i = w.size(); i-- > 0;) {
        if (alphabet.is_variable(w[i])) return i;
    }
    return std::nullopt;
}

// Turtle symbols rewrite to themselves, so the skipped run must reappear verbatim.
void require_same_run(const Word& prev, std::size_t prev_begin, const Word& next,
                      std::size_t next_begin, std::size_t length) {
    if (next_begin + length > next.size()) {
        throw InputExhausted("next word is shorter than the skipped turtle run");
    }
    if (!std::equal(prev.begin() + static_cast<std::ptrdiff_t>(prev_begin),
                    prev.begin() + static_cast<std::ptrdiff_t>(prev_begin + length),
                    next.begin() + static_cast<std::ptrdiff_t>(next_begin))) {
        throw Infeasible("turtle symbols are not reproduced by the next word");
    }
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
    if (num <= 0) return -((-num) / den);
    return (num + den - 1) / den;
}

bool starts_with(const Word& w, const Word& prefix) {
    return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

bool ends_with(const Word& w, const Word& suffix) {
    return suffix.size() <= w.size() &&
           std::equal(suffix.rbegin(), suffix.rend(), w.rbegin());
}

bool merge_prefix(Word& stored, Word candidate) {
    if (candidate.size() > stored.size()) {
        if (!starts_with(candidate, stored)) throw Infeasible("conflicting prefix fragments");
        stored = std::move(candidate);
        return true;
    }
    if (!starts_with(stored, candidate)) throw Infeasible("conflicting prefix fragments");
    return false;
}

bool merge_suffix(Word& stored, Word candidate) {
    if (candidate.size() > stored.size()) {
        if (!ends_with(candidate, stored)) throw Infeasible("conflicting suffix fragments");
        stored = std::move(candidate);
        return true;
    }
    if (!ends_with(stored, candidate)) throw Infeasible("conflicting suffix fragments");
    return false;
}

// succ(A) is a prefix of both words, hence of their common prefix.
bool merge_superstring(std::optional<Word>& stored, Word candidate) {
    if (!stored) {
        stored = std::move(candidate);
        return true;
    }
    const auto mismatch = std::mismatch(stored->begin(), stored->end(), candidate.begin(),
                                        candidate.end());
    const auto common = static_cast<std::size_t>(mismatch.first - stored->begin());
    if (common < stored->size()) {
        stored->resize(common);
        return true;
    }
    return false;
}

}  // namespace

BoundsTable initialize_bounds(const ObservationSequence& obs, std::int64_t variable_min_length) {
    const auto& alphabet = obs.alphabet();
    BoundsTable table(alphabet.size());
    for (auto a : alphabet.ids()) {
        if (alphabet.is_turtle(a)) {
            table.length.min[a] = 1;
            table.length.max[a] = 1;
            for (auto b : alphabet.ids()) {
                const std::int64_t v = a == b ? 1 : 0;
                table.growth.lo(a, b) = v;
                table.growth.hi(a, b) = v;
            }
        } else {
            table.length.min[a] = variable_min_length;
        }
    }
    return table;
}

std::optional<Fragment> extract_prefix_fragment(const Word& prev, const Word& next,
                                                const Alphabet& alphabet,
                                                const BoundsTable& table) {
    const auto anchor = first_variable(prev, alphabet);
    if (!anchor) return std::nullopt;
    const SymbolId a = prev[*anchor];
    const std::size_t begin = *anchor;
    require_same_run(prev, 0, next, 0, begin);

    const auto need = static_cast<std::size_t>(table.length.min[a]);
    if (next.size() < begin + need) {
        throw InputExhausted("next word ends inside the prefix of '" +
                             std::string(1, alphabet.glyph(a)) + "'");
    }
    const Brackets br(alphabet);
    std::size_t end = begin + need;
    long depth = 0;
    for (std::size_t k = begin; k < end; ++k) {
        if (br.is_open(next[k])) {
            ++depth;
        } else if (br.is_close(next[k]) && --depth < 0) {
            throw Infeasible("unmatched ']' inside a successor prefix");
        }
    }
    while (depth > 0) {
        if (end == next.size()) throw InputExhausted("unterminated branch in prefix fragment");
        const auto s = next[end++];
        if (br.is_open(s)) ++depth;
        if (br.is_close(s)) --depth;
    }
    return Fragment{a, Word(next.begin() + static_cast<std::ptrdiff_t>(begin),
                            next.begin() + static_cast<std::ptrdiff_t>(end))};
}

std::optional<Fragment> extract_suffix_fragment(const Word& prev, const Word& next,
                                                const Alphabet& alphabet,
                                                const BoundsTable& table) {
    const auto anchor = last_variable(prev, alphabet);
    if (!anchor) return std::nullopt;
    const SymbolId a = prev[*anchor];
    const std::size_t tail = prev.size() - 1 - *anchor;
    if (next.size() < tail) throw InputExhausted("next word shorter than the turtle suffix");
    require_same_run(prev, *anchor + 1, next, next.size() - tail, tail);

    const std::size_t end = next.size() - tail;
    const auto need = static_cast<std::size_t>(table.length.min[a]);
    if (end < need) {
        throw InputExhausted("next word ends inside the suffix of '" +
                             std::string(1, alphabet.glyph(a)) + "'");
    }
    const Brackets br(alphabet);
    std::size_t begin = end - need;
    long depth = 0;
    for (std::size_t k = end; k-- > begin;) {
        if (br.is_close(next[k])) {
            ++depth;
        } else if (br.is_open(next[k]) && --depth < 0) {
            throw Infeasible("unmatched '[' inside a successor suffix");
        }
    }
    while (depth > 0) {
        if (begin == 0) throw InputExhausted("unterminated branch in suffix fragment");
        const auto s = next[--begin];
        if (br.is_close(s)) ++depth;
        if (br.is_open(s)) --depth;
    }
    return Fragment{a, Word(next.begin() + static_cast<std::ptrdiff_t>(begin),
                            next.begin() + static_cast<std::ptrdiff_t>(end))};
}

std::optional<Fragment> extract_superstring_fragment(const Word& prev, const Word& next,
                                                     const Alphabet& alphabet,
                                                     const BoundsTable& table) {
    const auto anchor = first_variable(prev, alphabet);
    if (!anchor) return std::nullopt;
    const SymbolId a = prev[*anchor];
    const Bound amax = table.length.max[a];
    if (!amax.bounded()) return std::nullopt;
    const std::size_t begin = *anchor;
    require_same_run(prev, 0, next, 0, begin);

    const std::size_t end =
        std::min(next.size(), begin + static_cast<std::size_t>(amax.value()));
    const Brackets br(alphabet);
    std::size_t cut = end;
    std::vector<std::size_t> open;
    for (std::size_t k = begin; k < end; ++k) {
        if (br.is_open(next[k])) {
            open.push_back(k);
        } else if (br.is_close(next[k])) {
            if (open.empty()) {
                cut = k;
                break;
            }
            open.pop_back();
        }
    }
    if (cut == end && !open.empty()) cut = open.front();
    return Fragment{a, Word(next.begin() + static_cast<std::ptrdiff_t>(begin),
                            next.begin() + static_cast<std::ptrdiff_t>(cut))};
}

bool record_fragments(const ObservationSequence& obs, BoundsTable& table) {
    const auto& alphabet = obs.alphabet();
    auto& frags = table.fragments;
    bool changed = false;
    for (std::size_t i = 1; i < obs.size(); ++i) {
        const auto& prev = obs.word(i - 1);
        const auto& next = obs.word(i);
        if (auto f = extract_prefix_fragment(prev, next, alphabet, table)) {
            changed |= merge_prefix(frags.prefix[f->symbol], std::move(f->word));
        }
        if (auto f = extract_suffix_fragment(prev, next, alphabet, table)) {
            changed |= merge_suffix(frags.suffix[f->symbol], std::move(f->word));
        }
        if (auto f = extract_superstring_fragment(prev, next, alphabet, table)) {
            changed |= merge_superstring(frags.superstring[f->symbol], std::move(f->word));
        }
    }
    for (auto a : alphabet.variables()) {
        const auto& sup = frags.superstring[a];
        if (sup && !starts_with(*sup, frags.prefix[a])) {
            throw Infeasible("prefix fragment of '" + std::string(1, alphabet.glyph(a)) +
                             "' disagrees with its superstring");
        }
    }
    return changed;
}

bool growth_from_fragments(BoundsTable& table) {
    const auto n = table.symbols();
    const auto& frags = table.fragments;
    bool changed = false;
    std::vector<std::int64_t> counts(n);
    auto tally = [&counts](const Word& w) {
        std::fill(counts.begin(), counts.end(), 0);
        for (auto s : w) ++counts[s];
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = static_cast<SymbolId>(i);
        for (const Word* w : {&frags.prefix[a], &frags.suffix[a]}) {
            if (w->empty()) continue;
            tally(*w);
            for (std::size_t b = 0; b < n; ++b) {
                changed |= raise(table.growth.lo(a, static_cast<SymbolId>(b)), counts[b]);
            }
        }
        if (frags.subword[a]) {
            tally(*frags.subword[a]);
            for (std::size_t b = 0; b < n; ++b) {
                changed |= raise(table.growth.lo(a, static_cast<SymbolId>(b)), counts[b]);
            }
        }
        if (frags.superstring[a]) {
            tally(*frags.superstring[a]);
            for (std::size_t b = 0; b < n; ++b) {
                changed |= lower(table.growth.hi(a, static_cast<SymbolId>(b)), Bound(counts[b]));
            }
        }
    }
    return changed;
}

std::int64_t accounted_growth(const ObservationSequence& obs, const BoundsTable& table,
                              std::size_t step, SymbolId a) {
    std::int64_t total = 0;
    const auto& counts = obs.counts(step - 1);
    for (std::size_t b = 0; b < counts.size(); ++b) {
        if (counts[b] == 0) continue;
        total += as_int(counts[b]) * table.growth.lo(static_cast<SymbolId>(b), a);
    }
    return total;
}

std::int64_t unaccounted_growth(const ObservationSequence& obs, const BoundsTable& table,
                                std::size_t step, SymbolId a) {
    const auto ua = as_int(obs.count(step, a)) - accounted_growth(obs, table, step, a);
    if (ua < 0) {
        throw Infeasible("growth minima overproduce '" +
                         std::string(1, obs.alphabet().glyph(a)) + "' in word " +
                         std::to_string(step));
    }
    return ua;
}

bool update_growth_max(const ObservationSequence& obs, BoundsTable& table) {
    const auto& alphabet = obs.alphabet();
    const auto variables = alphabet.variables();
    bool changed = false;
    for (std::size_t i = 1; i < obs.size(); ++i) {
        const auto& counts = obs.counts(i - 1);
        for (auto a : alphabet.ids()) {
            const auto ua = unaccounted_growth(obs, table, i, a);
            for (auto b : variables) {
                if (counts[b] == 0) continue;
                const auto cap = table.growth.lo(b, a) + ua / as_int(counts[b]);
                changed |= lower(table.growth.hi(b, a), Bound(cap));
            }
            Bound reachable(0);
            for (auto c : alphabet.ids()) {
                if (counts[c] > 0) reachable = reachable + table.growth.hi(c, a) * as_int(counts[c]);
            }
            if (reachable < Bound(as_int(obs.count(i, a)))) {
                throw Infeasible("growth maxima cannot produce every '" +
                                 std::string(1, alphabet.glyph(a)) + "' in word " +
                                 std::to_string(i));
            }
        }
    }
    return changed;
}

bool update_growth_min(const ObservationSequence& obs, BoundsTable& table) {
    const auto& alphabet = obs.alphabet();
    const auto variables = alphabet.variables();
    bool changed = false;
    for (std::size_t i = 1; i < obs.size(); ++i) {
        const auto& counts = obs.counts(i - 1);
        for (auto a : alphabet.ids()) {
            const auto target = as_int(obs.count(i, a));
            for (auto b : variables) {
                if (counts[b] == 0) continue;
                Bound others(0);
                for (auto c : alphabet.ids()) {
                    if (c == b || counts[c] == 0) continue;
                    others = others + table.growth.hi(c, a) * as_int(counts[c]);
                }
                if (!others.bounded() || others.value() >= target) continue;
                changed |= raise(table.growth.lo(b, a),
                                 ceil_div(target - others.value(), as_int(counts[b])));
            }
        }
    }
    return changed;
}

Bound step_length_max(const ObservationSequence& obs, const BoundsTable& table,
                      std::size_t step, SymbolId a) {
    const auto& counts = obs.counts(step - 1);
    if (counts[a] == 0) return Bound::unbounded();
    std::int64_t x = as_int(obs.length(step));
    for (std::size_t b = 0; b < counts.size(); ++b) {
        if (b != a) x -= as_int(counts[b]) * table.length.min[b];
    }
    if (x < 0) {
        throw Infeasible("length minima exceed word " + std::to_string(step));
    }
    return Bound(x / as_int(counts[a]));
}

namespace {

// May be negative; the pivot rule needs the unclamped value to stay sound.
std::optional<std::int64_t> raw_step_length_min(const ObservationSequence& obs,
                                                const BoundsTable& table, std::size_t step,
                                                SymbolId a) {
    const auto& counts = obs.counts(step - 1);
    if (counts[a] == 0) return std::nullopt;
    Bound others(0);
    for (std::size_t b = 0; b < counts.size(); ++b) {
        if (b != a && counts[b] > 0) others = others + table.length.max[b] * as_int(counts[b]);
    }
    if (!others.bounded()) return std::nullopt;
    const auto x = as_int(obs.length(step)) - others.value();
    return ceil_div(x, as_int(counts[a]));
}

}  // namespace

std::optional<std::int64_t> step_length_min(const ObservationSequence& obs,
                                            const BoundsTable& table, std::size_t step,
                                            SymbolId a) {
    const auto raw = raw_step_length_min(obs, table, step, a);
    if (!raw) return std::nullopt;
    return std::max<std::int64_t>(0, *raw);
}

namespace {

std::optional<SymbolId> least_frequent(const ObservationSequence& obs, std::size_t step) {
    const auto& counts = obs.counts(step - 1);
    std::optional<SymbolId> best;
    for (std::size_t b = 0; b < counts.size(); ++b) {
        if (counts[b] == 0) continue;
        if (!best || counts[b] < counts[*best]) best = static_cast<SymbolId>(b);
    }
    return best;
}

}  // namespace

std::optional<StepTotal> step_total_max(const ObservationSequence& obs,
                                        const BoundsTable& table, std::size_t step) {
    const auto pivot = least_frequent(obs, step);
    if (!pivot) return std::nullopt;
    const Bound pivot_max = step_length_max(obs, table, step, *pivot);
    Bound total = pivot_max;
    for (std::size_t b = 0; b < table.symbols(); ++b) {
        if (b != *pivot) total = total + Bound(table.length.min[b]);
    }
    return StepTotal{*pivot, pivot_max, total};
}

Bound claim_length_max(const ObservationSequence& obs, const BoundsTable& table,
                       std::size_t step, SymbolId a) {
    if (obs.count(step - 1, a) == 0) return Bound::unbounded();
    const auto total = step_total_max(obs, table, step);
    if (!total || !total->total_max.bounded()) return Bound::unbounded();
    std::int64_t v = total->total_max.value();
    for (std::size_t b = 0; b < table.symbols(); ++b) {
        if (b != a) v -= table.length.min[b];
    }
    return Bound(v);
}

bool update_length_bounds(const ObservationSequence& obs, BoundsTable& table) {
    const auto& alphabet = obs.alphabet();
    const auto variables = alphabet.variables();
    const auto n = alphabet.size();
    bool changed = false;

    // Successor length versus the sum of its growth bounds.
    for (auto a : variables) {
        std::int64_t lo = 0;
        Bound hi(0);
        for (std::size_t b = 0; b < n; ++b) {
            lo += table.growth.lo(a, static_cast<SymbolId>(b));
            hi = hi + table.growth.hi(a, static_cast<SymbolId>(b));
        }
        changed |= raise(table.length.min[a], lo);
        if (hi.bounded()) changed |= lower(table.length.max[a], hi);
    }

    // Per-step room left by the other symbols.
    for (std::size_t i = 1; i < obs.size(); ++i) {
        for (auto t : alphabet.turtle()) {
            if (obs.count(i - 1, t) > 0 && step_length_max(obs, table, i, t) < Bound(1)) {
                throw Infeasible("word " + std::to_string(i) + " is too short");
            }
        }
        for (auto a : variables) {
            if (obs.count(i - 1, a) == 0) continue;
            changed |= lower(table.length.max[a], step_length_max(obs, table, i, a));
            if (auto lo = step_length_min(obs, table, i, a)) {
                changed |= raise(table.length.min[a], *lo);
            }
        }
    }

    // Bounds through the least frequent symbol of each word.
    for (std::size_t i = 1; i < obs.size(); ++i) {
        const auto total = step_total_max(obs, table, i);
        if (!total) continue;
        for (auto a : variables) {
            if (obs.count(i - 1, a) == 0) continue;
            changed |= lower(table.length.max[a], claim_length_max(obs, table, i, a));
        }
        const auto pivot = total->pivot;
        const auto pivot_min = raw_step_length_min(obs, table, i, pivot);
        const Bound pivot_max = table.length.max[pivot];
        if (!pivot_min || !pivot_max.bounded()) continue;
        for (auto a : variables) {
            if (obs.count(i - 1, a) == 0 || !table.length.max[a].bounded()) continue;
            changed |= raise(table.length.min[a],
                             *pivot_min - pivot_max.value() + table.length.max[a].value());
        }
    }
    return changed;
}

void check_feasible(const BoundsTable& table, const Alphabet& alphabet) {
    const auto n = table.symbols();
    for (std::size_t a = 0; a < n; ++a) {
        const auto id = static_cast<SymbolId>(a);
        const std::string glyph(1, alphabet.glyph(id));
        if (Bound(table.length.min[a]) > table.length.max[a]) {
            throw Infeasible("length bounds of '" + glyph + "' are empty: [" +
                             std::to_string(table.length.min[a]) + ", " +
                             table.length.max[a].to_string() + "]");
        }
        for (std::size_t b = 0; b < n; ++b) {
            const auto bid = static_cast<SymbolId>(b);
            if (Bound(table.growth.lo(id, bid)) > table.growth.hi(id, bid)) {
                throw Infeasible("growth bounds (" + glyph + "," +
                                 std::string(1, alphabet.glyph(bid)) + ") are empty");
            }
        }
    }
}

BoundsTable deduce_fixpoint(const ObservationSequence& obs) {
    return deduce_fixpoint(obs, initialize_bounds(obs));
}

BoundsTable deduce_fixpoint(const ObservationSequence& obs, BoundsTable table,
                            const DeduceOptions& options, DeduceStats* stats) {
    const auto& alphabet = obs.alphabet();
    check_feasible(table, alphabet);
    for (std::size_t pass = 1; pass <= options.max_passes; ++pass) {
        bool changed = false;
        for (auto stage : options.order) {
            switch (stage) {
                case DeduceStage::Fragments: changed |= record_fragments(obs, table); break;
                case DeduceStage::FragmentGrowth: changed |= growth_from_fragments(table); break;
                case DeduceStage::GrowthMax: changed |= update_growth_max(obs, table); break;
                case DeduceStage::GrowthMin: changed |= update_growth_min(obs, table); break;
                case DeduceStage::Lengths: changed |= update_length_bounds(obs, table); break;
            }
            check_feasible(table, alphabet);
        }
        if (stats) stats->passes = pass;
        if (!changed) return table;
    }
    throw Error("bound deduction did not converge within " +
                std::to_string(options.max_passes) + " passes");
}

}  // namespace lsinfer
