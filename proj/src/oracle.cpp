#include "lsinfer/oracle.hpp"

#include <algorithm>
#include <functional>

#include "lsinfer/deduce.hpp"
#include "lsinfer/error.hpp"
#include "lsinfer/fitness.hpp"

namespace lsinfer {
namespace {

struct WordLimits {
    std::size_t min_length = 1;
    std::size_t max_length = 1;
    std::vector<std::int64_t> lo;
    std::vector<Bound> hi;
    Word prefix;
    Word suffix;
    std::optional<Word> superstring;
};

class Budget {
public:
    explicit Budget(std::uint64_t cap) : cap_(cap) {}

    void spend() {
        if (++used_ > cap_) throw BudgetExceeded("brute-force candidate cap reached");
    }

private:
    std::uint64_t cap_;
    std::uint64_t used_ = 0;
};

void words_of_length(std::size_t length, const WordLimits& lim, const Alphabet& alphabet,
                     Budget& budget, std::vector<Word>& out) {
    const auto n = alphabet.size();
    const auto open = alphabet.find('[');
    const auto close = alphabet.find(']');
    Word w;
    std::vector<std::int64_t> used(n, 0);
    std::function<void(long)> extend = [&](long depth) {
        const auto k = w.size();
        if (k == length) {
            if (depth != 0) return;
            for (std::size_t b = 0; b < n; ++b) {
                if (used[b] < lim.lo[b]) return;
            }
            if (lim.suffix.size() > length ||
                !std::equal(lim.suffix.rbegin(), lim.suffix.rend(), w.rbegin())) {
                return;
            }
            budget.spend();
            out.push_back(w);
            return;
        }
        for (std::size_t b = 0; b < n; ++b) {
            const auto s = static_cast<SymbolId>(b);
            if (k < lim.prefix.size() && lim.prefix[k] != s) continue;
            if (lim.superstring && (*lim.superstring)[k] != s) continue;
            if (Bound(used[b] + 1) > lim.hi[b]) continue;
            long d = depth;
            if (open && s == *open) ++d;
            if (close && s == *close && --d < 0) continue;
            if (d > static_cast<long>(length - k - 1)) continue;
            w.push_back(s);
            ++used[b];
            extend(d);
            --used[b];
            w.pop_back();
        }
    };
    extend(0);
}

bool occurs_before_last(const ObservationSequence& obs, SymbolId a) {
    for (std::size_t i = 0; i < obs.steps(); ++i) {
        if (obs.count(i, a) > 0) return true;
    }
    return false;
}

std::size_t longest_word(const ObservationSequence& obs) {
    std::size_t m = 0;
    for (const auto& w : obs.words()) m = std::max(m, w.size());
    return m;
}

}  // namespace

SearchSpace build_search_space(const ObservationSequence& obs, SearchMode mode,
                               const OracleOptions& options) {
    const auto& alphabet = obs.alphabet();
    const auto n = alphabet.size();
    SearchSpace space;
    space.candidates.resize(n);

    std::optional<BoundsTable> table;
    if (mode == SearchMode::Bounded) {
        try {
            table = deduce_fixpoint(obs);
        } catch (const Infeasible&) {
            space.feasible = false;
            return space;
        }
    }

    Budget budget(options.candidate_cap);
    const auto longest = std::max<std::size_t>(1, longest_word(obs));
    for (auto a : alphabet.ids()) {
        if (alphabet.is_turtle(a) || !occurs_before_last(obs, a)) {
            space.candidates[a] = {Word{a}};
            continue;
        }
        WordLimits lim;
        lim.lo.assign(n, 0);
        lim.hi.assign(n, Bound::unbounded());
        lim.max_length = longest;
        if (table) {
            lim.min_length = static_cast<std::size_t>(std::max<std::int64_t>(1, table->length.min[a]));
            if (table->length.max[a].bounded()) {
                lim.max_length = std::min<std::size_t>(
                    lim.max_length, static_cast<std::size_t>(table->length.max[a].value()));
            }
            for (auto b : alphabet.ids()) {
                lim.lo[b] = table->growth.lo(a, b);
                lim.hi[b] = table->growth.hi(a, b);
            }
            lim.prefix = table->fragments.prefix[a];
            lim.suffix = table->fragments.suffix[a];
            lim.superstring = table->fragments.superstring[a];
            if (lim.superstring) lim.max_length = std::min(lim.max_length, lim.superstring->size());
        }
        for (auto len = lim.min_length; len <= lim.max_length; ++len) {
            words_of_length(len, lim, alphabet, budget, space.candidates[a]);
        }
        if (space.candidates[a].empty()) {
            space.feasible = false;
            return space;
        }
    }
    return space;
}

std::vector<LSystem> enumerate_consistent(const ObservationSequence& obs, SearchMode mode,
                                          std::size_t limit, const OracleOptions& options) {
    std::vector<LSystem> found;
    if (limit == 0) return found;
    const auto space = build_search_space(obs, mode, options);
    if (!space.feasible) return found;

    const auto& alphabet = obs.alphabet();
    const auto n = alphabet.size();
    const auto steps = obs.steps();

    // Parikh vectors must add up exactly: sum[i][b] over chosen successors.
    std::vector<std::vector<std::int64_t>> sum(steps, std::vector<std::int64_t>(n, 0));
    Productions chosen(n);
    Budget budget(options.candidate_cap);

    auto apply = [&](SymbolId a, const Word& w, std::int64_t sign) {
        std::vector<std::int64_t> c(n, 0);
        for (auto s : w) ++c[s];
        bool over = false;
        for (std::size_t i = 0; i < steps; ++i) {
            const auto k = static_cast<std::int64_t>(obs.count(i, a));
            if (k == 0) continue;
            for (std::size_t b = 0; b < n; ++b) {
                sum[i][b] += sign * k * c[b];
                if (sum[i][b] > static_cast<std::int64_t>(obs.count(i + 1, b))) over = true;
            }
        }
        return !over;
    };

    std::function<bool(std::size_t)> visit = [&](std::size_t a) -> bool {
        if (a == n) {
            for (std::size_t i = 0; i < steps; ++i) {
                for (std::size_t b = 0; b < n; ++b) {
                    if (sum[i][b] != static_cast<std::int64_t>(obs.count(i + 1, b))) return false;
                }
            }
            if (fitness(chosen, obs) != 0.0) return false;
            found.emplace_back(alphabet, obs.word(0), chosen);
            return found.size() >= limit;
        }
        const auto id = static_cast<SymbolId>(a);
        for (const auto& w : space.candidates[a]) {
            budget.spend();
            chosen[a] = w;
            const bool ok = apply(id, w, +1);
            bool done = false;
            if (ok) done = visit(a + 1);
            apply(id, w, -1);
            if (done) return true;
        }
        return false;
    };
    visit(0);
    return found;
}

std::optional<LSystem> brute_force_infer(const ObservationSequence& obs, SearchMode mode,
                                         const OracleOptions& options) {
    auto found = enumerate_consistent(obs, mode, 1, options);
    if (found.empty()) return std::nullopt;
    return std::move(found.front());
}

}  // namespace lsinfer
