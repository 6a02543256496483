#include "lsinfer/lsystem.hpp"

#include <algorithm>
#include <stdexcept>

#include "lsinfer/error.hpp"

namespace lsinfer {

LSystem::LSystem(Alphabet alphabet, Word axiom, Productions successors)
    : alphabet_(std::move(alphabet)), axiom_(std::move(axiom)), successors_(std::move(successors)) {
    if (alphabet_.empty()) throw Error("L-system alphabet is empty");
    if (successors_.size() != alphabet_.size()) {
        throw Error("L-system needs exactly one production per symbol");
    }
    const auto n = alphabet_.size();
    auto in_range = [n](const Word& w) {
        return std::all_of(w.begin(), w.end(), [n](SymbolId s) { return s < n; });
    };
    if (!in_range(axiom_)) throw Error("axiom uses a symbol outside the alphabet");
    for (std::size_t i = 0; i < n; ++i) {
        const auto id = static_cast<SymbolId>(i);
        const auto& succ = successors_[i];
        const std::string glyph(1, alphabet_.glyph(id));
        if (succ.empty()) throw Error("empty successor for '" + glyph + "'");
        if (!in_range(succ)) throw Error("successor of '" + glyph + "' leaves the alphabet");
        if (alphabet_.is_turtle(id) && succ != Word{id}) {
            throw Error("turtle symbol '" + glyph + "' must rewrite to itself");
        }
        if (alphabet_.is_variable(id) && !branch_balanced(succ, alphabet_)) {
            throw Error("successor of '" + glyph + "' has unbalanced brackets");
        }
    }
}

std::size_t LSystem::successor_sum() const {
    std::size_t sum = 0;
    for (auto v : alphabet_.variables()) sum += successors_[v].size();
    return sum;
}

std::size_t LSystem::longest_successor() const {
    std::size_t longest = 0;
    for (auto v : alphabet_.variables()) longest = std::max(longest, successors_[v].size());
    return longest;
}

ObservationSequence::ObservationSequence(Alphabet alphabet, std::vector<Word> words)
    : alphabet_(std::move(alphabet)), words_(std::move(words)) {
    if (words_.size() < 2) {
        throw std::invalid_argument("observation sequence needs at least two words");
    }
    counts_.reserve(words_.size());
    for (const auto& w : words_) {
        std::vector<std::size_t> c(alphabet_.size(), 0);
        for (auto s : w) {
            if (s >= c.size()) throw Error("observed word uses a symbol outside the alphabet");
            ++c[s];
        }
        counts_.push_back(std::move(c));
    }
}

ObservationSequence ObservationSequence::project(const Alphabet& sub) const {
    std::vector<Word> projected;
    projected.reserve(words_.size());
    for (const auto& w : words_) projected.push_back(project_word(w, alphabet_, sub));
    return ObservationSequence(sub, std::move(projected));
}

Word derive(std::span<const Word> successors, const Word& word, std::size_t cap) {
    std::size_t total = 0;
    for (auto s : word) total += successors[s].size();
    if (total > cap) {
        throw WordLengthLimitExceeded("derived word of " + std::to_string(total) +
                                      " symbols exceeds cap " + std::to_string(cap));
    }
    Word out;
    out.reserve(total);
    for (auto s : word) {
        const auto& succ = successors[s];
        out.insert(out.end(), succ.begin(), succ.end());
    }
    return out;
}

Word derive(const LSystem& system, const Word& word, std::size_t cap) {
    return derive(system.successors(), word, cap);
}

ObservationSequence derive_sequence(const LSystem& system, std::size_t n, std::size_t cap) {
    if (n < 1) throw std::invalid_argument("derive_sequence needs n >= 1");
    std::vector<Word> words;
    words.reserve(n + 1);
    words.push_back(system.axiom());
    for (std::size_t i = 1; i <= n; ++i) words.push_back(derive(system, words.back(), cap));
    return ObservationSequence(system.alphabet(), std::move(words));
}

bool check_consistency(const LSystem& system, const ObservationSequence& obs) {
    if (!(system.alphabet() == obs.alphabet())) return false;
    if (system.axiom() != obs.word(0)) return false;
    const auto& succ = system.successors();
    for (std::size_t i = 1; i < obs.size(); ++i) {
        const auto& prev = obs.word(i - 1);
        const auto& next = obs.word(i);
        std::size_t pos = 0;
        for (auto s : prev) {
            const auto& x = succ[s];
            if (pos + x.size() > next.size()) return false;
            if (!std::equal(x.begin(), x.end(), next.begin() + static_cast<std::ptrdiff_t>(pos))) {
                return false;
            }
            pos += x.size();
        }
        if (pos != next.size()) return false;
    }
    return true;
}

std::size_t count_symbol(const Word& word, SymbolId symbol) {
    return static_cast<std::size_t>(std::count(word.begin(), word.end(), symbol));
}

bool branch_balanced(const Word& word, const Alphabet& alphabet) {
    const auto open = alphabet.find('[');
    const auto close = alphabet.find(']');
    if (!open && !close) return true;
    long depth = 0;
    for (auto s : word) {
        if (open && s == *open) {
            ++depth;
        } else if (close && s == *close) {
            if (--depth < 0) return false;
        }
    }
    return depth == 0;
}

Productions identity_productions(const Alphabet& alphabet) {
    Productions p(alphabet.size());
    for (auto t : alphabet.turtle()) p[t] = Word{t};
    return p;
}

}  // namespace lsinfer
