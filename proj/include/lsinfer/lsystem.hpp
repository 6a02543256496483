#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lsinfer/alphabet.hpp"

namespace lsinfer {

/// Successor words indexed by SymbolId. Unlike LSystem this carries no
/// invariants; candidates in reduced alphabets may hold empty successors.
using Productions = std::vector<Word>;

inline constexpr std::size_t kDefaultWordCap = 10'000'000;

/// Deterministic context-free L-system: one non-empty, branch-balanced
/// successor per symbol, identity successors for turtle symbols.
class LSystem {
public:
    LSystem(Alphabet alphabet, Word axiom, Productions successors);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const Word& axiom() const noexcept { return axiom_; }
    const Word& successor(SymbolId id) const { return successors_.at(id); }
    const Productions& successors() const noexcept { return successors_; }

    /// Σ |succ(A)| over the variables.
    std::size_t successor_sum() const;
    std::size_t longest_successor() const;

    bool operator==(const LSystem&) const = default;

private:
    Alphabet alphabet_;
    Word axiom_;
    Productions successors_;
};

/// Observed derivation ω_0 … ω_n (n ≥ 1) with per-word symbol counts cached.
class ObservationSequence {
public:
    ObservationSequence(Alphabet alphabet, std::vector<Word> words);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const std::vector<Word>& words() const noexcept { return words_; }
    const Word& word(std::size_t i) const { return words_.at(i); }
    std::size_t size() const noexcept { return words_.size(); }
    /// Number of derivation steps n.
    std::size_t steps() const noexcept { return words_.size() - 1; }

    /// |ω_i|_A
    std::size_t count(std::size_t i, SymbolId a) const { return counts_[i][a]; }
    const std::vector<std::size_t>& counts(std::size_t i) const { return counts_[i]; }
    std::size_t length(std::size_t i) const { return words_[i].size(); }

    /// Erase every symbol whose glyph is not in `sub`; the result is expressed over `sub`.
    ObservationSequence project(const Alphabet& sub) const;

private:
    Alphabet alphabet_;
    std::vector<Word> words_;
    std::vector<std::vector<std::size_t>> counts_;
};

Word derive(std::span<const Word> successors, const Word& word,
            std::size_t cap = kDefaultWordCap);
Word derive(const LSystem& system, const Word& word, std::size_t cap = kDefaultWordCap);

ObservationSequence derive_sequence(const LSystem& system, std::size_t n,
                                    std::size_t cap = kDefaultWordCap);

bool check_consistency(const LSystem& system, const ObservationSequence& obs);

std::size_t count_symbol(const Word& word, SymbolId symbol);

/// `[` and `]` nest properly. Brackets are looked up by glyph.
bool branch_balanced(const Word& word, const Alphabet& alphabet);

/// Identity successors for every turtle symbol, empty words for variables.
Productions identity_productions(const Alphabet& alphabet);

}  // namespace lsinfer
