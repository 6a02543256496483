#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lsinfer/ga.hpp"
#include "lsinfer/lsystem.hpp"

namespace lsinfer {

struct CorpusEntry {
    std::string name;
    LSystem system;
    std::set<std::string> tags;
    std::string source;
    /// Derivation steps used when observing this entry.
    std::size_t depth = 4;

    ObservationSequence observe() const { return derive_sequence(system, depth); }
};

/// Largest n ≤ max_steps with |ω_n| ≤ max_length, but at least 2.
std::size_t observation_depth(const LSystem& system, std::size_t max_steps = 6,
                              std::size_t max_length = 4000);

std::vector<CorpusEntry> builtin_corpus();

/// Throws std::out_of_range when no entry has that name.
const CorpusEntry& find_entry(const std::vector<CorpusEntry>& entries, const std::string& name);

/// New system with `alphabet_size` variables and longest successor exactly
/// `max_successor_len`, spliced from donor successors with F symbols trimmed.
CorpusEntry generate_bootstrap(std::size_t alphabet_size, std::size_t max_successor_len,
                               std::span<const CorpusEntry> donors, Rng& rng);

struct GridCell {
    std::size_t alphabet_size = 0;
    std::size_t max_successor_len = 0;
    std::optional<CorpusEntry> entry;
    std::string note;
};

inline constexpr std::size_t kGridAlphabetMin = 3;
inline constexpr std::size_t kGridAlphabetMax = 25;
inline constexpr std::size_t kGridLengthMin = 5;
inline constexpr std::size_t kGridLengthMax = 25;

/// Alphabet sizes 3..25 step 2 by lengths 5..25 step 5; unsatisfiable cells
/// carry a note instead of an entry.
std::vector<GridCell> grid(std::span<const CorpusEntry> donors, Rng& rng);

/// The grid cell (k, L) generated from the built-in donors with `seed`.
CorpusEntry grid_entry(std::size_t alphabet_size, std::size_t max_successor_len,
                       std::uint64_t seed);

}  // namespace lsinfer
