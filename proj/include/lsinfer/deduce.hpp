#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "lsinfer/bounds_table.hpp"
#include "lsinfer/lsystem.hpp"

namespace lsinfer {

/// Fresh table: variables get [variable_min_length, inf] lengths and [0, inf]
/// growth, turtle rows are fixed to the identity.
BoundsTable initialize_bounds(const ObservationSequence& obs,
                              std::int64_t variable_min_length = 1);

struct Fragment {
    SymbolId symbol;
    Word word;

    bool operator==(const Fragment&) const = default;
};

// Fragment scans over one derivation step prev => next. Each anchors on the
// first (or last) variable of prev, skipping the turtle symbols before it.
std::optional<Fragment> extract_prefix_fragment(const Word& prev, const Word& next,
                                                const Alphabet& alphabet,
                                                const BoundsTable& table);
std::optional<Fragment> extract_suffix_fragment(const Word& prev, const Word& next,
                                                const Alphabet& alphabet,
                                                const BoundsTable& table);
std::optional<Fragment> extract_superstring_fragment(const Word& prev, const Word& next,
                                                     const Alphabet& alphabet,
                                                     const BoundsTable& table);

// Propagation rules. Each tightens `table` in place, returns true when any
// bound or fragment changed and throws Infeasible on contradiction.
bool record_fragments(const ObservationSequence& obs, BoundsTable& table);
bool growth_from_fragments(BoundsTable& table);
bool update_growth_max(const ObservationSequence& obs, BoundsTable& table);
bool update_growth_min(const ObservationSequence& obs, BoundsTable& table);
bool update_length_bounds(const ObservationSequence& obs, BoundsTable& table);

/// Σ_B |ω_{step-1}|_B · (B,A)_min
std::int64_t accounted_growth(const ObservationSequence& obs, const BoundsTable& table,
                              std::size_t step, SymbolId a);
/// |ω_step|_A − accounted_growth; throws Infeasible when negative.
std::int64_t unaccounted_growth(const ObservationSequence& obs, const BoundsTable& table,
                                std::size_t step, SymbolId a);

/// Largest |succ(A)| leaving room for every other symbol of ω_{step-1} at its
/// minimum. Unbounded when A does not occur in ω_{step-1}.
Bound step_length_max(const ObservationSequence& obs, const BoundsTable& table,
                      std::size_t step, SymbolId a);
/// Smallest |succ(A)| given every other symbol at its maximum; nullopt when A
/// is absent or some other maximum is unbounded.
std::optional<std::int64_t> step_length_min(const ObservationSequence& obs,
                                            const BoundsTable& table, std::size_t step,
                                            SymbolId a);

struct StepTotal {
    SymbolId pivot;       // least frequent symbol of ω_{step-1}
    Bound pivot_max;      // step_length_max of the pivot
    Bound total_max;      // pivot_max + Σ_{B≠pivot} B_min
};

std::optional<StepTotal> step_total_max(const ObservationSequence& obs,
                                        const BoundsTable& table, std::size_t step);

/// total_max − Σ_{B≠A} B_min, for A occurring in ω_{step-1}.
Bound claim_length_max(const ObservationSequence& obs, const BoundsTable& table,
                       std::size_t step, SymbolId a);

/// Throws Infeasible when some lower bound exceeds its upper bound.
void check_feasible(const BoundsTable& table, const Alphabet& alphabet);

enum class DeduceStage { Fragments, FragmentGrowth, GrowthMax, GrowthMin, Lengths };

inline constexpr std::array<DeduceStage, 5> kDefaultStageOrder = {
    DeduceStage::Fragments, DeduceStage::FragmentGrowth, DeduceStage::GrowthMax,
    DeduceStage::GrowthMin, DeduceStage::Lengths};

struct DeduceOptions {
    std::size_t max_passes = 1000;
    std::array<DeduceStage, 5> order = kDefaultStageOrder;
};

struct DeduceStats {
    std::size_t passes = 0;
};

/// Run every rule until a full pass changes nothing.
BoundsTable deduce_fixpoint(const ObservationSequence& obs);
BoundsTable deduce_fixpoint(const ObservationSequence& obs, BoundsTable start,
                            const DeduceOptions& options = {}, DeduceStats* stats = nullptr);

}  // namespace lsinfer
