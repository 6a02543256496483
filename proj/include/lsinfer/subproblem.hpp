#pragma once

#include <string>
#include <vector>

#include "lsinfer/bounds_table.hpp"
#include "lsinfer/lsystem.hpp"

namespace lsinfer {

enum class SubProblemKind { VariablesOnly, Graphical };

/// One stage of the decomposition. Scopes are cumulative: each graphical
/// stage adds `added` to the previous scope.
struct SubProblem {
    SubProblemKind kind = SubProblemKind::VariablesOnly;
    std::string added;
    Alphabet scope;

    bool paired() const { return added.size() == 2; }
};

std::vector<SubProblem> subproblem_sequence(const Alphabet& alphabet);

/// Erase every symbol outside `vim`; `vim` must contain all variables.
ObservationSequence project_observations(const ObservationSequence& obs, const Alphabet& vim);

/// Seed a table for `scope` from the full-alphabet table: in-scope growth
/// bounds, lengths net of out-of-scope growth, projected fragments. When a
/// previous stage solved `base` over `base_scope`, its growth counts are exact.
BoundsTable seed_scope_bounds(const BoundsTable& full, const Alphabet& full_alphabet,
                              const Alphabet& scope, const Productions* base = nullptr,
                              const Alphabet* base_scope = nullptr);

/// Seeded scope table run to its fixed point over the projected observations.
BoundsTable deduce_scope(const ObservationSequence& obs, const BoundsTable& full,
                         const SubProblem& sub, const Productions* base = nullptr,
                         const Alphabet* base_scope = nullptr);

/// Re-express productions over `from` in `to` (symbols of `to` missing from
/// `from` get identity successors when turtle, empty words otherwise).
Productions lift_productions(const Productions& productions, const Alphabet& from,
                             const Alphabet& to);

/// Check that every successor of `placed` (over `scope`) erases to the
/// matching successor of `base` (over `base_scope`); throws SubwordViolation.
Productions merge_solution(const Productions& base, const Alphabet& base_scope,
                           const Productions& placed, const Alphabet& scope);

}  // namespace lsinfer
