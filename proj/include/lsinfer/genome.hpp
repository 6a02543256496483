#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lsinfer/bounds_table.hpp"
#include "lsinfer/error.hpp"
#include "lsinfer/lsystem.hpp"
#include "lsinfer/subproblem.hpp"

namespace lsinfer {

/// Gene values live in [0, 1].
using Genome = std::vector<double>;

/// Prefix/suffix fragments disagree with the base solution or the bounds
/// leave no successor; the previous stage's answer has to be revisited.
class SchemaConflict : public Infeasible {
public:
    using Infeasible::Infeasible;
};

/// Pick one of `k` options with a gene: floor(v·k), with v = 1 taking the last.
std::size_t choose(double v, std::size_t k);

enum class SuccessorMode { Fixed, Free, Insertion };

struct SuccessorSchema {
    SymbolId symbol = 0;
    SuccessorMode mode = SuccessorMode::Fixed;
    Word fixed;

    // Free mode: prefix + middle + suffix, middle length in [middle_min, middle_max].
    Word prefix;
    Word suffix;
    std::vector<std::int64_t> need;  // copies per symbol the middle must hold
    std::vector<std::int64_t> cap;   // copies per symbol the middle may hold
    std::size_t middle_min = 0;
    std::size_t middle_max = 0;

    // Insertion mode: prefix + base interior with insertions + suffix.
    Word interior;
    std::size_t min_inserts = 0;  // symbols, or pairs when paired
    std::size_t max_inserts = 0;

    std::size_t placement_genes = 0;
    std::size_t filler_genes = 0;
    std::size_t gene_offset = 0;

    std::size_t gene_count() const { return placement_genes + filler_genes; }
};

struct GenomeSchema {
    Alphabet scope;
    SubProblemKind kind = SubProblemKind::VariablesOnly;
    std::vector<SymbolId> inserted;  // graphical stage symbols, "[" before "]"
    Productions forced;              // successors of symbols without a schema
    std::vector<SuccessorSchema> successors;
    std::size_t gene_count = 0;

    std::string describe() const;
};

/// Schema for one successor. `base` is the previous stage's successor
/// expressed over `table`'s scope (graphical stages only).
SuccessorSchema build_successor_schema(const BoundsTable& table, const SubProblem& sub,
                                       SymbolId target, const Word* base = nullptr);

/// Schemas for every variable occurring in ω_0 … ω_{n-1}; other variables
/// keep their base (or identity) successor.
GenomeSchema build_schema(const BoundsTable& table, const SubProblem& sub,
                          const ObservationSequence& obs, const Productions* base = nullptr);

Word decode_successor(const SuccessorSchema& schema, std::span<const double> genes,
                      const std::vector<SymbolId>& inserted);
Productions decode(const GenomeSchema& schema, std::span<const double> genome);

}  // namespace lsinfer
