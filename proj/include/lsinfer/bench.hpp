#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsinfer/corpus.hpp"
#include "lsinfer/infer.hpp"

namespace lsinfer {

struct RunRecord {
    std::uint64_t seed = 0;
    bool solved = false;
    std::size_t generations = 0;
    double elapsed_seconds = 0.0;
};

struct RunReport {
    std::string name;
    std::size_t alphabet_size = 0;
    std::size_t longest_successor = 0;
    std::size_t successor_sum = 0;
    double budget_seconds = 0.0;
    std::vector<RunRecord> runs;

    double success_rate() const;
    /// Mean elapsed time over successful runs.
    std::optional<double> mean_time_to_solve() const;
    bool solved() const { return !runs.empty() && success_rate() == 1.0; }
};

/// `reps` runs seeded config.seed, config.seed + 1, ...
RunReport bench_entry(const CorpusEntry& entry, std::size_t reps, const GAConfig& config);

inline constexpr const char* kBenchHeader =
    "name,alphabet_size,longest_successor,successor_sum,SR,MTTS_s,budget_s";

std::string bench_csv_row(const RunReport& report);
std::string bench_csv(const std::vector<RunReport>& reports);

}  // namespace lsinfer
