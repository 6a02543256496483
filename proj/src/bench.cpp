#include "lsinfer/bench.hpp"

#include <cstdio>

namespace lsinfer {

double RunReport::success_rate() const {
    if (runs.empty()) return 0.0;
    std::size_t ok = 0;
    for (const auto& r : runs) ok += r.solved ? 1 : 0;
    return static_cast<double>(ok) / static_cast<double>(runs.size());
}

std::optional<double> RunReport::mean_time_to_solve() const {
    double total = 0.0;
    std::size_t ok = 0;
    for (const auto& r : runs) {
        if (!r.solved) continue;
        total += r.elapsed_seconds;
        ++ok;
    }
    if (ok == 0) return std::nullopt;
    return total / static_cast<double>(ok);
}

RunReport bench_entry(const CorpusEntry& entry, std::size_t reps, const GAConfig& config) {
    RunReport report;
    report.name = entry.name;
    report.alphabet_size = entry.system.alphabet().variables().size();
    report.longest_successor = entry.system.longest_successor();
    report.successor_sum = entry.system.successor_sum();
    report.budget_seconds = config.time_budget_seconds;
    const auto obs = entry.observe();
    for (std::size_t r = 0; r < reps; ++r) {
        GAConfig run = config;
        run.seed = config.seed + r;
        const auto result = infer(obs, run);
        report.runs.push_back({run.seed, result.solved(), result.generations, result.elapsed_seconds});
    }
    return report;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

std::string bench_csv_row(const RunReport& report) {
    const auto mtts = report.mean_time_to_solve();
    return csv_field(report.name) + "," + std::to_string(report.alphabet_size) + "," +
           std::to_string(report.longest_successor) + "," + std::to_string(report.successor_sum) +
           "," + number(report.success_rate()) + "," + (mtts ? number(*mtts) : std::string("")) +
           "," + number(report.budget_seconds);
}

std::string bench_csv(const std::vector<RunReport>& reports) {
    std::string out = std::string(kBenchHeader) + "\n";
    for (const auto& r : reports) out += bench_csv_row(r) + "\n";
    return out;
}

}  // namespace lsinfer
