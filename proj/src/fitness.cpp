#include "lsinfer/fitness.hpp"

#include <algorithm>
#include <cstdio>

namespace lsinfer {

std::size_t prefix_errors(const Word& observed, const Word& predicted) {
    const auto mm = std::mismatch(observed.begin(), observed.end(), predicted.begin(),
                                  predicted.end());
    const auto common = static_cast<std::size_t>(mm.first - observed.begin());
    return std::max(observed.size(), predicted.size()) - common;
}

double fitness(std::span<const Word> productions, const ObservationSequence& obs) {
    const auto& alphabet = obs.alphabet();
    for (auto v : alphabet.variables()) {
        if (!branch_balanced(productions[v], alphabet)) return kSentinel;
    }

    std::vector<std::size_t> predicted(obs.size(), 0);
    for (std::size_t i = 1; i < obs.size(); ++i) {
        const auto& counts = obs.counts(i - 1);
        std::size_t len = 0;
        for (std::size_t a = 0; a < counts.size(); ++a) len += counts[a] * productions[a].size();
        if (len > 2 * obs.length(i)) return kSentinel;
        predicted[i] = len;
    }

    double total = 0.0;
    bool wrong = false;
    for (std::size_t i = 1; i < obs.size(); ++i) {
        if (wrong) {
            total += 1.0;
            continue;
        }
        const auto& target = obs.word(i);
        // Walk the derivation lazily and stop at the first mismatch.
        std::size_t pos = 0;
        bool diverged = false;
        for (auto s : obs.word(i - 1)) {
            for (auto t : productions[s]) {
                if (pos >= target.size() || target[pos] != t) {
                    diverged = true;
                    break;
                }
                ++pos;
            }
            if (diverged) break;
        }
        const auto errors = std::max(target.size(), predicted[i]) - pos;
        if (errors == 0) continue;
        total += static_cast<double>(errors) / static_cast<double>(target.size());
        wrong = true;
    }
    return total;
}

std::string format_fitness(double f) {
    if (is_sentinel(f)) return "sentinel";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", f);
    return buf;
}

}  // namespace lsinfer
