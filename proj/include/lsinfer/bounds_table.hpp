#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lsinfer/alphabet.hpp"

namespace lsinfer {

/// Non-negative integer upper bound, or Unbounded (ordered above every integer).
class Bound {
public:
    constexpr Bound() noexcept : value_(kInfinite) {}
    constexpr Bound(std::int64_t value) noexcept : value_(value) {}  // NOLINT: implicit by intent

    static constexpr Bound unbounded() noexcept { return Bound(); }

    constexpr bool bounded() const noexcept { return value_ != kInfinite; }
    constexpr std::int64_t value() const noexcept { return value_; }

    friend constexpr auto operator<=>(Bound, Bound) noexcept = default;
    friend constexpr bool operator==(Bound, Bound) noexcept = default;

    friend constexpr Bound operator+(Bound a, Bound b) noexcept {
        if (!a.bounded() || !b.bounded()) return unbounded();
        return Bound(a.value_ + b.value_);
    }
    friend constexpr Bound operator*(Bound a, std::int64_t k) noexcept {
        if (k == 0) return Bound(0);
        if (!a.bounded()) return unbounded();
        return Bound(a.value_ * k);
    }

    std::string to_string() const { return bounded() ? std::to_string(value_) : "inf"; }

private:
    static constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max();
    std::int64_t value_;
};

/// (A,B)_min ≤ |succ(A)|_B ≤ (A,B)_max, stored row-major by A.
struct GrowthBounds {
    std::size_t symbols = 0;
    std::vector<std::int64_t> min;
    std::vector<Bound> max;

    std::int64_t& lo(SymbolId a, SymbolId b) { return min[a * symbols + b]; }
    std::int64_t lo(SymbolId a, SymbolId b) const { return min[a * symbols + b]; }
    Bound& hi(SymbolId a, SymbolId b) { return max[a * symbols + b]; }
    Bound hi(SymbolId a, SymbolId b) const { return max[a * symbols + b]; }

    bool operator==(const GrowthBounds&) const = default;
};

/// A_min ≤ |succ(A)| ≤ A_max.
struct LengthBounds {
    std::vector<std::int64_t> min;
    std::vector<Bound> max;

    bool operator==(const LengthBounds&) const = default;
};

/// Words known to be a prefix / suffix / subword of succ(A). The superstring
/// fragment is anchored at the left: succ(A) is a prefix of it.
struct FragmentSet {
    std::vector<Word> prefix;
    std::vector<Word> suffix;
    std::vector<std::optional<Word>> superstring;
    std::vector<std::optional<Word>> subword;

    bool operator==(const FragmentSet&) const = default;
};

struct BoundsTable {
    GrowthBounds growth;
    LengthBounds length;
    FragmentSet fragments;

    explicit BoundsTable(std::size_t symbols = 0);

    std::size_t symbols() const noexcept { return length.min.size(); }

    bool operator==(const BoundsTable&) const = default;
};

/// Raise a lower bound; true when it changed.
inline bool raise(std::int64_t& current, std::int64_t candidate) {
    if (candidate > current) {
        current = candidate;
        return true;
    }
    return false;
}

/// Lower an upper bound; true when it changed.
inline bool lower(Bound& current, Bound candidate) {
    if (candidate < current) {
        current = candidate;
        return true;
    }
    return false;
}

}  // namespace lsinfer
