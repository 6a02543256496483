#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lsinfer {

using SymbolId = std::uint16_t;

/// A word is a sequence of symbol indices into an Alphabet.
using Word = std::vector<SymbolId>;

enum class SymbolKind : std::uint8_t { Variable, TurtleIdentity };

struct Symbol {
    char glyph;
    SymbolKind kind;

    bool operator==(const Symbol&) const = default;
};

/// Glyphs that are turtle-identity symbols unless declared otherwise.
inline constexpr std::string_view kTurtleGlyphs = "Ff+-[]&^\\/|";

inline bool is_default_turtle(char glyph) {
    return kTurtleGlyphs.find(glyph) != std::string_view::npos;
}

/// Ordered set of single-character symbols. Iteration order is declaration
/// order and every lookup is deterministic.
class Alphabet {
public:
    Alphabet();

    /// Glyphs in `glyphs` become TurtleIdentity when they appear in `turtle`.
    static Alphabet from_glyphs(std::string_view glyphs,
                                std::string_view turtle = kTurtleGlyphs);

    SymbolId add(char glyph, SymbolKind kind);

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }

    const Symbol& operator[](SymbolId id) const { return symbols_.at(id); }
    char glyph(SymbolId id) const { return symbols_.at(id).glyph; }
    SymbolKind kind(SymbolId id) const { return symbols_.at(id).kind; }
    bool is_turtle(SymbolId id) const { return kind(id) == SymbolKind::TurtleIdentity; }
    bool is_variable(SymbolId id) const { return kind(id) == SymbolKind::Variable; }

    std::optional<SymbolId> find(char glyph) const;
    bool contains(char glyph) const { return find(glyph).has_value(); }

    /// Throws UnknownGlyph(0, glyph) when absent.
    SymbolId id_of(char glyph) const;

    std::vector<SymbolId> variables() const;
    std::vector<SymbolId> turtle() const;
    std::vector<SymbolId> ids() const;

    /// Sub-alphabet keeping the symbols whose glyph is in `glyphs`, in this
    /// alphabet's order.
    Alphabet restrict_to(std::string_view glyphs) const;

    std::string glyphs() const;

    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

private:
    std::vector<Symbol> symbols_;
    std::array<std::int32_t, 256> index_;
};

Word parse_word(std::string_view text, const Alphabet& alphabet);
std::string format_word(const Word& word, const Alphabet& alphabet);

/// Re-express a word of `from` in `to`, erasing symbols whose glyph is absent in `to`.
Word project_word(const Word& word, const Alphabet& from, const Alphabet& to);

}  // namespace lsinfer
