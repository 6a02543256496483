#include "lsinfer/alphabet.hpp"

#include "lsinfer/error.hpp"

namespace lsinfer {

UnknownGlyph::UnknownGlyph(std::size_t position, char glyph)
    : Error("unknown glyph '" + std::string(1, glyph) + "' at position " +
            std::to_string(position)),
      position_(position),
      glyph_(glyph) {}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
            what),
      line_(line),
      column_(column) {}

Alphabet::Alphabet() { index_.fill(-1); }

Alphabet Alphabet::from_glyphs(std::string_view glyphs, std::string_view turtle) {
    Alphabet alphabet;
    for (char c : glyphs) {
        if (alphabet.contains(c)) continue;
        const bool is_turtle = turtle.find(c) != std::string_view::npos;
        alphabet.add(c, is_turtle ? SymbolKind::TurtleIdentity : SymbolKind::Variable);
    }
    return alphabet;
}

SymbolId Alphabet::add(char glyph, SymbolKind kind) {
    auto slot = static_cast<unsigned char>(glyph);
    if (index_[slot] >= 0) {
        throw Error("duplicate glyph '" + std::string(1, glyph) + "' in alphabet");
    }
    if (glyph == '\n' || glyph == '\r') throw Error("line breaks cannot be symbols");
    const auto id = static_cast<SymbolId>(symbols_.size());
    symbols_.push_back({glyph, kind});
    index_[slot] = id;
    return id;
}

std::optional<SymbolId> Alphabet::find(char glyph) const {
    const auto idx = index_[static_cast<unsigned char>(glyph)];
    if (idx < 0) return std::nullopt;
    return static_cast<SymbolId>(idx);
}

SymbolId Alphabet::id_of(char glyph) const {
    if (auto id = find(glyph)) return *id;
    throw UnknownGlyph(0, glyph);
}

std::vector<SymbolId> Alphabet::variables() const {
    std::vector<SymbolId> out;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].kind == SymbolKind::Variable) out.push_back(static_cast<SymbolId>(i));
    }
    return out;
}

std::vector<SymbolId> Alphabet::turtle() const {
    std::vector<SymbolId> out;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].kind == SymbolKind::TurtleIdentity) {
            out.push_back(static_cast<SymbolId>(i));
        }
    }
    return out;
}

std::vector<SymbolId> Alphabet::ids() const {
    std::vector<SymbolId> out(symbols_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<SymbolId>(i);
    return out;
}

Alphabet Alphabet::restrict_to(std::string_view glyphs) const {
    Alphabet sub;
    for (const auto& s : symbols_) {
        if (glyphs.find(s.glyph) != std::string_view::npos) sub.add(s.glyph, s.kind);
    }
    return sub;
}

std::string Alphabet::glyphs() const {
    std::string out;
    out.reserve(symbols_.size());
    for (const auto& s : symbols_) out.push_back(s.glyph);
    return out;
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
    Word word;
    word.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        auto id = alphabet.find(text[i]);
        if (!id) throw UnknownGlyph(i, text[i]);
        word.push_back(*id);
    }
    return word;
}

std::string format_word(const Word& word, const Alphabet& alphabet) {
    std::string out;
    out.reserve(word.size());
    for (auto id : word) out.push_back(alphabet.glyph(id));
    return out;
}

Word project_word(const Word& word, const Alphabet& from, const Alphabet& to) {
    std::vector<std::int32_t> map(from.size(), -1);
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (auto id = to.find(from.glyph(static_cast<SymbolId>(i)))) map[i] = *id;
    }
    Word out;
    out.reserve(word.size());
    for (auto id : word) {
        if (map[id] >= 0) out.push_back(static_cast<SymbolId>(map[id]));
    }
    return out;
}

}  // namespace lsinfer
