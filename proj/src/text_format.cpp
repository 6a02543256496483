#include "lsinfer/text_format.hpp"

#include <map>
#include <optional>
#include <sstream>

#include "lsinfer/error.hpp"

namespace lsinfer {
namespace {

struct Line {
    std::size_t number;
    std::size_t indent;
    std::string_view text;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto end = text.find('\n');
        auto line = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        std::size_t indent = 0;
        while (indent < line.size() && is_space(line[indent])) ++indent;
        line.remove_prefix(indent);
        while (!line.empty() && is_space(line.back())) line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        lines.push_back({number, indent, line});
    }
    return lines;
}

void check_word_text(std::string_view word, const Line& line, std::size_t offset) {
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (is_space(word[i])) {
            throw ParseError(line.number, line.indent + offset + i + 1,
                             "whitespace inside a word");
        }
    }
}

}  // namespace

LSystem parse_lsystem(std::string_view text, std::string_view turtle) {
    const auto lines = content_lines(text);
    if (lines.empty()) throw ParseError(1, 1, "missing 'axiom:' line");

    const auto& first = lines.front();
    constexpr std::string_view kAxiom = "axiom:";
    if (first.text.substr(0, kAxiom.size()) != kAxiom) {
        throw ParseError(first.number, first.indent + 1, "expected 'axiom: <word>'");
    }
    auto axiom_text = first.text.substr(kAxiom.size());
    std::size_t axiom_offset = kAxiom.size();
    while (!axiom_text.empty() && is_space(axiom_text.front())) {
        axiom_text.remove_prefix(1);
        ++axiom_offset;
    }
    check_word_text(axiom_text, first, axiom_offset);

    std::vector<char> order;
    std::map<char, std::string_view> rules;
    std::map<char, std::size_t> rule_line;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& line = lines[k];
        const auto arrow = line.text.find("->");
        if (arrow == std::string_view::npos) {
            throw ParseError(line.number, line.indent + 1, "expected '<glyph> -> <word>'");
        }
        auto lhs = line.text.substr(0, arrow);
        while (!lhs.empty() && is_space(lhs.back())) lhs.remove_suffix(1);
        if (lhs.size() != 1) {
            throw ParseError(line.number, line.indent + 1,
                             "predecessor must be a single glyph");
        }
        std::size_t offset = arrow + 2;
        auto rhs = line.text.substr(offset);
        while (!rhs.empty() && is_space(rhs.front())) {
            rhs.remove_prefix(1);
            ++offset;
        }
        if (rhs.empty()) {
            throw ParseError(line.number, line.indent + offset + 1, "empty successor");
        }
        check_word_text(rhs, line, offset);
        const char glyph = lhs.front();
        if (rules.contains(glyph)) {
            throw ParseError(line.number, line.indent + 1,
                             "duplicate production for '" + std::string(1, glyph) + "'");
        }
        rules.emplace(glyph, rhs);
        rule_line.emplace(glyph, line.number);
        order.push_back(glyph);
    }

    std::string glyphs(order.begin(), order.end());
    std::map<char, std::size_t> seen_on;
    auto note = [&](std::string_view w, std::size_t line) {
        for (char c : w) {
            if (glyphs.find(c) == std::string::npos) glyphs.push_back(c);
            seen_on.emplace(c, line);
        }
    };
    note(axiom_text, first.number);
    for (char g : order) note(rules.at(g), rule_line.at(g));

    Alphabet alphabet;
    for (char c : glyphs) {
        const auto rule = rules.find(c);
        const bool identity = rule == rules.end() || rule->second == std::string_view(&c, 1);
        const bool is_turtle = turtle.find(c) != std::string_view::npos && identity;
        if (!is_turtle && rule == rules.end()) {
            throw ParseError(seen_on.at(c), 1,
                             "no production for variable '" + std::string(1, c) + "'");
        }
        alphabet.add(c, is_turtle ? SymbolKind::TurtleIdentity : SymbolKind::Variable);
    }

    Productions successors(alphabet.size());
    for (auto id : alphabet.ids()) {
        const auto rule = rules.find(alphabet.glyph(id));
        successors[id] = rule == rules.end() ? Word{id} : parse_word(rule->second, alphabet);
    }
    auto axiom = parse_word(axiom_text, alphabet);
    try {
        return LSystem(std::move(alphabet), std::move(axiom), std::move(successors));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(first.number, 1, e.what());
    }
}

std::string format_lsystem(const LSystem& system) {
    const auto& alphabet = system.alphabet();
    std::string out = "axiom: " + format_word(system.axiom(), alphabet) + "\n";
    for (auto v : alphabet.variables()) {
        out += alphabet.glyph(v);
        out += " -> ";
        out += format_word(system.successor(v), alphabet);
        out += '\n';
    }
    return out;
}

ObservationSequence parse_observations(std::string_view text, const ObservationFormat& format) {
    std::string turtle;
    for (char c : format.turtle) {
        if (format.variables.find(c) == std::string::npos) turtle.push_back(c);
    }
    const auto lines = content_lines(text);
    if (lines.size() < 2) {
        throw ParseError(lines.empty() ? 1 : lines.front().number, 1,
                         "need at least two observed words");
    }
    std::string glyphs;
    for (const auto& line : lines) {
        check_word_text(line.text, line, 0);
        for (char c : line.text) {
            if (glyphs.find(c) == std::string::npos) glyphs.push_back(c);
        }
    }
    auto alphabet = Alphabet::from_glyphs(glyphs, turtle);
    std::vector<Word> words;
    words.reserve(lines.size());
    for (const auto& line : lines) words.push_back(parse_word(line.text, alphabet));
    return ObservationSequence(std::move(alphabet), std::move(words));
}

std::string format_observations(const ObservationSequence& obs) {
    std::string out;
    for (const auto& w : obs.words()) {
        out += format_word(w, obs.alphabet());
        out += '\n';
    }
    return out;
}

}  // namespace lsinfer
