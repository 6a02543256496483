#include <doctest.h>

#include "lsinfer/corpus.hpp"
#include "lsinfer/error.hpp"
#include "lsinfer/text_format.hpp"
#include "random_systems.hpp"

using namespace lsinfer;
using lsinfer::testing::word;

namespace {

LSystem algae() { return parse_lsystem("axiom: A\nA -> AB\nB -> A\n"); }

}  // namespace

TEST_CASE("alphabet keeps declaration order and partitions symbols") {
    const auto a = Alphabet::from_glyphs("AB+F[]");
    CHECK(a.glyphs() == "AB+F[]");
    CHECK(a.variables() == std::vector<SymbolId>{0, 1});
    CHECK(a.turtle() == std::vector<SymbolId>{2, 3, 4, 5});
    CHECK(Alphabet::from_glyphs("ABA").glyphs() == "AB");
    Alphabet dup;
    dup.add('A', SymbolKind::Variable);
    CHECK_THROWS_AS(dup.add('A', SymbolKind::Variable), Error);

    const auto koch = Alphabet::from_glyphs("F+-", "+-");
    CHECK(koch.is_variable(0));
    CHECK(koch.restrict_to("-F").glyphs() == "F-");
}

TEST_CASE("parse_word transliterates and reports unknown glyphs") {
    const auto a = Alphabet::from_glyphs("AB+[]F");
    CHECK(word(a, "A[+F]B").size() == 6);
    CHECK(word(a, "").empty());
    try {
        parse_word("AXB", Alphabet::from_glyphs("AB"));
        FAIL("expected UnknownGlyph");
    } catch (const UnknownGlyph& e) {
        CHECK(e.position() == 1);
        CHECK(e.glyph() == 'X');
    }
}

TEST_CASE("derive concatenates successors") {
    const auto s = algae();
    const auto& a = s.alphabet();
    CHECK(format_word(derive(s, word(a, "A")), a) == "AB");
    CHECK(format_word(derive(s, word(a, "AB")), a) == "ABA");

    const auto t = parse_lsystem("axiom: +-F\n");
    CHECK(format_word(derive(t, t.axiom()), t.alphabet()) == "+-F");
}

TEST_CASE("derive_sequence follows the axiom and enforces the cap") {
    const auto obs = derive_sequence(algae(), 3);
    std::vector<std::string> words;
    for (const auto& w : obs.words()) words.push_back(format_word(w, obs.alphabet()));
    CHECK(words == std::vector<std::string>{"A", "AB", "ABA", "ABAAB"});

    const auto f = parse_lsystem("axiom: F\n");
    const auto one = derive_sequence(f, 1);
    CHECK(one.size() == 2);
    CHECK(one.word(1) == one.word(0));

    CHECK_THROWS_AS(derive_sequence(algae(), 0), std::invalid_argument);
    CHECK_THROWS_AS(derive_sequence(algae(), 30, 1000), WordLengthLimitExceeded);
}

TEST_CASE("check_consistency compares every word and the axiom") {
    const auto s = algae();
    const auto& a = s.alphabet();
    CHECK(check_consistency(s, derive_sequence(s, 5)));
    CHECK_FALSE(check_consistency(s, ObservationSequence(a, {word(a, "A"), word(a, "AB"), word(a, "AAB")})));
    CHECK_FALSE(check_consistency(s, ObservationSequence(a, {word(a, "B"), word(a, "A")})));
}

TEST_CASE("count_symbol") {
    const auto a = Alphabet::from_glyphs("AB+-[]F");
    CHECK(count_symbol(word(a, "ABAAB"), 0) == 3);
    CHECK(count_symbol(word(a, ""), 0) == 0);
    CHECK(count_symbol(word(a, "+A[-FF][+F]BF"), a.id_of('F')) == 4);
}

TEST_CASE("branch_balanced") {
    const auto a = Alphabet::from_glyphs("A+-[]F");
    CHECK(branch_balanced(word(a, "[-FF][+F]"), a));
    CHECK_FALSE(branch_balanced(word(a, "+A[-FF]["), a));
    CHECK_FALSE(branch_balanced(word(a, "]"), a));
}

TEST_CASE("LSystem rejects invalid productions") {
    const auto a = Alphabet::from_glyphs("A+");
    CHECK_THROWS_AS(LSystem(a, word(a, "A"), {word(a, ""), word(a, "+")}), Error);
    CHECK_THROWS_AS(LSystem(a, word(a, "A"), {word(a, "A"), word(a, "A")}), Error);
    CHECK_THROWS_AS(LSystem(a, word(a, "A"), {word(a, "A")}), Error);
    const auto b = Alphabet::from_glyphs("A[]");
    CHECK_THROWS_AS(LSystem(b, word(b, "A"), {word(b, "A["), word(b, "["), word(b, "]")}), Error);
}

TEST_CASE("text format round trip and parse errors") {
    const auto s = parse_lsystem("# plant\naxiom: X\nX -> F[+X]F[-X]+X\nF -> FF\n");
    CHECK(s.alphabet().is_variable(s.alphabet().id_of('F')));
    CHECK(parse_lsystem(format_lsystem(s)) == s);

    CHECK_THROWS_AS(parse_lsystem("A -> AB\n"), ParseError);
    CHECK_THROWS_AS(parse_lsystem("axiom: A\nA -> AC\n"), ParseError);
    try {
        parse_lsystem("axiom: A\nA -> A?\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }

    const auto obs = parse_observations("A\n# comment\n\nAB\nABA\n");
    CHECK(obs.size() == 3);
    CHECK(parse_observations(format_observations(obs)).words() == obs.words());
    const auto koch = parse_observations("F\nF+F\n", {std::string(kTurtleGlyphs), "F"});
    CHECK(koch.alphabet().is_variable(0));
}

TEST_CASE("homomorphism, length law and projection hold on the corpus") {
    for (const auto& e : builtin_corpus()) {
        CAPTURE(e.name);
        const auto& s = e.system;
        const auto& a = s.alphabet();
        const auto obs = derive_sequence(s, std::min<std::size_t>(e.depth, 3));
        const auto& w = obs.words().back();

        const auto half = w.size() / 2;
        const Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(half));
        const Word v(w.begin() + static_cast<std::ptrdiff_t>(half), w.end());
        auto joined = derive(s, u);
        const auto tail = derive(s, v);
        joined.insert(joined.end(), tail.begin(), tail.end());
        CHECK(joined == derive(s, w));

        std::size_t predicted = 0;
        for (auto x : a.ids()) predicted += count_symbol(w, x) * s.successor(x).size();
        CHECK(derive(s, w).size() == predicted);

        std::string vars;
        for (auto x : a.variables()) vars += a.glyph(x);
        const auto sub = a.restrict_to(vars);
        Productions restricted(sub.size());
        for (auto x : sub.ids()) {
            restricted[x] = project_word(s.successor(a.id_of(sub.glyph(x))), a, sub);
        }
        CHECK(project_word(derive(s, w), a, sub) == derive(restricted, project_word(w, a, sub)));
    }
}

TEST_CASE("random systems stay consistent with their derivations") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto s = lsinfer::testing::random_small_system(rng);
        for (std::size_t n = 1; n <= 6; ++n) CHECK(check_consistency(s, derive_sequence(s, n)));
    }
}
