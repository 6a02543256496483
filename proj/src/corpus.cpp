#include "lsinfer/corpus.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "lsinfer/error.hpp"
#include "lsinfer/text_format.hpp"

namespace lsinfer {
namespace {

struct Model {
    const char* name;
    const char* tag;
    const char* source;
    const char* text;
    std::size_t depth;  // 0 picks observation_depth
};

const Model kModels[] = {
    {"Algae", "fractal", "Prusinkiewicz & Lindenmayer, The Algorithmic Beauty of Plants, ch. 1",
     "axiom: A\nA -> AB\nB -> A\n", 5},
    {"Cantor Dust", "fractal", "Cantor set as an L-system (ABOP-style)",
     "axiom: A\nA -> ABA\nB -> BBB\n", 0},
    {"Dragon Curve", "fractal", "Heighway dragon, ABOP fig. 1.10",
     "axiom: FX\nX -> X+YF+\nY -> -FX-Y\n", 0},
    {"Koch Curve", "fractal", "quadratic Koch curve, ABOP fig. 1.9b",
     "axiom: F\nF -> F+F-F-F+F\n", 0},
    {"Pythagoras Tree", "fractal", "binary fractal tree",
     "axiom: 0\n1 -> 11\n0 -> 1[0]0\n", 0},
    {"Sierpinski Triangle v1", "fractal", "Sierpinski triangle with F and G edges",
     "axiom: F-G-G\nF -> F-G+F+G-F\nG -> GG\n", 0},
    {"Sierpinski Triangle v2", "fractal", "Sierpinski arrowhead curve, ABOP fig. 1.10b",
     "axiom: A\nA -> B-A-B\nB -> A+B+A\n", 0},
    {"Gosper Curve", "fractal", "hexagonal Gosper curve, ABOP fig. 1.11a",
     "axiom: A\nA -> A-B--B+A++AA+B-\nB -> +A-BB--B-A++A+B\n", 0},
    {"Peano Curve", "fractal", "Peano curve, ABOP fig. 1.11 style",
     "axiom: X\nX -> XFYFX+F+YFXFY-F-XFYFX\nY -> YFXFY-F-XFYFX+F+YFXFY\n", 0},
    {"Fractal Plant v1", "plant", "ABOP fig. 1.24a", "axiom: F\nF -> F[+F]F[-F]F\n", 0},
    {"Fractal Plant v2", "plant", "ABOP fig. 1.24b", "axiom: F\nF -> F[+F]F[-F][F]\n", 0},
    {"Fractal Plant v3", "plant", "ABOP fig. 1.24c", "axiom: F\nF -> FF-[-F+F+F]+[+F-F-F]\n", 0},
    {"Fractal Plant v4", "plant", "ABOP fig. 1.24d",
     "axiom: X\nX -> F[+X]F[-X]+X\nF -> FF\n", 0},
    {"Fractal Plant v5", "plant", "ABOP fig. 1.24e",
     "axiom: X\nX -> F[+X][-X]FX\nF -> FF\n", 0},
    {"Fractal Plant v6", "plant", "ABOP fig. 1.24f",
     "axiom: X\nX -> F-[[X]+X]+F[+FX]-X\nF -> FF\n", 0},
};

constexpr std::string_view kFreshGlyphs = "ABCDEGHIJKLMNOPQRSTUVWXYZ";
constexpr int kAttemptsPerSuccessor = 500;

struct Donor {
    std::size_t owner;
    std::string text;
};

std::size_t uniform_index(std::size_t n, Rng& rng) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

std::size_t observation_depth(const LSystem& system, std::size_t max_steps,
                              std::size_t max_length) {
    std::size_t depth = 0;
    Word w = system.axiom();
    for (std::size_t n = 1; n <= max_steps; ++n) {
        Word next;
        try {
            next = derive(system, w, max_length);
        } catch (const WordLengthLimitExceeded&) {
            break;
        }
        w = std::move(next);
        depth = n;
    }
    return std::max<std::size_t>(depth, 2);
}

std::vector<CorpusEntry> builtin_corpus() {
    std::vector<CorpusEntry> out;
    for (const auto& m : kModels) {
        auto system = parse_lsystem(m.text);
        const auto depth = m.depth > 0 ? m.depth : observation_depth(system);
        out.push_back({m.name, std::move(system), {m.tag}, m.source, depth});
    }
    return out;
}

const CorpusEntry& find_entry(const std::vector<CorpusEntry>& entries, const std::string& name) {
    for (const auto& e : entries) {
        if (e.name == name) return e;
    }
    throw std::out_of_range("no corpus entry named '" + name + "'");
}

CorpusEntry generate_bootstrap(std::size_t alphabet_size, std::size_t max_successor_len,
                               std::span<const CorpusEntry> donors, Rng& rng) {
    if (alphabet_size < 2 || alphabet_size > kFreshGlyphs.size()) {
        throw std::invalid_argument("bootstrap alphabet size must lie in [2, 25]");
    }
    if (max_successor_len < 1) throw std::invalid_argument("successor length must be positive");

    // Donor variables other than F get relabelled; F is always a turtle symbol here.
    std::vector<Donor> pool;
    for (std::size_t d = 0; d < donors.size(); ++d) {
        const auto& sys = donors[d].system;
        for (auto v : sys.alphabet().variables()) {
            std::string text;
            for (auto s : sys.successor(v)) text += sys.alphabet().glyph(s);
            pool.push_back({d, std::move(text)});
        }
    }
    if (pool.empty()) throw Unsatisfiable("donor pool has no successors");

    std::map<std::pair<std::size_t, char>, char> relabel;
    std::size_t assigned = 0;
    auto rename = [&](std::size_t owner, char g) {
        const auto& alphabet = donors[owner].system.alphabet();
        const auto id = alphabet.find(g);
        if (g == 'F' || !id || alphabet.is_turtle(*id)) return g;
        auto [it, fresh] = relabel.try_emplace({owner, g}, '\0');
        if (fresh) {
            it->second = assigned < alphabet_size ? kFreshGlyphs[assigned++]
                                                  : kFreshGlyphs[uniform_index(alphabet_size, rng)];
        }
        return it->second;
    };

    std::vector<std::string> successors(alphabet_size);
    for (std::size_t v = 0; v < alphabet_size; ++v) {
        const std::size_t target =
            v == 0 ? max_successor_len
                   : std::uniform_int_distribution<std::size_t>(1, max_successor_len)(rng);
        bool done = false;
        for (int attempt = 0; attempt < kAttemptsPerSuccessor && !done; ++attempt) {
            std::string s;
            while (s.size() < target) {
                const auto& donor = pool[uniform_index(pool.size(), rng)];
                for (char g : donor.text) s += rename(donor.owner, g);
            }
            while (s.size() > target) {
                const auto f = s.rfind('F');
                if (f == std::string::npos) break;
                s.erase(f, 1);
            }
            if (s.size() == target) {
                successors[v] = std::move(s);
                done = true;
            }
        }
        if (!done) {
            throw Unsatisfiable("donors cannot produce a successor of length " +
                                std::to_string(target));
        }
    }

    std::string text = "axiom: " + std::string(kFreshGlyphs.substr(0, alphabet_size)) + "\n";
    for (std::size_t v = 0; v < alphabet_size; ++v) {
        text += kFreshGlyphs[v];
        text += " -> " + successors[v] + "\n";
    }
    auto system = parse_lsystem(text);
    const auto depth = observation_depth(system);
    return {"Generated k" + std::to_string(alphabet_size) + " L" + std::to_string(max_successor_len),
            std::move(system),
            {"generated"},
            "bootstrap from " + std::to_string(donors.size()) + " donor systems",
            depth};
}

std::vector<GridCell> grid(std::span<const CorpusEntry> donors, Rng& rng) {
    std::vector<GridCell> cells;
    for (std::size_t k = kGridAlphabetMin; k <= kGridAlphabetMax; k += 2) {
        for (std::size_t len = kGridLengthMin; len <= kGridLengthMax; len += 5) {
            GridCell cell{k, len, std::nullopt, ""};
            try {
                cell.entry = generate_bootstrap(k, len, donors, rng);
            } catch (const Unsatisfiable& e) {
                cell.note = e.what();
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

CorpusEntry grid_entry(std::size_t alphabet_size, std::size_t max_successor_len,
                       std::uint64_t seed) {
    const auto donors = builtin_corpus();
    Rng rng(seed ^ (alphabet_size * 1000 + max_successor_len));
    return generate_bootstrap(alphabet_size, max_successor_len, donors, rng);
}

}  // namespace lsinfer
