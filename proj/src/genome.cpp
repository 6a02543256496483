#include "lsinfer/genome.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lsinfer {
namespace {

std::int64_t count_in(const Word& w, SymbolId s) {
    return static_cast<std::int64_t>(count_symbol(w, s));
}

std::string glyph_of(const Alphabet& alphabet, SymbolId s) {
    return std::string(1, alphabet.glyph(s));
}

Word erase_symbols(const Word& w, const std::vector<SymbolId>& erased) {
    Word out;
    for (auto s : w) {
        if (std::find(erased.begin(), erased.end(), s) == erased.end()) out.push_back(s);
    }
    return out;
}

void build_free(SuccessorSchema& s, const BoundsTable& table, const Alphabet& scope) {
    const auto a = s.symbol;
    const std::int64_t amin = table.length.min[a];
    const std::int64_t amax = table.length.max[a].value();
    const auto n = scope.size();

    s.prefix = table.fragments.prefix[a];
    s.suffix = table.fragments.suffix[a];
    if (static_cast<std::int64_t>(s.prefix.size() + s.suffix.size()) > amin) s.suffix.clear();
    const auto core = static_cast<std::int64_t>(s.prefix.size() + s.suffix.size());
    if (core > amax) throw SchemaConflict("fragments of '" + glyph_of(scope, a) + "' exceed its length");

    s.need.assign(n, 0);
    s.cap.assign(n, 0);
    std::int64_t need_sum = 0;
    std::int64_t cap_sum = 0;
    for (auto b : scope.ids()) {
        const auto used = count_in(s.prefix, b) + count_in(s.suffix, b);
        const Bound hi = table.growth.hi(a, b);
        const std::int64_t cap = (hi.bounded() ? std::min(hi.value(), amax) : amax) - used;
        const std::int64_t need = std::max<std::int64_t>(0, table.growth.lo(a, b) - used);
        if (cap < need) {
            throw SchemaConflict("fragments of '" + glyph_of(scope, a) + "' exceed the growth of '" +
                                 glyph_of(scope, b) + "'");
        }
        s.need[b] = need;
        s.cap[b] = cap;
        need_sum += need;
        cap_sum += cap;
    }
    const auto hi = std::min(amax - core, cap_sum);
    const auto lo = std::max(std::max<std::int64_t>(0, amin - core), need_sum);
    if (lo > hi) throw SchemaConflict("no successor length fits '" + glyph_of(scope, a) + "'");
    s.middle_min = static_cast<std::size_t>(lo);
    s.middle_max = static_cast<std::size_t>(hi);
    s.placement_genes = static_cast<std::size_t>(need_sum);
    s.filler_genes = static_cast<std::size_t>(hi - need_sum);
    if (s.gene_count() == 0) {
        s.mode = SuccessorMode::Fixed;
        s.fixed = s.prefix;
        s.fixed.insert(s.fixed.end(), s.suffix.begin(), s.suffix.end());
    }
}

void build_insertion(SuccessorSchema& s, const BoundsTable& table, const Alphabet& scope,
                     const std::vector<SymbolId>& inserted, const Word& base) {
    const auto a = s.symbol;
    const std::int64_t amin = table.length.min[a];
    const std::int64_t amax = table.length.max[a].value();
    const bool paired = inserted.size() == 2;
    const auto m = base.size();

    s.prefix = table.fragments.prefix[a];
    s.suffix = table.fragments.suffix[a];
    const Word head = erase_symbols(s.prefix, inserted);
    Word tail = erase_symbols(s.suffix, inserted);
    if (head.size() > m || !std::equal(head.begin(), head.end(), base.begin())) {
        throw SchemaConflict("prefix of '" + glyph_of(scope, a) + "' disagrees with the base solution");
    }
    if (!s.suffix.empty() && head.size() + tail.size() >= m) {
        s.suffix.clear();
        tail.clear();
    }
    if (!std::equal(tail.rbegin(), tail.rend(), base.rbegin())) {
        throw SchemaConflict("suffix of '" + glyph_of(scope, a) + "' disagrees with the base solution");
    }
    s.interior.assign(base.begin() + static_cast<std::ptrdiff_t>(head.size()),
                      base.end() - static_cast<std::ptrdiff_t>(tail.size()));

    // Units are single symbols, or bracket pairs.
    const std::int64_t width = paired ? 2 : 1;
    std::int64_t lo = 0;
    Bound hi = Bound::unbounded();
    for (auto t : inserted) {
        lo = std::max(lo, table.growth.lo(a, t));
        lower(hi, table.growth.hi(a, t));
    }
    const auto room = amax - static_cast<std::int64_t>(m);
    const auto least = amin - static_cast<std::int64_t>(m);
    lo = std::max(lo, least <= 0 ? 0 : (least + width - 1) / width);
    const std::int64_t top = std::min(hi.bounded() ? hi.value() : room, room / width);
    const auto pinned = count_in(s.prefix, inserted.front()) + count_in(s.suffix, inserted.front());
    const auto r_lo = std::max<std::int64_t>(0, lo - pinned);
    const auto r_hi = top - pinned;
    if (r_hi < r_lo) {
        throw SchemaConflict("no insertion count fits '" + glyph_of(scope, a) + "'");
    }
    s.min_inserts = static_cast<std::size_t>(r_lo);
    s.max_inserts = static_cast<std::size_t>(r_hi);
    s.placement_genes = static_cast<std::size_t>(r_lo * width);
    s.filler_genes = static_cast<std::size_t>((r_hi - r_lo) * width);
    if (s.gene_count() == 0) {
        s.mode = SuccessorMode::Fixed;
        s.fixed = s.prefix;
        s.fixed.insert(s.fixed.end(), s.interior.begin(), s.interior.end());
        s.fixed.insert(s.fixed.end(), s.suffix.begin(), s.suffix.end());
    }
}

std::vector<SymbolId> inserted_ids(const SubProblem& sub) {
    std::vector<SymbolId> ids;
    for (char g : sub.added) ids.push_back(sub.scope.id_of(g));
    return ids;
}

double upper_half(double v) { return (v - 0.5) * 2.0; }

Word decode_free(const SuccessorSchema& s, std::span<const double> genes) {
    constexpr std::int32_t kEmpty = -1;
    std::vector<std::int32_t> slots(s.middle_max, kEmpty);
    std::vector<std::size_t> open(s.middle_max);
    for (std::size_t i = 0; i < open.size(); ++i) open[i] = i;

    std::size_t g = 0;
    std::vector<std::int64_t> used(s.cap.size(), 0);
    for (std::size_t b = 0; b < s.need.size(); ++b) {
        for (std::int64_t c = 0; c < s.need[b]; ++c) {
            const auto pick = choose(genes[g++], open.size());
            slots[open[pick]] = static_cast<std::int32_t>(b);
            open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        used[b] = s.need[b];
    }

    // While empty slots remain, the lower half of a filler gene leaves its slot empty.
    std::size_t empties = s.middle_max - s.middle_min;
    std::vector<std::int32_t> options;
    for (auto pos : open) {
        options.clear();
        for (std::size_t b = 0; b < s.cap.size(); ++b) {
            if (used[b] < s.cap[b]) options.push_back(static_cast<std::int32_t>(b));
        }
        double v = genes[g++];
        if (empties > 0) {
            if (v < 0.5 || options.empty()) {
                --empties;
                continue;
            }
            v = upper_half(v);
        }
        if (options.empty()) throw std::logic_error("filler gene without options");
        const auto choice = options[choose(v, options.size())];
        slots[pos] = choice;
        ++used[static_cast<std::size_t>(choice)];
    }

    Word out = s.prefix;
    for (auto v : slots) {
        if (v != kEmpty) out.push_back(static_cast<SymbolId>(v));
    }
    out.insert(out.end(), s.suffix.begin(), s.suffix.end());
    return out;
}

Word decode_single(const SuccessorSchema& s, std::span<const double> genes, SymbolId t) {
    const auto gaps = s.interior.size() + 1;
    std::vector<std::size_t> at(gaps, 0);
    for (std::size_t i = 0; i < s.placement_genes; ++i) ++at[choose(genes[i], gaps)];
    for (std::size_t i = s.placement_genes; i < genes.size(); ++i) {
        if (genes[i] >= 0.5) ++at[choose(upper_half(genes[i]), gaps)];
    }
    Word out = s.prefix;
    for (std::size_t j = 0; j < gaps; ++j) {
        out.insert(out.end(), at[j], t);
        if (j < s.interior.size()) out.push_back(s.interior[j]);
    }
    out.insert(out.end(), s.suffix.begin(), s.suffix.end());
    return out;
}

Word decode_pairs(const SuccessorSchema& s, std::span<const double> genes, SymbolId open,
                  SymbolId close) {
    Word mid = s.interior;
    for (std::size_t k = 0; k < s.max_inserts; ++k) {
        double v = genes[2 * k];
        if (k >= s.min_inserts) {
            if (v < 0.5) continue;
            v = upper_half(v);
        }
        const auto len = mid.size();
        const auto o = choose(v, len + 1);
        const auto c = o + choose(genes[2 * k + 1], len - o + 1);
        mid.insert(mid.begin() + static_cast<std::ptrdiff_t>(c), close);
        mid.insert(mid.begin() + static_cast<std::ptrdiff_t>(o), open);
    }
    Word out = s.prefix;
    out.insert(out.end(), mid.begin(), mid.end());
    out.insert(out.end(), s.suffix.begin(), s.suffix.end());
    return out;
}

}  // namespace

std::size_t choose(double v, std::size_t k) {
    if (k == 0) throw std::invalid_argument("choice among zero options");
    const auto i = static_cast<std::size_t>(std::floor(std::clamp(v, 0.0, 1.0) * static_cast<double>(k)));
    return std::min(i, k - 1);
}

SuccessorSchema build_successor_schema(const BoundsTable& table, const SubProblem& sub,
                                       SymbolId target, const Word* base) {
    SuccessorSchema s;
    s.symbol = target;
    if (!table.length.max[target].bounded()) {
        throw UnboundedSchema("length of '" + glyph_of(sub.scope, target) + "' is unbounded");
    }
    if (sub.kind == SubProblemKind::VariablesOnly || base == nullptr) {
        s.mode = SuccessorMode::Free;
        build_free(s, table, sub.scope);
    } else {
        s.mode = SuccessorMode::Insertion;
        build_insertion(s, table, sub.scope, inserted_ids(sub), *base);
    }
    return s;
}

GenomeSchema build_schema(const BoundsTable& table, const SubProblem& sub,
                          const ObservationSequence& obs, const Productions* base) {
    GenomeSchema schema;
    schema.scope = sub.scope;
    schema.kind = sub.kind;
    schema.inserted = inserted_ids(sub);
    schema.forced = identity_productions(sub.scope);

    const auto steps = obs.steps();
    for (auto a : sub.scope.variables()) {
        bool occurs = false;
        for (std::size_t i = 0; i < steps && !occurs; ++i) occurs = obs.count(i, a) > 0;
        if (!occurs) {
            schema.forced[a] = base ? (*base)[a] : Word{a};
            continue;
        }
        auto s = build_successor_schema(table, sub, a, base ? &(*base)[a] : nullptr);
        if (s.mode == SuccessorMode::Fixed) {
            schema.forced[a] = s.fixed;
            continue;
        }
        s.gene_offset = schema.gene_count;
        schema.gene_count += s.gene_count();
        schema.successors.push_back(std::move(s));
    }
    return schema;
}

Word decode_successor(const SuccessorSchema& schema, std::span<const double> genes,
                      const std::vector<SymbolId>& inserted) {
    switch (schema.mode) {
        case SuccessorMode::Fixed: return schema.fixed;
        case SuccessorMode::Free: return decode_free(schema, genes);
        case SuccessorMode::Insertion:
            if (inserted.size() == 2) return decode_pairs(schema, genes, inserted[0], inserted[1]);
            return decode_single(schema, genes, inserted.at(0));
    }
    return schema.fixed;
}

Productions decode(const GenomeSchema& schema, std::span<const double> genome) {
    if (genome.size() != schema.gene_count) {
        throw std::invalid_argument("genome length does not match its schema");
    }
    Productions out = schema.forced;
    for (const auto& s : schema.successors) {
        out[s.symbol] =
            decode_successor(s, genome.subspan(s.gene_offset, s.gene_count()), schema.inserted);
    }
    return out;
}

std::string GenomeSchema::describe() const {
    std::ostringstream os;
    os << "scope " << scope.glyphs() << ", " << gene_count << " genes\n";
    for (auto s : scope.ids()) {
        auto it = std::find_if(successors.begin(), successors.end(),
                               [s](const SuccessorSchema& x) { return x.symbol == s; });
        os << "  " << scope.glyph(s) << ": ";
        if (it == successors.end()) {
            os << "fixed " << format_word(forced[s], scope) << '\n';
            continue;
        }
        os << format_word(it->prefix, scope) << " ";
        if (it->mode == SuccessorMode::Free) {
            os << "<" << it->middle_min << ".." << it->middle_max << ">";
        } else {
            os << "<" << format_word(it->interior, scope) << " +" << it->min_inserts << ".."
               << it->max_inserts << ">";
        }
        os << " " << format_word(it->suffix, scope) << "  genes " << it->placement_genes << "+"
           << it->filler_genes << '\n';
    }
    return os.str();
}

}  // namespace lsinfer
