#include "lsinfer/bounds_table.hpp"

namespace lsinfer {

BoundsTable::BoundsTable(std::size_t symbols) {
    growth.symbols = symbols;
    growth.min.assign(symbols * symbols, 0);
    growth.max.assign(symbols * symbols, Bound::unbounded());
    length.min.assign(symbols, 0);
    length.max.assign(symbols, Bound::unbounded());
    fragments.prefix.assign(symbols, Word{});
    fragments.suffix.assign(symbols, Word{});
    fragments.superstring.assign(symbols, std::nullopt);
    fragments.subword.assign(symbols, std::nullopt);
}

}  // namespace lsinfer
