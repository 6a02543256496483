#pragma once

#include <string>
#include <string_view>

#include "lsinfer/lsystem.hpp"

namespace lsinfer {

/// Text form:
///
///     # comment
///     axiom: <word>
///     <glyph> -> <word>
///
/// Glyphs from `turtle` without a production line (or with an identity
/// one) are turtle-identity symbols; everything else must have a line.
LSystem parse_lsystem(std::string_view text, std::string_view turtle = kTurtleGlyphs);

std::string format_lsystem(const LSystem& system);

struct ObservationFormat {
    /// Glyphs treated as turtle-identity symbols.
    std::string turtle{kTurtleGlyphs};
    /// Glyphs removed from `turtle` (e.g. "F" for systems where F grows).
    std::string variables;
};

/// One word per line, ω_0 first. Lines starting with `#` and blank lines are skipped.
ObservationSequence parse_observations(std::string_view text,
                                       const ObservationFormat& format = {});

std::string format_observations(const ObservationSequence& obs);

}  // namespace lsinfer
