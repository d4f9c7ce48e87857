#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace critont {

// Canonical text normalization applied to every surface form and every
// criterion line before matching. The result is deterministic, idempotent,
// and locale independent:
//   - UTF-8 input; fullwidth ASCII forms and the ff/fi/fl ligatures are
//     folded to their plain equivalents
//   - ASCII and Latin-1 letters are lowercased, other scripts pass through
//   - every whitespace run (including Unicode space separators) collapses
//     to one space, leading/trailing whitespace is removed
//   - apostrophes (' and the typographic variant) and '-' are kept; all
//     other punctuation and symbol characters become a space
// Invalid UTF-8 bytes are treated as a space.
std::string normalize_text(std::string_view raw);

// True when normalize_text(s) == s.
bool is_normalized(std::string_view s);

// Byte range [begin, end) of one whitespace-delimited token.
struct TokenSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

// Tokens of a normalized string: maximal runs of non-space bytes.
std::vector<TokenSpan> tokenize(std::string_view normalized);

} // namespace critont
