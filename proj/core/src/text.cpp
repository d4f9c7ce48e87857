#include "critont/text.hpp"

namespace critont {

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one UTF-8 sequence starting at s[i]; advances i past it. Returns
// kInvalid (advancing one byte) on malformed input.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    auto cont = [&](std::size_t k) { return k < s.size() && (byte(k) & 0xC0) == 0x80; };
    if ((b0 & 0xE0) == 0xC0 && cont(i + 1)) {
        char32_t cp = (char32_t(b0 & 0x1F) << 6) | (byte(i + 1) & 0x3F);
        i += 2;
        return cp < 0x80 ? kInvalid : cp;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(i + 1) && cont(i + 2)) {
        char32_t cp = (char32_t(b0 & 0x0F) << 12) | (char32_t(byte(i + 1) & 0x3F) << 6) |
                      (byte(i + 2) & 0x3F);
        i += 3;
        return cp < 0x800 ? kInvalid : cp;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
        char32_t cp = (char32_t(b0 & 0x07) << 18) | (char32_t(byte(i + 1) & 0x3F) << 12) |
                      (char32_t(byte(i + 2) & 0x3F) << 6) | (byte(i + 3) & 0x3F);
        i += 4;
        return (cp < 0x10000 || cp > 0x10FFFF) ? kInvalid : cp;
    }
    ++i;
    return kInvalid;
}

void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_space_cp(char32_t cp) {
    switch (cp) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\r':
    case 0x0B:
    case 0x0C:
    case 0x00A0: // no-break space
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x200B: // zero width space
    case 0x3000:
        return true;
    default:
        return cp >= 0x2000 && cp <= 0x200A;
    }
}

// Kept verbatim by the punctuation rule.
bool is_kept_punct(char32_t cp) {
    return cp == U'\'' || cp == 0x2019 || cp == U'-';
}

// Punctuation and symbol codepoints that fold to a space. ASCII is handled
// separately; this covers the Unicode ranges that show up in registry text
// (typographic punctuation, math symbols used in criteria like >= signs,
// arrows, bullets, currency and letterlike symbols).
bool is_space_folded_punct(char32_t cp) {
    if (cp >= 0x00A1 && cp <= 0x00BF) return true; // Latin-1 punctuation and symbols
    if (cp == 0x00D7 || cp == 0x00F7) return true; // multiplication / division signs
    if (cp >= 0x2010 && cp <= 0x205E) return true; // general punctuation (dashes, quotes, bullets)
    if (cp >= 0x2070 && cp <= 0x209F) return true; // super/subscripts
    if (cp >= 0x20A0 && cp <= 0x20BF) return true; // currency
    if (cp >= 0x2100 && cp <= 0x2BFF) return true; // letterlike, arrows, math, misc symbols
    if (cp >= 0x3001 && cp <= 0x303F) return true; // CJK punctuation
    if (cp >= 0xFE50 && cp <= 0xFE6F) return true; // small form variants
    return false;
}

// Targeted compatibility folds: fullwidth ASCII and Latin ligatures.
void fold_compat(char32_t cp, std::u32string& out) {
    if (cp >= 0xFF01 && cp <= 0xFF5E) {
        out.push_back(cp - 0xFEE0);
        return;
    }
    switch (cp) {
    case 0xFB00: out.append(U"ff"); return;
    case 0xFB01: out.append(U"fi"); return;
    case 0xFB02: out.append(U"fl"); return;
    case 0xFB03: out.append(U"ffi"); return;
    case 0xFB04: out.append(U"ffl"); return;
    default: out.push_back(cp);
    }
}

char32_t lower_cp(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    // Latin-1 supplement uppercase block, skipping the multiplication sign.
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
    return cp;
}

} // namespace

std::string normalize_text(std::string_view raw) {
    std::u32string folded;
    folded.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size();) {
        char32_t cp = decode_utf8(raw, i);
        if (cp == kInvalid) {
            folded.push_back(U' ');
            continue;
        }
        fold_compat(cp, folded);
    }

    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char32_t cp : folded) {
        bool as_space = false;
        if (is_space_cp(cp)) {
            as_space = true;
        } else if (is_kept_punct(cp)) {
            // kept
        } else if (cp < 0x80) {
            if ((cp >= U'a' && cp <= U'z') || (cp >= U'0' && cp <= U'9')) {
                // kept
            } else if (cp >= U'A' && cp <= U'Z') {
                cp = lower_cp(cp);
            } else {
                as_space = true; // remaining ASCII punctuation and controls
            }
        } else if (is_space_folded_punct(cp)) {
            as_space = true;
        } else {
            cp = lower_cp(cp);
        }

        if (as_space) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        encode_utf8(cp, out);
    }
    return out;
}

bool is_normalized(std::string_view s) {
    return normalize_text(s) == s;
}

std::vector<TokenSpan> tokenize(std::string_view normalized) {
    std::vector<TokenSpan> tokens;
    std::size_t i = 0;
    while (i < normalized.size()) {
        if (normalized[i] == ' ') {
            ++i;
            continue;
        }
        std::size_t begin = i;
        while (i < normalized.size() && normalized[i] != ' ') ++i;
        tokens.push_back({begin, i});
    }
    return tokens;
}

} // namespace critont
