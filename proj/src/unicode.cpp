#include "folio/unicode.hpp"

#include "folio/errors.hpp"

namespace folio {
namespace {

// Decodes one code point starting at `i`; returns its length in bytes, or 0
// when the sequence is malformed. Rejects overlong forms, surrogates and
// values above U+10FFFF.
std::size_t decode_one(std::string_view s, std::size_t i, char32_t& out) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        out = b0;
        return 1;
    }
    auto cont = [&](std::size_t k) {
        return i + k < s.size() &&
               (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    auto tail = [&](std::size_t k) {
        return static_cast<char32_t>(static_cast<unsigned char>(s[i + k]) & 0x3F);
    };
    if ((b0 & 0xE0) == 0xC0) {
        if (!cont(1)) return 0;
        out = ((b0 & 0x1Fu) << 6) | tail(1);
        return out >= 0x80 ? 2 : 0;
    }
    if ((b0 & 0xF0) == 0xE0) {
        if (!cont(1) || !cont(2)) return 0;
        out = ((b0 & 0x0Fu) << 12) | (tail(1) << 6) | tail(2);
        if (out < 0x800 || (out >= 0xD800 && out <= 0xDFFF)) return 0;
        return 3;
    }
    if ((b0 & 0xF8) == 0xF0) {
        if (!cont(1) || !cont(2) || !cont(3)) return 0;
        out = ((b0 & 0x07u) << 18) | (tail(1) << 12) | (tail(2) << 6) | tail(3);
        return (out >= 0x10000 && out <= 0x10FFFF) ? 4 : 0;
    }
    return 0;
}

}  // namespace

std::optional<std::size_t> utf8_find_invalid(std::string_view bytes) {
    std::size_t i = 0;
    while (i < bytes.size()) {
        char32_t cp = 0;
        const std::size_t n = decode_one(bytes, i, cp);
        if (n == 0) return i;
        i += n;
    }
    return std::nullopt;
}

std::u32string utf8_decode(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) {
        char32_t cp = 0;
        const std::size_t n = decode_one(bytes, i, cp);
        if (n == 0) throw DecodeError("invalid UTF-8", i);
        out.push_back(cp);
        i += n;
    }
    return out;
}

std::string utf8_encode(std::u32string_view points) {
    std::string out;
    out.reserve(points.size());
    for (char32_t cp : points) {
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
    return out;
}

std::size_t utf8_length(std::string_view bytes) {
    std::size_t count = 0;
    for (char c : bytes) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++count;
    }
    return count;
}

std::size_t utf8_byte_offset(std::string_view bytes, std::size_t point_index) {
    std::size_t seen = 0;
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        if ((static_cast<unsigned char>(bytes[i]) & 0xC0) == 0x80) continue;
        if (seen == point_index) return i;
        ++seen;
    }
    return bytes.size();
}

std::vector<std::string> utf8_chunks(std::string_view bytes, std::size_t width) {
    std::vector<std::string> out;
    if (bytes.empty()) {
        out.emplace_back();
        return out;
    }
    std::size_t start = 0;  // byte offset of current chunk
    std::size_t points = 0;
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        if ((static_cast<unsigned char>(bytes[i]) & 0xC0) == 0x80) continue;
        if (points == width) {
            out.emplace_back(bytes.substr(start, i - start));
            start = i;
            points = 0;
        }
        ++points;
    }
    out.emplace_back(bytes.substr(start));
    return out;
}

}  // namespace folio
