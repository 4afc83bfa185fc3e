#include <doctest.h>

#include <random>
#include <string>

#include "folio/errors.hpp"
#include "folio/unicode.hpp"

using namespace folio;

TEST_CASE("ascii round trip") {
    const std::string s = "plain ascii, nothing fancy";
    CHECK(!utf8_find_invalid(s).has_value());
    CHECK(utf8_length(s) == s.size());
    CHECK(utf8_encode(utf8_decode(s)) == s);
}

TEST_CASE("multibyte round trip") {
    const std::string s = "caf\xC3\xA9 \xE2\x89\xA5 \xF0\x9F\x92\xA7";
    CHECK(!utf8_find_invalid(s).has_value());
    CHECK(utf8_length(s) == 8);
    const std::u32string pts = utf8_decode(s);
    REQUIRE(pts.size() == 8);
    CHECK(pts[3] == U'é');
    CHECK(pts[5] == U'≥');
    CHECK(pts[7] == U'\U0001F4A7');
    CHECK(utf8_encode(pts) == s);
}

TEST_CASE("invalid sequences are located") {
    // bare continuation byte
    CHECK(utf8_find_invalid(std::string("a\x80z", 3)) == 1u);
    // overlong encoding of '/'
    CHECK(utf8_find_invalid(std::string("\xC0\xAF", 2)) == 0u);
    // UTF-16 surrogate
    CHECK(utf8_find_invalid(std::string("ok\xED\xA0\x80", 5)) == 2u);
    // above U+10FFFF
    CHECK(utf8_find_invalid(std::string("\xF4\x90\x80\x80", 4)) == 0u);
    // truncated three-byte sequence
    CHECK(utf8_find_invalid(std::string("x\xE2\x82", 3)) == 1u);
}

TEST_CASE("decode reports the bad offset") {
    try {
        utf8_decode(std::string("ab\xFF" "cd", 5));
        FAIL("expected DecodeError");
    } catch (const DecodeError& e) {
        CHECK(e.offset == 2u);
    }
}

TEST_CASE("byte offsets index code points") {
    const std::string s = "\xC3\xA9x\xE2\x89\xA5";
    CHECK(utf8_byte_offset(s, 0) == 0u);
    CHECK(utf8_byte_offset(s, 1) == 2u);
    CHECK(utf8_byte_offset(s, 2) == 3u);
    CHECK(utf8_byte_offset(s, 3) == s.size());
}

TEST_CASE("chunks are lossless and bounded") {
    const std::string s = "ab\xC3\xA9 def \xE2\x89\xA5ghi";
    for (std::size_t w : {1u, 2u, 3u, 5u, 100u}) {
        const auto chunks = utf8_chunks(s, w);
        std::string joined;
        for (const auto& c : chunks) {
            CHECK(utf8_length(c) <= w);
            CHECK(!c.empty());
            joined += c;
        }
        CHECK(joined == s);
    }
    CHECK(utf8_chunks("", 4) == std::vector<std::string>{""});
}

TEST_CASE("random code point strings survive the round trip") {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<std::uint32_t> pick(0, 0x10FFFF);
    for (int iter = 0; iter < 500; ++iter) {
        std::u32string pts;
        for (int k = 0; k < 40; ++k) {
            std::uint32_t cp = pick(rng);
            if (cp >= 0xD800 && cp <= 0xDFFF) cp = 0xFFFD;
            pts.push_back(cp);
        }
        const std::string bytes = utf8_encode(pts);
        CHECK(!utf8_find_invalid(bytes).has_value());
        CHECK(utf8_decode(bytes) == pts);
        CHECK(utf8_length(bytes) == pts.size());
    }
}
