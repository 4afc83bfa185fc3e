#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "folio/editcore.hpp"
#include "folio/errors.hpp"

using namespace folio;

namespace {
const std::string kFox = "The quick brown fox jumps over the lazy dog.";
const std::string kFoxEdited = "The quick lazy dog jumps over the brown fox.";
const std::string kFoxScript = "2wd2w3wPd3w6bep";
}  // namespace

TEST_CASE("the fox script parses to eight commands") {
    const auto cmds = parse_script(kFoxScript);
    const std::vector<Command> want = {
        {CommandKind::Motion, MotionKind::Word, 2},
        {CommandKind::Delete, MotionKind::Word, 2},
        {CommandKind::Motion, MotionKind::Word, 3},
        {CommandKind::PasteBefore, MotionKind::Word, 1},
        {CommandKind::Delete, MotionKind::Word, 3},
        {CommandKind::Motion, MotionKind::Back, 6},
        {CommandKind::Motion, MotionKind::End, 1},
        {CommandKind::PasteAfter, MotionKind::Word, 1},
    };
    CHECK(cmds == want);
}

TEST_CASE("the fox swaps its phrases") {
    Buffer buf(kFox);
    const auto results = buf.run_script(kFoxScript);
    CHECK(buf.text() == kFoxEdited);
    CHECK(buf.cursor() == 17);
    for (const auto& r : results) CHECK(!r.warned);
    REQUIRE(buf.kill_ring().size() == 2);
    CHECK(buf.kill_ring()[0] == U" lazy dog");
    CHECK(buf.kill_ring()[1] == U"brown fox ");
}

TEST_CASE("the fox step by step") {
    Buffer buf(kFox);
    const auto cmds = parse_script(kFoxScript);
    const std::size_t cursors[] = {10, 10, 25, 34, 34, 4, 8, 17};
    const char* texts[] = {
        "The quick brown fox jumps over the lazy dog.",
        "The quick jumps over the lazy dog.",
        "The quick jumps over the lazy dog.",
        "The quick jumps over the brown fox lazy dog.",
        "The quick jumps over the brown fox.",
        "The quick jumps over the brown fox.",
        "The quick jumps over the brown fox.",
        "The quick lazy dog jumps over the brown fox.",
    };
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        buf.apply(cmds[i]);
        CHECK(buf.cursor() == cursors[i]);
        CHECK(buf.text() == texts[i]);
    }
}

TEST_CASE("undo rewinds the fox completely") {
    Buffer buf(kFox);
    buf.run_script(kFoxScript);
    buf.run_script("9u");
    CHECK(buf.text() == kFox);
    CHECK(buf.cursor() == 10);  // back to where the first delete happened
}

TEST_CASE("script whitespace is ignored") {
    Buffer a(kFox), b(kFox);
    a.run_script(kFoxScript);
    b.run_script("2w d2w 3w P\nd3w 6b e p");
    CHECK(a.text() == b.text());
    CHECK(a.cursor() == b.cursor());
}

TEST_CASE("delete counts multiply") {
    const auto cmds = parse_script("2d3w");
    REQUIRE(cmds.size() == 1);
    CHECK(cmds[0] == Command{CommandKind::Delete, MotionKind::Word, 6});
    Buffer a("one two three four five six seven");
    Buffer b("one two three four five six seven");
    a.run_script("2d3w");
    b.run_script("d6w");
    CHECK(a.text() == b.text());
}

TEST_CASE("parse errors carry 1-based positions") {
    auto pos_of = [](std::string_view script) -> std::size_t {
        try {
            parse_script(script);
        } catch (const ScriptError& e) {
            return e.position;
        }
        return 0;
    };
    CHECK(pos_of("q") == 1);
    CHECK(pos_of("wq") == 2);
    CHECK(pos_of("3") == 1);
    CHECK(pos_of("d") == 2);
    CHECK(pos_of("2wd") == 4);
    CHECK(pos_of("dx") == 2);
    CHECK(pos_of("w0w") == 2);
    CHECK(pos_of("9999999w") == 1);
    CHECK(parse_script("").empty());
}

TEST_CASE("word motion lands on punctuation runs") {
    Buffer buf("foo.bar baz");
    buf.run_script("w");
    CHECK(buf.cursor() == 3);  // the dot
    buf.run_script("w");
    CHECK(buf.cursor() == 4);  // bar
    buf.run_script("w");
    CHECK(buf.cursor() == 8);  // baz
    buf.run_script("w");       // clamps at the end
    CHECK(buf.cursor() == 10);
}

TEST_CASE("motions clamp at the edges") {
    Buffer buf("ab cd");
    buf.run_script("9w");
    CHECK(buf.cursor() == 4);
    buf.run_script("9b");
    CHECK(buf.cursor() == 0);
    Buffer empty("");
    const auto res = empty.run_script("wbe");
    CHECK(empty.cursor() == 0);
    for (const auto& r : res) CHECK(!r.warned);
}

TEST_CASE("e stops on the last character of the word") {
    Buffer buf("alpha beta");
    buf.run_script("e");
    CHECK(buf.cursor() == 4);
    buf.run_script("e");
    CHECK(buf.cursor() == 9);
}

TEST_CASE("b from inside a word goes to its start") {
    Buffer buf("alpha beta");
    buf.set_cursor(8);
    buf.run_script("b");
    CHECK(buf.cursor() == 6);
    buf.run_script("b");
    CHECK(buf.cursor() == 0);
}

TEST_CASE("newlines separate words") {
    Buffer buf("one\ntwo\nthree");
    buf.run_script("w");
    CHECK(buf.cursor() == 4);
    buf.run_script("w");
    CHECK(buf.cursor() == 8);
}

TEST_CASE("de keeps the following space") {
    Buffer buf("one two three");
    buf.run_script("de");
    CHECK(buf.text() == " two three");
    Buffer buf2("one two three");
    buf2.run_script("dw");
    CHECK(buf2.text() == "two three");
}

TEST_CASE("db kills backwards") {
    Buffer buf("one two three");
    buf.set_cursor(8);  // 't' of three
    buf.run_script("db");
    CHECK(buf.text() == "one three");
    CHECK(buf.cursor() == 4);
    CHECK(buf.kill_ring().front() == U"two ");
}

TEST_CASE("paste repeats with a count") {
    Buffer buf("ab");
    buf.run_script("dw");
    CHECK(buf.text().empty());
    buf.run_script("3p");
    CHECK(buf.text() == "ababab");
}

TEST_CASE("empty deletes do not touch the kill ring") {
    Buffer buf("word");
    const auto res = buf.run_script("db");  // nothing before the cursor
    REQUIRE(res.size() == 1);
    CHECK(res[0].warned);
    CHECK(buf.kill_ring().empty());
    CHECK(buf.text() == "word");

    Buffer empty("");
    const auto res2 = empty.run_script("dw");
    REQUIRE(res2.size() == 1);
    CHECK(res2[0].warned);
    CHECK(empty.kill_ring().empty());
}

TEST_CASE("paste from an empty ring warns") {
    Buffer buf("word");
    const auto res = buf.run_script("p");
    REQUIRE(res.size() == 1);
    CHECK(res[0].warned);
    CHECK(res[0].message == "kill ring is empty");
    CHECK(buf.text() == "word");
}

TEST_CASE("undo on a fresh buffer warns") {
    Buffer buf("word");
    const auto res = buf.run_script("u");
    REQUIRE(res.size() == 1);
    CHECK(res[0].warned);
}

TEST_CASE("the kill ring keeps the newest sixteen") {
    std::string text;
    for (int i = 0; i < 26; ++i) {
        text += static_cast<char>('a' + i);
        text += ' ';
    }
    Buffer buf(text);
    for (int i = 0; i < 26; ++i) buf.run_script("dw");
    CHECK(buf.kill_ring().size() == Buffer::kKillRingCap);
    CHECK(buf.kill_ring().front() == U"z ");
    CHECK(buf.kill_ring().back() == U"k ");
    // pasting reads the head without consuming it
    buf.run_script("p");
    CHECK(buf.kill_ring().size() == Buffer::kKillRingCap);
    CHECK(buf.kill_ring().front() == U"z ");
}

TEST_CASE("undo then redo restores the exact state per command kind") {
    const std::string text = "alpha beta gamma delta";
    for (const std::string op : {"dw", "db", "de", "P", "p"}) {
        Buffer buf(text);
        buf.set_cursor(6);
        if (op == "P" || op == "p") buf.run_script("dw");  // seed the ring
        buf.run_script(op);
        const std::string after_text = buf.text();
        const std::size_t after_cursor = buf.cursor();
        buf.run_script("u");
        buf.run_script("w");
        buf.run_script("u");  // undo the motion-less undo: a redo
        CHECK(buf.text() == after_text);
        CHECK(buf.cursor() == after_cursor);
    }
}

TEST_CASE("double undo cancels itself") {
    Buffer buf(kFox);
    buf.run_script("d3w");
    const std::string cut = buf.text();
    buf.run_script("u");
    CHECK(buf.text() == kFox);
    buf.run_script("w");  // break the undo walk
    buf.run_script("u");
    CHECK(buf.text() == cut);
    buf.run_script("w");
    buf.run_script("u");
    CHECK(buf.text() == kFox);
}

TEST_CASE("history only grows") {
    Buffer buf(kFox);
    buf.run_script("dw");
    const auto h1 = buf.history().size();
    buf.run_script("u");
    CHECK(buf.history().size() == h1 + 1);
    buf.run_script("u");  // nothing left to undo, no new record
    CHECK(buf.history().size() == h1 + 1);
}

TEST_CASE("random scripts always undo back to the source") {
    std::mt19937 rng(4242);
    const std::vector<std::string> atoms = {"w",  "b",  "e", "dw", "db",
                                            "de", "2w", "p", "P",  "2dw"};
    std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
    std::uniform_int_distribution<int> steps(1, 10);
    std::uniform_int_distribution<int> words(0, 12);
    for (int iter = 0; iter < 300; ++iter) {
        std::string text;
        const int n = words(rng);
        for (int k = 0; k < n; ++k) {
            text += "word";
            text += static_cast<char>('a' + k);
            text += (k % 3 == 2) ? '\n' : ' ';
        }
        Buffer buf(text);
        std::string script;
        const int m = steps(rng);
        for (int k = 0; k < m; ++k) script += atoms[pick(rng)];
        buf.run_script(script);
        for (int k = 0; k < 64; ++k) {
            if (buf.apply({CommandKind::Undo, MotionKind::Word, 1}).warned)
                break;
        }
        CHECK(buf.text() == text);
    }
}

TEST_CASE("multibyte text is cut and pasted intact") {
    Buffer buf("caf\xC3\xA9 na\xC3\xAFve \xE2\x88\x91 end");
    buf.run_script("dw");
    CHECK(buf.kill_ring().front() == U"café ");
    CHECK(buf.text() == "na\xC3\xAFve \xE2\x88\x91 end");
    buf.run_script("P");
    CHECK(buf.text() == "caf\xC3\xA9 na\xC3\xAFve \xE2\x88\x91 end");
    buf.run_script("9u");
    CHECK(buf.text() == "caf\xC3\xA9 na\xC3\xAFve \xE2\x88\x91 end");
}

TEST_CASE("rect cut and paste round trip") {
    const std::string text =
        "alpha one\n"
        "beta two\n"
        "gamma three\n";
    Buffer buf(text);
    const auto block = buf.rect_cut(1, 2, 3, 4);
    REQUIRE(block.size() == 3);
    CHECK(block[0] == "pha");
    CHECK(block[1] == "ta ");
    CHECK(block[2] == "mma");
    buf.rect_paste(1, 2, block);
    CHECK(buf.text() == text);
}

TEST_CASE("rect cells past short lines are empty") {
    Buffer buf("long line here\nab\n");
    const auto block = buf.rect_cut(1, 5, 2, 8);
    REQUIRE(block.size() == 2);
    CHECK(block[0] == "line");
    CHECK(block[1] == "");
}

TEST_CASE("rect paste can extend past the last line") {
    Buffer buf("one\n");
    buf.rect_paste(2, 0, {"x", "y"});
    CHECK(buf.text() == "one\nx\ny");
    CHECK_THROWS_AS(buf.rect_paste(9, 0, {"z"}), RangeError);
}

TEST_CASE("rect errors") {
    Buffer buf("one\ntwo\n");
    CHECK_THROWS_AS(buf.rect_cut(0, 0, 1, 1), RangeError);
    CHECK_THROWS_AS(buf.rect_cut(2, 0, 1, 1), RangeError);
    CHECK_THROWS_AS(buf.rect_cut(1, 3, 1, 1), RangeError);
    CHECK_THROWS_AS(buf.rect_cut(1, 0, 9, 1), RangeError);
    CHECK_THROWS_AS(buf.rect_paste(0, 0, {"x"}), RangeError);
}

TEST_CASE("rect operations undo as one group") {
    const std::string text = "alpha one\nbeta two\n";
    Buffer buf(text);
    buf.rect_cut(1, 0, 2, 3);
    CHECK(buf.text() != text);
    buf.run_script("u");
    CHECK(buf.text() == text);
}

TEST_CASE("random rectangles restore the buffer") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> ln(1, 4), col(0, 9);
    const std::string text =
        "zero zero zero\n"
        "one one\n"
        "\n"
        "three three three three\n";
    for (int iter = 0; iter < 200; ++iter) {
        int a = ln(rng), b = ln(rng);
        if (a > b) std::swap(a, b);
        int l = col(rng), r = col(rng);
        if (l > r) std::swap(l, r);
        Buffer buf(text);
        const auto block = buf.rect_cut(a, l, b, r);
        buf.rect_paste(a, l, block);
        CHECK(buf.text() == text);
    }
}

TEST_CASE("initial cursor is clamped") {
    Buffer buf("abc", 99);
    CHECK(buf.cursor() == 2);
    Buffer empty("", 5);
    CHECK(empty.cursor() == 0);
}
