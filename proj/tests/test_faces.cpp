#include <doctest.h>

#include <random>

#include "folio/errors.hpp"
#include "folio/faces.hpp"
#include "oracle_color.hpp"

using namespace folio;

namespace {

oracle::Lch olch(Color c) { return oracle::lch_of(c.r, c.g, c.b); }

double ocontrast(Color a, Color b) {
    return oracle::wcag_contrast(a.r, a.g, a.b, b.r, b.g, b.b);
}

// Re-check every clause of a derived palette using the reference math only.
void oracle_verify(const Palette& p, const FaceOptions& opt = {}) {
    const FaceThresholds& t = opt.thresholds;
    const oracle::Lch fg = olch(p.fg);
    const oracle::Lch bg = olch(p.bg);
    const bool fg_chromatic = fg.C >= t.chroma_floor;
    const bool bg_chromatic = bg.C >= t.chroma_floor;

    CHECK(ocontrast(p.fg, p.bg) >= t.min_contrast);

    const FaceStyle& def = p.style(Face::Default);
    CHECK(def.fg == p.fg);
    CHECK(!def.bg.has_value());

    const FaceStyle& strong = p.style(Face::Strong);
    CHECK(strong.fg == p.fg);
    CHECK(kWeightLadder[strong.weight].value > kWeightLadder[def.weight].value);

    const oracle::Lch sal = olch(p.style(Face::Salient).fg);
    CHECK(std::fabs(sal.L - fg.L) <= t.salient_dL);
    if (fg_chromatic)
        CHECK(oracle::hue_gap(sal.h, fg.h) >= t.salient_hue_dist);
    else
        CHECK(sal.C >= t.salient_chroma);

    const oracle::Lch pop = olch(p.style(Face::Popout).fg);
    CHECK(pop.C >= t.popout_chroma);
    if (fg_chromatic) CHECK(oracle::hue_gap(pop.h, fg.h) >= t.popout_hue_dist);
    if (sal.C >= t.chroma_floor)
        CHECK(oracle::hue_gap(pop.h, sal.h) >= t.popout_hue_dist);

    const FaceStyle& crit = p.style(Face::Critical);
    REQUIRE(crit.bg.has_value());
    const oracle::Lch cbg = olch(*crit.bg);
    CHECK(cbg.h >= t.critical_hue_min);
    CHECK(cbg.h <= t.critical_hue_max);
    CHECK(ocontrast(crit.fg, *crit.bg) >= t.critical_contrast);

    const oracle::Lch fad = olch(p.style(Face::Faded).fg);
    if (fg_chromatic) CHECK(oracle::hue_gap(fad.h, fg.h) <= t.faded_hue_dist);
    const double span = std::fabs(fg.L - bg.L);
    CHECK(std::fabs(std::fabs(fad.L - bg.L) - t.faded_factor * span) <=
          t.faded_dL_tol);

    const FaceStyle& sub = p.style(Face::Subtle);
    REQUIRE(sub.bg.has_value());
    CHECK(sub.fg == p.fg);
    const oracle::Lch sbg = olch(*sub.bg);
    CHECK(std::fabs(sbg.L - bg.L) >= t.subtle_dL_min);
    CHECK(std::fabs(sbg.L - bg.L) <= t.subtle_dL_max);
    if (bg_chromatic && sbg.C >= t.chroma_floor)
        CHECK(oracle::hue_gap(sbg.h, bg.h) <= t.subtle_hue_dist);
}

}  // namespace

TEST_CASE("lch of pure red") {
    const auto l = olch(parse_hex("#FF0000"));
    CHECK(l.L == doctest::Approx(53.23288).epsilon(1e-5));
    CHECK(l.C == doctest::Approx(104.57552).epsilon(1e-5));
    CHECK(l.h == doctest::Approx(40.00016).epsilon(1e-5));
    // the library agrees with the reference
    const LCh m = to_lch(parse_hex("#FF0000"));
    CHECK(m.L == doctest::Approx(l.L).epsilon(1e-9));
    CHECK(m.C == doctest::Approx(l.C).epsilon(1e-9));
    CHECK(m.h == doctest::Approx(l.h).epsilon(1e-9));
}

TEST_CASE("library conversions match the reference on a sweep") {
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int i = 0; i < 2000; ++i) {
        const Color c{static_cast<std::uint8_t>(byte(rng)),
                      static_cast<std::uint8_t>(byte(rng)),
                      static_cast<std::uint8_t>(byte(rng))};
        const LCh m = to_lch(c);
        const auto r = olch(c);
        CHECK(m.L == doctest::Approx(r.L).epsilon(1e-9));
        CHECK(m.C == doctest::Approx(r.C).epsilon(1e-9));
        if (r.C > 1e-6) CHECK(m.h == doctest::Approx(r.h).epsilon(1e-9));
    }
}

TEST_CASE("frozen conversion values") {
    const auto ink = olch(parse_hex("#383A42"));
    CHECK(ink.L == doctest::Approx(24.51369).epsilon(1e-4));
    CHECK(ink.C == doctest::Approx(5.34124).epsilon(1e-4));
    CHECK(olch(parse_hex("#FAFAFA")).L == doctest::Approx(98.272).epsilon(1e-4));
    CHECK(olch(parse_hex("#4080C0")).h == doctest::Approx(270.15441).epsilon(1e-4));
    CHECK(olch(parse_hex("#FFFFFF")).L == doctest::Approx(100.0).epsilon(1e-6));
    // the four-digit sRGB matrix leaves a trace of chroma at white; it sits
    // far below the chroma floor and every hue clause is gated on that floor
    CHECK(olch(parse_hex("#FFFFFF")).C < 0.05);
    CHECK(olch(parse_hex("#000000")).L == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("round trip through lch") {
    const Color c = parse_hex("#4080C0");
    const LCh l = to_lch(c);
    CHECK(from_perceptual(l.L, l.C, l.h) == c);

    std::mt19937 rng(5);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int i = 0; i < 1000; ++i) {
        const Color x{static_cast<std::uint8_t>(byte(rng)),
                      static_cast<std::uint8_t>(byte(rng)),
                      static_cast<std::uint8_t>(byte(rng))};
        const LCh l2 = to_lch(x);
        CHECK(from_perceptual(l2.L, l2.C, l2.h) == x);
    }
}

TEST_CASE("out-of-gamut targets clamp per channel") {
    CHECK(from_perceptual(50, 200, 40) == parse_hex("#FF0000"));
}

TEST_CASE("clamped_lch keeps the hue") {
    const Color c = clamped_lch(50, 200, 40);
    const auto l = olch(c);
    CHECK(oracle::hue_gap(l.h, 40) < 1.5);
    CHECK(l.L == doctest::Approx(50).epsilon(0.02));
}

TEST_CASE("max_chroma bounds the gamut") {
    for (double h : {0.0, 40.0, 137.0, 250.0, 310.0}) {
        const double mc = max_chroma(60, h);
        CHECK(mc > 0);
        const Color inside = from_perceptual(60, mc - 0.5, h);
        const auto l = olch(inside);
        CHECK(l.C == doctest::Approx(mc - 0.5).epsilon(0.03));
    }
    // white and black admit no chroma to speak of
    CHECK(max_chroma(100, 180) < 0.5);
    CHECK(max_chroma(0, 180) < 0.5);
}

TEST_CASE("contrast values") {
    CHECK(contrast(parse_hex("#000000"), parse_hex("#FFFFFF")) == 21.0);
    CHECK(contrast(parse_hex("#777777"), parse_hex("#FFFFFF")) ==
          doctest::Approx(4.47809).epsilon(1e-5));
    CHECK(contrast(parse_hex("#AAAAAA"), parse_hex("#BBBBBB")) ==
          doctest::Approx(1.21009).epsilon(1e-5));
    CHECK(contrast(parse_hex("#383A42"), parse_hex("#FAFAFA")) ==
          doctest::Approx(10.8634).epsilon(1e-4));
    // symmetric
    CHECK(contrast(parse_hex("#123456"), parse_hex("#ABCDEF")) ==
          contrast(parse_hex("#ABCDEF"), parse_hex("#123456")));
}

TEST_CASE("hex parsing") {
    CHECK(parse_hex("#FF8000") == Color{0xFF, 0x80, 0x00});
    CHECK(parse_hex("ff8000") == Color{0xFF, 0x80, 0x00});
    CHECK(to_hex(Color{0xFF, 0x80, 0x00}) == "#FF8000");
    CHECK_THROWS_AS(parse_hex("#FF80"), ConfigError);
    CHECK_THROWS_AS(parse_hex("#GG0000"), ConfigError);
    CHECK_THROWS_AS(parse_hex(""), ConfigError);
}

TEST_CASE("hue distance is circular") {
    CHECK(hue_distance(10, 350) == doctest::Approx(20));
    CHECK(hue_distance(350, 10) == doctest::Approx(20));
    CHECK(hue_distance(0, 180) == doctest::Approx(180));
    CHECK(hue_distance(90, 90) == doctest::Approx(0));
    CHECK(hue_distance(-30, 30) == doctest::Approx(60));
}

TEST_CASE("default palette satisfies every clause") {
    const Palette p = derive_faces(parse_hex("#383A42"), parse_hex("#FAFAFA"));
    validate_faces(p);
    oracle_verify(p);
}

TEST_CASE("chromatic foreground palette") {
    // blue ink on white: hue rules engage instead of the chroma fallbacks
    const Palette p = derive_faces(parse_hex("#1A3A8A"), parse_hex("#FFFFFF"));
    validate_faces(p);
    oracle_verify(p);

    const auto fg = olch(p.fg);
    CHECK(fg.C == doctest::Approx(51.7126).epsilon(1e-3));
    const auto sal = olch(p.style(Face::Salient).fg);
    CHECK(oracle::hue_gap(sal.h, fg.h) >= 30.0);
    const auto fad = olch(p.style(Face::Faded).fg);
    CHECK(oracle::hue_gap(fad.h, fg.h) <= 5.0);
}

TEST_CASE("dark mode palette") {
    const Palette p = derive_faces(parse_hex("#D8D8D2"), parse_hex("#1E1F24"));
    validate_faces(p);
    oracle_verify(p);
}

TEST_CASE("red ink on warm paper") {
    const Palette p = derive_faces(parse_hex("#B02020"), parse_hex("#F5F0E8"));
    validate_faces(p);
    oracle_verify(p);
}

TEST_CASE("low contrast pairs are rejected") {
    try {
        derive_faces(parse_hex("#777777"), parse_hex("#888888"));
        FAIL("expected FaceError");
    } catch (const FaceError& e) {
        CHECK(e.clause == "default.contrast");
        CHECK(e.measured < 4.5);
    }
}

TEST_CASE("weight misconfiguration") {
    FaceOptions opt;
    opt.strong_weight = opt.default_weight;
    CHECK_THROWS_AS(derive_faces(parse_hex("#383A42"), parse_hex("#FAFAFA"), opt),
                    ConfigError);
    opt.strong_weight = 9;
    CHECK_THROWS_AS(derive_faces(parse_hex("#383A42"), parse_hex("#FAFAFA"), opt),
                    ConfigError);
}

TEST_CASE("validate catches a tampered face") {
    Palette p = derive_faces(parse_hex("#383A42"), parse_hex("#FAFAFA"));
    p.style(Face::Popout).fg = parse_hex("#808080");  // gray: no chroma
    try {
        validate_faces(p);
        FAIL("expected FaceError");
    } catch (const FaceError& e) {
        CHECK(e.clause.find("popout") != std::string::npos);
    }
}

TEST_CASE("random palettes derive and verify") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> byte(0, 255);
    int derived = 0;
    while (derived < 250) {
        const Color fg{static_cast<std::uint8_t>(byte(rng)),
                       static_cast<std::uint8_t>(byte(rng)),
                       static_cast<std::uint8_t>(byte(rng))};
        const Color bg{static_cast<std::uint8_t>(byte(rng)),
                       static_cast<std::uint8_t>(byte(rng)),
                       static_cast<std::uint8_t>(byte(rng))};
        if (oracle::wcag_contrast(fg.r, fg.g, fg.b, bg.r, bg.g, bg.b) < 4.5)
            continue;
        ++derived;
        const Palette p = derive_faces(fg, bg);
        validate_faces(p);
        oracle_verify(p);
    }
}

TEST_CASE("face of a token") {
    CHECK(face_for_token(TokenCategory::Keyword) == Face::Strong);
    CHECK(face_for_token(TokenCategory::DefName) == Face::Strong);
    CHECK(face_for_token(TokenCategory::Comment) == Face::Faded);
    CHECK(face_for_token(TokenCategory::String) == Face::Salient);
    CHECK(face_for_token(TokenCategory::Number) == Face::Default);
    CHECK(face_for_token(TokenCategory::Identifier) == Face::Default);
    CHECK(face_for_token(TokenCategory::Text) == Face::Default);
    CHECK(face_for_token(TokenCategory::Identifier, true) == Face::Strong);
}

TEST_CASE("hue wheel spacing") {
    const auto w = hue_wheel(8, 15);
    REQUIRE(w.size() == 8);
    CHECK(w[0] == doctest::Approx(15));
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            CHECK(hue_distance(w[i], w[j]) >= 45.0 - 1e-9);
        }
    }
    const auto dense = hue_wheel(3600);
    CHECK(hue_distance(dense[0], dense[1]) >= 0.1 - 1e-9);
    CHECK_THROWS_AS(hue_wheel(0), RangeError);
    CHECK_THROWS_AS(hue_wheel(3601), RangeError);
}

TEST_CASE("distinct accent colors") {
    const auto colors = distinct_hues(8);
    REQUIRE(colors.size() == 8);
    for (std::size_t i = 0; i < colors.size(); ++i) {
        CHECK(olch(colors[i]).C >= 20.0);
        for (std::size_t j = i + 1; j < colors.size(); ++j)
            CHECK(!(colors[i] == colors[j]));
    }
}

TEST_CASE("age tint fades toward the background") {
    const Color base = parse_hex("#383A42");
    const Color bg = parse_hex("#FAFAFA");
    CHECK(age_tint(base, bg, 1.0) == base);
    double prev = olch(age_tint(base, bg, 0.0)).L;
    CHECK(prev > olch(base).L);  // washed out means closer to the light paper
    for (double age = 0.1; age <= 1.0001; age += 0.1) {
        const double L = olch(age_tint(base, bg, age)).L;
        CHECK(L <= prev + 0.3);
        prev = L;
    }
    CHECK_THROWS_AS(age_tint(base, bg, -0.01), RangeError);
    CHECK_THROWS_AS(age_tint(base, bg, 1.01), RangeError);
}
