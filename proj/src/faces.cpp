#include "folio/faces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "folio/errors.hpp"

namespace folio {
namespace {

// Clauses are re-checked on quantized colors, so construction aims this
// far inside every bound.
constexpr double kMargin = 0.25;

FaceError clause_error(std::string_view face, std::string_view id,
                       std::string_view text, double measured) {
    std::ostringstream os;
    os << face << ": " << text;
    std::string clause(face);
    clause += '.';
    clause += id;
    return FaceError(os.str(), std::move(clause), measured);
}

double clamp_L(double L) { return std::clamp(L, 2.0, 98.0); }

struct Deriver {
    LCh fgl, bgl;
    const FaceOptions& opt;
    const FaceThresholds& th;
    bool fg_chromatic;

    Deriver(Color fg, Color bg, const FaceOptions& o)
        : fgl(to_lch(fg)),
          bgl(to_lch(bg)),
          opt(o),
          th(o.thresholds),
          fg_chromatic(fgl.C >= o.thresholds.chroma_floor) {}

    Color salient() const {
        std::vector<double> hues;
        if (fg_chromatic) {
            if (hue_distance(opt.salient_hue, fgl.h) >=
                th.salient_hue_dist + 10)
                hues.push_back(opt.salient_hue);
            for (double d : {180.0, 150.0, -150.0, 120.0, -120.0, 90.0, -90.0,
                             60.0, -60.0, 40.0, -40.0})
                hues.push_back(fgl.h + d);
        } else {
            hues = {opt.salient_hue, 250, 110, 290, 40,  180,
                    70,              330, 140, 260, 20,  90,
                    200};
        }
        // full wheel as a last resort; near the gamut tips (very dark or
        // very light fg) only a narrow hue band carries enough chroma
        for (double h = 0; h < 360; h += 5) hues.push_back(h);
        const double offsets[] = {0, 1, -1, 2, -2, 3, -3, 4, -4};
        for (int pass = 0; pass < 2; ++pass) {
            for (double h : hues) {
                for (double dL : offsets) {
                    const double L = clamp_L(fgl.L + dL);
                    if (std::fabs(L - fgl.L) > th.salient_dL - 1) continue;
                    const double maxC = max_chroma(L, h);
                    double need = fg_chromatic ? th.chroma_floor + 2
                                               : th.salient_chroma + 2;
                    if (pass == 0) need = std::max(need, 33.0);
                    if (maxC < need) continue;
                    const Color cand =
                        from_perceptual(L, std::min(45.0, maxC - 1), h);
                    const LCh m = to_lch(cand);
                    if (std::fabs(m.L - fgl.L) > th.salient_dL - kMargin)
                        continue;
                    if (fg_chromatic) {
                        if (m.C < th.chroma_floor + kMargin) continue;
                        if (hue_distance(m.h, fgl.h) <
                            th.salient_hue_dist + kMargin)
                            continue;
                    } else if (m.C < th.salient_chroma + kMargin) {
                        continue;
                    }
                    return cand;
                }
            }
        }
        throw clause_error("salient", "gamut", "no candidate in gamut", fgl.L);
    }

    Color popout(const LCh& salient_m) const {
        std::vector<double> grid;
        for (double h = 0; h < 360; h += 5) grid.push_back(h);
        std::sort(grid.begin(), grid.end(), [&](double a, double b) {
            return hue_distance(a, opt.popout_hue) <
                   hue_distance(b, opt.popout_hue);
        });
        const double levels[] = {55, 60, 50, 65, 45, 70, 40,
                                 75, 35, 80, 30, 85, 90, 25};
        const double guard = th.popout_hue_dist + 5;
        for (int pass = 0; pass < 2; ++pass) {
            const double need =
                pass == 0 ? th.popout_chroma + 6 : th.popout_chroma + 1.25;
            for (double h : grid) {
                if (fg_chromatic && hue_distance(h, fgl.h) < guard) continue;
                if (hue_distance(h, salient_m.h) < guard) continue;
                for (double L : levels) {
                    const double maxC = max_chroma(L, h);
                    if (maxC < need) continue;
                    const Color cand =
                        from_perceptual(L, std::min(maxC - 1, 75.0), h);
                    const LCh m = to_lch(cand);
                    if (m.C < th.popout_chroma + kMargin) continue;
                    if (fg_chromatic && hue_distance(m.h, fgl.h) <
                                            th.popout_hue_dist + kMargin)
                        continue;
                    if (hue_distance(m.h, salient_m.h) <
                        th.popout_hue_dist + kMargin)
                        continue;
                    return cand;
                }
            }
        }
        throw clause_error("popout", "gamut", "no candidate in gamut", fgl.h);
    }

    FaceStyle critical(Color fg, Color bg) const {
        const double levels[] = {42, 45, 38, 48, 35, 32, 30};
        for (double L : levels) {
            const double maxC = max_chroma(L, opt.critical_hue);
            if (maxC < 25) continue;
            const Color cbg =
                from_perceptual(L, std::min(maxC - 1, 60.0), opt.critical_hue);
            const LCh m = to_lch(cbg);
            if (m.C < th.chroma_floor + kMargin) continue;
            if (m.h < th.critical_hue_min + kMargin ||
                m.h > th.critical_hue_max - kMargin)
                continue;
            const Color picks[] = {{255, 255, 255}, {0, 0, 0}, fg, bg};
            Color best = picks[0];
            double best_c = 0;
            for (Color f : picks) {
                const double c = contrast(f, cbg);
                if (c > best_c) {
                    best_c = c;
                    best = f;
                }
            }
            if (best_c >= th.critical_contrast + 0.02)
                return {best, cbg, opt.default_weight};
        }
        throw clause_error("critical", "gamut", "no candidate in gamut",
                           opt.critical_hue);
    }

    Color faded() const {
        const double span = fgl.L - bgl.L;
        const double target = bgl.L + th.faded_factor * span;
        std::vector<double> chromas{fgl.C};
        if (fg_chromatic)
            chromas = {std::max(fgl.C, 15.0), 20, 25, fgl.C};
        const double nudges[] = {0, 0.5, -0.5, 1, -1, 1.5, -1.5};
        for (double dL : nudges) {
            for (double C : chromas) {
                const Color cand = clamped_lch(target + dL, C, fgl.h);
                const LCh m = to_lch(cand);
                const double want = th.faded_factor * std::fabs(span);
                if (std::fabs(std::fabs(m.L - bgl.L) - want) >
                    th.faded_dL_tol - kMargin)
                    continue;
                if (fg_chromatic) {
                    if (m.C < th.chroma_floor + kMargin) continue;
                    if (hue_distance(m.h, fgl.h) > th.faded_hue_dist - kMargin)
                        continue;
                }
                return cand;
            }
        }
        throw clause_error("faded", "gamut", "no candidate in gamut", target);
    }

    Color subtle(Color bg) const {
        const double dir = bgl.L > 50 ? -1 : 1;
        const bool bg_chromatic = bgl.C >= th.chroma_floor;
        for (double step : {5.0, 4.5, 5.5, 4.0, 6.0, 3.5, 6.5, 3.0, 7.0}) {
            const Color cand =
                clamped_lch(bgl.L + dir * step, bgl.C, bgl.h);
            if (cand == bg) continue;
            const LCh m = to_lch(cand);
            const double dL = std::fabs(m.L - bgl.L);
            if (dL < th.subtle_dL_min + kMargin ||
                dL > th.subtle_dL_max - kMargin)
                continue;
            if (bg_chromatic && m.C >= th.chroma_floor &&
                hue_distance(m.h, bgl.h) > th.subtle_hue_dist - kMargin)
                continue;
            return cand;
        }
        throw clause_error("subtle", "gamut", "no candidate in gamut", bgl.L);
    }
};

void require(bool ok, std::string_view face, std::string_view id,
             std::string_view text, double measured) {
    if (!ok) throw clause_error(face, id, text, measured);
}

}  // namespace

std::string_view to_string(Face f) {
    switch (f) {
        case Face::Default: return "default";
        case Face::Critical: return "critical";
        case Face::Popout: return "popout";
        case Face::Strong: return "strong";
        case Face::Salient: return "salient";
        case Face::Faded: return "faded";
        case Face::Subtle: return "subtle";
    }
    return "?";
}

Palette derive_faces(Color fg, Color bg, const FaceOptions& opt) {
    const auto& th = opt.thresholds;
    if (contrast(fg, bg) < th.min_contrast)
        throw clause_error("default", "contrast",
                           "base pair contrast below minimum",
                           contrast(fg, bg));
    if (opt.default_weight < 0 ||
        opt.default_weight >= static_cast<int>(kWeightLadder.size()) ||
        opt.strong_weight < 0 ||
        opt.strong_weight >= static_cast<int>(kWeightLadder.size()))
        throw ConfigError("weight index outside the ladder");
    if (opt.strong_weight <= opt.default_weight)
        throw ConfigError("strong weight must sit above the default weight");

    Deriver d(fg, bg, opt);
    Palette p;
    p.fg = fg;
    p.bg = bg;
    p.style(Face::Default) = {fg, std::nullopt, opt.default_weight};
    p.style(Face::Strong) = {fg, std::nullopt, opt.strong_weight};
    const Color sal = d.salient();
    p.style(Face::Salient) = {sal, std::nullopt, opt.default_weight};
    p.style(Face::Popout) = {d.popout(to_lch(sal)), std::nullopt,
                             opt.default_weight};
    p.style(Face::Critical) = d.critical(fg, bg);
    p.style(Face::Faded) = {d.faded(), std::nullopt, opt.default_weight};
    p.style(Face::Subtle) = {fg, d.subtle(bg), opt.default_weight};
    validate_faces(p, opt);
    return p;
}

void validate_faces(const Palette& p, const FaceOptions& opt) {
    const auto& th = opt.thresholds;
    const LCh fgl = to_lch(p.fg);
    const LCh bgl = to_lch(p.bg);
    const bool fg_chromatic = fgl.C >= th.chroma_floor;
    const bool bg_chromatic = bgl.C >= th.chroma_floor;

    require(contrast(p.fg, p.bg) >= th.min_contrast, "default", "contrast",
            "contrast(fg, bg) >= minimum", contrast(p.fg, p.bg));

    const FaceStyle& strong = p.style(Face::Strong);
    require(strong.fg == p.fg, "strong", "ink", "fg identical to default", 0);
    require(strong.weight > p.style(Face::Default).weight, "strong", "weight",
            "weight above default", strong.weight);

    const LCh sal = to_lch(p.style(Face::Salient).fg);
    require(std::fabs(sal.L - fgl.L) <= th.salient_dL, "salient", "lightness",
            "|dL| within bound", std::fabs(sal.L - fgl.L));
    if (fg_chromatic) {
        require(sal.C >= th.chroma_floor, "salient", "chroma",
                "chroma above floor", sal.C);
        require(hue_distance(sal.h, fgl.h) >= th.salient_hue_dist, "salient",
                "hue", "hue distance from fg", hue_distance(sal.h, fgl.h));
    } else {
        require(sal.C >= th.salient_chroma, "salient", "chroma",
                "chroma against achromatic fg", sal.C);
    }

    const LCh pop = to_lch(p.style(Face::Popout).fg);
    require(pop.C >= th.popout_chroma, "popout", "chroma",
            "chroma above minimum", pop.C);
    if (fg_chromatic)
        require(hue_distance(pop.h, fgl.h) >= th.popout_hue_dist, "popout",
                "hue.fg", "hue distance from fg", hue_distance(pop.h, fgl.h));
    if (sal.C >= th.chroma_floor)
        require(hue_distance(pop.h, sal.h) >= th.popout_hue_dist, "popout",
                "hue.salient", "hue distance from salient", hue_distance(pop.h, sal.h));

    const FaceStyle& crit = p.style(Face::Critical);
    require(crit.bg.has_value(), "critical", "bg", "background present", 0);
    const LCh critbg = to_lch(*crit.bg);
    require(critbg.C >= th.chroma_floor, "critical", "chroma",
            "background chroma", critbg.C);
    require(critbg.h >= th.critical_hue_min && critbg.h <= th.critical_hue_max,
            "critical", "hue", "background hue inside alert band", critbg.h);
    require(contrast(crit.fg, *crit.bg) >= th.critical_contrast, "critical",
            "contrast", "fg/bg contrast", contrast(crit.fg, *crit.bg));

    const LCh fad = to_lch(p.style(Face::Faded).fg);
    const double want = th.faded_factor * std::fabs(fgl.L - bgl.L);
    require(std::fabs(std::fabs(fad.L - bgl.L) - want) <= th.faded_dL_tol,
            "faded", "lightness", "L sits at the faded fraction",
            std::fabs(fad.L - bgl.L));
    if (fg_chromatic) {
        require(fad.C >= th.chroma_floor, "faded", "chroma",
                "chroma above floor", fad.C);
        require(hue_distance(fad.h, fgl.h) <= th.faded_hue_dist, "faded",
                "hue", "hue stays near fg", hue_distance(fad.h, fgl.h));
    }

    const FaceStyle& sub = p.style(Face::Subtle);
    require(sub.bg.has_value(), "subtle", "bg", "background present", 0);
    const LCh subbg = to_lch(*sub.bg);
    const double dL = std::fabs(subbg.L - bgl.L);
    require(dL >= th.subtle_dL_min && dL <= th.subtle_dL_max, "subtle",
            "lightness", "background dL inside band", dL);
    if (bg_chromatic && subbg.C >= th.chroma_floor)
        require(hue_distance(subbg.h, bgl.h) <= th.subtle_hue_dist, "subtle",
                "hue", "hue stays near bg", hue_distance(subbg.h, bgl.h));
}

Face face_for_token(TokenCategory category, bool in_header) {
    if (in_header) return Face::Strong;
    switch (category) {
        case TokenCategory::Comment: return Face::Faded;
        case TokenCategory::Keyword:
        case TokenCategory::DefName: return Face::Strong;
        case TokenCategory::String: return Face::Salient;
        default: return Face::Default;
    }
}

std::vector<double> hue_wheel(int n, double start) {
    if (n < 1 || n > 3600)
        throw RangeError("hue count must be between 1 and 3600");
    std::vector<double> hues;
    hues.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double h = std::fmod(start + 360.0 * k / n, 360.0);
        if (h < 0) h += 360;
        hues.push_back(h);
    }
    return hues;
}

std::vector<Color> distinct_hues(int n, double L, double C) {
    std::vector<Color> out;
    for (double h : hue_wheel(n, 20)) {
        const double maxC = max_chroma(L, h);
        out.push_back(from_perceptual(L, std::min(C, std::max(0.0, maxC - 1)),
                                      h));
    }
    return out;
}

Color age_tint(Color base, Color bg, double age) {
    if (!(age >= 0.0 && age <= 1.0))
        throw RangeError("age must lie in [0, 1]");
    const LCh b = to_lch(base);
    const LCh g = to_lch(bg);
    const double oldest = g.L + 0.10 * (b.L - g.L);
    const double L = oldest + age * (b.L - oldest);
    return clamped_lch(L, b.C, b.h);
}

}  // namespace folio
