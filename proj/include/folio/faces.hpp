#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "folio/color.hpp"
#include "folio/tokens.hpp"

namespace folio {

enum class Face {
    Default,
    Critical,
    Popout,
    Strong,
    Salient,
    Faded,
    Subtle,
};

inline constexpr std::array<Face, 7> kAllFaces = {
    Face::Default, Face::Critical, Face::Popout, Face::Strong,
    Face::Salient, Face::Faded,    Face::Subtle,
};

std::string_view to_string(Face f);

struct WeightEntry {
    std::string_view name;
    int value;  // CSS font-weight
};

inline constexpr std::array<WeightEntry, 5> kWeightLadder = {{
    {"thin", 100},
    {"light", 300},
    {"regular", 400},
    {"medium", 500},
    {"bold", 700},
}};

struct FaceStyle {
    Color fg;
    std::optional<Color> bg;
    int weight = 2;  // index into kWeightLadder
};

struct FaceThresholds {
    double min_contrast = 4.5;
    double chroma_floor = 10;
    double salient_dL = 5;
    double salient_hue_dist = 30;
    double salient_chroma = 30;
    double faded_hue_dist = 5;
    double faded_factor = 0.55;
    double faded_dL_tol = 2;
    double subtle_dL_min = 2;
    double subtle_dL_max = 8;
    double subtle_hue_dist = 10;
    double popout_hue_dist = 60;
    double popout_chroma = 40;
    double critical_hue_min = 10;
    double critical_hue_max = 45;
    double critical_contrast = 4.5;
};

struct FaceOptions {
    double salient_hue = 250;
    double popout_hue = 35;
    double critical_hue = 27;
    int default_weight = 2;  // regular
    int strong_weight = 4;   // bold
    FaceThresholds thresholds;
};

struct Palette {
    Color fg, bg;
    std::array<FaceStyle, 7> styles;

    const FaceStyle& style(Face f) const {
        return styles[static_cast<std::size_t>(f)];
    }
    FaceStyle& style(Face f) { return styles[static_cast<std::size_t>(f)]; }
};

// Build all seven styles from a base pair. Throws FaceError when the pair
// is unusable or some face cannot be realized in gamut.
Palette derive_faces(Color fg, Color bg, const FaceOptions& opt = {});

// Re-measure a palette and throw FaceError on the first violated clause.
void validate_faces(const Palette& p, const FaceOptions& opt = {});

Face face_for_token(TokenCategory category, bool in_header = false);

// n hues evenly spaced around the wheel starting at `start`.
std::vector<double> hue_wheel(int n, double start = 0);

// n mutually distinct accent colors at a common lightness and chroma.
std::vector<Color> distinct_hues(int n, double L = 60, double C = 40);

// Interpolate toward the background for stale code: age 1 is the base
// color, age 0 the most washed out. Throws RangeError outside [0, 1].
Color age_tint(Color base, Color bg, double age);

}  // namespace folio
