#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace folio {

struct Color {
    std::uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Color&) const = default;
};

struct Lab {
    double L = 0, a = 0, b = 0;
};

// Cylindrical Lab. h is degrees in [0, 360); meaningless when C is near 0.
struct LCh {
    double L = 0, C = 0, h = 0;
};

Color parse_hex(std::string_view text);
std::string to_hex(Color c);

Lab to_lab(Color c);
LCh to_lch(Color c);
LCh lab_to_lch(const Lab& lab);
Lab lch_to_lab(const LCh& lch);

// Realize an LCh target as an sRGB color. Out-of-gamut channels clamp
// independently, which can shift hue; use clamped_lch to stay on-hue.
Color from_perceptual(double L, double C, double h);

// Reduce chroma toward the gray axis until the color fits the gamut.
Color clamped_lch(double L, double C, double h);

// Largest chroma at (L, h) that stays inside sRGB before quantization.
double max_chroma(double L, double h);

double relative_luminance(Color c);  // WCAG 2.x
double contrast(Color a, Color b);   // (Lhi + 0.05) / (Llo + 0.05)

// Circular distance between two hue angles, in [0, 180].
double hue_distance(double a, double b);

}  // namespace folio
