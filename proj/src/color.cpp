#include "folio/color.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "folio/errors.hpp"

namespace folio {
namespace {

// D65 reference white.
constexpr double kXn = 0.95047;
constexpr double kYn = 1.00000;
constexpr double kZn = 1.08883;

constexpr double kPi = 3.14159265358979323846;

double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double c) {
    return c <= 0.0031308 ? c * 12.92
                          : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

struct LinearRgb {
    double r, g, b;
};

LinearRgb to_linear(Color c) {
    return {srgb_to_linear(c.r / 255.0), srgb_to_linear(c.g / 255.0),
            srgb_to_linear(c.b / 255.0)};
}

struct Xyz {
    double x, y, z;
};

Xyz linear_to_xyz(const LinearRgb& c) {
    return {0.4124 * c.r + 0.3576 * c.g + 0.1805 * c.b,
            0.2126 * c.r + 0.7152 * c.g + 0.0722 * c.b,
            0.0193 * c.r + 0.1192 * c.g + 0.9505 * c.b};
}

LinearRgb xyz_to_linear(const Xyz& c) {
    return {3.2406 * c.x - 1.5372 * c.y - 0.4986 * c.z,
            -0.9689 * c.x + 1.8758 * c.y + 0.0415 * c.z,
            0.0557 * c.x - 0.2040 * c.y + 1.0570 * c.z};
}

double lab_f(double t) {
    constexpr double cube = (6.0 / 29) * (6.0 / 29) * (6.0 / 29);
    return t > cube ? std::cbrt(t)
                    : t / (3 * (6.0 / 29) * (6.0 / 29)) + 4.0 / 29;
}

double lab_f_inv(double t) {
    constexpr double lo = 6.0 / 29;
    return t > lo ? t * t * t : 3 * lo * lo * (t - 4.0 / 29);
}

Xyz lab_to_xyz(const Lab& lab) {
    const double fy = (lab.L + 16) / 116;
    return {kXn * lab_f_inv(fy + lab.a / 500), kYn * lab_f_inv(fy),
            kZn * lab_f_inv(fy - lab.b / 200)};
}

LinearRgb lch_to_linear(double L, double C, double h) {
    return xyz_to_linear(lab_to_xyz(lch_to_lab({L, C, h})));
}

bool in_gamut(const LinearRgb& c) {
    constexpr double eps = 1e-9;
    return c.r >= -eps && c.r <= 1 + eps && c.g >= -eps && c.g <= 1 + eps &&
           c.b >= -eps && c.b <= 1 + eps;
}

std::uint8_t quantize(double linear) {
    const double s = linear_to_srgb(std::clamp(linear, 0.0, 1.0));
    return static_cast<std::uint8_t>(
        std::lround(std::clamp(s, 0.0, 1.0) * 255.0));
}

Color quantize_rgb(const LinearRgb& c) {
    return {quantize(c.r), quantize(c.g), quantize(c.b)};
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

Color parse_hex(std::string_view text) {
    std::string_view t = text;
    if (t.starts_with('#')) t.remove_prefix(1);
    if (t.size() != 6)
        throw ConfigError("bad hex color '" + std::string(text) + "'");
    int v[6];
    for (int k = 0; k < 6; ++k) {
        v[k] = hex_digit(t[static_cast<std::size_t>(k)]);
        if (v[k] < 0)
            throw ConfigError("bad hex color '" + std::string(text) + "'");
    }
    return {static_cast<std::uint8_t>(v[0] * 16 + v[1]),
            static_cast<std::uint8_t>(v[2] * 16 + v[3]),
            static_cast<std::uint8_t>(v[4] * 16 + v[5])};
}

std::string to_hex(Color c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02X%02X%02X", c.r, c.g, c.b);
    return buf;
}

Lab to_lab(Color c) {
    const Xyz xyz = linear_to_xyz(to_linear(c));
    const double fx = lab_f(xyz.x / kXn);
    const double fy = lab_f(xyz.y / kYn);
    const double fz = lab_f(xyz.z / kZn);
    return {116 * fy - 16, 500 * (fx - fy), 200 * (fy - fz)};
}

LCh lab_to_lch(const Lab& lab) {
    const double C = std::hypot(lab.a, lab.b);
    double h = std::atan2(lab.b, lab.a) * 180 / kPi;
    if (h < 0) h += 360;
    return {lab.L, C, h};
}

Lab lch_to_lab(const LCh& lch) {
    const double rad = lch.h * kPi / 180;
    return {lch.L, lch.C * std::cos(rad), lch.C * std::sin(rad)};
}

LCh to_lch(Color c) { return lab_to_lch(to_lab(c)); }

Color from_perceptual(double L, double C, double h) {
    return quantize_rgb(lch_to_linear(L, C, h));
}

Color clamped_lch(double L, double C, double h) {
    if (in_gamut(lch_to_linear(L, C, h))) return from_perceptual(L, C, h);
    return from_perceptual(L, std::min(C, max_chroma(L, h)), h);
}

double max_chroma(double L, double h) {
    if (!in_gamut(lch_to_linear(L, 0, h))) return 0;
    double lo = 0, hi = 200;
    for (int it = 0; it < 48; ++it) {
        const double mid = (lo + hi) / 2;
        if (in_gamut(lch_to_linear(L, mid, h)))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double relative_luminance(Color c) {
    const auto channel = [](double v) {
        return v <= 0.03928 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
    };
    return 0.2126 * channel(c.r / 255.0) + 0.7152 * channel(c.g / 255.0) +
           0.0722 * channel(c.b / 255.0);
}

double contrast(Color a, Color b) {
    const double la = relative_luminance(a);
    const double lb = relative_luminance(b);
    return (std::max(la, lb) + 0.05) / (std::min(la, lb) + 0.05);
}

double hue_distance(double a, double b) {
    double d = std::fmod(std::fabs(a - b), 360.0);
    return d > 180 ? 360 - d : d;
}

}  // namespace folio
