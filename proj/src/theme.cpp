#include "folio/theme.hpp"

#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "folio/errors.hpp"

namespace folio {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                          s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view value, int line) {
    const std::string v(value);
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ParseFileError("expected a number, got '" + v + "'", line);
    return d;
}

double normalize_hue(double h) {
    h = std::fmod(h, 360.0);
    return h < 0 ? h + 360 : h;
}

int weight_index(std::string_view name, int line) {
    for (std::size_t k = 0; k < kWeightLadder.size(); ++k)
        if (kWeightLadder[k].name == name) return static_cast<int>(k);
    throw ParseFileError("unknown weight '" + std::string(name) + "'", line);
}

// Lines of `text`, 1-based, without their newline.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    int line = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
        fn(text.substr(pos, end - pos), line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
        ++line;
    }
}

}  // namespace

ThemeParse parse_theme(std::string_view text) {
    ThemeParse result;
    Theme& t = result.theme;
    std::set<std::string, std::less<>> seen;
    bool have_fg = false, have_bg = false;

    for_each_line(text, [&](std::string_view raw, int line) {
        const std::string_view body = trim(raw);
        if (body.empty() || body.front() == '#') return;
        const std::size_t eq = body.find('=');
        if (eq == std::string_view::npos)
            throw ParseFileError("expected 'key = value'", line);
        const std::string key(trim(body.substr(0, eq)));
        const std::string_view value = trim(body.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseFileError("expected 'key = value'", line);
        if (!seen.insert(key).second) {
            std::ostringstream os;
            os << "line " << line << ": duplicate key '" << key
               << "' overrides the earlier value";
            result.warnings.push_back(os.str());
        }

        auto hue = [&] { return normalize_hue(parse_number(value, line)); };
        FaceThresholds& th = t.options.thresholds;
        if (key == "default.fg") {
            try {
                t.fg = parse_hex(value);
            } catch (const ConfigError& e) {
                throw ParseFileError(e.what(), line);
            }
            have_fg = true;
        } else if (key == "default.bg") {
            try {
                t.bg = parse_hex(value);
            } catch (const ConfigError& e) {
                throw ParseFileError(e.what(), line);
            }
            have_bg = true;
        } else if (key == "default.weight") {
            t.options.default_weight = weight_index(value, line);
        } else if (key == "strong.weight") {
            t.options.strong_weight = weight_index(value, line);
        } else if (key == "salient.hue") {
            t.options.salient_hue = hue();
        } else if (key == "popout.hue") {
            t.options.popout_hue = hue();
        } else if (key == "critical.hue") {
            t.options.critical_hue = hue();
        } else if (key == "thresholds.min_contrast") {
            th.min_contrast = parse_number(value, line);
        } else if (key == "thresholds.chroma_floor") {
            th.chroma_floor = parse_number(value, line);
        } else if (key == "thresholds.salient_dL") {
            th.salient_dL = parse_number(value, line);
        } else if (key == "thresholds.salient_hue_dist") {
            th.salient_hue_dist = parse_number(value, line);
        } else if (key == "thresholds.salient_chroma") {
            th.salient_chroma = parse_number(value, line);
        } else if (key == "thresholds.faded_hue_dist") {
            th.faded_hue_dist = parse_number(value, line);
        } else if (key == "thresholds.faded_factor") {
            th.faded_factor = parse_number(value, line);
        } else if (key == "thresholds.faded_dL_tol") {
            th.faded_dL_tol = parse_number(value, line);
        } else if (key == "thresholds.subtle_dL_min") {
            th.subtle_dL_min = parse_number(value, line);
        } else if (key == "thresholds.subtle_dL_max") {
            th.subtle_dL_max = parse_number(value, line);
        } else if (key == "thresholds.subtle_hue_dist") {
            th.subtle_hue_dist = parse_number(value, line);
        } else if (key == "thresholds.popout_hue_dist") {
            th.popout_hue_dist = parse_number(value, line);
        } else if (key == "thresholds.popout_chroma") {
            th.popout_chroma = parse_number(value, line);
        } else if (key == "thresholds.critical_hue_min") {
            th.critical_hue_min = parse_number(value, line);
        } else if (key == "thresholds.critical_hue_max") {
            th.critical_hue_max = parse_number(value, line);
        } else if (key == "thresholds.critical_contrast") {
            th.critical_contrast = parse_number(value, line);
        } else {
            throw ParseFileError("unknown key '" + key + "'", line);
        }
    });

    if (!have_fg || !have_bg)
        throw ConfigError("theme must define default.fg and default.bg");
    return result;
}

Annotations parse_annotations(std::string_view text) {
    Annotations out;
    for_each_line(text, [&](std::string_view raw, int line) {
        if (trim(raw).empty()) return;
        const std::size_t tab = raw.find('\t');
        if (tab == std::string_view::npos)
            throw ParseFileError("expected LINE<TAB>key=value", line);
        const std::string num(trim(raw.substr(0, tab)));
        char* end = nullptr;
        const long target = std::strtol(num.c_str(), &end, 10);
        if (end == num.c_str() || *end != '\0' || target < 1)
            throw ParseFileError("bad line number '" + num + "'", line);
        const std::string_view rest = trim(raw.substr(tab + 1));
        const std::size_t eq = rest.find('=');
        if (eq == std::string_view::npos)
            throw ParseFileError("expected key=value after the line number",
                                 line);
        const std::string_view key = trim(rest.substr(0, eq));
        const std::string_view value = trim(rest.substr(eq + 1));
        if (key == "age") {
            const double age = parse_number(value, line);
            if (!(age >= 0.0 && age <= 1.0))
                throw ParseFileError("age must lie in [0, 1]", line);
            out.age[static_cast<int>(target)] = age;
        } else if (key == "author") {
            const double id = parse_number(value, line);
            if (id < 0 || id != static_cast<int>(id) || id > 3599)
                throw ParseFileError("author must be a small non-negative id",
                                     line);
            out.author[static_cast<int>(target)] = static_cast<int>(id);
        } else {
            throw ParseFileError(
                "unknown annotation '" + std::string(key) + "'", line);
        }
    });
    return out;
}

}  // namespace folio
