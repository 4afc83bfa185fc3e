#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "folio/faces.hpp"

namespace folio {

struct Theme {
    Color fg{0x38, 0x3A, 0x42};
    Color bg{0xFA, 0xFA, 0xFA};
    FaceOptions options;
};

struct ThemeParse {
    Theme theme;
    std::vector<std::string> warnings;
};

// Line-oriented `key = value` file. Lines whose first non-blank character
// is '#' are comments. A theme must define both default.fg and default.bg.
ThemeParse parse_theme(std::string_view text);

struct Annotations {
    std::map<int, double> age;   // source line -> age in [0, 1]
    std::map<int, int> author;   // source line -> author id
    bool empty() const { return age.empty() && author.empty(); }
};

// Tab-separated `LINE<TAB>key=value` records, one per line.
Annotations parse_annotations(std::string_view text);

}  // namespace folio
