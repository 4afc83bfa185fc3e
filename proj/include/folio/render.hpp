#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "folio/faces.hpp"
#include "folio/layout.hpp"

namespace folio {

struct LigatureTable {
    // sequence -> display, tried longest first at every position
    std::vector<std::pair<std::string, std::string>> entries;
};

LigatureTable default_ligatures();

// Pure text transform; the underlying spans are never modified.
std::string ligate(std::string_view text, const LigatureTable& table);

struct RenderOptions {
    bool ligatures = false;
    LigatureTable table = default_ligatures();
    bool chrome = true;    // preface, contents, index, footers
    bool neutral = false;  // bare styled source, byte-exact after strip_sgr
    bool parallel = false;
};

std::string render_ansi(const Book& book, const Palette& palette,
                        const RenderOptions& opt = {});
std::string render_html(const Book& book, const Palette& palette,
                        const RenderOptions& opt = {});

// Content pages only, one string per page; both produce identical bytes.
std::vector<std::string> render_pages_serial(const Book& book,
                                             const Palette& palette,
                                             const RenderOptions& opt = {});
std::vector<std::string> render_pages_parallel(const Book& book,
                                               const Palette& palette,
                                               const RenderOptions& opt = {});

// Drop SGR sequences, form feeds and page footers. Throws StripError on a
// malformed escape.
std::string strip_sgr(std::string_view text);

struct UsageReport {
    std::array<std::size_t, 7> counts{};  // non-blank code points per face
    std::array<double, 7> percent{};
    std::size_t total = 0;
    std::vector<std::string> warnings;
};

UsageReport usage_report(const Book& book, const Palette& palette);

}  // namespace folio
