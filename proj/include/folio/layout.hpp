#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folio/faces.hpp"
#include "folio/theme.hpp"
#include "folio/tokens.hpp"

namespace folio {

enum class PageRatio { Iso216, None };

struct LayoutConfig {
    int columns = 80;
    PageRatio ratio = PageRatio::Iso216;
    int margin_chars = 4;
    double line_spacing = 1.25;
    bool comment_column = true;
    double comment_fraction = 0.35;
    int cell_width_px = 8;
    int cell_height_px = 16;
    int rows_override = 24;  // page rows when ratio is None
};

struct PageGeometry {
    int width_px = 0;
    int height_px = 0;
    int row_height_px = 0;
    int text_rows = 0;
    int comment_columns = 0;
    int gutter_columns = 0;
    int code_columns = 0;
};

PageGeometry compute_geometry(const LayoutConfig& cfg);

struct StyledSpan {
    std::string text;
    Face face = Face::Default;
    std::optional<Color> fg_override;
    ByteSpan source{0, 0};
    TokenCategory category = TokenCategory::Text;
};

// One visual row. Code text concatenated across a line's rows, plus the
// comment text attributed to that line, reproduces the source exactly.
struct Row {
    std::vector<StyledSpan> comment_cell;
    std::vector<StyledSpan> code_cell;
    std::optional<int> source_line;  // absent on wrap continuations
    bool continuation = false;
    std::optional<int> comment_source_line;
    bool comment_continuation = false;
    bool comment_trailing = false;
    bool def_start = false;
    int segment = 0;       // wrap segment of the code cell
    int style_line = 0;    // line whose annotations color the code cell
};

struct Page {
    int number = 0;
    std::vector<Row> rows;
};

struct HeaderBlock {
    std::string title;
    std::optional<std::string> branch;
    std::optional<std::string> commit;
    int line_count = 0;
    int definition_count = 0;
};

struct Document {
    std::string source;
    Language language = Language::Plain;
    std::string title;
    std::vector<Token> tokens;
    std::vector<CommentBlock> blocks;
    std::vector<StructureItem> structure;
    Annotations annotations;
};

Document analyze(std::string source, Language language, std::string title);

struct Book {
    HeaderBlock preface;
    std::vector<std::pair<StructureItem, int>> toc;  // item, content page
    std::vector<Page> pages;
    std::vector<std::pair<std::string, std::vector<int>>> index;
    Annotations annotations;
    PageGeometry geom;
    LayoutConfig cfg;
    std::string title;
    bool source_ends_with_newline = true;
};

std::vector<Row> layout_rows(const Document& doc, const LayoutConfig& cfg,
                             const PageGeometry& geom);
std::vector<Page> paginate(std::vector<Row> rows, int rows_per_page);
Book build_book(const Document& doc, const LayoutConfig& cfg,
                std::optional<std::string> branch = std::nullopt,
                std::optional<std::string> commit = std::nullopt);

// Hard wrap at `width` code points; pieces concatenate back exactly.
std::vector<std::string> wrap_long_line(std::string_view line, int width);

}  // namespace folio
