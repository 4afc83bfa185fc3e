#include "folio/render.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "folio/errors.hpp"
#include "folio/unicode.hpp"

namespace folio {
namespace {

void sgr_color(std::string& out, bool bg, Color c) {
    out += "\x1b[";
    out += bg ? "48" : "38";
    out += ";2;";
    out += std::to_string(c.r);
    out += ';';
    out += std::to_string(c.g);
    out += ';';
    out += std::to_string(c.b);
    out += 'm';
}

struct SgrState {
    std::optional<Color> fg, bg;
    int boldness = 0;  // 1 bold, -1 faint
};

struct SpanStyle {
    Color fg;
    std::optional<Color> bg;
    int boldness = 0;
};

// The SGR set has no standalone "bold off" or "background off", so
// clearing either goes through a full reset first.
void apply_style(std::string& out, SgrState& st, const SpanStyle& ss) {
    const bool clear_bold = st.boldness != 0 && ss.boldness != st.boldness;
    const bool clear_bg = st.bg.has_value() && !ss.bg.has_value();
    if (clear_bold || clear_bg) {
        out += "\x1b[0m";
        st = {};
    }
    if (!st.fg || !(*st.fg == ss.fg)) {
        sgr_color(out, false, ss.fg);
        st.fg = ss.fg;
    }
    if (ss.bg && (!st.bg || !(*st.bg == *ss.bg))) {
        sgr_color(out, true, *ss.bg);
        st.bg = ss.bg;
    }
    if (ss.boldness != st.boldness && ss.boldness != 0) {
        out += ss.boldness == 1 ? "\x1b[1m" : "\x1b[2m";
        st.boldness = ss.boldness;
    }
}

struct StyleContext {
    const Book& book;
    const Palette& pal;
    const RenderOptions& opt;
    std::map<int, Color> author_colors;
};

std::map<int, Color> build_author_colors(const Book& book) {
    std::map<int, Color> out;
    if (book.annotations.author.empty()) return out;
    int top = 0;
    for (const auto& [line, id] : book.annotations.author)
        top = std::max(top, id);
    const auto colors = distinct_hues(top + 1);
    for (const auto& [line, id] : book.annotations.author)
        out[id] = colors[static_cast<std::size_t>(id)];
    return out;
}

SpanStyle span_style(const StyleContext& cx, const StyledSpan& span,
                     int line) {
    const FaceStyle& fs = cx.pal.style(span.face);
    SpanStyle ss;
    ss.fg = span.fg_override.value_or(fs.fg);
    ss.bg = fs.bg;
    const int dw = cx.pal.style(Face::Default).weight;
    ss.boldness = fs.weight > dw ? 1 : fs.weight < dw ? -1 : 0;
    if (!span.fg_override && span.face == Face::Default) {
        if (const auto a = cx.book.annotations.author.find(line);
            a != cx.book.annotations.author.end()) {
            if (const auto c = cx.author_colors.find(a->second);
                c != cx.author_colors.end())
                ss.fg = c->second;
        }
    }
    if (const auto g = cx.book.annotations.age.find(line);
        g != cx.book.annotations.age.end())
        ss.fg = age_tint(ss.fg, cx.pal.bg, g->second);
    return ss;
}

std::string display_text(const StyledSpan& span, const RenderOptions& opt) {
    if (opt.ligatures && span.category == TokenCategory::Operator)
        return ligate(span.text, opt.table);
    return span.text;
}

void render_row(std::string& out, const StyleContext& cx, const Row& row) {
    const LayoutConfig& cfg = cx.book.cfg;
    const PageGeometry& g = cx.book.geom;
    SgrState st;
    out.append(static_cast<std::size_t>(cfg.margin_chars), ' ');
    if (cfg.comment_column) {
        std::size_t used = 0;
        const int cline = row.comment_source_line.value_or(row.style_line);
        for (const StyledSpan& sp : row.comment_cell) {
            if (sp.text.empty()) continue;
            apply_style(out, st, span_style(cx, sp, cline));
            const std::string d = display_text(sp, cx.opt);
            out += d;
            used += utf8_length(d);
        }
        if (st.bg || st.boldness != 0) {
            out += "\x1b[0m";
            st = {};
        }
        if (used < static_cast<std::size_t>(g.comment_columns))
            out.append(static_cast<std::size_t>(g.comment_columns) - used,
                       ' ');
        out.append(static_cast<std::size_t>(g.gutter_columns), ' ');
    }
    for (const StyledSpan& sp : row.code_cell) {
        if (sp.text.empty()) continue;
        apply_style(out, st, span_style(cx, sp, row.style_line));
        out += display_text(sp, cx.opt);
    }
    out += "\x1b[0m\n";
}

std::string render_content_page(const StyleContext& cx, const Page& pg) {
    std::string out;
    for (const Row& r : pg.rows) render_row(out, cx, r);
    return out;
}

void chrome_line(std::string& out, const StyleContext& cx,
                 std::string_view text, Face face) {
    SgrState st;
    out.append(static_cast<std::size_t>(cx.book.cfg.margin_chars), ' ');
    if (!text.empty()) {
        StyledSpan sp;
        sp.text = std::string(text);
        sp.face = face;
        apply_style(out, st, span_style(cx, sp, 0));
        out += sp.text;
    }
    out += "\x1b[0m\n";
}

std::string footer_line(const Book& book, int number) {
    const std::string label = "— p. " + std::to_string(number) + " —";
    const int width = book.cfg.columns + 2 * book.cfg.margin_chars;
    const int cps = static_cast<int>(utf8_length(label));
    const int pad = width > cps ? (width - cps) / 2 : 0;
    return std::string(static_cast<std::size_t>(pad), ' ') + label + "\n";
}

std::string dotted(std::string_view name, std::string_view right, int width,
                   int indent) {
    std::string line(static_cast<std::size_t>(indent), ' ');
    line += name;
    const int used = static_cast<int>(utf8_length(line)) +
                     static_cast<int>(utf8_length(right)) + 2;
    const int dots = std::max(1, width - used);
    line += ' ';
    line.append(static_cast<std::size_t>(dots), '.');
    line += ' ';
    line += right;
    return line;
}

std::string render_preface(const StyleContext& cx) {
    const HeaderBlock& h = cx.book.preface;
    std::string out;
    chrome_line(out, cx, "", Face::Default);
    chrome_line(out, cx, h.title, Face::Strong);
    chrome_line(out, cx, "", Face::Default);
    if (h.branch) chrome_line(out, cx, "branch " + *h.branch, Face::Faded);
    if (h.commit) chrome_line(out, cx, "commit " + *h.commit, Face::Faded);
    if (h.branch || h.commit) chrome_line(out, cx, "", Face::Default);
    std::ostringstream stats;
    stats << h.line_count << (h.line_count == 1 ? " line, " : " lines, ")
          << h.definition_count
          << (h.definition_count == 1 ? " definition" : " definitions");
    chrome_line(out, cx, stats.str(), Face::Faded);
    return out;
}

std::string render_toc(const StyleContext& cx) {
    std::string out;
    chrome_line(out, cx, "Contents", Face::Strong);
    chrome_line(out, cx, "", Face::Default);
    for (const auto& [item, page] : cx.book.toc) {
        const Face face = item.kind == StructureKind::SectionComment
                              ? Face::Faded
                              : Face::Default;
        chrome_line(out, cx,
                    dotted(item.name, std::to_string(page),
                           cx.book.cfg.columns, 2 * item.depth),
                    face);
    }
    return out;
}

std::string render_index(const StyleContext& cx) {
    std::string out;
    chrome_line(out, cx, "Index", Face::Strong);
    chrome_line(out, cx, "", Face::Default);
    for (const auto& [name, pages] : cx.book.index) {
        std::string right;
        for (std::size_t k = 0; k < pages.size(); ++k) {
            if (k) right += ", ";
            right += std::to_string(pages[k]);
        }
        chrome_line(out, cx, dotted(name, right, cx.book.cfg.columns, 0),
                    Face::Default);
    }
    return out;
}

std::string render_neutral(const StyleContext& cx) {
    if (cx.book.cfg.comment_column)
        throw ConfigError("neutral output needs the comment column off");
    std::vector<const Row*> rows;
    for (const Page& pg : cx.book.pages)
        for (const Row& r : pg.rows) rows.push_back(&r);
    std::string out;
    SgrState st;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const StyledSpan& sp : rows[i]->code_cell) {
            if (sp.text.empty()) continue;
            apply_style(out, st, span_style(cx, sp, rows[i]->style_line));
            out += display_text(sp, cx.opt);
        }
        const bool last = i + 1 == rows.size();
        if (!last && rows[i + 1]->continuation) continue;
        out += "\x1b[0m";
        st = {};
        if (!last || cx.book.source_ends_with_newline) out += '\n';
    }
    return out;
}

bool is_footer_line(std::string_view line) {
    const std::size_t b = line.find_first_not_of(' ');
    if (b == std::string_view::npos) return false;
    const std::size_t e = line.find_last_not_of(' ');
    std::string_view t = line.substr(b, e - b + 1);
    constexpr std::string_view head = "— p. ";
    constexpr std::string_view tail = " —";
    if (t.size() <= head.size() + tail.size()) return false;
    if (t.substr(0, head.size()) != head) return false;
    if (t.substr(t.size() - tail.size()) != tail) return false;
    t = t.substr(head.size(), t.size() - head.size() - tail.size());
    if (t.empty()) return false;
    return std::all_of(t.begin(), t.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
    });
}

}  // namespace

LigatureTable default_ligatures() {
    return {{{">=", "≥"},
             {"<=", "≤"},
             {"!=", "≠"},
             {"->", "→"},
             {"=>", "⇒"}}};
}

std::string ligate(std::string_view text, const LigatureTable& table) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        const std::pair<std::string, std::string>* best = nullptr;
        for (const auto& e : table.entries) {
            if (e.first.empty() || e.first.size() > text.size() - i) continue;
            if (text.compare(i, e.first.size(), e.first) != 0) continue;
            if (!best || e.first.size() > best->first.size()) best = &e;
        }
        if (best) {
            out += best->second;
            i += best->first.size();
        } else {
            out += text[i++];
        }
    }
    return out;
}

std::vector<std::string> render_pages_serial(const Book& book,
                                             const Palette& palette,
                                             const RenderOptions& opt) {
    StyleContext cx{book, palette, opt, build_author_colors(book)};
    std::vector<std::string> out(book.pages.size());
    for (std::size_t k = 0; k < book.pages.size(); ++k)
        out[k] = render_content_page(cx, book.pages[k]);
    return out;
}

std::vector<std::string> render_pages_parallel(const Book& book,
                                               const Palette& palette,
                                               const RenderOptions& opt) {
    StyleContext cx{book, palette, opt, build_author_colors(book)};
    std::vector<std::string> out(book.pages.size());
    const long n = static_cast<long>(book.pages.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n; ++k)
        out[static_cast<std::size_t>(k)] =
            render_content_page(cx, book.pages[static_cast<std::size_t>(k)]);
    return out;
}

std::string render_ansi(const Book& book, const Palette& palette,
                        const RenderOptions& opt) {
    StyleContext cx{book, palette, opt, build_author_colors(book)};
    if (opt.neutral) return render_neutral(cx);

    const auto pages = opt.parallel
                           ? render_pages_parallel(book, palette, opt)
                           : render_pages_serial(book, palette, opt);
    std::string out;
    bool first = true;
    const auto sep = [&] {
        if (!first) out += '\f';
        first = false;
    };
    if (opt.chrome) {
        sep();
        out += render_preface(cx);
        if (!book.toc.empty()) {
            sep();
            out += render_toc(cx);
        }
    }
    for (std::size_t k = 0; k < pages.size(); ++k) {
        sep();
        out += pages[k];
        if (opt.chrome) out += footer_line(book, book.pages[k].number);
    }
    if (opt.chrome && !book.index.empty()) {
        sep();
        out += render_index(cx);
    }
    return out;
}

std::string strip_sgr(std::string_view text) {
    std::string flat;
    flat.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\x1b') {
            if (i + 1 >= text.size() || text[i + 1] != '[')
                throw StripError("escape without '['", i);
            std::size_t j = i + 2;
            while (j < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[j])) ||
                    text[j] == ';'))
                ++j;
            if (j >= text.size() || text[j] != 'm')
                throw StripError("unterminated SGR sequence",
                                 j < text.size() ? j : i);
            i = j + 1;
        } else if (c == '\f') {
            ++i;
        } else {
            flat += c;
            ++i;
        }
    }
    std::string out;
    out.reserve(flat.size());
    std::size_t pos = 0;
    while (pos <= flat.size()) {
        const std::size_t nl = flat.find('\n', pos);
        const std::size_t end = nl == std::string::npos ? flat.size() : nl;
        const std::string_view line(flat.data() + pos, end - pos);
        if (!is_footer_line(line)) {
            out.append(line);
            if (nl != std::string::npos) out += '\n';
        }
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    return out;
}

UsageReport usage_report(const Book& book, const Palette& palette) {
    UsageReport rep;
    std::set<std::string> fg_colors;
    StyleContext cx{book, palette, {}, build_author_colors(book)};
    const auto tally = [&](const StyledSpan& sp, int line) {
        std::size_t n = 0;
        for (char32_t c : utf8_decode(sp.text))
            if (c != U' ' && c != U'\t') ++n;
        if (n == 0) return;
        rep.counts[static_cast<std::size_t>(sp.face)] += n;
        // age tints are excluded from the distinct-color count
        fg_colors.insert(
            to_hex(sp.fg_override.value_or(palette.style(sp.face).fg)));
        if (!sp.fg_override && sp.face == Face::Default) {
            if (const auto a = book.annotations.author.find(line);
                a != book.annotations.author.end())
                if (const auto c = cx.author_colors.find(a->second);
                    c != cx.author_colors.end())
                    fg_colors.insert(to_hex(c->second));
        }
    };
    for (const Page& pg : book.pages) {
        for (const Row& r : pg.rows) {
            const int cline = r.comment_source_line.value_or(r.style_line);
            for (const StyledSpan& sp : r.comment_cell) tally(sp, cline);
            for (const StyledSpan& sp : r.code_cell) tally(sp, r.style_line);
        }
    }
    for (std::size_t k = 0; k < rep.counts.size(); ++k)
        rep.total += rep.counts[k];
    if (rep.total > 0) {
        for (std::size_t k = 0; k < rep.counts.size(); ++k)
            rep.percent[k] =
                100.0 * static_cast<double>(rep.counts[k]) /
                static_cast<double>(rep.total);
        const double loud =
            rep.percent[static_cast<std::size_t>(Face::Critical)] +
            rep.percent[static_cast<std::size_t>(Face::Popout)];
        if (loud > 5.0) {
            std::ostringstream os;
            os << "critical and popout cover "
               << static_cast<int>(loud * 10 + 0.5) / 10.0
               << "% of the text; keep them under 5%";
            rep.warnings.push_back(os.str());
        }
        if (fg_colors.size() > 7) {
            std::ostringstream os;
            os << fg_colors.size()
               << " distinct foreground colors; more than 7 dilutes the "
                  "scheme";
            rep.warnings.push_back(os.str());
        }
    }
    return rep;
}

std::string render_html(const Book& book, const Palette& palette,
                        const RenderOptions& opt) {
    StyleContext cx{book, palette, opt, build_author_colors(book)};
    const PageGeometry& g = book.geom;
    const LayoutConfig& cfg = book.cfg;
    const int margin_px = cfg.margin_chars * cfg.cell_width_px;

    const auto esc = [](std::string_view s) {
        std::string out;
        out.reserve(s.size());
        for (char c : s) {
            switch (c) {
                case '&': out += "&amp;"; break;
                case '<': out += "&lt;"; break;
                case '>': out += "&gt;"; break;
                case '"': out += "&quot;"; break;
                default: out += c;
            }
        }
        return out;
    };

    std::ostringstream os;
    os << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
       << "<title>" << esc(book.title) << "</title>\n<style>\n"
       << "body { margin: 0; padding: 24px 0; background: "
       << to_hex(palette.bg) << "; color: " << to_hex(palette.fg)
       << "; font-family: ui-monospace, Menlo, Consolas, monospace; }\n"
       << ".page { width: " << g.width_px << "px; min-height: "
       << g.height_px << "px; padding: " << margin_px << "px; box-sizing: "
       << "border-box; margin: 0 auto 24px auto; }\n"
       << ".row { white-space: pre; line-height: " << g.row_height_px
       << "px; }\n"
       << ".margin { font-stretch: condensed; }\n"
       << ".code { }\n"
       << ".title { font-size: 150%; }\n"
       << ".footer { text-align: center; }\n"
       << "a { color: inherit; }\n";
    for (Face f : kAllFaces) {
        const FaceStyle& fs = palette.style(f);
        os << ".face-" << to_string(f) << " { color: " << to_hex(fs.fg)
           << "; font-weight: "
           << kWeightLadder[static_cast<std::size_t>(fs.weight)].value << ";";
        if (fs.bg) os << " background: " << to_hex(*fs.bg) << ";";
        os << " }\n";
    }
    os << "</style>\n</head>\n<body>\n";

    const auto span_html = [&](const StyledSpan& sp, int line) {
        const SpanStyle ss = span_style(cx, sp, line);
        os << "<span class=\"face-" << to_string(sp.face) << "\"";
        if (!(ss.fg == palette.style(sp.face).fg))
            os << " style=\"color: " << to_hex(ss.fg) << ";\"";
        os << ">" << esc(display_text(sp, opt)) << "</span>";
    };

    const auto row_html = [&](const Row& r) {
        os << "<div class=\"row\"><span class=\"margin\">";
        if (cfg.comment_column) {
            std::size_t used = 0;
            const int cline = r.comment_source_line.value_or(r.style_line);
            for (const StyledSpan& sp : r.comment_cell) {
                if (sp.text.empty()) continue;
                span_html(sp, cline);
                used += utf8_length(display_text(sp, opt));
            }
            std::string pad;
            if (used < static_cast<std::size_t>(g.comment_columns))
                pad.assign(static_cast<std::size_t>(g.comment_columns) - used,
                           ' ');
            pad.append(static_cast<std::size_t>(g.gutter_columns), ' ');
            os << pad;
        }
        os << "</span><span class=\"code\">";
        for (const StyledSpan& sp : r.code_cell) {
            if (sp.text.empty()) continue;
            span_html(sp, r.style_line);
        }
        os << "</span></div>\n";
    };

    const bool chrome = opt.chrome && !opt.neutral;
    if (chrome) {
        os << "<div class=\"page\">\n<div class=\"title face-strong\">"
           << esc(book.preface.title) << "</div>\n";
        if (book.preface.branch)
            os << "<div class=\"row\"><span class=\"margin\"></span>"
               << "<span class=\"code\"><span class=\"face-faded\">branch "
               << esc(*book.preface.branch) << "</span></span></div>\n";
        if (book.preface.commit)
            os << "<div class=\"row\"><span class=\"margin\"></span>"
               << "<span class=\"code\"><span class=\"face-faded\">commit "
               << esc(*book.preface.commit) << "</span></span></div>\n";
        os << "<div class=\"row\"><span class=\"margin\"></span>"
           << "<span class=\"code\"><span class=\"face-faded\">"
           << book.preface.line_count << " lines, "
           << book.preface.definition_count
           << " definitions</span></span></div>\n";
        if (!book.toc.empty()) {
            os << "<div class=\"title face-strong\">Contents</div>\n";
            for (const auto& [item, page] : book.toc) {
                os << "<div class=\"row\"><span class=\"margin\"></span>"
                   << "<span class=\"code\">"
                   << std::string(static_cast<std::size_t>(2 * item.depth),
                                  ' ')
                   << "<a href=\"#page-" << page << "\">" << esc(item.name)
                   << "</a> &middot; " << page << "</span></div>\n";
            }
        }
        os << "</div>\n";
    }
    for (const Page& pg : book.pages) {
        os << "<div class=\"page\" id=\"page-" << pg.number << "\">\n";
        for (const Row& r : pg.rows) row_html(r);
        if (chrome)
            os << "<div class=\"footer face-faded\">— p. " << pg.number
               << " —</div>\n";
        os << "</div>\n";
    }
    if (chrome && !book.index.empty()) {
        os << "<div class=\"page\">\n<div class=\"title face-strong\">Index"
           << "</div>\n";
        for (const auto& [name, pages] : book.index) {
            os << "<div class=\"row\"><span class=\"margin\"></span>"
               << "<span class=\"code\">" << esc(name) << " &middot; ";
            for (std::size_t k = 0; k < pages.size(); ++k) {
                if (k) os << ", ";
                os << "<a href=\"#page-" << pages[k] << "\">" << pages[k]
                   << "</a>";
            }
            os << "</span></div>\n";
        }
        os << "</div>\n";
    }
    os << "</body>\n</html>\n";
    return os.str();
}

}  // namespace folio
