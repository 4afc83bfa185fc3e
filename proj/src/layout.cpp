#include "folio/layout.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "folio/errors.hpp"
#include "folio/unicode.hpp"

namespace folio {
namespace {

struct LineRange {
    std::size_t begin, end;  // bytes, newline excluded
};

std::vector<LineRange> split_lines(std::string_view src) {
    std::vector<LineRange> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (src[i] == '\n') {
            out.push_back({start, i});
            start = i + 1;
        }
    }
    if (start < src.size()) out.push_back({start, src.size()});
    return out;
}

std::string_view slice(std::string_view src, std::size_t b, std::size_t e) {
    return src.substr(b, e - b);
}

// Comment text, with TODO/FIXME called out in the popout face.
void push_comment_spans(std::vector<StyledSpan>& out, std::string_view text,
                        std::size_t base, bool header) {
    const Face face = header ? Face::Strong : Face::Faded;
    const std::string_view markers[] = {"TODO", "FIXME"};
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t best = std::string_view::npos;
        std::size_t best_len = 0;
        for (std::string_view m : markers) {
            const std::size_t f = text.find(m, pos);
            if (f != std::string_view::npos && f < best) {
                best = f;
                best_len = m.size();
            }
        }
        if (best == std::string_view::npos) break;
        if (best > pos)
            out.push_back({std::string(text.substr(pos, best - pos)), face,
                           std::nullopt, {base + pos, base + best},
                           TokenCategory::Comment});
        out.push_back({std::string(text.substr(best, best_len)), Face::Popout,
                       std::nullopt, {base + best, base + best + best_len},
                       TokenCategory::Comment});
        pos = best + best_len;
    }
    if (pos < text.size())
        out.push_back({std::string(text.substr(pos)), face, std::nullopt,
                       {base + pos, base + text.size()},
                       TokenCategory::Comment});
}

// Wrap comment text to the margin width, preferring to break after a
// space. The pieces always concatenate back to the input.
std::vector<std::string> wrap_comment(std::string_view text, int width) {
    std::vector<std::string> chunks;
    const std::u32string cps = utf8_decode(text);
    const std::size_t w = static_cast<std::size_t>(std::max(1, width));
    std::size_t pos = 0;
    while (pos < cps.size()) {
        std::size_t take = std::min(w, cps.size() - pos);
        if (pos + take < cps.size()) {
            std::size_t brk = std::u32string::npos;
            for (std::size_t k = 0; k < take; ++k)
                if (cps[pos + k] == U' ') brk = k;
            if (brk != std::u32string::npos) take = brk + 1;
        }
        chunks.push_back(utf8_encode(cps.substr(pos, take)));
        pos += take;
    }
    if (chunks.empty()) chunks.push_back("");
    return chunks;
}

std::vector<std::vector<StyledSpan>> wrap_spans(std::vector<StyledSpan> spans,
                                                int width) {
    std::vector<std::vector<StyledSpan>> segs;
    segs.emplace_back();
    const std::size_t w = static_cast<std::size_t>(std::max(1, width));
    std::size_t used = 0;
    for (auto& sp : spans) {
        std::string_view rest = sp.text;
        std::size_t base = sp.source.begin;
        while (!rest.empty()) {
            if (used == w) {
                segs.emplace_back();
                used = 0;
            }
            const std::size_t room = w - used;
            const std::size_t cps = utf8_length(rest);
            if (cps <= room) {
                segs.back().push_back({std::string(rest), sp.face,
                                       sp.fg_override,
                                       {base, base + rest.size()},
                                       sp.category});
                used += cps;
                break;
            }
            const std::size_t bytes = utf8_byte_offset(rest, room);
            segs.back().push_back({std::string(rest.substr(0, bytes)), sp.face,
                                   sp.fg_override, {base, base + bytes},
                                   sp.category});
            rest.remove_prefix(bytes);
            base += bytes;
            used = w;
        }
    }
    return segs;
}

struct CommentChunk {
    std::vector<StyledSpan> spans;
    int source_line = 0;
    bool continuation = false;
    bool trailing = false;
    int anchor = 0;
};

void set_comment(Row& r, CommentChunk& c) {
    r.comment_cell = std::move(c.spans);
    r.comment_source_line = c.source_line;
    r.comment_continuation = c.continuation;
    r.comment_trailing = c.trailing;
}

std::vector<CommentChunk> comment_chunks(std::string_view text,
                                         std::size_t base, int sline,
                                         bool trailing, int anchor, int width,
                                         bool header) {
    std::vector<CommentChunk> out;
    std::size_t off = 0;
    for (std::string& part : wrap_comment(text, width)) {
        CommentChunk ch;
        push_comment_spans(ch.spans, part, base + off, header);
        ch.source_line = sline;
        ch.continuation = off > 0;
        ch.trailing = trailing;
        ch.anchor = anchor;
        off += part.size();
        out.push_back(std::move(ch));
    }
    return out;
}

}  // namespace

PageGeometry compute_geometry(const LayoutConfig& cfg) {
    if (cfg.columns < 40 || cfg.columns > 200)
        throw ConfigError("columns must lie in [40, 200]");
    if (cfg.line_spacing < 1.0 || cfg.line_spacing > 3.0)
        throw ConfigError("line spacing must lie in [1, 3]");
    if (cfg.comment_fraction < 0.2 || cfg.comment_fraction > 0.5)
        throw ConfigError("comment fraction must lie in [0.2, 0.5]");
    if (cfg.margin_chars < 0)
        throw ConfigError("margin must not be negative");
    if (cfg.cell_width_px < 1 || cfg.cell_height_px < 1)
        throw ConfigError("cell size must be positive");

    PageGeometry g;
    g.width_px = (cfg.columns + 2 * cfg.margin_chars) * cfg.cell_width_px;
    g.row_height_px = static_cast<int>(
        std::lround(cfg.cell_height_px * cfg.line_spacing));
    const int margin_px = cfg.margin_chars * cfg.cell_width_px;
    if (cfg.ratio == PageRatio::Iso216) {
        g.height_px =
            static_cast<int>(std::lround(g.width_px * std::sqrt(2.0)));
        g.text_rows = (g.height_px - 2 * margin_px) / g.row_height_px;
    } else {
        if (cfg.rows_override < 1)
            throw ConfigError("rows override must be positive");
        g.text_rows = cfg.rows_override;
        g.height_px = 2 * margin_px + g.text_rows * g.row_height_px;
    }
    if (g.text_rows < 4) throw ConfigError("page too small for any text");
    if (cfg.comment_column) {
        g.comment_columns = static_cast<int>(
            std::floor(cfg.columns * cfg.comment_fraction));
        g.gutter_columns = 2;
    }
    g.code_columns = cfg.columns - g.comment_columns - g.gutter_columns;
    if (g.code_columns < 8) throw ConfigError("code column too narrow");
    return g;
}

Document analyze(std::string source, Language language, std::string title) {
    Document d;
    d.source = std::move(source);
    d.language = language;
    d.title = std::move(title);
    d.tokens = tokenize(d.source, language);
    d.blocks = group_comments(d.source, d.tokens);
    d.structure = extract_structure(d.source, d.tokens, language);
    return d;
}

std::vector<Row> layout_rows(const Document& doc, const LayoutConfig& cfg,
                             const PageGeometry& geom) {
    const std::string& src = doc.source;
    const auto lines = split_lines(src);
    const int nlines = static_cast<int>(lines.size());

    std::vector<char> in_header(doc.tokens.size(), 0);
    std::map<int, std::size_t> trailing_idx;  // line -> margin-bound token
    std::set<int> margin_lines;
    std::map<int, int> anchor_of_line;

    for (const CommentBlock& b : doc.blocks) {
        if (b.kind == CommentBlockKind::Header) {
            for (std::size_t i : b.token_indices) in_header[i] = 1;
        } else if (b.kind == CommentBlockKind::Leading) {
            if (!cfg.comment_column) continue;
            const int anchor = b.anchor_line.value_or(nlines + 1);
            for (std::size_t i : b.token_indices) {
                const Token& t = doc.tokens[i];
                const auto text = token_text(src, t);
                const int extra = static_cast<int>(
                    std::count(text.begin(), text.end(), '\n'));
                for (int ln = t.line; ln <= t.line + extra; ++ln) {
                    margin_lines.insert(ln);
                    anchor_of_line[ln] = anchor;
                }
            }
        } else if (cfg.comment_column) {
            // a trailing comment moves out only when it closes the line
            const std::size_t ti = b.token_indices.front();
            const Token& t = doc.tokens[ti];
            if (token_text(src, t).find('\n') != std::string_view::npos)
                continue;
            const LineRange lr = lines[static_cast<std::size_t>(t.line - 1)];
            bool closes = true;
            for (std::size_t j = t.span.end; j < lr.end; ++j)
                if (src[j] != ' ' && src[j] != '\t' && src[j] != '\r')
                    closes = false;
            if (closes) trailing_idx[t.line] = ti;
        }
    }

    std::set<int> def_lines;
    for (const auto& item : doc.structure)
        if (item.kind != StructureKind::SectionComment)
            def_lines.insert(item.line);

    const int code_w = geom.code_columns;
    const int com_w = std::max(1, geom.comment_columns);

    std::deque<CommentChunk> pending;
    std::vector<Row> rows;

    const auto flush_pending = [&] {
        while (!pending.empty()) {
            Row r;
            set_comment(r, pending.front());
            pending.pop_front();
            r.style_line = r.comment_source_line.value_or(0);
            rows.push_back(std::move(r));
        }
    };

    std::size_t tk = 0;  // token cursor, advanced per line

    for (int L = 1; L <= nlines; ++L) {
        const LineRange lr = lines[static_cast<std::size_t>(L - 1)];
        if (margin_lines.count(L)) {
            for (auto& ch : comment_chunks(slice(src, lr.begin, lr.end),
                                           lr.begin, L, false,
                                           anchor_of_line[L], com_w, false))
                pending.push_back(std::move(ch));
            continue;
        }

        std::size_t code_end = lr.end;
        std::vector<CommentChunk> tchunks;
        if (const auto f = trailing_idx.find(L); f != trailing_idx.end()) {
            const Token& t = doc.tokens[f->second];
            code_end = t.span.begin;
            tchunks = comment_chunks(slice(src, t.span.begin, lr.end),
                                     t.span.begin, L, true, L, com_w, false);
        }
        if (!tchunks.empty()) flush_pending();

        std::vector<StyledSpan> spans;
        while (tk < doc.tokens.size() && doc.tokens[tk].span.end <= lr.begin)
            ++tk;
        for (std::size_t k = tk;
             k < doc.tokens.size() && doc.tokens[k].span.begin < code_end;
             ++k) {
            const Token& t = doc.tokens[k];
            const std::size_t s0 = std::max(t.span.begin, lr.begin);
            const std::size_t s1 = std::min(t.span.end, code_end);
            if (s1 <= s0) continue;
            if (t.category == TokenCategory::Comment) {
                push_comment_spans(spans, slice(src, s0, s1), s0,
                                   in_header[k]);
            } else {
                spans.push_back({std::string(slice(src, s0, s1)),
                                 face_for_token(t.category, in_header[k]),
                                 std::nullopt,
                                 {s0, s1},
                                 t.category});
            }
        }

        auto segments = wrap_spans(std::move(spans), code_w);
        std::size_t tci = 0;
        for (std::size_t k = 0; k < segments.size(); ++k) {
            Row r;
            r.code_cell = std::move(segments[k]);
            if (k == 0) {
                r.source_line = L;
                r.def_start = def_lines.count(L) > 0;
            }
            r.continuation = k > 0;
            r.segment = static_cast<int>(k);
            r.style_line = L;
            if (tci < tchunks.size())
                set_comment(r, tchunks[tci++]);
            else if (!pending.empty() && pending.front().anchor <= L) {
                set_comment(r, pending.front());
                pending.pop_front();
            }
            rows.push_back(std::move(r));
        }
        for (; tci < tchunks.size(); ++tci) {
            Row r;
            set_comment(r, tchunks[tci]);
            r.style_line = L;
            rows.push_back(std::move(r));
        }
    }
    flush_pending();
    return rows;
}

std::vector<Page> paginate(std::vector<Row> rows, int rows_per_page) {
    if (rows_per_page < 1)
        throw ConfigError("rows per page must be positive");
    std::vector<Page> pages;
    Page cur;
    cur.number = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        cur.rows.push_back(std::move(rows[i]));
        if (static_cast<int>(cur.rows.size()) < rows_per_page) continue;
        const bool more = i + 1 < rows.size();
        Row held;
        bool carry = false;
        // keep a definition's first row with its body
        if (more && cur.rows.back().def_start && cur.rows.size() > 1) {
            held = std::move(cur.rows.back());
            cur.rows.pop_back();
            carry = true;
        }
        pages.push_back(std::move(cur));
        cur = Page{static_cast<int>(pages.size()) + 1, {}};
        if (carry) cur.rows.push_back(std::move(held));
    }
    if (!cur.rows.empty()) pages.push_back(std::move(cur));
    return pages;
}

Book build_book(const Document& doc, const LayoutConfig& cfg,
                std::optional<std::string> branch,
                std::optional<std::string> commit) {
    Book b;
    b.cfg = cfg;
    b.geom = compute_geometry(cfg);
    b.title = doc.title;
    b.annotations = doc.annotations;
    b.source_ends_with_newline =
        !doc.source.empty() && doc.source.back() == '\n';
    b.pages = paginate(layout_rows(doc, cfg, b.geom), b.geom.text_rows);

    const auto lines = split_lines(doc.source);
    int defs = 0;
    for (const auto& item : doc.structure)
        if (item.kind != StructureKind::SectionComment) ++defs;
    b.preface = {doc.title, std::move(branch), std::move(commit),
                 static_cast<int>(lines.size()), defs};

    std::map<std::pair<int, int>, int> seg_page;
    std::map<int, int> code_page, comment_page;
    for (const Page& pg : b.pages) {
        for (const Row& r : pg.rows) {
            if (r.source_line && !code_page.count(*r.source_line))
                code_page[*r.source_line] = pg.number;
            if (r.comment_source_line &&
                !comment_page.count(*r.comment_source_line))
                comment_page[*r.comment_source_line] = pg.number;
            if (r.source_line || r.continuation)
                seg_page.try_emplace({r.style_line, r.segment}, pg.number);
        }
    }

    for (const auto& item : doc.structure) {
        int page = 0;
        if (item.kind == StructureKind::SectionComment) {
            if (const auto f = comment_page.find(item.line);
                f != comment_page.end())
                page = f->second;
        }
        if (page == 0) {
            if (const auto f = code_page.find(item.line); f != code_page.end())
                page = f->second;
        }
        if (page != 0) b.toc.emplace_back(item, page);
    }

    std::set<std::string, std::less<>> def_names;
    for (const auto& item : doc.structure)
        if (item.kind != StructureKind::SectionComment)
            def_names.insert(item.name);
    std::map<std::string, std::set<int>> occurrences;
    for (const Token& t : doc.tokens) {
        if (t.category != TokenCategory::Identifier &&
            t.category != TokenCategory::DefName)
            continue;
        const auto name = token_text(doc.source, t);
        if (!def_names.count(name)) continue;
        const LineRange lr = lines[static_cast<std::size_t>(t.line - 1)];
        const std::size_t cp_col =
            utf8_length(slice(doc.source, lr.begin, t.span.begin));
        const int segment =
            static_cast<int>(cp_col / static_cast<std::size_t>(
                                          std::max(1, b.geom.code_columns)));
        if (const auto f = seg_page.find({t.line, segment});
            f != seg_page.end()) {
            occurrences[std::string(name)].insert(f->second);
        } else if (const auto g = code_page.find(t.line);
                   g != code_page.end()) {
            occurrences[std::string(name)].insert(g->second);
        }
    }
    for (auto& [name, pages] : occurrences)
        b.index.emplace_back(name,
                             std::vector<int>(pages.begin(), pages.end()));
    return b;
}

std::vector<std::string> wrap_long_line(std::string_view line, int width) {
    if (width < 8) throw ConfigError("wrap width must be at least 8");
    return utf8_chunks(line, static_cast<std::size_t>(width));
}

}  // namespace folio
