#include "folio/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "folio/editcore.hpp"
#include "folio/errors.hpp"
#include "folio/layout.hpp"
#include "folio/render.hpp"
#include "folio/theme.hpp"

namespace folio::cli {
namespace {

std::string read_input(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

std::string basename_of(const std::string& path) {
    if (path == "-") return "stdin";
    const auto slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

struct CommonFlags {
    std::string theme_path;
    std::string language;
    std::string ratio = "iso216";
    std::string ligatures = "off";
    std::string comment_column = "on";
    int columns = 80;
    double line_spacing = 1.25;
    int margin = 4;
};

Theme load_theme(const std::string& path, std::ostream& err) {
    if (path.empty()) return {};
    const ThemeParse parsed = parse_theme(read_input(path, std::cin));
    for (const std::string& w : parsed.warnings)
        err << "warning: " << path << ": " << w << "\n";
    return parsed.theme;
}

Language pick_language(const std::string& flag, const std::string& path) {
    if (!flag.empty()) {
        if (const auto l = language_from_name(flag)) return *l;
        throw Error("unknown language '" + flag + "'");
    }
    return language_for_path(path);
}

LayoutConfig make_config(const CommonFlags& f, bool neutral) {
    LayoutConfig cfg;
    cfg.columns = f.columns;
    cfg.ratio = f.ratio == "none" ? PageRatio::None : PageRatio::Iso216;
    cfg.margin_chars = f.margin;
    cfg.line_spacing = f.line_spacing;
    cfg.comment_column = f.comment_column == "on";
    if (neutral) {
        cfg.ratio = PageRatio::None;
        cfg.margin_chars = 0;
        cfg.comment_column = false;
        cfg.rows_override = 1000000;
    }
    return cfg;
}

int do_render(const std::vector<std::string>& files, const CommonFlags& flags,
              const std::string& format, const std::string& annotations_path,
              const std::string& branch, const std::string& commit,
              bool neutral, bool lint, std::istream& in, std::ostream& out,
              std::ostream& err) {
    const Theme theme = load_theme(flags.theme_path, err);
    const Palette palette = derive_faces(theme.fg, theme.bg, theme.options);
    const LayoutConfig cfg = make_config(flags, neutral);

    Annotations ann;
    if (!annotations_path.empty()) {
        if (files.size() != 1)
            throw Error("--annotations needs exactly one input file");
        ann = parse_annotations(read_input(annotations_path, in));
    }

    RenderOptions opt;
    opt.ligatures = !neutral && flags.ligatures == "on";
    opt.neutral = neutral;
    opt.chrome = !neutral;
    opt.parallel = true;

    std::vector<Document> docs;
    docs.reserve(files.size());
    for (const std::string& path : files) {
        Document doc = analyze(read_input(path, in),
                               pick_language(flags.language, path),
                               basename_of(path));
        doc.annotations = ann;
        docs.push_back(std::move(doc));
    }

    std::vector<Book> books(docs.size());
    std::vector<std::string> outputs(docs.size());
    std::string failure;
    const long n = static_cast<long>(docs.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        try {
            books[i] = build_book(
                docs[i], cfg,
                branch.empty() ? std::nullopt : std::make_optional(branch),
                commit.empty() ? std::nullopt : std::make_optional(commit));
            outputs[i] = format == "html"
                             ? render_html(books[i], palette, opt)
                             : render_ansi(books[i], palette, opt);
        } catch (const std::exception& e) {
#pragma omp critical
            if (failure.empty()) failure = e.what();
        }
    }
    if (!failure.empty()) throw Error(failure);

    bool warned = false;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (i) out << '\f';
        out << outputs[i];
        if (lint) {
            for (const std::string& w :
                 usage_report(books[i], palette).warnings) {
                err << "lint: " << docs[i].title << ": " << w << "\n";
                warned = true;
            }
        }
    }
    return lint && warned ? 3 : 0;
}

int do_faces(const CommonFlags& flags, const std::string& fg_hex,
             const std::string& bg_hex, bool check, std::ostream& out,
             std::ostream& err) {
    Theme theme = load_theme(flags.theme_path, err);
    if (!fg_hex.empty()) theme.fg = parse_hex(fg_hex);
    if (!bg_hex.empty()) theme.bg = parse_hex(bg_hex);
    Palette palette;
    try {
        palette = derive_faces(theme.fg, theme.bg, theme.options);
        validate_faces(palette, theme.options);
    } catch (const FaceError& e) {
        err << "face check failed: " << e.what() << " (measured "
            << e.measured << ")\n";
        return check ? 3 : 2;
    }
    out << "face      fg       bg       weight\n";
    for (Face f : kAllFaces) {
        const FaceStyle& fs = palette.style(f);
        std::ostringstream line;
        line << to_string(f);
        for (std::size_t pad = line.str().size(); pad < 10; ++pad) line << ' ';
        line << to_hex(fs.fg) << "  " << (fs.bg ? to_hex(*fs.bg) : "-");
        for (std::size_t pad = fs.bg ? 7 : 1; pad < 9; ++pad) line << ' ';
        line << kWeightLadder[static_cast<std::size_t>(fs.weight)].name;
        out << line.str() << "\n";
    }
    out << "contrast " << contrast(palette.fg, palette.bg) << "\n";
    return 0;
}

int do_edit(const std::string& file, const std::string& script, int cursor,
            std::istream& in, std::ostream& out, std::ostream& err) {
    Buffer buf(read_input(file, in),
               cursor < 0 ? 0 : static_cast<std::size_t>(cursor));
    for (const ApplyResult& r : buf.run_script(script))
        if (r.warned) err << "warning: " << r.message << "\n";
    out << buf.text();
    return 0;
}

int do_toc(const std::string& file, const CommonFlags& flags, std::istream& in,
           std::ostream& out, std::ostream& err) {
    load_theme(flags.theme_path, err);  // surfaces theme errors early
    const Document doc = analyze(read_input(file, in),
                                 pick_language(flags.language, file),
                                 basename_of(file));
    const Book book = build_book(doc, make_config(flags, false));
    for (const auto& [item, page] : book.toc) {
        out << std::string(static_cast<std::size_t>(2 * item.depth), ' ')
            << item.name << "  (line " << item.line << ", p. " << page
            << ")\n";
    }
    return 0;
}

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--theme", f.theme_path, "theme file");
    cmd->add_option("--language", f.language, "input language")
        ->check(CLI::IsMember({"python-like", "c-like", "plain"}));
    cmd->add_option("--columns", f.columns, "text columns per page");
    cmd->add_option("--line-spacing", f.line_spacing, "row height factor");
    cmd->add_option("--margin", f.margin, "margin width in characters");
    cmd->add_option("--ratio", f.ratio, "page aspect")
        ->check(CLI::IsMember({"iso216", "none"}));
    cmd->add_option("--ligatures", f.ligatures, "operator ligatures")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--comment-column", f.comment_column,
                    "move comments to the margin")
        ->check(CLI::IsMember({"on", "off"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
    CLI::App app{"folio: typesets source code into book pages"};
    app.require_subcommand(1);

    CommonFlags render_flags, faces_flags, toc_flags;

    auto* render = app.add_subcommand("render", "typeset files");
    std::vector<std::string> render_files;
    std::string format = "ansi", annotations_path, branch, commit;
    bool neutral = false, lint = false;
    render->add_option("files", render_files, "input files, - for stdin")
        ->required();
    render->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"ansi", "html"}));
    render->add_option("--annotations", annotations_path,
                       "age/author annotations file");
    render->add_option("--branch", branch, "branch label for the preface");
    render->add_option("--commit", commit, "commit label for the preface");
    render->add_flag("--neutral", neutral,
                     "bare output that strips back to the input bytes");
    render->add_flag("--lint", lint, "report face overuse to stderr");
    add_common(render, render_flags);

    auto* faces = app.add_subcommand("faces", "derive the face palette");
    std::string fg_hex, bg_hex;
    bool check = false;
    faces->add_option("--fg", fg_hex, "base foreground, #RRGGBB");
    faces->add_option("--bg", bg_hex, "base background, #RRGGBB");
    faces->add_flag("--check", check, "exit 3 when a face clause fails");
    faces->add_option("--theme", faces_flags.theme_path, "theme file");

    auto* edit = app.add_subcommand("edit", "run a keystroke script");
    std::string edit_file = "-", script;
    int cursor = 0;
    edit->add_option("file", edit_file, "input file, - for stdin");
    edit->add_option("--script", script, "keystroke script")->required();
    edit->add_option("--cursor", cursor, "starting cursor, code points");

    auto* toc = app.add_subcommand("toc", "print the structure outline");
    std::string toc_file;
    toc->add_option("file", toc_file, "input file, - for stdin")->required();
    add_common(toc, toc_flags);

    std::vector<const char*> argv;
    argv.push_back("folio");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*render)
            return do_render(render_files, render_flags, format,
                             annotations_path, branch, commit, neutral, lint,
                             in, out, err);
        if (*faces) return do_faces(faces_flags, fg_hex, bg_hex, check, out, err);
        if (*edit) return do_edit(edit_file, script, cursor, in, out, err);
        if (*toc) return do_toc(toc_file, toc_flags, in, out, err);
    } catch (const ScriptError& e) {
        err << "error: " << e.what() << " (position " << e.position << ")\n";
        return 2;
    } catch (const ParseFileError& e) {
        err << "error: " << e.what() << " (line " << e.line << ")\n";
        return 2;
    } catch (const DecodeError& e) {
        err << "error: " << e.what() << " (byte " << e.offset << ")\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace folio::cli
