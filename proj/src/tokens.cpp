#include "folio/tokens.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <unordered_set>

#include "folio/errors.hpp"
#include "folio/unicode.hpp"

namespace folio {
namespace {

// Python 3 reserved words.
const std::unordered_set<std::string_view> kPythonKeywords = {
    "False", "None", "True", "and", "as", "assert", "async", "await",
    "break", "class", "continue", "def", "del", "elif", "else", "except",
    "finally", "for", "from", "global", "if", "import", "in", "is",
    "lambda", "nonlocal", "not", "or", "pass", "raise", "return", "try",
    "while", "with", "yield",
};

// C99 reserved words.
const std::unordered_set<std::string_view> kCKeywords = {
    "auto", "break", "case", "char", "const", "continue", "default", "do",
    "double", "else", "enum", "extern", "float", "for", "goto", "if",
    "inline", "int", "long", "register", "restrict", "return", "short",
    "signed", "sizeof", "static", "struct", "switch", "typedef", "union",
    "unsigned", "void", "volatile", "while",
};

bool is_word_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_word(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_hspace(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

bool is_space(char c) { return is_hspace(c) || c == '\n'; }

bool is_op_char(char c) {
    switch (c) {
        case '+': case '-': case '*': case '/': case '%':
        case '<': case '>': case '=': case '!': case '&':
        case '|': case '^': case '~': case '?': case '@':
        case '$': case '\\':
            return true;
        default:
            return false;
    }
}

bool is_punct_char(char c) {
    switch (c) {
        case '(': case ')': case '[': case ']': case '{': case '}':
        case ',': case ';': case ':': case '.': case '#': case '`':
            return true;
        default:
            return false;
    }
}

int count_lines(std::string_view text) {
    return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

struct Lexer {
    std::string_view src;
    Language lang;
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1;
    int brace_depth = 0;

    void push(TokenCategory cat, std::size_t begin, int start_line) {
        out.push_back({cat, {begin, i}, start_line});
    }

    const Token* prev_meaningful() const {
        for (auto it = out.rbegin(); it != out.rend(); ++it) {
            if (it->category != TokenCategory::Whitespace &&
                it->category != TokenCategory::Comment)
                return &*it;
        }
        return nullptr;
    }

    char peek(std::size_t ahead = 0) const {
        return i + ahead < src.size() ? src[i + ahead] : '\0';
    }

    // Next non-blank character, skipping spaces and tabs only.
    char peek_past_hspace() const {
        std::size_t j = i;
        while (j < src.size() && (src[j] == ' ' || src[j] == '\t')) ++j;
        return j < src.size() ? src[j] : '\0';
    }

    void lex_whitespace() {
        const std::size_t begin = i;
        const int start = line;
        while (i < src.size()) {
            const char c = src[i];
            if (c == '\n') {
                ++i;
                ++line;
                break;  // runs stay line-local
            }
            if (!is_hspace(c)) break;
            ++i;
        }
        push(TokenCategory::Whitespace, begin, start);
    }

    void lex_line_comment(std::size_t begin) {
        while (i < src.size() && src[i] != '\n') ++i;
        push(TokenCategory::Comment, begin, line);
    }

    void lex_block_comment() {
        const std::size_t begin = i;
        const int start = line;
        i += 2;
        while (i < src.size()) {
            if (src[i] == '\n') ++line;
            if (src[i] == '*' && peek(1) == '/') {
                i += 2;
                push(TokenCategory::Comment, begin, start);
                return;
            }
            ++i;
        }
        push(TokenCategory::Comment, begin, start);  // unterminated, runs to EOF
    }

    // Single or double quoted, backslash escapes. An unterminated string
    // extends to end of line and keeps its category.
    void lex_string() {
        const std::size_t begin = i;
        const char quote = src[i];
        ++i;
        while (i < src.size()) {
            const char c = src[i];
            if (c == '\n') break;
            if (c == '\\' && i + 1 < src.size() && src[i + 1] != '\n') {
                i += 2;
                continue;
            }
            ++i;
            if (c == quote) break;
        }
        push(TokenCategory::String, begin, line);
    }

    void lex_number() {
        const std::size_t begin = i;
        ++i;
        while (i < src.size()) {
            const char c = src[i];
            if (is_word(c) || c == '.') {
                ++i;
            } else if ((c == '+' || c == '-') &&
                       (src[i - 1] == 'e' || src[i - 1] == 'E')) {
                ++i;  // exponent sign
            } else {
                break;
            }
        }
        push(TokenCategory::Number, begin, line);
    }

    void lex_word() {
        const std::size_t begin = i;
        while (i < src.size() && is_word(src[i])) ++i;
        const std::string_view text = src.substr(begin, i - begin);
        const auto& keywords =
            lang == Language::PythonLike ? kPythonKeywords : kCKeywords;
        TokenCategory cat = TokenCategory::Identifier;
        if (keywords.count(text)) {
            cat = TokenCategory::Keyword;
        } else if (lang == Language::PythonLike) {
            const Token* prev = prev_meaningful();
            if (prev && prev->category == TokenCategory::Keyword) {
                const auto kw = token_text(src, *prev);
                if (kw == "def" || kw == "class") cat = TokenCategory::DefName;
            }
        } else {
            // identifier followed by '(' at depth 0 after a type-ish token
            const Token* prev = prev_meaningful();
            const bool after_typeish =
                prev && (prev->category == TokenCategory::Keyword ||
                         prev->category == TokenCategory::Identifier);
            if (brace_depth == 0 && after_typeish && peek_past_hspace() == '(')
                cat = TokenCategory::DefName;
        }
        push(cat, begin, line);
    }

    void lex_operator_run() {
        const std::size_t begin = i;
        while (i < src.size() && is_op_char(src[i])) {
            if (lang == Language::CLike && src[i] == '/' &&
                (peek(1) == '/' || peek(1) == '*') && i != begin)
                break;  // comment opener ends the run
            ++i;
        }
        push(TokenCategory::Operator, begin, line);
    }

    void lex_text_run() {
        const std::size_t begin = i;
        while (i < src.size()) {
            const char c = src[i];
            if (is_space(c) || is_op_char(c) || is_punct_char(c) ||
                is_word(c) || c == '"' || c == '\'')
                break;
            ++i;
        }
        if (i == begin) ++i;  // never stall
        push(TokenCategory::Text, begin, line);
    }

    void run() {
        while (i < src.size()) {
            const char c = src[i];
            if (is_space(c)) {
                lex_whitespace();
            } else if (lang == Language::Plain) {
                const std::size_t begin = i;
                while (i < src.size() && !is_space(src[i])) ++i;
                push(TokenCategory::Text, begin, line);
            } else if (lang == Language::PythonLike && c == '#') {
                lex_line_comment(i);
            } else if (lang == Language::CLike && c == '/' && peek(1) == '/') {
                lex_line_comment(i);
            } else if (lang == Language::CLike && c == '/' && peek(1) == '*') {
                lex_block_comment();
            } else if (c == '"' || c == '\'') {
                lex_string();
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                lex_number();
            } else if (is_word_start(c)) {
                lex_word();
            } else if (is_op_char(c)) {
                lex_operator_run();
            } else if (is_punct_char(c)) {
                if (lang == Language::CLike) {
                    if (c == '{') ++brace_depth;
                    if (c == '}') brace_depth = std::max(0, brace_depth - 1);
                }
                ++i;
                push(TokenCategory::Punctuation, i - 1, line);
            } else {
                lex_text_run();
            }
        }
    }
};

// Byte offset of the start of each 1-based line.
std::vector<std::size_t> line_starts(std::string_view source) {
    std::vector<std::size_t> starts{0};
    for (std::size_t i = 0; i < source.size(); ++i) {
        if (source[i] == '\n') starts.push_back(i + 1);
    }
    return starts;
}

int line_count_of(std::string_view source) {
    if (source.empty()) return 0;
    int n = count_lines(source);
    if (source.back() != '\n') ++n;
    return n;
}

// Indentation width of the line holding `offset`: spaces count 1, tabs 4.
int indent_width(std::string_view source, const std::vector<std::size_t>& starts,
                 int line) {
    const std::size_t begin = starts[static_cast<std::size_t>(line - 1)];
    int width = 0;
    for (std::size_t j = begin; j < source.size(); ++j) {
        if (source[j] == ' ')
            width += 1;
        else if (source[j] == '\t')
            width += 4;
        else
            break;
    }
    return width;
}

std::string strip_comment_leader(std::string_view text, Language lang) {
    std::string_view t = text;
    if (lang == Language::PythonLike) {
        while (t.starts_with('#')) t.remove_prefix(1);
    } else {
        if (t.starts_with("//")) {
            t.remove_prefix(2);
            while (t.starts_with('/')) t.remove_prefix(1);
        } else if (t.starts_with("/*")) {
            t.remove_prefix(2);
            if (t.ends_with("*/")) t.remove_suffix(2);
        }
    }
    const auto decorative = [](char c) {
        return c == '-' || c == '=' || c == '*' || c == '#' || c == '~' ||
               c == '_' || c == ' ' || c == '\t';
    };
    std::size_t b = 0, e = t.size();
    while (b < e && decorative(t[b])) ++b;
    while (e > b && decorative(t[e - 1])) --e;
    return std::string(t.substr(b, e - b));
}

struct RawItem {
    int line;
    StructureKind kind;
    std::string name;
    int level;  // indent width (python-like) or brace depth (c-like)
};

}  // namespace

std::string_view to_string(TokenCategory c) {
    switch (c) {
        case TokenCategory::Keyword: return "keyword";
        case TokenCategory::Identifier: return "identifier";
        case TokenCategory::DefName: return "def-name";
        case TokenCategory::String: return "string";
        case TokenCategory::Number: return "number";
        case TokenCategory::Operator: return "operator";
        case TokenCategory::Punctuation: return "punctuation";
        case TokenCategory::Comment: return "comment";
        case TokenCategory::Whitespace: return "whitespace";
        case TokenCategory::Text: return "text";
    }
    return "?";
}

std::string_view to_string(Language l) {
    switch (l) {
        case Language::PythonLike: return "python-like";
        case Language::CLike: return "c-like";
        case Language::Plain: return "plain";
    }
    return "?";
}

std::optional<Language> language_from_name(std::string_view name) {
    if (name == "python-like") return Language::PythonLike;
    if (name == "c-like") return Language::CLike;
    if (name == "plain") return Language::Plain;
    return std::nullopt;
}

Language language_for_path(std::string_view path) {
    const auto dot = path.rfind('.');
    if (dot == std::string_view::npos) return Language::Plain;
    const auto ext = path.substr(dot + 1);
    if (ext == "py") return Language::PythonLike;
    if (ext == "c" || ext == "h" || ext == "cc" || ext == "cpp" ||
        ext == "hpp" || ext == "js" || ext == "ts" || ext == "java")
        return Language::CLike;
    return Language::Plain;
}

std::vector<Token> tokenize(std::string_view source, Language language) {
    if (auto bad = utf8_find_invalid(source))
        throw DecodeError("invalid UTF-8 in source", *bad);
    Lexer lx{source, language, {}};
    lx.run();
    return lx.out;
}

std::vector<StructureItem> extract_structure(std::string_view source,
                                             const std::vector<Token>& tokens,
                                             Language language) {
    if (language == Language::Plain) return {};
    const auto starts = line_starts(source);
    const int total_lines = line_count_of(source);

    std::vector<RawItem> raw;

    // Definitions.
    if (language == Language::PythonLike) {
        for (std::size_t k = 0; k < tokens.size(); ++k) {
            const Token& t = tokens[k];
            if (t.category != TokenCategory::Keyword) continue;
            const auto text = token_text(source, t);
            if (text != "def" && text != "class") continue;
            // only when the keyword opens the line
            bool first_on_line = true;
            for (std::size_t j = k; j-- > 0;) {
                if (tokens[j].line != t.line &&
                    tokens[j].category == TokenCategory::Whitespace)
                    break;
                if (tokens[j].category == TokenCategory::Whitespace) continue;
                if (tokens[j].line == t.line) first_on_line = false;
                break;
            }
            if (!first_on_line) continue;
            for (std::size_t j = k + 1; j < tokens.size(); ++j) {
                if (tokens[j].category == TokenCategory::Whitespace) continue;
                if (tokens[j].category == TokenCategory::DefName) {
                    raw.push_back({t.line,
                                   text == "def" ? StructureKind::Function
                                                 : StructureKind::Class,
                                   std::string(token_text(source, tokens[j])),
                                   indent_width(source, starts, t.line)});
                }
                break;
            }
        }
    } else {
        int depth = 0;
        for (std::size_t k = 0; k < tokens.size(); ++k) {
            const Token& t = tokens[k];
            if (t.category == TokenCategory::Punctuation) {
                const char c = source[t.span.begin];
                if (c == '{') ++depth;
                if (c == '}') depth = std::max(0, depth - 1);
                continue;
            }
            if (t.category == TokenCategory::DefName) {
                raw.push_back({t.line, StructureKind::Function,
                               std::string(token_text(source, t)), depth});
            } else if (t.category == TokenCategory::Keyword) {
                const auto text = token_text(source, t);
                if (text != "struct" && text != "union" && text != "enum")
                    continue;
                const Token* name = nullptr;
                std::size_t j = k + 1;
                for (; j < tokens.size(); ++j) {
                    if (tokens[j].category == TokenCategory::Whitespace) continue;
                    if (tokens[j].category == TokenCategory::Identifier)
                        name = &tokens[j];
                    break;
                }
                if (!name) continue;
                for (++j; j < tokens.size(); ++j) {
                    if (tokens[j].category == TokenCategory::Whitespace) continue;
                    if (tokens[j].category == TokenCategory::Punctuation &&
                        source[tokens[j].span.begin] == '{')
                        raw.push_back({t.line, StructureKind::Class,
                                       std::string(token_text(source, *name)),
                                       depth});
                    break;
                }
            }
        }
    }

    std::set<int> definition_lines;
    for (const auto& r : raw) definition_lines.insert(r.line);

    // Section banners: full-line comments followed by a blank line or a
    // definition. Header-block comments are not sections.
    std::set<int> lines_with_content;
    for (const Token& t : tokens) {
        if (t.category == TokenCategory::Whitespace) continue;
        const auto text = token_text(source, t);
        for (int ln = t.line, rest = count_lines(text); rest >= 0; ++ln, --rest)
            lines_with_content.insert(ln);
    }
    const auto blocks = group_comments(source, tokens);
    for (const auto& block : blocks) {
        if (block.kind != CommentBlockKind::Leading) continue;
        for (std::size_t idx : block.token_indices) {
            const Token& t = tokens[idx];
            const auto text = token_text(source, t);
            if (count_lines(text) > 0) continue;  // single-line banners only
            const int next = t.line + 1;
            const bool next_blank =
                next <= total_lines && !lines_with_content.count(next);
            const bool next_def = definition_lines.count(next) > 0;
            if (!next_blank && !next_def) continue;
            std::string name = strip_comment_leader(text, language);
            if (name.empty()) continue;
            const int level = language == Language::PythonLike
                                  ? indent_width(source, starts, t.line)
                                  : 0;
            raw.push_back({t.line, StructureKind::SectionComment,
                           std::move(name), level});
        }
    }

    std::sort(raw.begin(), raw.end(),
              [](const RawItem& a, const RawItem& b) { return a.line < b.line; });

    // Normalize nesting so a child is always exactly one deeper than its
    // enclosing item, whatever the raw indent jump was.
    std::vector<StructureItem> items;
    std::vector<int> level_stack;
    for (const auto& r : raw) {
        while (!level_stack.empty() && level_stack.back() >= r.level)
            level_stack.pop_back();
        items.push_back({r.kind, r.name, r.line,
                         static_cast<int>(level_stack.size())});
        level_stack.push_back(r.level);
    }
    return items;
}

std::vector<CommentBlock> group_comments(std::string_view source,
                                         const std::vector<Token>& tokens) {
    const int total_lines = line_count_of(source);

    std::set<int> code_lines;  // lines holding a non-comment, non-ws token
    for (const Token& t : tokens) {
        if (t.category == TokenCategory::Whitespace ||
            t.category == TokenCategory::Comment)
            continue;
        const auto text = token_text(source, t);
        for (int ln = t.line, rest = count_lines(text); rest >= 0; ++ln, --rest)
            code_lines.insert(ln);
    }

    struct CommentInfo {
        std::size_t index;
        int first_line, last_line;
        bool full_line;
    };
    std::vector<CommentInfo> comments;
    for (std::size_t k = 0; k < tokens.size(); ++k) {
        if (tokens[k].category != TokenCategory::Comment) continue;
        const auto text = token_text(source, tokens[k]);
        const int first = tokens[k].line;
        const int last = first + count_lines(text);
        bool full = true;
        for (int ln = first; ln <= last; ++ln)
            if (code_lines.count(ln)) full = false;
        comments.push_back({k, first, last, full});
    }

    std::vector<CommentBlock> blocks;
    const auto first_code_line_at_or_after = [&](int line) -> std::optional<int> {
        auto it = code_lines.lower_bound(line);
        if (it == code_lines.end()) return std::nullopt;
        return *it;
    };

    std::size_t c = 0;
    while (c < comments.size()) {
        if (!comments[c].full_line) {
            CommentBlock b;
            b.kind = CommentBlockKind::Trailing;
            b.token_indices.push_back(comments[c].index);
            b.anchor_line = comments[c].first_line;
            blocks.push_back(std::move(b));
            ++c;
            continue;
        }
        // run of consecutive full-line comments
        std::size_t e = c;
        while (e + 1 < comments.size() && comments[e + 1].full_line &&
               comments[e + 1].first_line <= comments[e].last_line + 1)
            ++e;
        const int run_first = comments[c].first_line;
        const int run_last = comments[e].last_line;
        CommentBlock b;
        for (std::size_t k = c; k <= e; ++k)
            b.token_indices.push_back(comments[k].index);
        const bool next_is_code = code_lines.count(run_last + 1) > 0;
        if (run_first == 1 && !next_is_code) {
            b.kind = CommentBlockKind::Header;
        } else {
            b.kind = CommentBlockKind::Leading;
            auto anchor = first_code_line_at_or_after(run_last + 1);
            b.anchor_line = anchor ? *anchor
                                   : std::min(run_last + 1, total_lines + 1);
        }
        blocks.push_back(std::move(b));
        c = e + 1;
    }
    return blocks;
}

}  // namespace folio
