#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace folio {

enum class Language { PythonLike, CLike, Plain };

enum class TokenCategory {
    Keyword,
    Identifier,
    DefName,
    String,
    Number,
    Operator,
    Punctuation,
    Comment,
    Whitespace,
    Text,
};

std::string_view to_string(TokenCategory c);
std::string_view to_string(Language l);
std::optional<Language> language_from_name(std::string_view name);
Language language_for_path(std::string_view path);

// Half-open byte range [begin, end) into the source.
struct ByteSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const { return end - begin; }
};

struct Token {
    TokenCategory category = TokenCategory::Text;
    ByteSpan span;
    int line = 1;  // 1-based source line of span.begin
};

inline std::string_view token_text(std::string_view source, const Token& t) {
    return source.substr(t.span.begin, t.span.size());
}

enum class StructureKind { Function, Class, SectionComment };

struct StructureItem {
    StructureKind kind = StructureKind::Function;
    std::string name;
    int line = 1;
    int depth = 0;
};

enum class CommentBlockKind { Leading, Trailing, Header };

struct CommentBlock {
    CommentBlockKind kind = CommentBlockKind::Leading;
    std::vector<std::size_t> token_indices;  // into the token list, ascending
    std::optional<int> anchor_line;          // absent for header blocks
};

// Splits source into tokens covering every byte exactly once, in order.
// Throws DecodeError when the source is not valid UTF-8.
std::vector<Token> tokenize(std::string_view source, Language language);

std::vector<StructureItem> extract_structure(std::string_view source,
                                             const std::vector<Token>& tokens,
                                             Language language);

std::vector<CommentBlock> group_comments(std::string_view source,
                                         const std::vector<Token>& tokens);

}  // namespace folio
