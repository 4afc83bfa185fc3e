#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace folio {

// Byte offset of the first invalid UTF-8 sequence, or nullopt when valid.
std::optional<std::size_t> utf8_find_invalid(std::string_view bytes);

// Throws DecodeError when the input is not valid UTF-8.
std::u32string utf8_decode(std::string_view bytes);

std::string utf8_encode(std::u32string_view points);

// Number of code points in a valid UTF-8 string.
std::size_t utf8_length(std::string_view bytes);

// Byte offset of the n-th code point (n may equal the code point count,
// giving bytes.size()). Input must be valid UTF-8.
std::size_t utf8_byte_offset(std::string_view bytes, std::size_t point_index);

// Splits into chunks of at most `width` code points. Empty input gives one
// empty chunk. No bytes are lost: concatenating the chunks restores the input.
std::vector<std::string> utf8_chunks(std::string_view bytes, std::size_t width);

}  // namespace folio
