#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qiraa {

/// Decode UTF-8 into codepoints. Invalid byte sequences decode to U+FFFD
/// (one replacement per bad byte); downstream filtering discards them.
std::u32string utf8_decode(std::string_view s);

std::string utf8_encode(std::u32string_view cps);

void utf8_append(std::string& out, char32_t cp);

/// Number of codepoints (continuation bytes not counted).
size_t utf8_length(std::string_view s);

bool utf8_valid(std::string_view s);

} // namespace qiraa
