#ifndef HARDMONO_UTF8_HPP
#define HARDMONO_UTF8_HPP

#include <string>

namespace hardmono::utf8 {

// Decodes a UTF-8 byte string into codepoints. Invalid bytes decode to
// U+FFFD, one replacement per offending byte.
std::u32string decode(const std::string& bytes);

std::string encode(const std::u32string& codepoints);
std::string encode_one(char32_t codepoint);

}  // namespace hardmono::utf8

#endif
