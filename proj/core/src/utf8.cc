// Copyright 2026 The Amsem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "amsem/utf8.h"

namespace amsem::utf8 {

namespace {

bool is_continuation(unsigned char b) { return (b & 0xC0) == 0x80; }

}  // namespace

Scalar decode_at(std::string_view text, std::size_t offset) {
  const auto b0 = static_cast<unsigned char>(text[offset]);
  const std::size_t left = text.size() - offset;
  auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(text[offset + i]);
  };
  if (b0 < 0x80) return {b0, offset, 1};
  if (b0 >= 0xC2 && b0 <= 0xDF && left >= 2 && is_continuation(byte(1))) {
    return {static_cast<char32_t>(((b0 & 0x1F) << 6) | (byte(1) & 0x3F)),
            offset, 2};
  }
  if (b0 >= 0xE0 && b0 <= 0xEF && left >= 3 && is_continuation(byte(1)) &&
      is_continuation(byte(2))) {
    const char32_t cp = ((b0 & 0x0F) << 12) | ((byte(1) & 0x3F) << 6) |
                        (byte(2) & 0x3F);
    // Reject overlongs and surrogates.
    if (cp >= 0x800 && (cp < 0xD800 || cp > 0xDFFF)) return {cp, offset, 3};
  }
  if (b0 >= 0xF0 && b0 <= 0xF4 && left >= 4 && is_continuation(byte(1)) &&
      is_continuation(byte(2)) && is_continuation(byte(3))) {
    const char32_t cp = ((b0 & 0x07) << 18) | ((byte(1) & 0x3F) << 12) |
                        ((byte(2) & 0x3F) << 6) | (byte(3) & 0x3F);
    if (cp >= 0x10000 && cp <= 0x10FFFF) return {cp, offset, 4};
  }
  return {kReplacement, offset, 1};
}

std::vector<Scalar> decode(std::string_view text) {
  std::vector<Scalar> out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    Scalar s = decode_at(text, i);
    out.push_back(s);
    i += s.length;
  }
  return out;
}

std::u32string to_u32(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    Scalar s = decode_at(text, i);
    out.push_back(s.value);
    i += s.length;
  }
  return out;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size() * 3);
  for (char32_t cp : text) append(out, cp);
  return out;
}

std::size_t scalar_count(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < text.size(); ++n) i += decode_at(text, i).length;
  return n;
}

std::string prefix(std::string_view text, std::size_t n) {
  std::size_t end = 0;
  for (std::size_t k = 0; k < n && end < text.size(); ++k) {
    end += decode_at(text, end).length;
  }
  return std::string(text.substr(0, end));
}

std::string suffix(std::string_view text, std::size_t n) {
  const auto scalars = decode(text);
  if (scalars.size() <= n) return std::string(text);
  return std::string(text.substr(scalars[scalars.size() - n].offset));
}

bool is_whitespace(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_digit(char32_t cp) {
  return (cp >= U'0' && cp <= U'9') || (cp >= 0x1369 && cp <= 0x137C);
}

}  // namespace amsem::utf8
