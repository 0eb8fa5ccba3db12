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

#ifndef AMSEM_UTF8_H_
#define AMSEM_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace amsem::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// One decoded scalar and the byte range it came from. Invalid sequences
// decode to kReplacement covering exactly one byte.
struct Scalar {
  char32_t value;
  std::size_t offset;
  std::size_t length;
};

// Decodes the scalar starting at `offset`; `offset` must be < text.size().
Scalar decode_at(std::string_view text, std::size_t offset);

std::vector<Scalar> decode(std::string_view text);
std::u32string to_u32(std::string_view text);

void append(std::string& out, char32_t cp);
std::string encode(std::u32string_view text);

std::size_t scalar_count(std::string_view text);

// First / last `n` scalars of `text` (the whole text when shorter).
std::string prefix(std::string_view text, std::size_t n);
std::string suffix(std::string_view text, std::size_t n);

bool is_whitespace(char32_t cp);

// ASCII 0-9 and the Ethiopic digits/numbers U+1369..U+137C.
bool is_digit(char32_t cp);

}  // namespace amsem::utf8

#endif  // AMSEM_UTF8_H_
