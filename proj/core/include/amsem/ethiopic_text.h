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

#ifndef AMSEM_ETHIOPIC_TEXT_H_
#define AMSEM_ETHIOPIC_TEXT_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amsem {

// Character folding map for homophone Fidel variants. Immutable once built;
// the constructor rejects tables that violate any of:
//   * no identity entries,
//   * closure (no canonical character is itself a key),
//   * family consistency (within an Ethiopic syllable family, vowel orders
//     1..7 map onto the same order of a single canonical family).
class NormalizationTable {
 public:
  NormalizationTable() = default;
  NormalizationTable(std::map<char32_t, char32_t> entries, std::string name);

  // Parses the TSV format: `source<TAB>canonical`, '#' comments, blank lines
  // ignored. Throws ParseError with the offending line number.
  static NormalizationTable parse(std::string_view tsv, std::string name);
  static NormalizationTable load(const std::filesystem::path& path);

  std::optional<char32_t> lookup(char32_t cp) const;
  const std::map<char32_t, char32_t>& entries() const { return entries_; }
  const std::string& name() const { return name_; }
  std::size_t size() const { return entries_.size(); }

  std::string to_tsv() const;

 private:
  std::map<char32_t, char32_t> entries_;
  std::string name_;
};

// The shipped table covering {ሀ,ሐ,ኀ}, {ሰ,ሠ}, {አ,ዐ} and {ጸ,ፀ}.
const NormalizationTable& default_table();

// Replaces every table key by its canonical character. Scalar count is
// preserved; bytes that are not valid UTF-8 pass through untouched.
std::string normalize(std::string_view text, const NormalizationTable& table);

enum class TokenKind { kWord, kPunctuation, kNumber };

std::string_view to_string(TokenKind kind);

struct ByteSpan {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
  std::size_t size() const { return end - start; }
  friend bool operator==(const ByteSpan&, const ByteSpan&) = default;
};

struct Token {
  std::string surface;
  ByteSpan span;
  TokenKind kind = TokenKind::kWord;
  friend bool operator==(const Token&, const Token&) = default;
};

// Whitespace and the Ethiopic wordspace U+1361 separate tokens. Each of
// ። ፣ ፤ ፥ ፦ ፧ . , ; ? ! is a single punctuation token. A run of other
// characters is a number when every scalar is a digit, otherwise a word.
std::vector<Token> tokenize(std::string_view text);

bool is_separator(char32_t cp);
bool is_punctuation(char32_t cp);

enum class SentenceBoundary {
  kNone,         // trailing fragment without terminator
  kFullStop,     // ።
  kQuestion,     // ? or ፧
  kExclamation,  // !
  kCommaPair,    // two consecutive ፣ or two consecutive ,
};

struct Sentence {
  std::vector<Token> tokens;
  // Last token of the sentence when it ended on a boundary. For a comma
  // pair this is the second comma; both commas stay in `tokens`.
  std::optional<Token> terminator;
  SentenceBoundary boundary = SentenceBoundary::kNone;
};

// Splits a token stream into sentences. Never drops, duplicates or reorders
// tokens. Verb-final sentences without punctuation are not detected.
std::vector<Sentence> segment(std::span<const Token> tokens);

// normalize -> tokenize -> segment, returning token surfaces per sentence.
// `table` may be null to skip normalization.
std::vector<std::vector<std::string>> split_sentences(
    std::string_view text, const NormalizationTable* table);

}  // namespace amsem

#endif  // AMSEM_ETHIOPIC_TEXT_H_
