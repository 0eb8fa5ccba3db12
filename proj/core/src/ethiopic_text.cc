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

#include "amsem/ethiopic_text.h"

#include <fstream>
#include <sstream>
#include <utility>

#include "amsem/error.h"
#include "amsem/utf8.h"

namespace amsem {

namespace detail {
extern const std::string_view kDefaultNormalizationTsv;
}  // namespace detail

namespace {

constexpr char32_t kWordspace = 0x1361;
constexpr char32_t kFullStop = 0x1362;
constexpr char32_t kEthiopicComma = 0x1363;
constexpr char32_t kEthiopicQuestion = 0x1367;

bool is_ethiopic_syllable(char32_t cp) { return cp >= 0x1200 && cp <= 0x135A; }

std::string hex(char32_t cp) {
  std::ostringstream os;
  os << "U+" << std::hex << std::uppercase << static_cast<std::uint32_t>(cp);
  return os.str();
}

void validate(const std::map<char32_t, char32_t>& entries) {
  // family base (cp & ~7) -> canonical family base, for orders 0..6
  std::map<char32_t, char32_t> family_target;
  for (const auto& [src, dst] : entries) {
    if (src == dst) {
      throw ConfigError("normalization table: identity entry " + hex(src));
    }
    if (entries.contains(dst)) {
      throw ConfigError("normalization table: canonical " + hex(dst) +
                        " is also a key (table is not closed)");
    }
    if (!is_ethiopic_syllable(src) || (src & 7) == 7) continue;
    if (!is_ethiopic_syllable(dst) || (dst & 7) != (src & 7)) {
      throw ConfigError("normalization table: " + hex(src) + " -> " + hex(dst) +
                        " does not preserve the vowel order");
    }
    const char32_t fam = src & ~char32_t{7};
    const char32_t target = dst & ~char32_t{7};
    auto [it, inserted] = family_target.emplace(fam, target);
    if (!inserted && it->second != target) {
      throw ConfigError("normalization table: family of " + hex(src) +
                        " maps to more than one canonical family");
    }
  }
}

}  // namespace

NormalizationTable::NormalizationTable(std::map<char32_t, char32_t> entries,
                                       std::string name)
    : entries_(std::move(entries)), name_(std::move(name)) {
  validate(entries_);
}

NormalizationTable NormalizationTable::parse(std::string_view tsv,
                                             std::string name) {
  std::map<char32_t, char32_t> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= tsv.size()) {
    std::size_t eol = tsv.find('\n', pos);
    if (eol == std::string_view::npos) eol = tsv.size();
    std::string_view line = tsv.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != line.npos) {
      throw ParseError("expected exactly two tab-separated fields", line_no);
    }
    const std::u32string src = utf8::to_u32(line.substr(0, tab));
    const std::u32string dst = utf8::to_u32(line.substr(tab + 1));
    if (src.size() != 1 || dst.size() != 1) {
      throw ParseError("each field must be a single character", line_no);
    }
    if (!entries.emplace(src[0], dst[0]).second) {
      throw ParseError("duplicate source character", line_no);
    }
  }
  return NormalizationTable(std::move(entries), std::move(name));
}

NormalizationTable NormalizationTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open normalization table " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.stem().string());
}

std::optional<char32_t> NormalizationTable::lookup(char32_t cp) const {
  auto it = entries_.find(cp);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string NormalizationTable::to_tsv() const {
  std::string out;
  for (const auto& [src, dst] : entries_) {
    utf8::append(out, src);
    out.push_back('\t');
    utf8::append(out, dst);
    out.push_back('\n');
  }
  return out;
}

const NormalizationTable& default_table() {
  static const NormalizationTable table =
      NormalizationTable::parse(detail::kDefaultNormalizationTsv, "default");
  return table;
}

std::string normalize(std::string_view text, const NormalizationTable& table) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const utf8::Scalar s = utf8::decode_at(text, i);
    const bool valid = s.value != utf8::kReplacement || s.length == 3;
    if (auto canonical = valid ? table.lookup(s.value) : std::nullopt) {
      utf8::append(out, *canonical);
    } else {
      out.append(text.substr(i, s.length));
    }
    i += s.length;
  }
  return out;
}

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWord: return "word";
    case TokenKind::kPunctuation: return "punctuation";
    case TokenKind::kNumber: return "number";
  }
  return "word";
}

bool is_separator(char32_t cp) {
  return cp == kWordspace || utf8::is_whitespace(cp);
}

bool is_punctuation(char32_t cp) {
  switch (cp) {
    case 0x1362: case 0x1363: case 0x1364: case 0x1365: case 0x1366:
    case 0x1367: case U'.': case U',': case U';': case U'?': case U'!':
      return true;
    default:
      return false;
  }
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t run_start = 0;
  bool in_run = false;
  bool all_digits = true;

  auto flush = [&](std::size_t end) {
    if (!in_run) return;
    tokens.push_back({std::string(text.substr(run_start, end - run_start)),
                      {run_start, end},
                      all_digits ? TokenKind::kNumber : TokenKind::kWord});
    in_run = false;
  };

  for (std::size_t i = 0; i < text.size();) {
    const utf8::Scalar s = utf8::decode_at(text, i);
    if (is_separator(s.value)) {
      flush(i);
    } else if (is_punctuation(s.value)) {
      flush(i);
      tokens.push_back({std::string(text.substr(i, s.length)),
                        {i, i + s.length},
                        TokenKind::kPunctuation});
    } else {
      if (!in_run) {
        in_run = true;
        run_start = i;
        all_digits = true;
      }
      all_digits = all_digits && utf8::is_digit(s.value);
    }
    i += s.length;
  }
  flush(text.size());
  return tokens;
}

namespace {

std::optional<char32_t> single_punct(const Token& t) {
  if (t.kind != TokenKind::kPunctuation) return std::nullopt;
  return utf8::decode_at(t.surface, 0).value;
}

bool is_comma(char32_t cp) { return cp == kEthiopicComma || cp == U','; }

}  // namespace

std::vector<Sentence> segment(std::span<const Token> tokens) {
  std::vector<Sentence> sentences;
  Sentence current;
  std::optional<char32_t> previous_comma;

  auto close = [&](SentenceBoundary boundary) {
    current.terminator = current.tokens.back();
    current.boundary = boundary;
    sentences.push_back(std::move(current));
    current = Sentence{};
    previous_comma.reset();
  };

  for (const Token& tok : tokens) {
    current.tokens.push_back(tok);
    const auto p = single_punct(tok);
    if (!p) {
      previous_comma.reset();
      continue;
    }
    switch (*p) {
      case kFullStop:
        close(SentenceBoundary::kFullStop);
        continue;
      case U'?':
      case kEthiopicQuestion:
        close(SentenceBoundary::kQuestion);
        continue;
      case U'!':
        close(SentenceBoundary::kExclamation);
        continue;
      default:
        break;
    }
    if (is_comma(*p)) {
      if (previous_comma == *p) {
        close(SentenceBoundary::kCommaPair);
      } else {
        previous_comma = *p;
      }
    } else {
      previous_comma.reset();
    }
  }
  if (!current.tokens.empty()) sentences.push_back(std::move(current));
  return sentences;
}

std::vector<std::vector<std::string>> split_sentences(
    std::string_view text, const NormalizationTable* table) {
  std::string normalized;
  if (table != nullptr) {
    normalized = normalize(text, *table);
    text = normalized;
  }
  const std::vector<Token> tokens = tokenize(text);
  std::vector<std::vector<std::string>> out;
  for (Sentence& s : segment(tokens)) {
    std::vector<std::string> words;
    words.reserve(s.tokens.size());
    for (Token& t : s.tokens) words.push_back(std::move(t.surface));
    out.push_back(std::move(words));
  }
  return out;
}

}  // namespace amsem
