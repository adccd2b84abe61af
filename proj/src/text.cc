// Copyright 2026 The Weaksup Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "weaksup/text.h"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace weaksup {
namespace {

const icu::Normalizer2 &Nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
  return *nfc;
}

const icu::Normalizer2 &Nfd() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfd = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFD normalizer unavailable");
  return *nfd;
}

// Decodes the code point at byte offset i and advances i. Invalid bytes
// decode as U+FFFD.
UChar32 NextCodePoint(std::string_view s, int32_t &i) {
  UChar32 c;
  U8_NEXT(reinterpret_cast<const uint8_t *>(s.data()), i,
          static_cast<int32_t>(s.size()), c);
  return c < 0 ? 0xFFFD : c;
}

bool IsSpace(UChar32 c) { return u_isUWhiteSpace(c) || c == '\t' || c == '\n' || c == '\r'; }

bool IsPunct(UChar32 c) {
  // Symbols such as $ or + are treated like punctuation for token edges.
  return u_ispunct(c) || u_charType(c) == U_MATH_SYMBOL ||
         u_charType(c) == U_CURRENCY_SYMBOL;
}

}  // namespace

std::string Normalize(std::string_view utf8, const NormalizeOptions &options) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString text = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  if (options.lowercase) text.toLower(icu::Locale::getRoot());
  if (options.fold_diacritics) {
    icu::UnicodeString decomposed = Nfd().normalize(text, status);
    icu::UnicodeString stripped;
    for (int32_t i = 0; i < decomposed.length();) {
      UChar32 c = decomposed.char32At(i);
      if (u_charType(c) != U_NON_SPACING_MARK) stripped.append(c);
      i += U16_LENGTH(c);
    }
    text = stripped;
  }
  icu::UnicodeString composed = Nfc().normalize(text, status);
  if (U_FAILURE(status)) throw std::runtime_error("unicode normalization failed");
  std::string out;
  composed.toUTF8String(out);
  return out;
}

size_t CodePointLength(std::string_view utf8) {
  size_t count = 0;
  for (int32_t i = 0; i < static_cast<int32_t>(utf8.size());) {
    NextCodePoint(utf8, i);
    ++count;
  }
  return count;
}

std::vector<std::string> SplitWhitespace(std::string_view utf8) {
  std::vector<std::string> out;
  std::string current;
  for (int32_t i = 0; i < static_cast<int32_t>(utf8.size());) {
    int32_t start = i;
    UChar32 c = NextCodePoint(utf8, i);
    if (IsSpace(c)) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.append(utf8.substr(start, i - start));
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

bool IsNumericToken(std::string_view utf8) {
  if (utf8.empty()) return false;
  bool first = true;
  for (int32_t i = 0; i < static_cast<int32_t>(utf8.size());) {
    UChar32 c = NextCodePoint(utf8, i);
    bool digit = u_isdigit(c);
    if (first && !digit) return false;
    first = false;
    if (!digit && c != '/' && c != '-' && c != '.' && c != ':') return false;
  }
  return true;
}

std::vector<std::string> SplitPunctuation(std::string_view chunk) {
  struct Piece {
    int32_t begin;
    int32_t end;
    bool punct;
  };
  std::vector<Piece> pieces;
  for (int32_t i = 0; i < static_cast<int32_t>(chunk.size());) {
    int32_t begin = i;
    UChar32 c = NextCodePoint(chunk, i);
    pieces.push_back({begin, i, IsPunct(c)});
  }
  size_t lead = 0;
  while (lead < pieces.size() && pieces[lead].punct) ++lead;
  size_t trail = pieces.size();
  while (trail > lead && pieces[trail - 1].punct) --trail;

  std::vector<std::string> out;
  auto piece_text = [&](size_t k) {
    return std::string(chunk.substr(pieces[k].begin, pieces[k].end - pieces[k].begin));
  };
  for (size_t k = 0; k < lead; ++k) out.push_back(piece_text(k));
  if (trail > lead) {
    out.emplace_back(chunk.substr(pieces[lead].begin,
                                  pieces[trail - 1].end - pieces[lead].begin));
  }
  for (size_t k = trail; k < pieces.size(); ++k) out.push_back(piece_text(k));
  return out;
}

std::string Join(const std::vector<std::string> &parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::string Trim(std::string_view utf8) {
  int32_t begin = -1, end = 0;
  for (int32_t i = 0; i < static_cast<int32_t>(utf8.size());) {
    int32_t start = i;
    UChar32 c = NextCodePoint(utf8, i);
    if (!IsSpace(c)) {
      if (begin < 0) begin = start;
      end = i;
    }
  }
  if (begin < 0) return {};
  return std::string(utf8.substr(begin, end - begin));
}

std::vector<std::string> SplitFields(std::string_view line, char delimiter) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(delimiter, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      return out;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> SplitLines(std::string_view text) {
  std::vector<std::string> lines;
  if (text.empty()) return lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t pos = text.find('\n', start);
    std::string_view line = text.substr(start, pos == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : pos - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (pos == std::string_view::npos) {
      if (!line.empty()) lines.emplace_back(line);
      break;
    }
    lines.emplace_back(line);
    start = pos + 1;
  }
  return lines;
}

}  // namespace weaksup
