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

#ifndef WEAKSUP_TEXT_H_
#define WEAKSUP_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace weaksup {

struct NormalizeOptions {
  bool lowercase = false;
  // Strip combining marks (tone marks, underdots) before recomposition.
  bool fold_diacritics = false;

  bool operator==(const NormalizeOptions &) const = default;
};

// NFC normalization of a UTF-8 string, optionally case- and
// diacritic-folded. The result is always NFC, so applying it twice is a
// no-op.
std::string Normalize(std::string_view utf8, const NormalizeOptions &options = {});

// Number of Unicode code points.
size_t CodePointLength(std::string_view utf8);

// Splits on Unicode whitespace without any further processing.
std::vector<std::string> SplitWhitespace(std::string_view utf8);

// True if every code point is a decimal digit, or the token starts with a
// digit and otherwise only contains digits and the separators / - . :
bool IsNumericToken(std::string_view utf8);

// Detaches leading and trailing punctuation code points of a
// whitespace-free chunk into single-character pieces.
std::vector<std::string> SplitPunctuation(std::string_view chunk);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Trims ASCII and Unicode whitespace from both ends.
std::string Trim(std::string_view utf8);

// Splits on a single-byte delimiter, keeping empty fields.
std::vector<std::string> SplitFields(std::string_view line, char delimiter);

// Splits text into lines on LF; a trailing CR is removed from each line.
std::vector<std::string> SplitLines(std::string_view text);

}  // namespace weaksup

#endif  // WEAKSUP_TEXT_H_
