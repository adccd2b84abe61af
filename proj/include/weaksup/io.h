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

#ifndef WEAKSUP_IO_H_
#define WEAKSUP_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace weaksup {

// Reads a whole file. Throws IoError if it cannot be opened.
std::string ReadFile(const std::filesystem::path &path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partially written artifact.
void WriteFileAtomic(const std::filesystem::path &path, std::string_view contents);

// Shortest decimal representation that parses back to the same double.
std::string FormatDouble(double value);

// Fixed-point formatting for reports.
std::string FormatFixed(double value, int digits);

// Strict parse of a complete string. Throws DataError on failure.
double ParseDouble(std::string_view text);
long long ParseInt(std::string_view text);

}  // namespace weaksup

#endif  // WEAKSUP_IO_H_
