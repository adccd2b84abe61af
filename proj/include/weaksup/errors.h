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

#ifndef WEAKSUP_ERRORS_H_
#define WEAKSUP_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weaksup {

// Malformed or inconsistent input data. The CLI maps it to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A text format violation at a known line (1-based).
class ParseError : public DataError {
 public:
  ParseError(size_t line, const std::string &what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  size_t line() const { return line_; }

 private:
  size_t line_;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace weaksup

#endif  // WEAKSUP_ERRORS_H_
