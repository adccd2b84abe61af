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

#include <gtest/gtest.h>

#include "weaksup/random.h"

namespace weaksup {
namespace {

TEST(TextTest, NormalizeIsProjection) {
  const std::vector<std::string> samples = {"Ọ̀pẹ̀", "ỌJỌ́", "o\xCC\xA3\xCC\x81", "Kano", "ÉCOLE", ""};
  for (bool lower : {false, true}) {
    for (bool fold : {false, true}) {
      NormalizeOptions o{lower, fold};
      for (const std::string &s : samples) EXPECT_EQ(Normalize(Normalize(s, o), o), Normalize(s, o));
    }
  }
  EXPECT_EQ(Normalize("ỌJỌ́", {.lowercase = true}), "ọjọ́");
  EXPECT_EQ(Normalize("ọjọ́", {.fold_diacritics = true}), "ojo");
}

TEST(TextTest, CodePointsAndDigits) {
  EXPECT_EQ(CodePointLength("ọdún"), 4u);
  EXPECT_EQ(CodePointLength(""), 0u);
  EXPECT_TRUE(IsNumericToken("2019"));
  EXPECT_TRUE(IsNumericToken("18/12/2019"));
  EXPECT_FALSE(IsNumericToken("-5"));
  EXPECT_FALSE(IsNumericToken("18th"));
  EXPECT_FALSE(IsNumericToken(""));
}

TEST(TextTest, LinesAndFields) {
  EXPECT_EQ(SplitLines("a\r\nb\n\nc"), (std::vector<std::string>{"a", "b", "", "c"}));
  EXPECT_EQ(SplitLines("a\n"), (std::vector<std::string>{"a"}));
  EXPECT_EQ(SplitFields("a\t\tb", '\t'), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(Trim("  x y \t"), "x y");
}

TEST(RngTest, ReproducibleAndInRange) {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) {
    size_t x = a.UniformIndex(7);
    EXPECT_EQ(x, b.UniformIndex(7));
    EXPECT_LT(x, 7u);
    double u = a.Uniform(-0.1, 0.1);
    b.Uniform(-0.1, 0.1);
    EXPECT_GE(u, -0.1);
    EXPECT_LT(u, 0.1);
  }
  EXPECT_NE(DeriveSeed({1, 2}), DeriveSeed({2, 1}));
  EXPECT_THROW(a.UniformIndex(0), std::invalid_argument);
}

}  // namespace
}  // namespace weaksup
