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

#include "weaksup/lexicon.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "weaksup/errors.h"
#include "weaksup/text.h"

namespace weaksup {
namespace {

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("weaksup_lexicon_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path &path() const { return path_; }
  void Write(const std::string &name, const std::string &contents) const {
    std::ofstream(path_ / name) << contents;
  }

 private:
  std::filesystem::path path_;
};

TEST(GazetteerTest, LengthFilterAndComments) {
  GazetteerLoad load = ParseGazetteer("Kano\nNigeria\n# src: wikidata\n", "LOC", 4);
  EXPECT_EQ(load.kept, 2u);
  EXPECT_EQ(load.dropped, 0u);
  EXPECT_TRUE(load.gazetteer.Contains({"Kano"}));

  GazetteerLoad org = ParseGazetteer("UN\nof\nUnited Nations\n", "ORG",
                                     DefaultMinTokenLength("yo", "ORG"));
  EXPECT_TRUE(org.gazetteer.Contains({"UN"}));
  EXPECT_EQ(org.gazetteer.max_entry_tokens, 2u);

  GazetteerLoad per = ParseGazetteer("of\nBank of Industry\nBola\n", "PER", 3);
  EXPECT_FALSE(per.gazetteer.Contains({"of"}));
  // "of" inside an entry disqualifies the whole entry.
  EXPECT_FALSE(per.gazetteer.Contains({"Bank", "of", "Industry"}));
  EXPECT_EQ(per.kept, 1u);
  EXPECT_EQ(per.dropped, 2u);
}

TEST(GazetteerTest, EmptyIsWarningAndCasePreserved) {
  GazetteerLoad load = ParseGazetteer("# nothing\n", "PER", 3);
  EXPECT_EQ(load.kept, 0u);
  ASSERT_EQ(load.warnings.size(), 1u);
  GazetteerLoad cased = ParseGazetteer("Kano\n", "LOC", 1);
  EXPECT_FALSE(cased.gazetteer.Contains({"kano"}));
  GazetteerLoad folded = ParseGazetteer("Kano\n", "LOC", 1, {.lowercase = true});
  EXPECT_TRUE(folded.gazetteer.Contains({"KANO"}));
}

TEST(GazetteerTest, OrderIndependentAndLengthInvariant) {
  std::vector<std::string> lines = {"Abuja", "Port Harcourt", "Ife", "Èkó", "Ọ̀yọ́", "of", "Lagos State",
                                    "Kano", "Kano", "A B"};
  std::mt19937_64 gen(11);
  GazetteerLoad reference = ParseGazetteer(Join(lines, "\n"), "LOC", 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(lines.begin(), lines.end(), gen);
    GazetteerLoad load = ParseGazetteer(Join(lines, "\n"), "LOC", 3);
    EXPECT_EQ(load.gazetteer, reference.gazetteer);
    for (const std::string &entry : load.gazetteer.entries) {
      for (const std::string &token : SplitWhitespace(entry)) EXPECT_GE(CodePointLength(token), 3u);
    }
  }
  // Three code points even though the UTF-8 form is longer.
  EXPECT_TRUE(reference.gazetteer.Contains({"Èkó"}));
}

TEST(GazetteerTest, DefaultLengths) {
  EXPECT_EQ(DefaultMinTokenLength("yo", "LOC"), 3u);
  EXPECT_EQ(DefaultMinTokenLength("yo", "PER"), 3u);
  EXPECT_EQ(DefaultMinTokenLength("yo", "ORG"), 2u);
  for (const char *label : {"LOC", "ORG", "PER"}) EXPECT_EQ(DefaultMinTokenLength("ha", label), 4u);
  EXPECT_EQ(DefaultMinTokenLength("xh", "LOC"), 1u);
}

TEST(GazetteerTest, MissingFileIsIoError) {
  EXPECT_THROW(LoadGazetteer("/nonexistent/list.txt", "LOC", 3), IoError);
}

TEST(DictionaryTest, LoadsPerClassFiles) {
  TempDir dir;
  std::string sport;
  for (int i = 0; i < 120; ++i) sport += "Athlete" + std::to_string(i) + " Name\n";
  dir.Write("Sport.txt", sport);
  dir.Write("Health.txt", "Cutar\ncutar\nasibiti\nthree token term\n");
  dir.Write("stage1.tsv", "cutar\tHealth\n# comment\ninec\tHealth\n");
  DictionaryLoad load = LoadClassDictionaries(dir.path(), {"Sport", "Health"}, dir.path() / "stage1.tsv");
  ASSERT_EQ(load.dictionaries.size(), 2u);
  EXPECT_EQ(load.dictionaries[0].terms.size(), 120u);
  EXPECT_EQ(load.dictionaries[1].terms, (std::set<std::string>{"cutar", "asibiti"}));
  EXPECT_EQ(load.warnings.size(), 1u);
  ASSERT_TRUE(load.stage_one.has_value());
  EXPECT_EQ(load.stage_one->entries.front(), (std::pair<std::string, std::string>{"cutar", "Health"}));

  EXPECT_TRUE(LoadClassDictionaries(dir.path(), {}).dictionaries.empty());
  try {
    LoadClassDictionaries(dir.path(), {"Politics"});
    FAIL();
  } catch (const IoError &e) {
    EXPECT_NE(std::string(e.what()).find("Politics"), std::string::npos);
  }
}

TEST(DictionaryTest, StageOneRejectsUnknownClass) {
  EXPECT_THROW(ParseStageOneKeywords("cutar\tDisease\n", {"Health"}), ParseError);
  EXPECT_THROW(ParseStageOneKeywords("cutar Health\n", {"Health"}), ParseError);
  EXPECT_EQ(ParseStageOneKeywords("INEC\tPolitics\n", {}).entries.front().first, "inec");
}

}  // namespace
}  // namespace weaksup
