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

#include "weaksup/annotators.h"

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.h"

namespace weaksup {
namespace {

using Tags = std::vector<std::string>;

Sentence Words(const std::string &text) {
  Sentence s;
  s.tokens = Tokenize(text);
  return s;
}

Gazetteer MakeGazetteer(const std::string &label, const std::vector<std::string> &entries) {
  return ParseGazetteer(Join(entries, "\n"), label, 1).gazetteer;
}

TEST(GazetteerAnnotatorTest, MatchesEntries) {
  Gazetteer loc = MakeGazetteer("LOC", {"Kano", "Nigeria"});
  EXPECT_EQ(AnnotateNerGazetteer(Words("Kano is in Nigeria"), {loc}),
            (Tags{"B-LOC", "O", "O", "B-LOC"}));
  Gazetteer org = MakeGazetteer("ORG", {"United", "United Nations"});
  EXPECT_EQ(AnnotateNerGazetteer(Words("United Nations said"), {org}),
            (Tags{"B-ORG", "I-ORG", "O"}));
  EXPECT_EQ(AnnotateNerGazetteer(Words("a b c"), {}), (Tags{"O", "O", "O"}));
}

TEST(GazetteerAnnotatorTest, LongestFirstAcrossPositions) {
  // Greedy scanning from the left would take "a b" and lose the longer "b c d".
  Gazetteer g = MakeGazetteer("LOC", {"a b", "b c d"});
  EXPECT_EQ(AnnotateWithGazetteer(Words("a b c d"), g), (Tags{"O", "B-LOC", "I-LOC", "I-LOC"}));
  // Equal lengths: leftmost wins.
  Gazetteer h = MakeGazetteer("LOC", {"a b", "b c"});
  EXPECT_EQ(AnnotateWithGazetteer(Words("a b c"), h), (Tags{"B-LOC", "I-LOC", "O"}));
}

TEST(GazetteerAnnotatorTest, MonotoneInEntries) {
  // Adding entries never drops a span unless an overlapping span at least as
  // long replaces it.
  std::mt19937_64 gen(21);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> words;
    for (size_t i = 0; i < 12; ++i) words.push_back(vocab[gen() % vocab.size()]);
    Sentence s = MakeSentence(words);
    auto random_entry = [&]() {
      size_t len = 1 + gen() % 3;
      std::vector<std::string> e;
      for (size_t i = 0; i < len; ++i) e.push_back(vocab[gen() % vocab.size()]);
      return Join(e, " ");
    };
    std::vector<std::string> entries;
    for (int i = 0; i < 3; ++i) entries.push_back(random_entry());
    std::vector<Span> before = ExtractSpans(AnnotateWithGazetteer(s, MakeGazetteer("X", entries)));
    for (int i = 0; i < 3; ++i) entries.push_back(random_entry());
    std::vector<Span> after = ExtractSpans(AnnotateWithGazetteer(s, MakeGazetteer("X", entries)));
    for (const Span &old : before) {
      bool kept = std::any_of(after.begin(), after.end(), [&](const Span &n) {
        return n == old || (n.start <= old.end && old.start <= n.end && n.length() >= old.length());
      });
      EXPECT_TRUE(kept);
    }
    EXPECT_TRUE(IsStrictBio2(TagsFromSpans(after, words.size())));
  }
}

TEST(DateAnnotatorTest, KeywordSentenceIsOneSpan) {
  Sentence s = Words("ranar 18 ga watan Mayu, shekarar 2019");
  ASSERT_EQ(s.size(), 8u);
  Tags tags = AnnotateNerDates(s, DateRuleConfig::Hausa());
  EXPECT_EQ(ExtractSpans(tags), (std::vector<Span>{{"DATE", 0, 7}}));
}

TEST(DateAnnotatorTest, BareDigitsStayOutside) {
  DateRuleConfig cfg = DateRuleConfig::Hausa();
  EXPECT_EQ(AnnotateNerDates(Words("mutane 18 sun mutu"), cfg), (Tags{"O", "O", "O", "O"}));
  EXPECT_EQ(AnnotateNerDates(Words("18"), cfg), (Tags{"O"}));
  EXPECT_EQ(AnnotateNerDates(Words("babu komai"), cfg), (Tags{"O", "O"}));
}

TEST(DateAnnotatorTest, DigitWithinGapAndConjunctions) {
  DateRuleConfig cfg = DateRuleConfig::Hausa();
  // Digit two tokens after the keyword joins; one further does not.
  EXPECT_EQ(AnnotateNerDates(Words("ranar Litinin 18 ne"), cfg),
            (Tags{"B-DATE", "I-DATE", "I-DATE", "O"}));
  cfg.max_gap = 1;
  EXPECT_EQ(AnnotateNerDates(Words("ranar Litinin 18 ne"), cfg), (Tags{"B-DATE", "O", "O", "O"}));
  cfg = DateRuleConfig::Hausa();
  // Period joined by a conjunction, without keywords.
  EXPECT_EQ(ExtractSpans(AnnotateNerDates(Words("tsakanin Yuli 2019 zuwa Maris 2020"), cfg)),
            (std::vector<Span>{{"DATE", 1, 5}}));
  cfg.month_opens_span = false;
  EXPECT_TRUE(ExtractSpans(AnnotateNerDates(Words("tsakanin Yuli 2019 zuwa Maris 2020"), cfg)).empty());
}

TEST(DateAnnotatorTest, YorubaKeywords) {
  Tags tags = AnnotateNerDates(Words("ọjọ́ 18 oṣù Ọ̀pẹ̀, ọdún 2019"), DateRuleConfig::Yoruba());
  EXPECT_EQ(ExtractSpans(tags), (std::vector<Span>{{"DATE", 0, 6}}));
}

TEST(MergeTest, LongerSpanThenPriority) {
  LabelPriority priority;
  EXPECT_EQ(MergeTagLayers({{"B-PER", "I-PER", "O"}, {"B-LOC", "O", "O"}}, priority),
            (Tags{"B-PER", "I-PER", "O"}));
  EXPECT_EQ(MergeTagLayers({{"O", "O", "B-LOC"}, {"O", "O", "B-PER"}}, priority),
            (Tags{"O", "O", "B-PER"}));
  Tags single = {"B-ORG", "I-ORG", "O", "B-DATE"};
  EXPECT_EQ(MergeTagLayers({single}, priority), single);
  EXPECT_THROW(MergeTagLayers({{"O"}, {"O", "O"}}, priority), std::invalid_argument);
}

TEST(MergeTest, PartiallyOverriddenSpanIsReheaded) {
  // LOC(2,5) outranks PER(0,2) on token 2; PER keeps tokens 0-1.
  Tags merged = MergeTagLayers({{"B-PER", "I-PER", "I-PER", "O", "O", "O"},
                                {"O", "O", "B-LOC", "I-LOC", "I-LOC", "I-LOC"}});
  EXPECT_EQ(merged, (Tags{"B-PER", "I-PER", "B-LOC", "I-LOC", "I-LOC", "I-LOC"}));
  Tags tail = MergeTagLayers({{"O", "B-DATE", "I-DATE", "I-DATE", "I-DATE"},
                              {"B-ORG", "I-ORG", "O", "O", "O"}});
  EXPECT_EQ(tail, (Tags{"B-ORG", "B-DATE", "I-DATE", "I-DATE", "I-DATE"}));
}

TEST(MergeTest, OutputIsStrictBio2) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Tags> layers;
    size_t n = 1 + gen() % 10;
    for (int l = 0; l < 3; ++l) layers.push_back(testing::RandomBioTags(gen, n, {"PER", "LOC", "DATE"}));
    EXPECT_TRUE(IsStrictBio2(MergeTagLayers(layers)));
  }
}

TopicRuleConfig TopicConfig() {
  TopicRuleConfig cfg;
  std::vector<std::string> warnings;
  cfg.dictionaries.push_back(ParseClassDictionary("arsenal\nchelsea\nfifa\n", "Sport", &warnings));
  cfg.dictionaries.push_back(ParseClassDictionary("kano\nbuhari\n", "Nigeria", &warnings));
  cfg.dictionaries.push_back(ParseClassDictionary("trump\nmajalisar dinkin\n", "World", &warnings));
  cfg.stage_one = ParseStageOneKeywords("cutar\tHealth\ninec\tPolitics\n", {});
  return cfg;
}

TEST(TopicAnnotatorTest, MajorityVote) {
  TopicRuleConfig cfg = TopicConfig();
  Rng rng(1);
  EXPECT_EQ(AnnotateTopic(Words("Arsenal da Chelsea a Kano"), cfg, rng), "Sport");
  EXPECT_EQ(AnnotateTopic(Words("Majalisar Dinkin Duniya"), cfg, rng), "World");
  EXPECT_EQ(AnnotateTopic(Words("babu komai"), cfg, rng), std::nullopt);
  cfg.abstain_on_empty = false;
  EXPECT_TRUE(AnnotateTopic(Words("babu komai"), cfg, rng).has_value());
}

TEST(TopicAnnotatorTest, StageOneDominates) {
  TopicRuleConfig cfg = TopicConfig();
  Rng rng(1);
  EXPECT_EQ(AnnotateTopic(Words("Arsenal Chelsea FIFA cutar"), cfg, rng), "Health");
  EXPECT_EQ(AnnotateTopic(Words("INEC ta sanar"), cfg, rng), "Politics");
  // Health is listed first.
  EXPECT_EQ(AnnotateTopic(Words("inec cutar"), cfg, rng), "Health");
}

TEST(TopicAnnotatorTest, TiesDeterministicPerSeed) {
  TopicRuleConfig cfg = TopicConfig();
  Sentence tie = Words("Arsenal Trump");
  std::map<std::string, int> seen;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Rng a(seed), b(seed);
    auto x = AnnotateTopic(tie, cfg, a);
    EXPECT_EQ(x, AnnotateTopic(tie, cfg, b));
    ASSERT_TRUE(x.has_value());
    ++seen[*x];
  }
  EXPECT_EQ(seen.size(), 2u);
  EXPECT_GT(seen["Sport"], 0);
  EXPECT_GT(seen["World"], 0);
}

TEST(ApplyRulesTest, NerComposition) {
  Dataset d = ParseConll("Buhari\tB-PER\nya\tO\nje\tO\nKano\tB-LOC\nranar\tB-DATE\n18\tI-DATE\n");
  NerRuleConfig cfg;
  cfg.gazetteers = {MakeGazetteer("LOC", {"Kano"}), MakeGazetteer("PER", {"Buhari"})};
  cfg.dates = DateRuleConfig::Hausa();
  AnnotationResult r = ApplyRules(d, cfg);
  EXPECT_EQ(*r.dataset.sentences[0].weak_tags,
            (Tags{"B-PER", "O", "O", "B-LOC", "B-DATE", "I-DATE"}));
  EXPECT_EQ(r.dataset.sentences[0].gold_tags, d.sentences[0].gold_tags);
  EXPECT_EQ(ApplyRules(d, cfg).dataset, r.dataset);
  EXPECT_THROW(ApplyRules(ParseTopicTsv("A\tb\n"), cfg), std::invalid_argument);
}

TEST(ApplyRulesTest, TopicAbstainAndDeterminism) {
  Dataset d = ParseTopicTsv("Sport\tbabu komai\nWorld\twani abu\n");
  AnnotationResult r = ApplyRules(d, TopicConfig());
  EXPECT_EQ(r.abstained, 2u);
  EXPECT_EQ(r.warnings.size(), 1u);
  EXPECT_TRUE(r.dataset.sentences[0].abstained);

  Dataset ties = ParseTopicTsv("Sport\tArsenal Trump\nWorld\tChelsea Trump\nSport\tFIFA Trump\n");
  TopicRuleConfig cfg = TopicConfig();
  cfg.tie_seed = 42;
  EXPECT_EQ(ApplyRules(ties, cfg).dataset, ApplyRules(ties, cfg).dataset);
  EXPECT_EQ(ApplyRules(ties, cfg).abstained, 0u);
}

}  // namespace
}  // namespace weaksup
