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

#include "weaksup/experiment.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "oracles.h"
#include "weaksup/errors.h"

namespace weaksup {
namespace {

Metrics DevWithZeros(size_t zeros) {
  Metrics m;
  for (size_t i = 0; i < 4; ++i) {
    LabelScore s;
    s.label = "C" + std::to_string(i);
    s.f1 = i < zeros ? 0.0 : 0.5;
    m.per_label.push_back(s);
  }
  return m;
}

class CurveTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::SyntheticTopicOptions opt;
    opt.train = 40;
    opt.dev = 30;
    opt.test = 30;
    task_ = testing::MakeSyntheticTopicTask(3, opt);
    data_.task = Task::kTopic;
    data_.train = task_.train;
    data_.dev = task_.dev;
    data_.test = task_.test;
    config_.task = Task::kTopic;
    config_.sizes = {5, 10};
    config_.seeds = 2;
    config_.master_seed = 77;
    config_.methods = {Method::kClean, Method::kSmoothChannel};
  }

  testing::SyntheticTopicTask task_;
  CurveData data_;
  ExperimentConfig config_;
};

std::set<std::string> Surfaces(const Dataset &d) {
  std::set<std::string> out;
  for (const Sentence &s : d.sentences) {
    std::string key;
    for (const Token &t : s.tokens) key += t.surface + ' ';
    out.insert(key);
  }
  return out;
}

TEST_F(CurveTest, SubsetsAreNestedSharedAndPartitionTrain) {
  std::vector<RunRequest> requests;
  RunCurve(config_, data_, [&](const RunRequest &r) {
    requests.push_back(r);
    return RunOutcome{DevWithZeros(0), {}, 0.5};
  });
  ASSERT_EQ(requests.size(), 8u);
  for (const RunRequest &r : requests) {
    EXPECT_EQ(r.clean.size(), r.size);
    EXPECT_EQ(r.clean.size() + r.noisy.size(), 40u);
    EXPECT_EQ(r.attempt, 0u);
    for (const Sentence &s : r.noisy.sentences) EXPECT_TRUE(s.weak_class.has_value());
    // Dev shrinks with the clean subset.
    EXPECT_LT(r.dev.size(), 30u);
  }
  for (const RunRequest &small : requests) {
    for (const RunRequest &large : requests) {
      if (small.seed_index != large.seed_index || small.size > large.size) continue;
      std::set<std::string> a = Surfaces(small.clean), b = Surfaces(large.clean);
      EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    }
  }
  // Same subset across methods, different subset across seeds.
  EXPECT_EQ(Surfaces(requests[0].clean), Surfaces(requests[4].clean));
  EXPECT_NE(Surfaces(requests[0].clean), Surfaces(requests[1].clean));
  EXPECT_EQ(requests[0].train_seed, requests[4].train_seed);
  EXPECT_NE(requests[0].train_seed, requests[2].train_seed);
}

TEST_F(CurveTest, FlaggedRunIsReseeded) {
  std::vector<RunRequest> requests;
  CurveResult result = RunCurve(config_, data_, [&](const RunRequest &r) {
    requests.push_back(r);
    bool degenerate = r.seed_index == 1 && r.size == 5 && r.attempt < 2;
    return RunOutcome{DevWithZeros(degenerate ? 2 : 1), {}, 0.1 * (r.attempt + 1)};
  });
  EXPECT_EQ(result.reseeds, 4u);
  EXPECT_EQ(requests.size(), 12u);
  ASSERT_EQ(result.runs.size(), 8u);
  EXPECT_EQ(result.runs[1].attempts, 3u);
  EXPECT_NEAR(result.runs[1].test_f1, 0.3, 1e-15);
  EXPECT_NE(Surfaces(requests[1].clean), Surfaces(requests[2].clean));
}

TEST_F(CurveTest, PersistentFlagFails) {
  size_t calls = 0;
  auto always = [&](const RunRequest &) {
    ++calls;
    return RunOutcome{DevWithZeros(3), {}, 0.0};
  };
  EXPECT_THROW(RunCurve(config_, data_, always), FlaggedRunError);
  EXPECT_EQ(calls, 4u);
  config_.convergence_filter = false;
  calls = 0;
  EXPECT_NO_THROW(RunCurve(config_, data_, always));
  EXPECT_EQ(calls, 8u);
}

TEST_F(CurveTest, FilterDefaultsByTask) {
  EXPECT_TRUE(config_.FilterEnabled());
  ExperimentConfig ner;
  EXPECT_FALSE(ner.FilterEnabled());
}

TEST_F(CurveTest, CsvShape) {
  config_.methods = {Method::kClean};
  CurveResult result = RunCurve(config_, data_, [](const RunRequest &r) {
    return RunOutcome{DevWithZeros(0), {}, r.seed_index == 0 ? 0.5 : 0.7};
  });
  std::string csv = CurveCsv(result);
  EXPECT_EQ(csv,
            "setting,size,seed,f1\n"
            "clean,5,0,0.500000\nclean,5,1,0.700000\nclean,10,0,0.500000\nclean,10,1,0.700000\n"
            "\nsetting,size,mean_f1,stderr\n"
            "clean,5,0.600000,0.100000\nclean,10,0.600000,0.100000\n");
}

TEST_F(CurveTest, RejectsBadLadder) {
  auto run = [](const RunRequest &) { return RunOutcome{}; };
  config_.sizes = {10, 5};
  EXPECT_THROW(RunCurve(config_, data_, run), std::invalid_argument);
  config_.sizes = {41};
  EXPECT_THROW(RunCurve(config_, data_, run), std::invalid_argument);
  config_.sizes = {5, 0};
  EXPECT_NO_THROW(RunCurve(config_, data_, run));
}

TEST_F(CurveTest, RealRunsAreByteReproducible) {
  config_.schedule = TrainSchedule::ForTask(Task::kTopic);
  config_.schedule.epochs = 5;
  config_.convergence_filter = false;
  config_.methods = {Method::kClean, Method::kDistant, Method::kChannel, Method::kSmoothChannel};
  RunFunction run = MakeTrainingRunner(config_, data_, task_.embeddings);
  std::string a = CurveCsv(RunCurve(config_, data_, run));
  std::string b = CurveCsv(RunCurve(config_, data_, run));
  EXPECT_EQ(a, b);
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 1 + 16 + 1 + 1 + 8);
  config_.master_seed = 78;
  EXPECT_NE(CurveCsv(RunCurve(config_, data_, run)), a);
}

TEST(MethodTest, Names) {
  for (Method m : {Method::kClean, Method::kDistant, Method::kChannel, Method::kSmoothChannel}) {
    EXPECT_EQ(ParseMethod(MethodName(m)), m);
  }
  EXPECT_EQ(MethodName(Method::kSmoothChannel), "ds_cm_smooth");
  EXPECT_THROW(ParseMethod("bogus"), std::invalid_argument);
}

TEST(SizesTest, Parse) {
  EXPECT_EQ(ParseSizes("10,20, 50 full"), (std::vector<size_t>{10, 20, 50, 0}));
  EXPECT_THROW(ParseSizes("10,x"), std::invalid_argument);
  EXPECT_THROW(ParseSizes("0"), std::invalid_argument);
  EXPECT_THROW(ParseSizes(""), std::invalid_argument);
}

TEST(ConfigTest, LoadsExperimentSection) {
  auto dir = std::filesystem::temp_directory_path() / "weaksup_experiment_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "exp.ini") << "[experiment]\ntask = topic\ntrain = t.tsv\ndev = d.tsv\n"
                                    "test = e.tsv\nembeddings = /abs/emb.vec\nsizes = 10,full\n"
                                    "seeds = 3\nmethods = clean, ds_cm_smooth\nepochs = 7\n"
                                    "beta = 0.5\nconvergence_filter = false\n";
  ExperimentConfig c = LoadExperimentConfig(dir / "exp.ini");
  EXPECT_EQ(c.task, Task::kTopic);
  EXPECT_EQ(c.train, dir / "t.tsv");
  EXPECT_EQ(c.embeddings, "/abs/emb.vec");
  EXPECT_EQ(c.sizes, (std::vector<size_t>{10, 0}));
  EXPECT_EQ(c.seeds, 3u);
  EXPECT_EQ(c.methods, (std::vector<Method>{Method::kClean, Method::kSmoothChannel}));
  EXPECT_EQ(c.schedule.epochs, 7u);
  EXPECT_EQ(c.schedule.learning_rate, 0.1);
  EXPECT_EQ(c.beta, 0.5);
  EXPECT_FALSE(c.FilterEnabled());
  std::ofstream(dir / "bad.ini") << "[experiment]\ntask = topic\n";
  EXPECT_THROW(LoadExperimentConfig(dir / "bad.ini"), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST(WeakLayerTest, AttachAndEstimate) {
  Dataset gold{Task::kTopic};
  Dataset weak{Task::kTopic};
  for (const char *c : {"A", "A", "B", "B"}) {
    Sentence s = MakeSentence({"x"});
    s.gold_class = c;
    gold.sentences.push_back(s);
  }
  for (const char *c : {"A", "B", "B", "B"}) {
    Sentence s = MakeSentence({"x"});
    s.gold_class = c;
    weak.sentences.push_back(s);
  }
  gold.label_set = weak.label_set = {"A", "B"};
  Dataset both = AttachWeakLayer(gold, weak);
  EXPECT_EQ(*both.sentences[1].weak_class, "B");
  ConfusionMatrix cm = EstimateFromDataset(both, {"A", "B"}, std::nullopt);
  EXPECT_DOUBLE_EQ(cm(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(cm(1, 1), 1.0);
  weak.sentences.pop_back();
  EXPECT_THROW(AttachWeakLayer(gold, weak), DataError);
}

}  // namespace
}  // namespace weaksup
