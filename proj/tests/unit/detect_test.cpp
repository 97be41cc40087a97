// Copyright 2026 The mimkit Authors
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

#include <gtest/gtest.h>

#include "common/error.hpp"
#include "corpus/corpus_io.hpp"
#include "detect/detector.hpp"
#include "detect/lexicon.hpp"
#include "perturb/engine.hpp"
#include "support/support.hpp"

namespace mim::detect {
namespace {

using corpus::Metrics;
using corpus::TweetDocument;

ValenceLexicon bundled() { return ValenceLexicon::load(testing::asset("lexicon/valence.json")); }

TweetDocument doc(std::string body, std::vector<std::string> tags = {}, Metrics m = {8, 40, 137}) {
  TweetDocument d;
  d.id = "t1";
  d.author = "@a";
  d.body = std::move(body);
  d.hashtags = std::move(tags);
  d.metrics = m;
  return d;
}

double weight(bool inversion, bool factor, bool flips, std::size_t edits) {
  return std::min(1.0, 0.25 * inversion + 0.25 * factor + 0.25 * flips +
                           0.25 * std::min(1.0, static_cast<double>(edits) / 4.0));
}

TEST(MetricFactor, PaperQuadrupling) {
  EXPECT_EQ(estimate_metric_factor({8, 40, 137}, {32, 160, 548}), Rational::make(4, 1));
}

TEST(MetricFactor, Unchanged) { EXPECT_EQ(estimate_metric_factor({10, 10, 10}, {10, 10, 10}), std::nullopt); }

TEST(MetricFactor, Inconsistent) {
  EXPECT_EQ(estimate_metric_factor({8, 40, 137}, {16, 160, 548}), std::nullopt);
}

TEST(MetricFactor, FractionalAndRounded) {
  EXPECT_EQ(estimate_metric_factor({2, 4, 6}, {3, 6, 9}), Rational::make(3, 2));
  EXPECT_EQ(estimate_metric_factor({12, 45, 150}, {24, 90, 300}), Rational::make(2, 1));
  EXPECT_EQ(estimate_metric_factor({4, 8, 12}, {2, 4, 6}), Rational::make(1, 2));
  EXPECT_EQ(estimate_metric_factor({0, 0, 0}, {1, 0, 0}), std::nullopt);
}

// Property: whenever the metrics were scaled by p/q in range, the estimate
// reproduces the same delivered counts.
TEST(MetricFactorProperty, EstimateReproducesCounts) {
  testing::Gen gen(17);
  for (int trial = 0; trial < 3000; ++trial) {
    const Metrics m{gen.uniform(0, 300), gen.uniform(0, 300), gen.uniform(0, 300)};
    const Rational f = Rational::make(gen.uniform(1, 64), gen.uniform(1, 64));
    const Metrics d = perturb::scale_metrics(m, f);
    const auto est = estimate_metric_factor(m, d);
    if (d == m) {
      ASSERT_FALSE(est);
      continue;
    }
    ASSERT_TRUE(est) << f.to_string();
    ASSERT_EQ(perturb::scale_metrics(m, *est), d);
    ASSERT_LE(est->den, f.den);
  }
}

TEST(Classify, WrongToRightIsInversion) {
  const ValenceLexicon lex = bundled();
  perturb::EditLog edits = recover_body_edits("you are wrong", "you are right");
  const DetectionReport r = classify(edits, {}, std::nullopt, lex);
  EXPECT_TRUE(r.valence_inversion);
  EXPECT_DOUBLE_EQ(r.severity, weight(true, false, false, 1));
}

TEST(Classify, NegatorDeletionIsInversion) {
  const DetectionReport r =
      classify(recover_body_edits("do not cause", "do cause"), {}, std::nullopt, bundled());
  EXPECT_TRUE(r.valence_inversion);
}

TEST(Classify, NeutralSubstitutionIsNot) {
  const DetectionReport r = classify(recover_body_edits("a red car", "a blue car"), {}, std::nullopt, bundled());
  EXPECT_FALSE(r.valence_inversion);
  EXPECT_DOUBLE_EQ(r.severity, 0.0625);
}

TEST(Classify, CleanIsZero) {
  const DetectionReport r = classify({}, {}, std::nullopt, bundled());
  EXPECT_EQ(r.severity, 0.0);
  EXPECT_FALSE(r.valence_inversion);
}

TEST(Classify, SeverityIsMonotone) {
  const ValenceLexicon lex = bundled();
  const perturb::EditLog one = recover_body_edits("a b c d e", "a x c d e");
  const perturb::EditLog many = recover_body_edits("a b c d e", "x y z w e");
  const std::vector<HashtagFlip> flips = {{"#a", "#b"}};
  const double base = classify(one, {}, std::nullopt, lex).severity;
  EXPECT_LE(base, classify(many, {}, std::nullopt, lex).severity);
  EXPECT_LE(base, classify(one, flips, std::nullopt, lex).severity);
  EXPECT_LE(base, classify(one, {}, Rational::make(2, 1), lex).severity);
}

TEST(Detect, StudyPerturbationOfBundledSample) {
  const corpus::Corpus c = corpus::load_corpus(testing::asset("corpus/sample.jsonl"));
  const TweetDocument& original = *corpus::find_document(c, "study-original");
  const perturb::Rewrite out = perturb::apply_ruleset(perturb::Thread{original, {}},
                                                      perturb::load_ruleset(testing::asset("rules/study.json")));
  const TweetDocument& delivered = out.thread.root;
  const DetectionReport r = detect(original, delivered, bundled());
  EXPECT_TRUE(r.valence_inversion);
  EXPECT_EQ(r.metric_factor, Rational::make(4, 1));
  ASSERT_EQ(r.hashtag_flips.size(), 2u);
  EXPECT_EQ(r.hashtag_flips[0], (HashtagFlip{"#provax", "#antivax"}));
  EXPECT_EQ(r.hashtag_flips[1], (HashtagFlip{"#vaccineswork", "#vaccinesdontwork"}));
  EXPECT_DOUBLE_EQ(r.severity, weight(true, true, true, r.edits.size()));
  EXPECT_DOUBLE_EQ(r.severity, 1.0);
  EXPECT_EQ(perturb::replay(original, r.edits), delivered);
}

TEST(Detect, RejectsDifferentTweets) {
  TweetDocument a = doc("x");
  TweetDocument b = a;
  b.author = "@other";
  EXPECT_THROW(detect(a, b, bundled()), Error);
  b = a;
  b.id = "t2";
  EXPECT_THROW(detect(a, b, bundled()), Error);
}

TEST(Detect, WhitespaceOnlyChangeReplays) {
  const TweetDocument a = doc("a  b\nc");
  const TweetDocument b = doc("a b c");
  const DetectionReport r = detect(a, b, bundled());
  EXPECT_FALSE(r.edits.empty());
  EXPECT_EQ(perturb::replay(a, r.edits), b);
  EXPECT_GT(r.severity, 0.0);
}

TEST(Detect, LexiconRejectsAsymmetricPairs) {
  ValenceLexicon lex;
  lex.add_pair("wrong", "right");
  EXPECT_THROW(lex.add_pair("right", "left"), Error);
  EXPECT_THROW(lex.add_pair("same", "SAME"), Error);
  EXPECT_EQ(lex.opposite("Right"), "wrong");
}

TEST(Detect, BundledLexiconIsSymmetric) {
  const ValenceLexicon lex = bundled();
  for (const std::string t : {"wrong", "right", "many", "no", "#provax", "#antivax", "work", "dontwork"}) {
    const auto o = lex.opposite(t);
    ASSERT_TRUE(o) << t;
    EXPECT_EQ(lex.opposite(*o), t);
  }
  EXPECT_TRUE(lex.is_negator("not"));
  EXPECT_TRUE(lex.is_negator("Don't"));
}

TEST(Detect, JsonShape) {
  const DetectionReport r = detect(doc("a", {}, {1, 1, 1}), doc("b", {}, {2, 2, 2}), bundled());
  const auto j = to_json(r);
  EXPECT_EQ(j["metric_factor"]["num"], 2);
  EXPECT_EQ(j["metric_factor"]["den"], 1);
  EXPECT_TRUE(j["edits"].is_array());
  EXPECT_TRUE(j.contains("severity"));
  EXPECT_TRUE(to_json(detect(doc("a"), doc("a"), bundled()))["metric_factor"].is_null());
}

// Property: the recovered script replays onto the original to give exactly
// what was delivered, for perturbations made by the engine.
TEST(DetectProperty, RoundTripRecovery) {
  testing::Gen gen(1234);
  const ValenceLexicon lex = bundled();
  for (int trial = 0; trial < 1000; ++trial) {
    const corpus::Corpus docs = gen.thread("r", 2);
    const perturb::ThreadIndex idx = perturb::group_threads(docs);
    const perturb::Rewrite out = perturb::apply_ruleset(idx.threads[0], gen.ruleset_for(docs, 5));
    for (std::size_t i = 0; i <= idx.threads[0].comments.size(); ++i) {
      const TweetDocument& a = i == 0 ? idx.threads[0].root : idx.threads[0].comments[i - 1];
      const TweetDocument& b = i == 0 ? out.thread.root : out.thread.comments[i - 1];
      const DetectionReport r = detect(a, b, lex);
      ASSERT_EQ(perturb::replay(a, r.edits), b) << corpus::serialize_document(a) << "\n"
                                                << corpus::serialize_document(b);
      ASSERT_EQ(r.severity == 0.0, a == b);
    }
  }
}

// Property: arbitrary unrelated bodies also round-trip (the whole-body
// fallback included).
TEST(DetectProperty, RoundTripOnUnrelatedBodies) {
  testing::Gen gen(77);
  const ValenceLexicon lex = bundled();
  for (int trial = 0; trial < 1000; ++trial) {
    TweetDocument a = gen.document("x");
    TweetDocument b = gen.document("x");
    b.author = a.author;
    b.verified = a.verified;
    const DetectionReport r = detect(a, b, lex);
    ASSERT_EQ(corpus::serialize_document(perturb::replay(a, r.edits)), corpus::serialize_document(b))
        << corpus::serialize_document(a);
  }
}

TEST(DetectProperty, NoFalsePositivesOnBundledCorpus) {
  const corpus::Corpus c = corpus::load_corpus(testing::asset("corpus/sample.jsonl"));
  for (const TweetDocument& d : c) {
    const DetectionReport r = detect(d, d, bundled());
    EXPECT_EQ(r.severity, 0.0) << d.id;
    EXPECT_TRUE(r.edits.empty());
  }
  testing::Gen gen(8);
  for (int trial = 0; trial < 500; ++trial) {
    const TweetDocument d = gen.document("g");
    ASSERT_EQ(detect(d, d, bundled()).severity, 0.0);
  }
}

}  // namespace
}  // namespace mim::detect
