// Copyright 2026 The mlime Authors.
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

#include "mlime/personal.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "mlime/decode.hpp"
#include "support/oracles.hpp"

namespace mlime {
namespace {

std::shared_ptr<const NGramModel> toy_base() {
  static const auto m = std::make_shared<const NGramModel>(
      train_ngram({{"the", "cat"}, {"the", "dog"}, {"a", "cat"}}, 2));
  return m;
}

TEST(PersonalDictTest, CommitCounts) {
  PersonalDict d;
  d.learn_commit("foo", nullptr, 1);
  EXPECT_EQ(d.count("foo"), 1u);
  d.learn_commit("foo", nullptr, 5);
  d.learn_commit("foo", nullptr, 3);
  EXPECT_EQ(d.count("foo"), 3u);
  EXPECT_EQ(d.words().at("foo").last_used, 5);
  EXPECT_EQ(d.total(), 3u);
}

TEST(PersonalDictTest, WordsAreStoredComposed) {
  PersonalDict d;
  d.learn_commit("cafe\u0301", nullptr, 0);
  EXPECT_TRUE(d.contains("caf\u00e9"));
  EXPECT_FALSE(d.contains("cafe\u0301"));
}

TEST(PersonalDictTest, InventoryViolation) {
  const auto inv = testing::profile_for("en").inventory;
  PersonalDict d;
  d.learn_commit("Hello", &inv, 0);
  try {
    d.learn_commit("kanə", &inv, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "InventoryViolation");
    EXPECT_EQ(e.element(), "kanə");
  }
  EXPECT_FALSE(d.contains("kanə"));
  EXPECT_THROW(d.learn_commit("", nullptr, 0), Error);
}

TEST(PersonalDictTest, InventoryFilterAgreesWithNormalize) {
  // A word is inventory-clean exactly when normalization keeps it whole.
  for (const auto& tag : testing::bundled_languages()) {
    const auto profile = testing::profile_for(tag);
    for (const char* w : {"kanə", "ҕаҕа", "dog", "Straße", "makan-makan", "नमस्ते", "über"}) {
      const auto n = normalize(w, profile);
      const bool kept = n.tokens.size() == 1 && n.report.empty();
      PersonalDict d;
      bool accepted = true;
      try {
        d.learn_commit(w, &profile.inventory, 0);
      } catch (const Error&) {
        accepted = false;
      }
      EXPECT_EQ(accepted, kept) << tag << " " << w;
    }
  }
}

TEST(PersonalDictTest, RevertCountsAndLearnsTheLiteral) {
  PersonalDict d;
  d.learn_revert("akn", "akin", nullptr, 1);
  EXPECT_EQ(d.revert_count("akn", "akin"), 1u);
  EXPECT_TRUE(d.contains("akn"));
  EXPECT_TRUE(d.blocked("akn", "akin"));
  EXPECT_FALSE(d.blocked("akin", "akn"));
  d.learn_revert("akn", "akin", nullptr, 2);
  EXPECT_EQ(d.revert_count("akn", "akin"), 2u);
  EXPECT_EQ(d.count("akn"), 2u);
  d.learn_revert("same", "same", nullptr, 3);
  EXPECT_TRUE(d.blocklist().size() == 1);
}

TEST(PersonalDictTest, BlockedPairAlwaysCommitsTheLiteral) {
  const auto profile = testing::profile_for("en");
  PersonalDict d;
  d.learn_revert("akn", "akin", nullptr, 0);
  for (double margin : {0.1, 5.0, 100.0}) {
    const std::vector<Suggestion> s = {{"akin", -1.0, SuggestionKind::kCorrection},
                                       {"akn", -1.0 - margin, SuggestionKind::kLiteral}};
    EXPECT_EQ(commit_policy(s, profile, &d), "akn");
    EXPECT_EQ(commit_policy(s, profile, nullptr), margin > commit_threshold(profile) ? "akin" : "akn");
  }
}

TEST(PersonalizedProbTest, EmptyDictIsTheBaseModelExactly) {
  const PersonalDict d;
  const std::vector<std::string> c = {"the"};
  for (const auto& w : toy_base()->vocabulary()) {
    EXPECT_EQ(personalized_prob(*toy_base(), d, w, c), toy_base()->prob(w, c));
  }
}

TEST(PersonalizedProbTest, DictionaryOnlyWordHoldsHalfTheMass) {
  PersonalDict d;
  for (int i = 0; i < 100; ++i) d.learn_commit("zork", nullptr, i);
  EXPECT_DOUBLE_EQ(d.lambda(), 0.5);
  EXPECT_DOUBLE_EQ(personalized_prob(*toy_base(), d, "zork", {}), 0.5);
}

TEST(PersonalizedProbTest, MixtureOfBaseAndDictionary) {
  PersonalDict d;
  d.learn_commit("cat", nullptr, 0);
  d.learn_commit("zork", nullptr, 0);
  d.learn_commit("zork", nullptr, 0);
  const double lambda = 3.0 / 103.0;
  const std::vector<std::string> c = {"the"};
  EXPECT_NEAR(personalized_prob(*toy_base(), d, "cat", c),
              (1 - lambda) * toy_base()->prob("cat", c) + lambda / 3.0, 1e-15);
  EXPECT_NEAR(personalized_prob(*toy_base(), d, "zork", c), lambda * 2.0 / 3.0, 1e-15);
}

TEST(PersonalizedProbTest, NormalizedOverBaseAndDictionary) {
  std::mt19937 rng(3);
  const auto extra = testing::pseudo_words(30, 9);
  for (int trial = 0; trial < 50; ++trial) {
    auto d = std::make_shared<PersonalDict>();
    const int n = static_cast<int>(rng() % 400);
    for (int i = 0; i < n; ++i) {
      const bool known = rng() % 3 == 0;
      d->learn_commit(known ? std::string("cat") : extra[rng() % extra.size()], nullptr, i);
    }
    const PersonalizedModel m(toy_base(), d);
    for (const auto& ctx : std::vector<std::vector<std::string>>{{}, {"the"}, {"a"}, {"zzz"}}) {
      EXPECT_NEAR(testing::total_mass(m, ctx), 1.0, 1e-6);
    }
  }
}

TEST(PersonalizedProbTest, LambdaScheduleIsBoundedAndMonotone) {
  PersonalDict d;
  double prev = d.lambda();
  EXPECT_EQ(prev, 0.0);
  for (int i = 1; i <= 500; ++i) {
    d.learn_commit("w" + std::to_string(i % 7), nullptr, i);
    const double l = d.lambda();
    EXPECT_GE(l, prev);
    EXPECT_LE(l, 0.5);
    EXPECT_DOUBLE_EQ(l, std::min(0.5, i / (i + 100.0)));
    prev = l;
  }
}

TEST(PersonalizedModelTest, VocabularyAndKinds) {
  auto d = std::make_shared<PersonalDict>();
  d->learn_commit("zork", nullptr, 0);
  d->learn_commit("cat", nullptr, 0);
  const PersonalizedModel m(toy_base(), d);
  EXPECT_TRUE(m.contains("zork"));
  EXPECT_EQ(m.vocabulary().size(), toy_base()->vocabulary().size() + 1);
  EXPECT_EQ(m.context_size(), 1u);
}

TEST(PersonalDictTest, LearnedWordIsNeverFlagged) {
  Wordlist lexicon;
  lexicon.counts = {{"cat", 3}, {"dog", 2}};
  PersonalDict d;
  for (const auto& w : testing::pseudo_words(200, 4)) {
    if (lexicon.contains(w)) continue;
    EXPECT_TRUE(spell_check(w, lexicon, &d).flagged) << w;
    d.learn_commit(w, nullptr, 0);
    EXPECT_FALSE(spell_check(w, lexicon, &d).flagged) << w;
  }
}

// ---------------------------------------------------------------------------
// Persistence

PersonalDict random_dict(std::mt19937& rng) {
  PersonalDict d;
  const auto words = testing::pseudo_words(20, rng());
  const int n = static_cast<int>(rng() % 60);
  for (int i = 0; i < n; ++i) {
    const auto& w = words[rng() % words.size()];
    if (rng() % 4 == 0) {
      d.learn_revert(w, words[rng() % words.size()], nullptr, static_cast<std::int64_t>(rng()));
    } else {
      d.learn_commit(w, nullptr, static_cast<std::int64_t>(rng()));
    }
  }
  d.learn_commit("ҕаҕа", nullptr, -5);
  return d;
}

TEST(PersistenceTest, SaveThenLoadIsIdentity) {
  const auto dir = std::filesystem::temp_directory_path() / "mlime_personal_test";
  std::filesystem::remove_all(dir);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const PersonalDict d = random_dict(rng);
    const auto path = dir / ("u" + std::to_string(trial)) / "dict.tsv";
    d.save(path);
    const PersonalDict back = PersonalDict::load(path);
    EXPECT_EQ(back, d);
    EXPECT_EQ(back.serialize(), d.serialize());
    EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  }
  EXPECT_EQ(PersonalDict::load(dir / "missing.tsv"), PersonalDict());
  std::filesystem::remove_all(dir);
}

TEST(PersistenceTest, ParseErrorsNameTheLine) {
  auto line_of = [](const std::string& text) {
    try {
      PersonalDict::parse(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), "FormatError");
      return e.element();
    }
    return std::string("none");
  };
  EXPECT_EQ(line_of("[words]\nfoo\t1\t0\nbar\t0\t0\n"), "line 3");
  EXPECT_EQ(line_of("[words]\nfoo\tx\t0\n"), "line 2");
  EXPECT_EQ(line_of("foo\t1\t0\n"), "line 1");
  EXPECT_EQ(line_of("[blocklist]\na\ta\t1\n"), "line 2");
  EXPECT_EQ(line_of("# c\n[words]\nfoo\t1\n"), "line 3");
}

TEST(DecayTest, HalvesCountsPastTheThreshold) {
  PersonalDict d(DecayPolicy{true, 10});
  for (int i = 0; i < 8; ++i) d.learn_commit("a", nullptr, i);
  d.learn_commit("b", nullptr, 0);
  d.learn_commit("c", nullptr, 0);
  d.learn_commit("c", nullptr, 0);  // total 11 > 10
  EXPECT_EQ(d.count("a"), 4u);
  EXPECT_FALSE(d.contains("b"));
  EXPECT_EQ(d.count("c"), 1u);
  EXPECT_EQ(d.total(), 5u);
  PersonalDict off;
  for (int i = 0; i < 20000; ++i) off.learn_commit("a", nullptr, i);
  EXPECT_EQ(off.count("a"), 20000u);
}

}  // namespace
}  // namespace mlime
