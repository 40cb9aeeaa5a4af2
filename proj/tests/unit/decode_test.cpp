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

#include "mlime/decode.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "support/oracles.hpp"

namespace mlime {
namespace {

using testing::exhaustive;
using testing::profile_for;
using testing::touch_oracle;

std::shared_ptr<const Layout> en_layout() {
  static const auto l = std::make_shared<const Layout>(testing::layout_for("en"));
  return l;
}

const SpatialModel& en_spatial() {
  static const SpatialModel s(en_layout());
  return s;
}

std::vector<TapEvent> centre_taps(const std::string& word, const SpatialModel& spatial) {
  return taps_for_word(word, spatial);
}

std::vector<TapEvent> noisy_taps(const std::string& word, const SpatialModel& spatial,
                                 double sigma_widths, std::mt19937& rng) {
  auto taps = taps_for_word(word, spatial);
  const double width = spatial.geometry().front().width;
  std::normal_distribution<double> noise(0.0, sigma_widths * width);
  for (auto& t : taps) {
    t.x += noise(rng);
    t.y += noise(rng);
  }
  return taps;
}

std::shared_ptr<const NGramModel> uniform_model(const std::vector<std::string>& words) {
  return std::make_shared<const NGramModel>(train_ngram({words}, 1));
}

std::string top(const std::vector<Suggestion>& s) { return s.front().surface; }

// ---------------------------------------------------------------------------
// Spatial model

TEST(SpatialModelTest, CentreScoresZeroAndFallsOffAsAGaussian) {
  const auto& s = en_spatial();
  for (std::size_t i = 0; i < s.geometry().size(); ++i) {
    const auto& g = s.geometry()[i];
    EXPECT_DOUBLE_EQ(s.key_loglik(i, g.cx, g.cy), 0.0);
    const double sigma = 0.4 * g.width;
    EXPECT_NEAR(s.key_loglik(i, g.cx + sigma, g.cy), -0.5 / std::log(10.0), 1e-12);
  }
  EXPECT_THROW(SpatialModel(en_layout(), 0.0), Error);
}

TEST(SpatialModelTest, GraphemeScoresMatchTheIndependentOracle) {
  for (const auto& tag : {"en", "kr", "gsw", "sah", "fy"}) {
    const auto layout = std::make_shared<const Layout>(testing::layout_for(tag));
    const SpatialModel s(layout);
    const auto inventory = profile_for(tag).inventory.required;
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const double x = u(rng);
      const double y = u(rng);
      for (const auto& g : inventory) {
        if (!layout->rules.empty()) continue;
        const double want = touch_oracle(*layout, to_u32(g), x, y);
        const double got = s.grapheme_loglik(to_u32(g), x, y);
        if (std::isinf(want)) {
          EXPECT_EQ(got, want) << tag << " " << g;
        } else {
          EXPECT_NEAR(got, want, 1e-9) << tag << " " << g;
        }
      }
    }
  }
}

TEST(SpatialModelTest, LongPressCarriesItsPenalty) {
  const auto& s = en_spatial();
  const auto* places = s.placements(U"é");
  ASSERT_NE(places, nullptr);
  for (const auto& p : *places) EXPECT_EQ(p.penalty, -1.0);
  const auto& g = s.geometry()[places->front().key];
  EXPECT_DOUBLE_EQ(s.grapheme_loglik(U"é", g.cx, g.cy), -1.0);
  EXPECT_EQ(s.layout().pages[0].keys[places->front().key].id, "e");
}

// ---------------------------------------------------------------------------
// Literal reconstruction

TEST(LiteralTest, BackspaceAndBoundaries) {
  auto taps = centre_taps("cart", en_spatial());
  taps.insert(taps.begin() + 3, TapEvent{0, 0, 0, TapKind::kBackspace, 0});
  taps.push_back({0, 0, 0, TapKind::kSpace, 0});
  taps.push_back(centre_taps("x", en_spatial())[0]);
  const auto eff = effective_taps(taps);
  std::string lit;
  for (const auto& g : literal_graphemes(eff, en_spatial())) lit += g;
  EXPECT_EQ(lit, "cat");
}

TEST(LiteralTest, CentreTapsReconstructEveryBundledWord) {
  for (const auto& tag : testing::bundled_languages()) {
    const auto assets = testing::shared_store()->get(tag);
    const SpatialModel s(assets->layout);
    for (const auto& w : candidate_words(*assets->model)) {
      // Word joiners live off the letter page; those words are typed via shorthand.
      if (w.find('-') != std::string::npos || w.find('\'') != std::string::npos) continue;
      const auto taps = taps_for_word(w, s);
      std::string lit;
      for (const auto& g : literal_graphemes(taps, s)) lit += g;
      EXPECT_EQ(lit, w) << tag;
    }
  }
}

TEST(LiteralTest, DevanagariSignsFollowTheDynamicState) {
  const auto assets = testing::shared_store()->get("hi");
  const SpatialModel s(assets->layout);
  const auto taps = taps_for_word("कि", s);
  ASSERT_EQ(taps.size(), 2u);
  const auto parts = literal_graphemes(taps, s);
  EXPECT_EQ(parts, (std::vector<std::string>{"क", "ि"}));
  // Without the consonant, the same sign key types its bare face.
  const auto alone = literal_graphemes(std::vector<TapEvent>{taps[1]}, s);
  EXPECT_NE(alone[0], "ि");
}

// ---------------------------------------------------------------------------
// decode_word

TEST(DecodeWordTest, CentreTapsOnCatUnderAUniformModel) {
  const auto model = uniform_model({"cat", "bat", "car", "hat", "cut"});
  const auto out = decode_word(centre_taps("cat", en_spatial()), {}, *model, en_spatial(),
                               profile_for("en"), 3);
  EXPECT_EQ(top(out), "cat");
  EXPECT_EQ(out.front().kind, SuggestionKind::kLiteral);
  EXPECT_LE(out.size(), 3u);
}

TEST(DecodeWordTest, EmptyTapSequence) {
  const auto model = uniform_model({"cat"});
  const std::vector<TapEvent> taps = {{0, 0, 0, TapKind::kSpace, 0}};
  try {
    decode_word(taps, {}, *model, en_spatial(), profile_for("en"), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "EmptyTapSequence");
  }
}

TEST(DecodeWordTest, TehBecomesTheAndMatchesExhaustiveScoring) {
  auto vocab = testing::pseudo_words(97, 31);
  vocab.insert(vocab.end(), {"the", "ten", "tea"});
  std::vector<std::vector<std::string>> corpus = testing::zipf_corpus(vocab, 200, 32);
  for (int i = 0; i < 300; ++i) corpus.push_back({"the"});
  const NGramModel model = train_ngram(corpus, 2);
  const auto taps = centre_taps("teh", en_spatial());
  const auto out = decode_word(taps, {}, model, en_spatial(), profile_for("en"), 100);
  EXPECT_EQ(top(out), "the");
  EXPECT_EQ(out.front().kind, SuggestionKind::kCorrection);

  const auto want = exhaustive(taps, candidate_words(model), model, en_spatial(), {}, {});
  ASSERT_EQ(out.size(), std::min<std::size_t>(100, want.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].surface, want[i].word) << i;
    EXPECT_NEAR(out[i].score, want[i].score, 1e-9) << want[i].word;
  }
}

TEST(DecodeWordTest, FrisianUnderDutchIsCorrectedAway) {
  auto store = testing::shared_store();
  const auto nl = store->get("nl");
  const auto fy = store->get("fy");
  const SpatialModel s(fy->layout);
  const auto taps = taps_for_word("dei", s);
  const auto dutch = decode_word(taps, {}, *nl->model, s, nl->profile, 3);
  EXPECT_FALSE(nl->model->contains("dei"));
  EXPECT_EQ(commit_policy(dutch, nl->profile), "de");
  const auto frisian = decode_word(taps, {}, *fy->model, s, fy->profile, 3);
  EXPECT_EQ(commit_policy(frisian, fy->profile), "dei");
}

TEST(DecodeWordTest, LiteralIsAlwaysPresent) {
  auto vocab = testing::pseudo_words(100, 40);
  const NGramModel model = train_ngram(testing::zipf_corpus(vocab, 300, 41), 2);
  const Lexicon lex(candidate_words(model), en_spatial());
  std::mt19937 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const auto taps = noisy_taps(vocab[rng() % vocab.size()], en_spatial(), 0.5, rng);
    for (std::size_t k : {1u, 2u, 5u}) {
      const auto out = decode_word(taps, {}, model, en_spatial(), profile_for("en"), k, {}, &lex);
      EXPECT_LE(out.size(), k);
      const auto lits = std::count_if(out.begin(), out.end(),
                                      [](const Suggestion& s) { return s.kind == SuggestionKind::kLiteral; });
      EXPECT_EQ(lits, 1);
      for (const auto& s : out) EXPECT_TRUE(std::isfinite(s.score));
      EXPECT_TRUE(std::is_sorted(out.begin(), out.end(), [](const Suggestion& a, const Suggestion& b) {
        return a.score > b.score;
      }));
    }
  }
}

TEST(DecodeWordTest, BeamMatchesExhaustiveTopOnNoisyTaps) {
  auto vocab = testing::pseudo_words(100, 50);
  const NGramModel model = train_ngram(testing::zipf_corpus(vocab, 400, 51), 2);
  const Lexicon lex(candidate_words(model), en_spatial());
  DecodeOptions opt;
  opt.beam_width = 100;
  std::mt19937 rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    const auto taps = noisy_taps(vocab[rng() % vocab.size()], en_spatial(), 0.3, rng);
    const std::vector<std::string> ctx = {vocab[rng() % vocab.size()]};
    const auto out = decode_word(taps, ctx, model, en_spatial(), profile_for("en"), 5, opt, &lex);
    const auto want = exhaustive(taps, candidate_words(model), model, en_spatial(), opt, ctx);
    EXPECT_EQ(top(out), want.front().word);
    EXPECT_NEAR(out.front().score, want.front().score, 1e-9);
  }
}

TEST(DecodeWordTest, DeterministicAndTranslationByZeroIsIdentity) {
  const auto assets = testing::shared_store()->get("en");
  const SpatialModel s(assets->layout);
  std::mt19937 rng(60);
  const auto words = candidate_words(*assets->model);
  for (int trial = 0; trial < 20; ++trial) {
    auto taps = noisy_taps(words[rng() % words.size()], s, 0.3, rng);
    const auto a = decode_word(taps, {}, *assets->model, s, assets->profile, 3);
    for (auto& t : taps) {
      t.x += 0.0;
      t.y += 0.0;
    }
    EXPECT_EQ(decode_word(taps, {}, *assets->model, s, assets->profile, 3), a);
  }
}

TEST(DecodeWordTest, LanguageModelHelpsOnNoisyTaps) {
  auto vocab = testing::pseudo_words(300, 70);
  const NGramModel model = train_ngram(testing::zipf_corpus(vocab, 3000, 71), 2);
  const Lexicon lex(candidate_words(model), en_spatial());
  std::mt19937 rng(72);
  int with_lm = 0;
  int literal = 0;
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    const std::string& w = vocab[rng() % 60];
    const auto taps = noisy_taps(w, en_spatial(), 0.3, rng);
    const auto out = decode_word(taps, {}, model, en_spatial(), profile_for("en"), 3, {}, &lex);
    with_lm += top(out) == w;
    for (const auto& s : out) {
      if (s.kind == SuggestionKind::kLiteral) literal += s.surface == w;
    }
  }
  EXPECT_GT(with_lm, literal);
}

// ---------------------------------------------------------------------------
// Commit rule

LanguageProfile with_leniency(double l) {
  LanguageProfile p = profile_for("en");
  p.leniency = l;
  return p;
}

TEST(CommitPolicyTest, ThresholdExamples) {
  const std::vector<Suggestion> s = {{"akin", -2.0, SuggestionKind::kCorrection},
                                     {"akn", -3.0, SuggestionKind::kLiteral}};
  EXPECT_DOUBLE_EQ(commit_threshold(with_leniency(1.0)), 2.5);
  EXPECT_EQ(commit_policy(s, with_leniency(1.0)), "akn");
  EXPECT_EQ(commit_policy(s, with_leniency(0.0)), "akin");
  const std::vector<Suggestion> only = {{"akn", -3.0, SuggestionKind::kLiteral}};
  EXPECT_EQ(commit_policy(only, with_leniency(0.0)), "akn");
  const auto d = commit_decision(s, with_leniency(0.0));
  EXPECT_EQ(d.literal, "akn");
  EXPECT_EQ(d.correction, std::optional<std::string>("akin"));
  // Predictions never replace a literal.
  const std::vector<Suggestion> pred = {{"x", 5.0, SuggestionKind::kPrediction},
                                        {"akn", -3.0, SuggestionKind::kLiteral}};
  EXPECT_EQ(commit_policy(pred, with_leniency(0.0)), "akn");
}

TEST(CommitPolicyTest, RaisingLeniencyNeverAddsCorrections) {
  std::mt19937 rng(80);
  std::uniform_real_distribution<double> u(-10.0, 0.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::vector<Suggestion> s = {{"c", u(rng), SuggestionKind::kCorrection},
                                       {"l", u(rng), SuggestionKind::kLiteral}};
    double a = std::uniform_real_distribution<double>(0, 1)(rng);
    double b = std::uniform_real_distribution<double>(0, 1)(rng);
    if (a > b) std::swap(a, b);
    if (commit_policy(s, with_leniency(a)) == "l") {
      EXPECT_EQ(commit_policy(s, with_leniency(b)), "l");
    }
    EXPECT_LE(commit_threshold(with_leniency(a)), commit_threshold(with_leniency(b)));
  }
}

// ---------------------------------------------------------------------------
// Prediction and reduplication

TEST(ReduplicationTest, ShorthandExpansion) {
  const auto id = profile_for("id");
  ASSERT_TRUE(id.reduplication_enabled);
  const auto s = expand_shorthand("makan2", id);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->surface, "makan-makan");
  EXPECT_EQ(s->kind, SuggestionKind::kReduplication);
  EXPECT_FALSE(expand_shorthand("makan", id).has_value());
  EXPECT_FALSE(expand_shorthand("2", id).has_value());
  EXPECT_FALSE(expand_shorthand("makan2", profile_for("en")).has_value());
}

TEST(ReduplicationTest, PredictionAfterMakan) {
  const auto assets = testing::shared_store()->get("id");
  const std::vector<std::string> ctx = {"saya", "makan"};
  const auto out = next_words(ctx, *assets->model, assets->profile, 5);
  const auto it = std::find_if(out.begin(), out.end(),
                               [](const Suggestion& s) { return s.surface == "makan-makan"; });
  ASSERT_NE(it, out.end());
  EXPECT_EQ(it->kind, SuggestionKind::kReduplication);
}

TEST(ReduplicationTest, DoubledFormKeepsTheLastSlot) {
  const auto assets = testing::shared_store()->get("id");
  const std::vector<std::string> ctx = {"makan"};
  const auto wide = next_words(ctx, *assets->model, assets->profile, 50);
  const auto strip = next_words(ctx, *assets->model, assets->profile, 3);
  ASSERT_EQ(strip.size(), 3u);
  EXPECT_EQ(strip[0], wide[0]);
  EXPECT_EQ(strip[1], wide[1]);
  EXPECT_EQ(strip[2].surface, "makan-makan");
  EXPECT_TRUE(std::is_sorted(strip.begin(), strip.end(), [](const Suggestion& a, const Suggestion& b) {
    return a.score > b.score;
  }));
  const auto one = next_words(ctx, *assets->model, assets->profile, 1);
  EXPECT_EQ(one.front(), wide.front());
}

TEST(NextWordsTest, EmptyContextGivesTopUnigramsAndZeroGivesNothing) {
  const auto assets = testing::shared_store()->get("en");
  EXPECT_TRUE(next_words({}, *assets->model, assets->profile, 0).empty());
  const auto out = next_words({}, *assets->model, assets->profile, 4);
  std::vector<std::pair<double, std::string>> all;
  for (const auto& w : candidate_words(*assets->model)) {
    all.push_back({-assets->model->logprob(w, {}), w});
  }
  std::sort(all.begin(), all.end());
  ASSERT_EQ(out.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(out[i].surface, all[i].second);
    EXPECT_EQ(out[i].kind, SuggestionKind::kPrediction);
  }
}

// ---------------------------------------------------------------------------
// Spell checking

TEST(SpellCheckTest, Examples) {
  Wordlist lexicon;
  lexicon.counts = {{"the", 50}, {"ten", 5}, {"tea", 9}, {"then", 2}};
  EXPECT_FALSE(spell_check("the", lexicon).flagged);
  EXPECT_FALSE(spell_check("The", lexicon).flagged);
  const auto r = spell_check("teh", lexicon);
  EXPECT_TRUE(r.flagged);
  EXPECT_EQ(r.suggestions, (std::vector<std::string>{"the", "tea", "ten", "then"}));
  EXPECT_EQ(r.suggestions, testing::spell_suggestions_scan("teh", lexicon));
  PersonalDict d;
  d.learn_commit("teh", nullptr, 0);
  EXPECT_FALSE(spell_check("teh", lexicon, &d).flagged);
}

TEST(SpellCheckTest, DistanceMatchesTheEditNeighbourhood) {
  std::mt19937 rng(90);
  const std::u32string alphabet = U"abcə";
  for (int trial = 0; trial < 300; ++trial) {
    std::u32string a;
    const std::size_t n = rng() % 6;
    for (std::size_t i = 0; i < n; ++i) a += alphabet[rng() % alphabet.size()];
    const auto hood = testing::edit_neighbourhood(a, alphabet, 3);
    for (const auto& [b, d] : hood) {
      EXPECT_EQ(damerau_levenshtein(a, b), d) << to_utf8(a) << " " << to_utf8(b);
    }
    std::u32string b;
    for (std::size_t i = 0; i < rng() % 7; ++i) b += alphabet[rng() % alphabet.size()];
    if (hood.count(b) == 0) {
      EXPECT_GT(damerau_levenshtein(a, b), 3u);
    }
  }
  for (int trial = 0; trial < 300; ++trial) {
    std::u32string a;
    std::u32string b;
    for (std::size_t i = 0; i < rng() % 8; ++i) a += alphabet[rng() % alphabet.size()];
    for (std::size_t i = 0; i < rng() % 8; ++i) b += alphabet[rng() % alphabet.size()];
    const auto hood = testing::edit_neighbourhood(a, alphabet, 2);
    const auto it = hood.find(b);
    const std::size_t d = testing::dl_distance(a, b);
    if (it != hood.end()) {
      EXPECT_EQ(d, it->second);
    } else {
      EXPECT_GT(d, 2u);
    }
  }
  // Unrestricted: "ca" -> "abc" is two edits (transpose, then insert).
  EXPECT_EQ(damerau_levenshtein(U"ca", U"abc"), 2u);
}

TEST(SpellCheckTest, RandomLexiconMatchesScan) {
  const auto words = testing::pseudo_words(2000, 91);
  Wordlist lexicon;
  std::mt19937 rng(92);
  for (const auto& w : words) lexicon.counts[w] = 1 + rng() % 20;
  for (int trial = 0; trial < 25; ++trial) {
    std::string probe = words[rng() % words.size()];
    probe.insert(probe.begin() + static_cast<std::ptrdiff_t>(rng() % (probe.size() + 1)),
                 static_cast<char>('a' + rng() % 26));
    if (rng() % 2 == 0 && probe.size() > 2) std::swap(probe[0], probe[1]);
    const auto r = spell_check(probe, lexicon);
    EXPECT_EQ(r.flagged, !lexicon.contains(probe));
    if (r.flagged) {
      EXPECT_EQ(r.suggestions, testing::spell_suggestions_scan(probe, lexicon)) << probe;
      EXPECT_EQ(r.suggestions, testing::spell_suggestions_brute(probe, lexicon)) << probe;
    }
  }
}

}  // namespace
}  // namespace mlime
