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

#include "mlime/text_pipeline.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "support/oracles.hpp"

namespace mlime {
namespace {

using testing::profile_for;

std::vector<std::string> texts(const NormalizedText& n) {
  std::vector<std::string> out;
  for (const auto& t : n.tokens) out.push_back(t.text);
  return out;
}

std::string join(const std::vector<std::string>& words) {
  std::string s;
  for (const auto& w : words) s += (s.empty() ? "" : " ") + w;
  return s;
}

LanguageProfile latin_profile_with_acute() {
  LanguageProfile p = profile_for("en");
  p.inventory.required.insert("é");
  return p;
}

TEST(NormalizeTest, UrlIsRejectedAndCaseFolded) {
  const auto n = normalize("Héllo!! visit http://x.y", latin_profile_with_acute());
  // "visit" is ordinary in-inventory text and stays.
  EXPECT_EQ(texts(n), (std::vector<std::string>{"héllo", "visit"}));
  EXPECT_EQ(n.tokens[0].surface, "Héllo");
  EXPECT_EQ(n.report.total(), 1u);
  EXPECT_EQ(n.report.by_reason.at("url"), 1u);
}

TEST(NormalizeTest, EmptyInputGivesEmptyOutput) {
  const auto n = normalize("", profile_for("en"));
  EXPECT_TRUE(n.tokens.empty());
  EXPECT_TRUE(n.report.empty());
}

TEST(NormalizeTest, YakutLetterUnderRussianInventoryIsReported) {
  const auto n = normalize("дорообо ҕаҕа", profile_for("ru"));
  EXPECT_EQ(texts(n), (std::vector<std::string>{"дорообо"}));
  EXPECT_EQ(n.report.by_reason.at("inventory"), 1u);
  EXPECT_EQ(n.report.by_character.at("ҕ"), 2u);
  EXPECT_NE(n.report.to_text().find("U+0495"), std::string::npos);
}

TEST(NormalizeTest, EmailAndDigitRunsAreDropped) {
  const auto n = normalize("mail me@example.org at 12345 now", profile_for("en"));
  EXPECT_EQ(texts(n), (std::vector<std::string>{"mail", "at", "now"}));
  EXPECT_EQ(n.report.by_reason.at("email"), 1u);
  EXPECT_EQ(n.report.by_reason.at("digits"), 1u);
}

TEST(NormalizeTest, ApostropheAndHyphenStayInsideWords) {
  const auto n = normalize("'don't' makan-makan, -x- (well)", profile_for("id"));
  EXPECT_EQ(texts(n), (std::vector<std::string>{"don't", "makan-makan", "x", "well"}));
}

TEST(NormalizeTest, UncasedScriptsKeepTheirText) {
  const auto n = normalize("नमस्ते दुनिया।", profile_for("hi"));
  EXPECT_EQ(texts(n), (std::vector<std::string>{"नमस्ते", "दुनिया"}));
}

TEST(NormalizeTest, DecomposedInputIsComposedFirst) {
  const auto n = normalize("Héllo", latin_profile_with_acute());
  EXPECT_EQ(texts(n), (std::vector<std::string>{"héllo"}));
}

TEST(NormalizeProperty, IdempotentOnRandomText) {
  std::mt19937 rng(8);
  const std::vector<std::string> pieces = {"Ab", "cd", "É", "é", " ", "  ", "!", "'", "-", "x2",
                                           "http://a.b", "ü", "ҕ", "12", ".", "Q"};
  const auto profile = latin_profile_with_acute();
  for (int trial = 0; trial < 300; ++trial) {
    std::string raw;
    const int n = static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) raw += pieces[rng() % pieces.size()];
    const auto once = texts(normalize(raw, profile));
    const auto twice = texts(normalize(join(once), profile));
    EXPECT_EQ(once, twice) << raw;
  }
}

TEST(NormalizeProperty, EveryKeptTokenIsInventoryClean) {
  for (const auto& tag : testing::bundled_languages()) {
    const auto profile = profile_for(tag);
    const auto corpus =
        normalize_corpus(read_file((testing::data_dir() / "languages" / tag / "corpus.txt").string()),
                         profile);
    GraphemeSet allowed = profile.inventory.grapheme_set();
    for (const char* j : {"'", "’", "-", "‐"}) allowed.insert(j);
    for (const auto& w : corpus.flat()) {
      for (const auto& seg : allowed.segment(std::string_view(w))) {
        EXPECT_TRUE(seg.known) << tag << ": " << w;
      }
    }
  }
}

TEST(NormalizeCorpusTest, OneSentencePerLine) {
  const auto c = normalize_corpus("a b\n\nc!\nhttp://x.y\n", profile_for("en"));
  ASSERT_EQ(c.sentences.size(), 2u);
  EXPECT_EQ(c.sentences[0], (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(c.sentences[1], (std::vector<std::string>{"c"}));
  EXPECT_EQ(c.token_count(), 3u);
  EXPECT_EQ(c.report.by_reason.at("url"), 1u);
}

TEST(WordlistTest, ExactCounts) {
  const auto wl = build_wordlist(std::vector<std::string>{"a", "b", "a"});
  EXPECT_EQ(wl.counts, (std::map<std::string, std::uint64_t>{{"a", 2}, {"b", 1}}));
  EXPECT_TRUE(build_wordlist(std::vector<std::string>{}).counts.empty());
}

TEST(WordlistTest, LargeCorpusMatchesCountingOracle) {
  const auto vocab = testing::pseudo_words(500, 1);
  const auto corpus = testing::zipf_corpus(vocab, 10000, 2);
  std::vector<std::string> flat;
  for (const auto& s : corpus) flat.insert(flat.end(), s.begin(), s.end());
  const auto wl = build_wordlist(flat);
  std::map<std::string, std::uint64_t> oracle;
  for (const auto& s : corpus) {
    for (const auto& w : s) oracle[w] += 1;
  }
  EXPECT_EQ(wl.counts, oracle);
}

TEST(WordlistTest, SerializationRoundTripAndErrors) {
  Wordlist wl = build_wordlist(std::vector<std::string>{"ə", "b", "ə"}, "corpus.txt");
  const Wordlist back = Wordlist::parse(wl.serialize());
  EXPECT_EQ(back.counts, wl.counts);
  EXPECT_EQ(back.source, "corpus.txt");
  try {
    Wordlist::parse("a\t1\nb\tzero\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "FormatError");
    EXPECT_EQ(e.element(), "line 2");
  }
}

}  // namespace
}  // namespace mlime
