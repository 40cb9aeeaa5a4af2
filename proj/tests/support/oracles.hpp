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

// Test-side reference implementations. These deliberately avoid the engine's
// own algorithms: scans instead of indexes, enumeration instead of dynamic
// programming, plain loops instead of tries.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "mlime/mlime.hpp"

namespace mlime::testing {

#ifdef MLIME_TEST_DATA_DIR
inline std::filesystem::path data_dir() { return MLIME_TEST_DATA_DIR; }
#else
inline std::filesystem::path data_dir() { return default_data_dir(); }
#endif

inline std::shared_ptr<AssetStore> shared_store() {
  static auto store = std::make_shared<AssetStore>(data_dir());
  return store;
}

inline LanguageProfile profile_for(const std::string& tag) {
  return profile_from_json(
      nlohmann::json::parse(read_file((data_dir() / "languages" / tag / "profile.json").string())));
}

inline Layout layout_for(const std::string& tag) {
  return load_layout_file((data_dir() / "languages" / tag / "layout.json").string());
}

inline std::vector<std::string> bundled_languages() {
  return AssetStore(data_dir()).available();
}

// ---------------------------------------------------------------------------
// Geometry

/// Argmin over every key of the page, recomputing each centre from the raw
/// key list. Ties within 1e-12 go to the smaller id.
inline std::string nearest_key_scan(const Layout& layout, double x, double y, std::size_t page,
                                    const std::vector<KeyView>* state = nullptr) {
  const Page& pg = layout.pages[page];
  int rows = 1;
  for (const auto& k : pg.keys) rows = std::max(rows, k.row + 1);
  std::string best;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pg.keys.size(); ++i) {
    const Key& k = pg.keys[i];
    bool active = !k.output.empty() || !k.face.empty() || k.page_switch.has_value();
    if (state != nullptr) {
      active = !(*state)[i].output.empty() || !(*state)[i].face.empty() || k.page_switch.has_value();
    }
    if (!active) continue;
    double left = static_cast<std::size_t>(k.row) < pg.row_offsets.size() ? pg.row_offsets[k.row] : 0;
    for (const auto& o : pg.keys) {
      if (o.row == k.row && (o.col < k.col || (o.col == k.col && o.id < k.id))) left += o.width;
    }
    const double cx = left + k.width / 2;
    const double cy = (k.row + 0.5) / rows;
    const double d = (x - cx) * (x - cx) + (y - cy) * (y - cy);
    if (d < best_d - 1e-12 || (std::abs(d - best_d) <= 1e-12 && k.id < best)) {
      best = k.id;
      best_d = d;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Segmentation and counting

/// At each position, try every inventory entry and keep the longest match;
/// unmatched codepoints are skipped.
inline std::map<std::string, std::uint64_t> count_graphemes_scan(
    const std::vector<std::string>& tokens, const std::set<std::string>& inventory) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& g : inventory) counts[g] = 0;
  for (const auto& token : tokens) {
    const std::u32string t = to_u32(token);
    std::size_t i = 0;
    while (i < t.size()) {
      std::string match;
      std::size_t len = 0;
      for (const auto& g : inventory) {
        const std::u32string u = to_u32(g);
        if (u.size() > len && t.compare(i, u.size(), u) == 0) {
          match = g;
          len = u.size();
        }
      }
      if (len == 0) {
        ++i;
        continue;
      }
      ++counts[match];
      i += len;
    }
  }
  return counts;
}

// ---------------------------------------------------------------------------
// Edit distance by enumeration

/// Every string reachable from `word` by at most `depth` insertions,
/// deletions, substitutions or adjacent transpositions, with the fewest
/// operations needed. Unit-cost sequential edits give exactly the
/// Damerau-Levenshtein distance.
inline std::map<std::u32string, std::size_t> edit_neighbourhood(const std::u32string& word,
                                                                 const std::u32string& alphabet,
                                                                 std::size_t depth) {
  std::map<std::u32string, std::size_t> seen{{word, 0}};
  std::vector<std::u32string> frontier{word};
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<std::u32string> next;
    auto offer = [&](std::u32string s) {
      if (seen.emplace(s, d).second) next.push_back(std::move(s));
    };
    for (const auto& w : frontier) {
      for (std::size_t i = 0; i <= w.size(); ++i) {
        for (const char32_t c : alphabet) offer(w.substr(0, i) + c + w.substr(i));
        if (i < w.size()) {
          offer(w.substr(0, i) + w.substr(i + 1));
          for (const char32_t c : alphabet) {
            if (c != w[i]) offer(w.substr(0, i) + c + w.substr(i + 1));
          }
        }
        if (i + 1 < w.size() && w[i] != w[i + 1]) {
          std::u32string t = w;
          std::swap(t[i], t[i + 1]);
          offer(std::move(t));
        }
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

/// Spell suggestions by intersecting the edit neighbourhood with the lexicon.
inline std::vector<std::string> spell_suggestions_scan(const std::string& word,
                                                       const Wordlist& lexicon,
                                                       std::size_t limit = 5) {
  std::set<char32_t> letters;
  for (const auto& [w, c] : lexicon.counts) {
    for (const char32_t ch : to_u32(w)) letters.insert(ch);
  }
  const std::u32string alphabet(letters.begin(), letters.end());
  const auto hood = edit_neighbourhood(to_u32(word), alphabet, 2);
  struct Hit {
    std::size_t d;
    std::uint64_t count;
    std::string w;
  };
  std::vector<Hit> hits;
  for (const auto& [w, c] : lexicon.counts) {
    auto it = hood.find(to_u32(w));
    if (it != hood.end()) hits.push_back({it->second, c, w});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return std::tie(a.d, b.count, a.w) < std::tie(b.d, a.count, b.w);
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < hits.size() && i < limit; ++i) out.push_back(hits[i].w);
  return out;
}

/// Unrestricted Damerau-Levenshtein distance, Lowrance-Wagner table with a
/// last-row map per character.
inline std::size_t dl_distance(const std::u32string& a, const std::u32string& b) {
  const std::size_t inf = a.size() + b.size();
  std::vector<std::vector<std::size_t>> h(a.size() + 2, std::vector<std::size_t>(b.size() + 2, 0));
  h[0][0] = inf;
  for (std::size_t i = 0; i <= a.size(); ++i) {
    h[i + 1][0] = inf;
    h[i + 1][1] = i;
  }
  for (std::size_t j = 0; j <= b.size(); ++j) {
    h[0][j + 1] = inf;
    h[1][j + 1] = j;
  }
  std::map<char32_t, std::size_t> last_row;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t last_col = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t i1 = last_row.count(b[j - 1]) ? last_row[b[j - 1]] : 0;
      const std::size_t j1 = last_col;
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      if (cost == 0) last_col = j;
      h[i + 1][j + 1] = std::min({h[i][j] + cost, h[i + 1][j] + 1, h[i][j + 1] + 1,
                                  h[i1][j1] + (i - i1 - 1) + 1 + (j - j1 - 1)});
    }
    last_row[a[i - 1]] = i;
  }
  return h[a.size() + 1][b.size() + 1];
}

/// Spell suggestions by measuring every lexicon word.
inline std::vector<std::string> spell_suggestions_brute(const std::string& word,
                                                        const Wordlist& lexicon,
                                                        std::size_t limit = 5) {
  const std::u32string w = to_u32(word);
  std::vector<std::tuple<std::size_t, std::uint64_t, std::string>> hits;
  for (const auto& [cand, c] : lexicon.counts) {
    const std::size_t d = dl_distance(w, to_u32(cand));
    if (d <= 2) hits.emplace_back(d, std::numeric_limits<std::uint64_t>::max() - c, cand);
  }
  std::sort(hits.begin(), hits.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < hits.size() && i < limit; ++i) out.push_back(std::get<2>(hits[i]));
  return out;
}

// ---------------------------------------------------------------------------
// Decoding by exhaustive per-word alignment

/// Best alignment of one spelling against the taps with at most `budget`
/// edits, each costing `penalty`: match (tap on grapheme), substitution,
/// insertion (grapheme without tap), deletion (tap without grapheme) and
/// transposition of two adjacent graphemes under two taps. Enumerated by
/// recursion over (tap, grapheme, edits) without any sharing across words.
inline double align_word(const std::vector<std::u32string>& spelling, std::size_t taps,
                         const std::function<double(std::size_t, const std::u32string&)>& score,
                         std::size_t budget, double penalty) {
  const double ninf = -std::numeric_limits<double>::infinity();
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, double> memo;
  std::function<double(std::size_t, std::size_t, std::size_t)> go =
      [&](std::size_t i, std::size_t j, std::size_t e) -> double {
    if (i == taps && j == spelling.size()) return 0.0;
    const auto key = std::make_tuple(i, j, e);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    double best = ninf;
    auto take = [&](double step, double rest) {
      if (std::isfinite(step) && std::isfinite(rest)) best = std::max(best, step + rest);
    };
    if (i < taps && j < spelling.size()) {
      take(score(i, spelling[j]), go(i + 1, j + 1, e));
      if (e < budget) take(penalty, go(i + 1, j + 1, e + 1));
    }
    if (e < budget && j < spelling.size()) take(penalty, go(i, j + 1, e + 1));
    if (e < budget && i < taps) take(penalty, go(i + 1, j, e + 1));
    if (e < budget && i + 1 < taps && j + 1 < spelling.size() && spelling[j] != spelling[j + 1]) {
      take(score(i, spelling[j + 1]) + score(i + 1, spelling[j]) + penalty, go(i + 2, j + 2, e + 1));
    }
    memo[key] = best;
    return best;
  };
  return go(0, 0, 0);
}

// Independent touch score: every key that outputs g directly (penalty 0) or
// through long-press (penalty -1), centres recomputed from the raw rows.
inline double touch_oracle(const Layout& layout, const std::u32string& g, double x, double y) {
  const auto& page = layout.pages[0];
  int rows = 0;
  for (const auto& k : page.keys) rows = std::max(rows, k.row + 1);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& k : page.keys) {
    double penalty = 1;
    if (to_u32(k.output) == g) penalty = 0;
    for (const auto& lp : k.long_press) {
      if (to_u32(lp) == g && penalty > 0) penalty = -1;
    }
    if (penalty > 0) continue;
    double left = static_cast<std::size_t>(k.row) < page.row_offsets.size()
                      ? page.row_offsets[static_cast<std::size_t>(k.row)]
                      : 0.0;
    for (const auto& o : page.keys) {
      if (o.row == k.row && (o.col < k.col || (o.col == k.col && o.id < k.id))) left += o.width;
    }
    const double cx = left + k.width / 2;
    const double cy = (k.row + 0.5) / rows;
    const double sigma = 0.4 * k.width;
    const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
    best = std::max(best, -d2 / (2 * sigma * sigma) / std::log(10.0) + penalty);
  }
  return best;
}

struct Ranked {
  std::string word;
  double score;
};

// Exhaustive scoring of every lexicon word plus the literal, sorted.
inline std::vector<Ranked> exhaustive(const std::vector<TapEvent>& taps, const std::vector<std::string>& vocab,
                               const WordModel& model, const SpatialModel& spatial,
                               const DecodeOptions& opt, Context ctx) {
  const auto lit_parts = literal_graphemes(taps, spatial);
  std::string literal;
  for (const auto& g : lit_parts) literal += g;
  auto score = [&](std::size_t i, const std::u32string& g) {
    return opt.alpha * touch_oracle(spatial.layout(), g, taps[i].x, taps[i].y);
  };
  const std::size_t budget = (taps.size() + opt.taps_per_edit - 1) / opt.taps_per_edit;
  std::vector<Ranked> out;
  double literal_score = -std::numeric_limits<double>::infinity();
  for (const auto& w : vocab) {
    std::vector<std::u32string> spelling;
    for (const auto& seg : spatial.graphemes().segment(std::string_view(w))) spelling.push_back(seg.text);
    const double a = align_word(spelling, taps.size(), score, budget, opt.edit_penalty);
    if (!std::isfinite(a)) continue;
    const double total = a + model.logprob(w, ctx);
    if (w == literal) {
      literal_score = std::max(literal_score, total);
    } else {
      out.push_back({w, total});
    }
  }
  double lit_spatial = 0;
  for (std::size_t i = 0; i < lit_parts.size(); ++i) lit_spatial += score(i, to_u32(lit_parts[i]));
  // Out-of-vocabulary literal: unknown mass spread by a uniform spelling model.
  double lm = model.logprob("<unk>", ctx) -
              static_cast<double>(lit_parts.size() + 1) *
                  std::log10(static_cast<double>(spatial.placement_count() + 1));
  if (model.contains(literal)) lm = model.logprob(literal, ctx);
  literal_score = std::max(literal_score, lit_spatial + lm);
  out.push_back({literal, literal_score});
  std::sort(out.begin(), out.end(), [](const Ranked& a, const Ranked& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.word < b.word;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Synthetic text

/// Pronounceable pseudo-words over a–z.
inline std::vector<std::string> pseudo_words(std::size_t n, std::uint32_t seed) {
  static const std::vector<std::string> onsets = {"b", "d", "f", "g", "h", "k", "l", "m", "n",
                                                  "p", "r", "s", "t", "v", "w", "z", "st", "tr",
                                                  "pl", "gr", "ch", "sh"};
  static const std::vector<std::string> nuclei = {"a", "e", "i", "o", "u", "ai", "ou", "ea"};
  std::mt19937 rng(seed);
  std::set<std::string> seen;
  std::vector<std::string> out;
  while (out.size() < n) {
    const int syllables = 1 + static_cast<int>(rng() % 3);
    std::string w;
    for (int s = 0; s < syllables; ++s) {
      w += onsets[rng() % onsets.size()];
      w += nuclei[rng() % nuclei.size()];
    }
    if (rng() % 3 == 0) w += onsets[rng() % 16];
    if (seen.insert(w).second) out.push_back(w);
  }
  return out;
}

/// Sentences drawn from a Zipfian vocabulary with a little local structure:
/// each word prefers a fixed successor half of the time.
inline std::vector<std::vector<std::string>> zipf_corpus(const std::vector<std::string>& vocab,
                                                         std::size_t sentences,
                                                         std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<double> weights(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) weights[i] = 1.0 / static_cast<double>(i + 1);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::uniform_int_distribution<int> len(3, 12);
  std::vector<std::vector<std::string>> out;
  out.reserve(sentences);
  for (std::size_t s = 0; s < sentences; ++s) {
    std::vector<std::string> sent;
    std::size_t prev = pick(rng);
    sent.push_back(vocab[prev]);
    const int n = len(rng);
    for (int k = 1; k < n; ++k) {
      const std::size_t next = (rng() % 2 == 0) ? (prev * 7 + 3) % vocab.size() : pick(rng);
      sent.push_back(vocab[next]);
      prev = next;
    }
    out.push_back(std::move(sent));
  }
  return out;
}

inline double total_mass(const WordModel& model, Context context) {
  double sum = 0;
  for (const auto& w : model.vocabulary()) sum += model.prob(w, context);
  return sum;
}

}  // namespace mlime::testing
