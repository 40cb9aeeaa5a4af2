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

// Tap decoding: spatial key model, lexicon beam search with a small edit
// budget, the autocorrect commit rule, next-word prediction, reduplication
// shorthand and spell checking.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mlime/error.hpp"
#include "mlime/layout.hpp"
#include "mlime/ngram.hpp"
#include "mlime/personal.hpp"
#include "mlime/profile.hpp"
#include "mlime/text_pipeline.hpp"
#include "mlime/unicode.hpp"

namespace mlime {

enum class TapKind { kTap, kLongPressSelect, kBackspace, kSpace, kCommit };

inline std::string to_string(TapKind k) {
  switch (k) {
    case TapKind::kTap: return "tap";
    case TapKind::kLongPressSelect: return "long_press_select";
    case TapKind::kBackspace: return "backspace";
    case TapKind::kSpace: return "space";
    case TapKind::kCommit: return "commit";
  }
  return "tap";
}

inline std::optional<TapKind> parse_tap_kind(std::string_view s) {
  if (s == "tap") return TapKind::kTap;
  if (s == "long_press_select") return TapKind::kLongPressSelect;
  if (s == "backspace") return TapKind::kBackspace;
  if (s == "space") return TapKind::kSpace;
  if (s == "commit") return TapKind::kCommit;
  return std::nullopt;
}

struct TapEvent {
  double x = 0;
  double y = 0;
  std::int64_t timestamp = 0;
  TapKind kind = TapKind::kTap;
  int index = 0;  // long-press entry for kLongPressSelect
};

enum class SuggestionKind { kLiteral, kCorrection, kPrediction, kPersonal, kReduplication };

inline std::string to_string(SuggestionKind k) {
  switch (k) {
    case SuggestionKind::kLiteral: return "literal";
    case SuggestionKind::kCorrection: return "correction";
    case SuggestionKind::kPrediction: return "prediction";
    case SuggestionKind::kPersonal: return "personal";
    case SuggestionKind::kReduplication: return "reduplication";
  }
  return "literal";
}

struct Suggestion {
  std::string surface;
  double score = 0;  // log10 scale
  SuggestionKind kind = SuggestionKind::kLiteral;
  bool operator==(const Suggestion&) const = default;
};

// ---------------------------------------------------------------------------
// Spatial model

/// Isotropic Gaussian touch model over the keys of one layout page. σ is a
/// multiple of each key's width. Every grapheme the page can produce gets one
/// or more placements: the key that types it plus a log10 penalty (non-zero
/// for long-press entries).
class SpatialModel {
 public:
  struct Placement {
    std::size_t key = 0;
    double penalty = 0;
  };

  explicit SpatialModel(std::shared_ptr<const Layout> layout, double sigma_widths = 0.4,
                        std::size_t page = 0, double long_press_penalty = -1.0)
      : layout_(std::move(layout)), sigma_widths_(sigma_widths), page_(page) {
    if (!(sigma_widths_ > 0.0)) fail("InvalidParams", "sigma", "sigma must be positive");
    geometry_ = page_geometry(*layout_, page_);
    const auto& keys = layout_->pages.at(page_).keys;
    std::map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < keys.size(); ++i) by_id[keys[i].id] = i;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      place(keys[i].output, i, 0.0);
      for (const auto& g : keys[i].long_press) place(g, i, long_press_penalty);
    }
    for (const auto& r : layout_->rules) {
      if (auto it = by_id.find(r.target_key); it != by_id.end()) place(r.output, it->second, 0.0);
    }
  }

  const Layout& layout() const { return *layout_; }
  std::shared_ptr<const Layout> layout_ptr() const { return layout_; }
  std::size_t page() const { return page_; }
  double sigma_widths() const { return sigma_widths_; }
  const std::vector<KeyGeometry>& geometry() const { return geometry_; }
  const GraphemeSet& graphemes() const { return graphemes_; }
  std::size_t placement_count() const { return placements_.size(); }

  /// log10 of the unnormalized Gaussian likelihood of a tap for key `i`.
  double key_loglik(std::size_t i, double x, double y) const {
    const auto& g = geometry_[i];
    const double sigma = sigma_widths_ * g.width;
    const double dx = x - g.cx;
    const double dy = y - g.cy;
    return -(dx * dx + dy * dy) / (2.0 * sigma * sigma) / std::log(10.0);
  }

  /// Best placement score for a grapheme; -inf if the page cannot type it.
  double grapheme_loglik(const std::u32string& g, double x, double y) const {
    auto it = placements_.find(g);
    if (it == placements_.end()) return -std::numeric_limits<double>::infinity();
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : it->second) best = std::max(best, key_loglik(p.key, x, y) + p.penalty);
    return best;
  }

  const std::vector<Placement>* placements(const std::u32string& g) const {
    auto it = placements_.find(g);
    return it == placements_.end() ? nullptr : &it->second;
  }

 private:
  void place(const std::string& g, std::size_t key, double penalty) {
    if (g.empty()) return;
    const std::u32string u = to_u32(g);
    auto& list = placements_[u];
    for (const auto& p : list) {
      if (p.key == key && p.penalty >= penalty) return;
    }
    list.push_back({key, penalty});
    graphemes_.insert(g);
  }

  std::shared_ptr<const Layout> layout_;
  double sigma_widths_;
  std::size_t page_;
  std::vector<KeyGeometry> geometry_;
  std::map<std::u32string, std::vector<Placement>> placements_;
  GraphemeSet graphemes_;
};

// ---------------------------------------------------------------------------
// Literal reconstruction

/// Taps of one word after applying in-word backspaces; stops at space/commit.
inline std::vector<TapEvent> effective_taps(std::span<const TapEvent> taps) {
  std::vector<TapEvent> out;
  for (const auto& t : taps) {
    if (t.kind == TapKind::kSpace || t.kind == TapKind::kCommit) break;
    if (t.kind == TapKind::kBackspace) {
      if (!out.empty()) out.pop_back();
      continue;
    }
    out.push_back(t);
  }
  return out;
}

/// The grapheme each tap literally produced: the nearest active key under the
/// dynamic key state implied by the committed text plus the word so far.
/// Taps on inert keys (page switches) produce an empty grapheme.
inline std::vector<std::string> literal_graphemes(std::span<const TapEvent> taps,
                                                  const SpatialModel& spatial,
                                                  std::string_view committed_text = {}) {
  const Layout& layout = spatial.layout();
  const auto& keys = layout.pages.at(spatial.page()).keys;
  std::vector<std::string> out;
  std::string text(committed_text);
  for (const auto& t : taps) {
    std::string g;
    if (t.kind == TapKind::kLongPressSelect) {
      const auto hit = hit_test(layout, t.x, t.y, spatial.page());
      const Key* host = layout.pages.at(spatial.page()).find(hit.key_id);
      if (host != nullptr && t.index >= 0 &&
          static_cast<std::size_t>(t.index) < host->long_press.size()) {
        g = host->long_press[static_cast<std::size_t>(t.index)];
      }
    } else {
      const auto state = key_state(layout, text, false, spatial.page());
      const auto hit = hit_test(layout, t.x, t.y, spatial.page(), &state);
      for (std::size_t i = 0; i < keys.size(); ++i) {
        if (keys[i].id == hit.key_id) g = state[i].output;
      }
    }
    text += g;
    out.push_back(std::move(g));
  }
  return out;
}

/// Key-centre taps that type `word` on the spatial model's page. Graphemes
/// reachable only through a long-press become long_press_select events on
/// their host key.
inline std::vector<TapEvent> taps_for_word(std::string_view word, const SpatialModel& spatial) {
  const auto& keys = spatial.layout().pages.at(spatial.page()).keys;
  std::vector<TapEvent> out;
  for (const auto& seg : spatial.graphemes().segment(word)) {
    const auto* places = spatial.placements(seg.text);
    if (!seg.known || places == nullptr) fail("Untypeable", to_utf8(seg.text));
    const auto best = std::max_element(places->begin(), places->end(),
                                       [](const auto& a, const auto& b) { return a.penalty < b.penalty; });
    const auto& g = spatial.geometry()[best->key];
    TapEvent t{g.cx, g.cy, static_cast<std::int64_t>(out.size()), TapKind::kTap, 0};
    if (best->penalty < 0.0) {
      const auto& lp = keys[best->key].long_press;
      const auto it = std::find(lp.begin(), lp.end(), to_utf8(seg.text));
      t.kind = TapKind::kLongPressSelect;
      t.index = static_cast<int>(it - lp.begin());
    }
    out.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lexicon and beam search

struct DecodeOptions {
  double alpha = 1.0;              // spatial weight
  double edit_penalty = -3.0;      // log10 cost of one edit
  std::size_t taps_per_edit = 4;   // edit budget = ceil(taps / taps_per_edit)
  std::size_t beam_width = 256;
  std::string committed_text;      // drives dynamic key state for the literal
};

inline std::size_t edit_budget(std::size_t taps, std::size_t taps_per_edit) {
  return (taps + taps_per_edit - 1) / taps_per_edit;
}

/// Grapheme trie over candidate words, segmented by what the layout types.
class Lexicon {
 public:
  struct Node {
    std::vector<std::pair<std::u32string, int>> children;
    int word = -1;
    int depth = 0;
  };

  Lexicon(const std::vector<std::string>& words, const SpatialModel& spatial) {
    nodes_.emplace_back();
    for (const auto& w : words) add(w, spatial.graphemes());
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::string>& words() const { return words_; }
  const std::vector<std::vector<std::u32string>>& spellings() const { return spellings_; }

 private:
  void add(const std::string& word, const GraphemeSet& graphemes) {
    if (word.empty() || is_marker(word)) return;
    std::vector<std::u32string> spelling;
    for (auto& seg : graphemes.segment(std::string_view(word))) spelling.push_back(std::move(seg.text));
    int node = 0;
    for (const auto& g : spelling) {
      int next = -1;
      for (const auto& [cg, child] : nodes_[static_cast<std::size_t>(node)].children) {
        if (cg == g) next = child;
      }
      if (next < 0) {
        next = static_cast<int>(nodes_.size());
        Node n;
        n.depth = nodes_[static_cast<std::size_t>(node)].depth + 1;
        nodes_.push_back(std::move(n));
        nodes_[static_cast<std::size_t>(node)].children.emplace_back(g, next);
      }
      node = next;
    }
    auto& end = nodes_[static_cast<std::size_t>(node)];
    if (end.word >= 0) return;
    end.word = static_cast<int>(words_.size());
    words_.push_back(word);
    spellings_.push_back(std::move(spelling));
  }

  std::vector<Node> nodes_;
  std::vector<std::string> words_;
  std::vector<std::vector<std::u32string>> spellings_;
};

/// Per-tap alignment scores: α·spatial for ordinary taps, exact match only
/// for long-press selections.
class TapScorer {
 public:
  TapScorer(std::span<const TapEvent> taps, std::vector<std::string> literal,
            const SpatialModel& spatial, double alpha)
      : taps_(taps.begin(), taps.end()), literal_(std::move(literal)), spatial_(spatial),
        alpha_(alpha) {}

  double operator()(std::size_t i, const std::u32string& g) const {
    const auto& t = taps_[i];
    if (t.kind == TapKind::kLongPressSelect) {
      return to_u32(literal_[i]) == g ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    return alpha_ * spatial_.grapheme_loglik(g, t.x, t.y);
  }

  std::size_t size() const { return taps_.size(); }

 private:
  std::vector<TapEvent> taps_;
  std::vector<std::string> literal_;
  const SpatialModel& spatial_;
  double alpha_;
};

/// Best alignment scores per lexicon word (spatial + edit penalties, without
/// the language model). Words the beam never completes are absent.
inline std::map<int, double> beam_align(const Lexicon& lexicon, const TapScorer& score,
                                        const std::vector<double>& subtree_bound,
                                        const DecodeOptions& opt) {
  const std::size_t n = score.size();
  const std::size_t budget = edit_budget(n, opt.taps_per_edit);
  const double kNegInf = -std::numeric_limits<double>::infinity();
  const auto& nodes = lexicon.nodes();
  using Layer = std::map<std::pair<int, std::size_t>, double>;  // (node, edits) -> score
  std::vector<Layer> layers(n + 1);
  layers[0][{0, 0}] = 0.0;

  auto relax = [](Layer& layer, int node, std::size_t edits, double s) {
    if (!std::isfinite(s)) return;
    auto [it, inserted] = layer.try_emplace({node, edits}, s);
    if (!inserted && s > it->second) it->second = s;
  };

  for (std::size_t i = 0; i <= n; ++i) {
    Layer& layer = layers[i];
    // Insertions (word grapheme with no tap) stay on this layer; children are
    // always deeper, so one pass in depth order closes the layer.
    if (budget > 0) {
      std::map<int, std::set<std::pair<int, std::size_t>>> by_depth;
      for (const auto& [key, s] : layer) {
        by_depth[nodes[static_cast<std::size_t>(key.first)].depth].insert(key);
      }
      for (auto bucket = by_depth.begin(); bucket != by_depth.end(); ++bucket) {
        for (const auto& [node, edits] : bucket->second) {
          if (edits >= budget) continue;
          const double s = layer.at({node, edits});
          for (const auto& [g, child] : nodes[static_cast<std::size_t>(node)].children) {
            relax(layer, child, edits + 1, s + opt.edit_penalty);
            if (layer.count({child, edits + 1}) > 0) {
              by_depth[bucket->first + 1].insert({child, edits + 1});
            }
          }
        }
      }
    }
    // Drop states dominated by the same node with fewer edits and a score at
    // least as good, then keep the best `beam_width` by optimistic total.
    std::vector<std::pair<double, std::pair<int, std::size_t>>> ranked;
    {
      std::map<int, double> best_by_node;
      for (const auto& [key, s] : layer) {  // ordered by node, then edits
        auto it = best_by_node.find(key.first);
        if (it != best_by_node.end() && it->second >= s) continue;
        best_by_node[key.first] = s;
        ranked.push_back({s + subtree_bound[static_cast<std::size_t>(key.first)], key});
      }
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    if (ranked.size() > opt.beam_width) ranked.resize(opt.beam_width);
    Layer kept;
    for (const auto& [bound, key] : ranked) {
      if (bound == kNegInf) continue;
      kept[key] = layer.at(key);
    }
    layer.swap(kept);
    if (i == n) break;

    for (const auto& [key, s] : layer) {
      const auto [node, edits] = key;
      const bool can_edit = edits < budget;
      if (can_edit) relax(layers[i + 1], node, edits + 1, s + opt.edit_penalty);  // deletion
      for (const auto& [g, child] : nodes[static_cast<std::size_t>(node)].children) {
        const double sp = score(i, g);
        relax(layers[i + 1], child, edits, s + sp);
        if (can_edit && opt.edit_penalty > sp) {
          relax(layers[i + 1], child, edits + 1, s + opt.edit_penalty);  // substitution
        }
        if (can_edit && i + 1 < n) {  // transposition
          for (const auto& [g2, grandchild] : nodes[static_cast<std::size_t>(child)].children) {
            if (g2 == g) continue;
            relax(layers[i + 2], grandchild, edits + 1,
                  s + score(i, g2) + score(i + 1, g) + opt.edit_penalty);
          }
        }
      }
    }
  }

  std::map<int, double> out;
  for (const auto& [key, s] : layers[n]) {
    const int word = nodes[static_cast<std::size_t>(key.first)].word;
    if (word < 0) continue;
    auto [it, inserted] = out.try_emplace(word, s);
    if (!inserted) it->second = std::max(it->second, s);
  }
  return out;
}

/// Upper bound of the language-model score anywhere below each trie node.
inline std::vector<double> subtree_bounds(const Lexicon& lexicon, const std::vector<double>& lm) {
  const auto& nodes = lexicon.nodes();
  std::vector<double> bound(nodes.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = nodes.size(); i-- > 0;) {
    if (nodes[i].word >= 0) bound[i] = std::max(bound[i], lm[static_cast<std::size_t>(nodes[i].word)]);
    for (const auto& [g, child] : nodes[i].children) {
      bound[i] = std::max(bound[i], bound[static_cast<std::size_t>(child)]);
    }
  }
  return bound;
}

inline std::vector<std::string> candidate_words(const WordModel& model) {
  std::vector<std::string> out;
  for (const auto& w : model.vocabulary()) {
    if (!is_marker(w)) out.push_back(w);
  }
  return out;
}

/// LM score of a typed string. Out-of-vocabulary strings share the model's
/// unknown-word mass through a uniform spelling model: each of `length`
/// graphemes is drawn from `alphabet` symbols plus an end marker.
inline double word_logprob(const WordModel& model, std::string_view word, std::size_t length,
                           std::size_t alphabet, Context context) {
  if (model.contains(word) && !is_marker(word)) return model.logprob(word, context);
  return model.logprob(kUnk, context) -
         static_cast<double>(length + 1) * std::log10(static_cast<double>(alphabet + 1));
}

/// Ranks at most k suggestions for one word's taps. The literal tapped
/// sequence is always present (kind literal), even when it falls outside the
/// top k. Pass a prebuilt lexicon to avoid rebuilding the trie per call.
inline std::vector<Suggestion> decode_word(std::span<const TapEvent> taps, Context context,
                                           const WordModel& model, const SpatialModel& spatial,
                                           const LanguageProfile& profile, std::size_t k,
                                           const DecodeOptions& options = {},
                                           const Lexicon* lexicon = nullptr) {
  (void)profile;
  const std::vector<TapEvent> word_taps = effective_taps(taps);
  if (word_taps.empty()) fail("EmptyTapSequence", "taps", "no taps before the word boundary");
  k = std::max<std::size_t>(k, 1);

  const auto literal_parts = literal_graphemes(word_taps, spatial, options.committed_text);
  std::string literal;
  for (const auto& g : literal_parts) literal += g;
  const TapScorer score(word_taps, literal_parts, spatial, options.alpha);

  std::optional<Lexicon> own;
  if (lexicon == nullptr) {
    own.emplace(candidate_words(model), spatial);
    lexicon = &*own;
  }
  std::vector<double> lm(lexicon->words().size());
  for (std::size_t w = 0; w < lm.size(); ++w) lm[w] = model.logprob(lexicon->words()[w], context);
  const auto aligned = beam_align(*lexicon, score, subtree_bounds(*lexicon, lm), options);

  const auto* personalized = dynamic_cast<const PersonalizedModel*>(&model);
  std::vector<Suggestion> out;
  std::optional<double> literal_beam;
  for (const auto& [w, s] : aligned) {
    const std::string& word = lexicon->words()[static_cast<std::size_t>(w)];
    const double total = s + lm[static_cast<std::size_t>(w)];
    if (word == literal) {
      literal_beam = total;
      continue;
    }
    const bool personal = personalized != nullptr && !personalized->base().contains(word);
    out.push_back({word, total, personal ? SuggestionKind::kPersonal : SuggestionKind::kCorrection});
  }

  double literal_spatial = 0;
  for (std::size_t i = 0; i < literal_parts.size(); ++i) {
    if (!literal_parts[i].empty()) literal_spatial += score(i, to_u32(literal_parts[i]));
  }
  double literal_score =
      literal_spatial + word_logprob(model, literal, literal_parts.size(),
                                     spatial.placement_count(), context);
  if (literal_beam) literal_score = std::max(literal_score, *literal_beam);
  if (!std::isfinite(literal_score)) literal_score = -99.0;

  std::sort(out.begin(), out.end(), [](const Suggestion& a, const Suggestion& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.surface < b.surface;
  });
  if (out.size() > k - 1) out.resize(k - 1);
  out.push_back({literal, literal_score, SuggestionKind::kLiteral});
  std::stable_sort(out.begin(), out.end(), [](const Suggestion& a, const Suggestion& b) {
    return a.score > b.score;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Commit rule

struct CommitParams {
  double tau0 = 0.5;   // log10 margin at leniency 0
  double lambda = 4.0;  // leniency multiplier
};

inline double commit_threshold(const LanguageProfile& profile, const CommitParams& p = {}) {
  return p.tau0 * (1.0 + p.lambda * profile.leniency);
}

struct CommitDecision {
  std::string text;
  std::string literal;
  std::optional<std::string> correction;  // set when a correction replaced the literal
};

/// The top correction replaces the literal only if it beats it by more than
/// τ = τ₀·(1 + λ·leniency) and the user has not reverted that exact pair.
inline CommitDecision commit_decision(const std::vector<Suggestion>& suggestions,
                                      const LanguageProfile& profile,
                                      const PersonalDict* dict = nullptr,
                                      const CommitParams& params = {}) {
  const Suggestion* literal = nullptr;
  const Suggestion* top = nullptr;
  for (const auto& s : suggestions) {
    if (s.kind == SuggestionKind::kLiteral && literal == nullptr) literal = &s;
    if ((s.kind == SuggestionKind::kCorrection || s.kind == SuggestionKind::kPersonal) &&
        (top == nullptr || s.score > top->score)) {
      top = &s;
    }
  }
  CommitDecision d;
  if (literal == nullptr) {
    if (top != nullptr) d.text = d.literal = top->surface;
    return d;
  }
  d.text = d.literal = literal->surface;
  if (top == nullptr) return d;
  if (dict != nullptr && dict->blocked(literal->surface, top->surface)) return d;
  if (top->score - literal->score > commit_threshold(profile, params)) {
    d.text = top->surface;
    d.correction = top->surface;
  }
  return d;
}

inline std::string commit_policy(const std::vector<Suggestion>& suggestions,
                                 const LanguageProfile& profile,
                                 const PersonalDict* dict = nullptr,
                                 const CommitParams& params = {}) {
  return commit_decision(suggestions, profile, dict, params).text;
}

// ---------------------------------------------------------------------------
// Prediction and reduplication

/// Top-k continuations of the context. With reduplication enabled and a
/// non-empty context, "w-w" for the last word w also competes; its score is
/// the model's own score for "w-w" when known, else the unigram score of w.
inline std::vector<Suggestion> next_words(Context context, const WordModel& model,
                                          const LanguageProfile& profile, std::size_t k) {
  if (k == 0) return {};
  std::vector<Suggestion> all;
  for (const auto& w : model.vocabulary()) {
    if (is_marker(w)) continue;
    all.push_back({w, model.logprob(w, context), SuggestionKind::kPrediction});
  }
  if (profile.reduplication_enabled && !context.empty() && !is_marker(context.back())) {
    const std::string& last = context.back();
    const std::string dup = last + "-" + last;
    const double s = model.contains(dup) ? model.logprob(dup, context) : model.logprob(last, {});
    bool merged = false;
    for (auto& sug : all) {
      if (sug.surface == dup) {
        sug.kind = SuggestionKind::kReduplication;
        sug.score = std::max(sug.score, s);
        merged = true;
      }
    }
    if (!merged) all.push_back({dup, s, SuggestionKind::kReduplication});
  }
  std::sort(all.begin(), all.end(), [](const Suggestion& a, const Suggestion& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.surface < b.surface;
  });
  if (all.size() > k) {
    // The doubled form keeps the last slot of a strip of two or more.
    auto dup = std::find_if(all.begin(), all.end(), [](const Suggestion& sug) {
      return sug.kind == SuggestionKind::kReduplication;
    });
    const auto pos = static_cast<std::size_t>(dup - all.begin());
    if (k >= 2 && dup != all.end() && pos >= k) all[k - 1] = *dup;
    all.resize(k);
  }
  return all;
}

/// "makan2" -> "makan-makan" for languages that write reduplication with a
/// trailing 2.
inline std::optional<Suggestion> expand_shorthand(std::string_view token,
                                                  const LanguageProfile& profile) {
  if (!profile.reduplication_enabled) return std::nullopt;
  if (token.size() < 2 || token.back() != '2') return std::nullopt;
  const std::string stem(token.substr(0, token.size() - 1));
  for (const char32_t c : to_u32(stem)) {
    if (is_digit(c) || is_space(c)) return std::nullopt;
  }
  return Suggestion{stem + "-" + stem, 0.0, SuggestionKind::kReduplication};
}

// ---------------------------------------------------------------------------
// Spell checking

/// Unrestricted Damerau-Levenshtein distance (adjacent transpositions may be
/// combined with further edits), over codepoints.
inline std::size_t damerau_levenshtein(std::u32string_view a, std::u32string_view b) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  const std::size_t inf = m + n;
  std::vector<std::vector<std::size_t>> d(m + 2, std::vector<std::size_t>(n + 2, 0));
  d[0][0] = inf;
  for (std::size_t i = 0; i <= m; ++i) {
    d[i + 1][0] = inf;
    d[i + 1][1] = i;
  }
  for (std::size_t j = 0; j <= n; ++j) {
    d[0][j + 1] = inf;
    d[1][j + 1] = j;
  }
  std::unordered_map<char32_t, std::size_t> last_row;
  for (std::size_t i = 1; i <= m; ++i) {
    std::size_t last_match_col = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      const auto it = last_row.find(b[j - 1]);
      const std::size_t i1 = it == last_row.end() ? 0 : it->second;
      const std::size_t j1 = last_match_col;
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      if (cost == 0) last_match_col = j;
      d[i + 1][j + 1] = std::min({d[i][j] + cost, d[i + 1][j] + 1, d[i][j + 1] + 1,
                                  d[i1][j1] + (i - i1 - 1) + 1 + (j - j1 - 1)});
    }
    last_row[a[i - 1]] = i;
  }
  return d[m + 1][n + 1];
}

struct SpellResult {
  bool flagged = false;
  std::vector<std::string> suggestions;  // best first, at most 5
};

inline constexpr std::size_t kMaxSpellSuggestions = 5;
inline constexpr std::size_t kMaxSpellDistance = 2;

/// Flags words absent from both the lexicon and the personal dictionary
/// (compared case-insensitively for cased languages). Flagged words get up
/// to five lexicon words within distance 2, ranked by (distance, descending
/// frequency, word).
inline SpellResult spell_check(std::string_view word, const Wordlist& lexicon,
                               const PersonalDict* personal = nullptr,
                               const LanguageProfile* profile = nullptr) {
  const std::string w = nfc(word);
  const bool cased = profile == nullptr || profile->casing == Casing::kCased;
  const std::string folded = cased ? nfc(to_lower(w)) : w;
  auto known = [&](const std::string& s) {
    return lexicon.contains(s) || (personal != nullptr && personal->contains(s));
  };
  SpellResult r;
  r.flagged = !known(w) && !known(folded);
  if (!r.flagged) return r;

  const std::u32string probe = to_u32(folded);
  struct Hit {
    std::size_t distance;
    std::uint64_t count;
    const std::string* word;
  };
  std::vector<Hit> hits;
  for (const auto& [cand, count] : lexicon.counts) {
    const std::u32string c = to_u32(cand);
    const std::size_t diff = c.size() > probe.size() ? c.size() - probe.size() : probe.size() - c.size();
    if (diff > kMaxSpellDistance) continue;
    const std::size_t dist = damerau_levenshtein(probe, c);
    if (dist <= kMaxSpellDistance) hits.push_back({dist, count, &cand});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.count != b.count) return a.count > b.count;
    return *a.word < *b.word;
  });
  for (std::size_t i = 0; i < hits.size() && i < kMaxSpellSuggestions; ++i) {
    r.suggestions.push_back(*hits[i].word);
  }
  return r;
}

}  // namespace mlime
