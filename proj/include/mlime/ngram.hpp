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

// Word-level language models: the WordModel interface shared by the decoder,
// the personal-dictionary mixture and the multilingual mixture, plus a
// backoff n-gram model with absolute discounting and ARPA-style text I/O.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mlime/error.hpp"

namespace mlime {

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";

inline bool is_marker(std::string_view w) { return w == kBos || w == kEos || w == kUnk; }

using Context = std::span<const std::string>;

/// A conditional distribution over a closed vocabulary. Words outside the
/// vocabulary are scored with the model's unknown-word mass.
class WordModel {
 public:
  virtual ~WordModel() = default;

  virtual double prob(std::string_view word, Context context) const = 0;

  double logprob(std::string_view word, Context context) const {
    return std::log10(prob(word, context));
  }

  /// Every predictable token, including </s> and <unk> where modeled.
  /// Probabilities over this set sum to one for any context.
  virtual const std::vector<std::string>& vocabulary() const = 0;

  virtual bool contains(std::string_view word) const = 0;

  /// Longest context length the model looks at.
  virtual std::size_t context_size() const = 0;
};

struct TrainParams {
  double discount = 0.75;
  std::size_t max_vocab = 50000;
  // Corpora larger than this drop words seen fewer than `large_min_count` times.
  std::uint64_t large_corpus_tokens = 1'000'000;
  std::uint64_t large_min_count = 2;
  std::string language_tag;
  std::string script;
};

namespace detail {

struct IdsHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

class NGramModel : public WordModel {
 public:
  struct Entry {
    double logprob = 0;
    double backoff = 0;
    bool operator==(const Entry&) const = default;
  };
  using Table = std::unordered_map<std::vector<int>, Entry, detail::IdsHash>;

  NGramModel() = default;

  int order() const { return order_; }
  std::uint64_t training_tokens() const { return training_tokens_; }
  const std::string& language_tag() const { return language_tag_; }
  const std::string& script() const { return script_; }
  void set_metadata(std::string language_tag, std::string script) {
    language_tag_ = std::move(language_tag);
    script_ = std::move(script);
  }
  const Table& table(int n) const { return tables_.at(static_cast<std::size_t>(n - 1)); }

  double prob(std::string_view word, Context context) const override {
    return std::pow(10.0, log10_prob(word, context));
  }

  /// log10 P(word | context) by the backoff recursion.
  double log10_prob(std::string_view word, Context context) const {
    std::vector<int> ctx;
    const std::size_t take = std::min<std::size_t>(context.size(), order_ - 1);
    for (std::size_t i = context.size() - take; i < context.size(); ++i) {
      ctx.push_back(id_or_unk(context[i]));
    }
    return log10_prob_ids(id_or_unk(word), ctx);
  }

  const std::vector<std::string>& vocabulary() const override { return vocab_; }

  bool contains(std::string_view word) const override {
    return word != kBos && ids_.count(std::string(word)) > 0;
  }

  std::size_t context_size() const override { return static_cast<std::size_t>(order_ - 1); }

  /// Vocabulary without the </s> and <unk> markers.
  std::vector<std::string> words() const {
    std::vector<std::string> out;
    for (const auto& w : vocab_) {
      if (!is_marker(w)) out.push_back(w);
    }
    return out;
  }

  bool operator==(const NGramModel& o) const {
    return order_ == o.order_ && words_ == o.words_ && tables_ == o.tables_ &&
           training_tokens_ == o.training_tokens_ && language_tag_ == o.language_tag_ &&
           script_ == o.script_;
  }

  std::string serialize() const;
  static NGramModel parse(std::string_view text);

  friend NGramModel train_ngram(const std::vector<std::vector<std::string>>& sentences,
                                int order, const TrainParams& params);

 private:
  int id_or_unk(std::string_view w) const {
    auto it = ids_.find(std::string(w));
    if (it != ids_.end()) return it->second;
    return ids_.at(std::string(kUnk));
  }

  double log10_prob_ids(int word, const std::vector<int>& ctx) const {
    double acc = 0;
    for (std::size_t n = ctx.size();; --n) {
      std::vector<int> key(ctx.end() - static_cast<std::ptrdiff_t>(n), ctx.end());
      key.push_back(word);
      const auto& table = tables_[n];
      if (auto it = table.find(key); it != table.end()) return acc + it->second.logprob;
      if (n == 0) return acc + tables_[0].at({ids_.at(std::string(kUnk))}).logprob;
      key.pop_back();
      const auto& ctx_table = tables_[n - 1];
      if (auto it = ctx_table.find(key); it != ctx_table.end()) acc += it->second.backoff;
    }
  }

  void index_words() {
    std::sort(words_.begin(), words_.end());
    ids_.clear();
    vocab_.clear();
    for (std::size_t i = 0; i < words_.size(); ++i) {
      ids_[words_[i]] = static_cast<int>(i);
      if (words_[i] != kBos) vocab_.push_back(words_[i]);
    }
  }

  int order_ = 1;
  std::vector<std::string> words_;  // sorted; ids are positions
  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> vocab_;
  std::vector<Table> tables_;
  std::uint64_t training_tokens_ = 0;
  std::string language_tag_;
  std::string script_;
};

inline constexpr int kMaxOrder = 5;
inline constexpr double kBosLogprob = -99.0;

/// Absolute-discounting backoff training. Order-1 models ignore sentence
/// boundaries; higher orders pad each sentence with <s> and </s>. Discounted
/// unigram mass goes to <unk>.
inline NGramModel train_ngram(const std::vector<std::vector<std::string>>& sentences, int order,
                              const TrainParams& params = {}) {
  if (order > kMaxOrder) fail("OrderTooLarge", std::to_string(order));
  if (order < 1) fail("InvalidOrder", std::to_string(order));
  if (!(params.discount > 0.0 && params.discount < 1.0)) {
    fail("InvalidParams", "discount", "discount must lie in (0,1)");
  }
  std::map<std::string, std::uint64_t> raw;
  std::uint64_t tokens = 0;
  for (const auto& s : sentences) {
    for (const auto& w : s) {
      if (is_marker(w)) fail("InvalidToken", w, "reserved token in corpus: " + w);
      ++raw[w];
      ++tokens;
    }
  }
  if (tokens == 0) fail("EmptyCorpus", "corpus", "no tokens to train on");

  // Vocabulary: most frequent words first, ties alphabetical.
  std::vector<std::pair<std::string, std::uint64_t>> ranked(raw.begin(), raw.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> kept;
  for (const auto& [w, c] : ranked) {
    if (kept.size() >= params.max_vocab) break;
    if (tokens > params.large_corpus_tokens && c < params.large_min_count) continue;
    kept.push_back(w);
  }

  NGramModel m;
  m.order_ = order;
  m.training_tokens_ = tokens;
  m.language_tag_ = params.language_tag;
  m.script_ = params.script;
  m.words_ = kept;
  m.words_.emplace_back(kUnk);
  if (order > 1) {
    m.words_.emplace_back(kBos);
    m.words_.emplace_back(kEos);
  }
  m.index_words();
  const int unk = m.ids_.at(std::string(kUnk));

  using Counts = std::map<std::vector<int>, std::uint64_t>;
  std::vector<Counts> counts(static_cast<std::size_t>(order));
  for (const auto& s : sentences) {
    std::vector<int> seq;
    if (order > 1) seq.push_back(m.ids_.at(std::string(kBos)));
    for (const auto& w : s) seq.push_back(m.id_or_unk(w));
    if (order > 1) seq.push_back(m.ids_.at(std::string(kEos)));
    const std::size_t first = order > 1 ? 1 : 0;  // <s> is never predicted
    for (std::size_t i = first; i < seq.size(); ++i) {
      for (int n = 1; n <= order; ++n) {
        if (i + 1 < static_cast<std::size_t>(n)) break;
        std::vector<int> key(seq.begin() + static_cast<std::ptrdiff_t>(i + 1 - n),
                             seq.begin() + static_cast<std::ptrdiff_t>(i + 1));
        ++counts[static_cast<std::size_t>(n - 1)][key];
      }
    }
  }

  const double d = params.discount;
  m.tables_.assign(static_cast<std::size_t>(order), {});

  // Unigrams.
  {
    std::uint64_t total = 0;
    std::uint64_t seen_types = 0;
    std::uint64_t unk_count = 0;
    for (const auto& [key, c] : counts[0]) {
      total += c;
      if (key[0] == unk) {
        unk_count = c;
      } else {
        ++seen_types;
      }
    }
    const double n = static_cast<double>(total);
    for (const auto& [key, c] : counts[0]) {
      if (key[0] == unk) continue;
      m.tables_[0][key].logprob = std::log10((static_cast<double>(c) - d) / n);
    }
    m.tables_[0][{unk}].logprob =
        std::log10((static_cast<double>(unk_count) + d * static_cast<double>(seen_types)) / n);
    if (order > 1) m.tables_[0][{m.ids_.at(std::string(kBos))}].logprob = kBosLogprob;
  }

  // Higher orders, each backing off to the already-finished lower model.
  for (int n = 2; n <= order; ++n) {
    std::map<std::vector<int>, std::vector<std::pair<int, std::uint64_t>>> by_context;
    for (const auto& [key, c] : counts[static_cast<std::size_t>(n - 1)]) {
      by_context[std::vector<int>(key.begin(), key.end() - 1)].emplace_back(key.back(), c);
    }
    auto& table = m.tables_[static_cast<std::size_t>(n - 1)];
    auto& ctx_table = m.tables_[static_cast<std::size_t>(n - 2)];
    for (const auto& [ctx, conts] : by_context) {
      std::uint64_t ctx_total = 0;
      for (const auto& [w, c] : conts) ctx_total += c;
      const double total = static_cast<double>(ctx_total);
      const std::vector<int> lower_ctx(ctx.begin() + 1, ctx.end());
      double lower_mass = 0;
      for (const auto& [w, c] : conts) lower_mass += std::pow(10.0, m.log10_prob_ids(w, lower_ctx));
      const double freed = d * static_cast<double>(conts.size()) / total;
      const double room = 1.0 - lower_mass;
      // When the continuations already exhaust the lower distribution there
      // is nowhere to send freed mass: keep maximum-likelihood estimates.
      const bool discount = room > 1e-10;
      for (const auto& [w, c] : conts) {
        std::vector<int> key = ctx;
        key.push_back(w);
        const double p = discount ? (static_cast<double>(c) - d) / total
                                  : static_cast<double>(c) / total;
        table[key].logprob = std::log10(p);
      }
      ctx_table[ctx].backoff = discount ? std::log10(freed / room) : 0.0;
    }
  }
  return m;
}

inline std::string NGramModel::serialize() const {
  std::ostringstream out;
  out << "# mlime-ngram 1\n";
  if (!language_tag_.empty()) out << "# language_tag=" << language_tag_ << "\n";
  if (!script_.empty()) out << "# script=" << script_ << "\n";
  out << "# training_tokens=" << training_tokens_ << "\n\n";
  out << "\\data\\\n";
  for (int n = 1; n <= order_; ++n) out << "ngram " << n << "=" << table(n).size() << "\n";
  for (int n = 1; n <= order_; ++n) {
    out << "\n\\" << n << "-grams:\n";
    std::vector<std::pair<std::vector<std::string>, const Entry*>> rows;
    rows.reserve(table(n).size());
    for (const auto& [key, e] : table(n)) {
      std::vector<std::string> ws;
      for (int id : key) ws.push_back(words_[static_cast<std::size_t>(id)]);
      rows.emplace_back(std::move(ws), &e);
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [ws, e] : rows) {
      out << detail::format_double(e->logprob) << "\t";
      for (std::size_t i = 0; i < ws.size(); ++i) out << (i ? " " : "") << ws[i];
      if (n < order_) out << "\t" << detail::format_double(e->backoff);
      out << "\n";
    }
  }
  out << "\n\\end\\\n";
  return out.str();
}

inline NGramModel NGramModel::parse(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }
  auto error = [](std::size_t line_no, const std::string& what) -> void {
    fail("FormatError", "line " + std::to_string(line_no),
         "line " + std::to_string(line_no) + ": " + what);
  };
  const std::size_t eof_line = lines.size() + 1;

  NGramModel m;
  std::size_t i = 0;
  for (; i < lines.size(); ++i) {
    const std::string& l = lines[i];
    if (l == "\\data\\") break;
    if (l.rfind("# language_tag=", 0) == 0) m.language_tag_ = l.substr(15);
    if (l.rfind("# script=", 0) == 0) m.script_ = l.substr(9);
    if (l.rfind("# training_tokens=", 0) == 0) {
      try {
        m.training_tokens_ = std::stoull(l.substr(18));
      } catch (const std::exception&) {
        error(i + 1, "bad training_tokens");
      }
    }
  }
  if (i == lines.size()) error(eof_line, "missing \\data\\ section");
  ++i;
  std::vector<std::size_t> declared;
  for (; i < lines.size() && !lines[i].empty(); ++i) {
    const std::string& l = lines[i];
    const auto eq = l.find('=');
    if (l.rfind("ngram ", 0) != 0 || eq == std::string::npos) error(i + 1, "expected 'ngram N=count'");
    try {
      const int n = std::stoi(l.substr(6, eq - 6));
      if (n != static_cast<int>(declared.size()) + 1) error(i + 1, "n-gram orders out of sequence");
      declared.push_back(std::stoull(l.substr(eq + 1)));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      error(i + 1, "bad ngram count");
    }
  }
  if (declared.empty()) error(i + 1, "no ngram counts");
  if (declared.size() > static_cast<std::size_t>(kMaxOrder)) error(i, "order too large");
  m.order_ = static_cast<int>(declared.size());

  struct Raw {
    std::vector<std::string> words;
    Entry e;
    std::size_t line;
  };
  std::vector<std::vector<Raw>> raw(declared.size());
  for (std::size_t n = 1; n <= declared.size(); ++n) {
    while (i < lines.size() && lines[i].empty()) ++i;
    if (i == lines.size()) error(eof_line, "truncated before \\" + std::to_string(n) + "-grams:");
    if (lines[i] != "\\" + std::to_string(n) + "-grams:") error(i + 1, "expected \\" + std::to_string(n) + "-grams:");
    ++i;
    for (std::size_t k = 0; k < declared[n - 1]; ++k, ++i) {
      if (i == lines.size()) error(eof_line, "truncated inside \\" + std::to_string(n) + "-grams:");
      const std::string& l = lines[i];
      std::vector<std::string> fields;
      std::size_t start = 0;
      while (true) {
        const auto tab = l.find('\t', start);
        fields.push_back(l.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
      }
      if (fields.size() < 2 || fields.size() > 3) error(i + 1, "expected logprob, n-gram[, backoff]");
      Raw r;
      r.line = i + 1;
      try {
        std::size_t used = 0;
        r.e.logprob = std::stod(fields[0], &used);
        if (used != fields[0].size()) throw std::invalid_argument("trailing");
        if (fields.size() == 3) {
          r.e.backoff = std::stod(fields[2], &used);
          if (used != fields[2].size()) throw std::invalid_argument("trailing");
        }
      } catch (const std::exception&) {
        error(i + 1, "unparsable number");
      }
      if (!std::isfinite(r.e.logprob) || !std::isfinite(r.e.backoff)) error(i + 1, "non-finite value");
      if (r.e.logprob > 0.0) error(i + 1, "log10 probability above zero");
      std::istringstream ws(fields[1]);
      std::string w;
      while (ws >> w) r.words.push_back(w);
      if (r.words.size() != n) error(i + 1, "n-gram has wrong number of words");
      raw[n - 1].push_back(std::move(r));
    }
  }
  while (i < lines.size() && lines[i].empty()) ++i;
  if (i == lines.size()) error(eof_line, "missing \\end\\");
  if (lines[i] != "\\end\\") error(i + 1, "expected \\end\\ (entry count mismatch?)");

  for (const auto& r : raw[0]) m.words_.push_back(r.words[0]);
  m.index_words();
  if (m.ids_.size() != m.words_.size()) error(raw[0].front().line, "duplicate unigram");
  if (m.ids_.count(std::string(kUnk)) == 0) error(eof_line, "model lacks <unk>");
  m.tables_.assign(declared.size(), {});
  for (std::size_t n = 0; n < raw.size(); ++n) {
    for (const auto& r : raw[n]) {
      std::vector<int> key;
      for (const auto& w : r.words) {
        auto it = m.ids_.find(w);
        if (it == m.ids_.end()) error(r.line, "word missing from unigrams: " + w);
        key.push_back(it->second);
      }
      if (!m.tables_[n].emplace(std::move(key), r.e).second) error(r.line, "duplicate n-gram");
    }
  }
  return m;
}

/// Per-token perplexity over sentences (including </s> for order > 1).
inline double perplexity(const NGramModel& model,
                         const std::vector<std::vector<std::string>>& sentences) {
  double sum = 0;
  std::size_t n = 0;
  for (const auto& s : sentences) {
    std::vector<std::string> ctx;
    if (model.order() > 1) ctx.emplace_back(kBos);
    std::vector<std::string> targets = s;
    if (model.order() > 1) targets.emplace_back(kEos);
    for (const auto& w : targets) {
      sum += model.log10_prob(w, ctx);
      ++n;
      ctx.push_back(w);
    }
  }
  return n == 0 ? 1.0 : std::pow(10.0, -sum / static_cast<double>(n));
}

}  // namespace mlime
