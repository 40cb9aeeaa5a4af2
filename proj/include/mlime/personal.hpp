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

// On-device personal dictionary: learned words, rejected autocorrections,
// and the unigram mixture that adapts a base model to one user.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mlime/error.hpp"
#include "mlime/layout.hpp"
#include "mlime/ngram.hpp"
#include "mlime/unicode.hpp"

namespace mlime {

struct PersonalEntry {
  std::uint64_t count = 0;
  std::int64_t last_used = 0;  // milliseconds
  bool operator==(const PersonalEntry&) const = default;
};

/// Halves every count once the total passes `threshold`. Off by default.
struct DecayPolicy {
  bool enabled = false;
  std::uint64_t threshold = 10000;
};

/// True when every grapheme of `word` (or of its lowercase form) is in the
/// inventory, allowing word-internal apostrophes and hyphens.
inline bool inventory_clean(std::string_view word, const CharacterInventory& inventory) {
  GraphemeSet allowed = inventory.grapheme_set();
  for (const char* j : {"'", "’", "-", "‐"}) allowed.insert(j);
  auto clean = [&](std::string_view w) {
    for (const auto& seg : allowed.segment(w)) {
      if (!seg.known) return false;
    }
    return true;
  };
  return clean(word) || clean(nfc(to_lower(word)));
}

class PersonalDict {
 public:
  using Pair = std::pair<std::string, std::string>;

  PersonalDict() = default;
  explicit PersonalDict(DecayPolicy decay) : decay_(decay) {}

  /// Records one commit of `word`. With an inventory, words containing
  /// characters outside it are refused.
  void learn_commit(std::string_view word, const CharacterInventory* inventory,
                    std::int64_t timestamp) {
    if (word.empty()) fail("InvalidWord", "", "cannot learn an empty word");
    const std::string w = nfc(word);
    if (inventory != nullptr && !inventory_clean(w, *inventory)) fail("InventoryViolation", w);
    auto& e = words_[w];
    ++e.count;
    e.last_used = std::max(e.last_used, timestamp);
    ++total_;
    maybe_decay();
  }

  /// The user undid an autocorrection of `literal` into `correction`.
  void learn_revert(std::string_view literal, std::string_view correction,
                    const CharacterInventory* inventory, std::int64_t timestamp) {
    const std::string l = nfc(literal);
    const std::string c = nfc(correction);
    if (l.empty() || l == c) return;
    ++blocklist_[{l, c}];
    if (inventory == nullptr || inventory_clean(l, *inventory)) learn_commit(l, nullptr, timestamp);
  }

  bool contains(std::string_view word) const { return words_.count(std::string(word)) > 0; }

  std::uint64_t count(std::string_view word) const {
    auto it = words_.find(std::string(word));
    return it == words_.end() ? 0 : it->second.count;
  }

  std::uint64_t total() const { return total_; }

  bool blocked(std::string_view literal, std::string_view correction) const {
    return blocklist_.count({std::string(literal), std::string(correction)}) > 0;
  }

  std::uint64_t revert_count(std::string_view literal, std::string_view correction) const {
    auto it = blocklist_.find({std::string(literal), std::string(correction)});
    return it == blocklist_.end() ? 0 : it->second;
  }

  const std::map<std::string, PersonalEntry>& words() const { return words_; }
  const std::map<Pair, std::uint64_t>& blocklist() const { return blocklist_; }

  /// Mixture weight of the personal distribution: min(0.5, T / (T + 100)).
  double lambda() const {
    const double t = static_cast<double>(total_);
    return std::min(0.5, t / (t + 100.0));
  }

  double relative(std::string_view word) const {
    return total_ == 0 ? 0.0 : static_cast<double>(count(word)) / static_cast<double>(total_);
  }

  void clear() {
    words_.clear();
    blocklist_.clear();
    total_ = 0;
  }

  bool operator==(const PersonalDict& o) const {
    return words_ == o.words_ && blocklist_ == o.blocklist_ && total_ == o.total_;
  }

  std::string serialize() const {
    std::ostringstream out;
    out << "# mlime personal dictionary v1\n[words]\n";
    for (const auto& [w, e] : words_) out << w << "\t" << e.count << "\t" << e.last_used << "\n";
    out << "[blocklist]\n";
    for (const auto& [p, n] : blocklist_) out << p.first << "\t" << p.second << "\t" << n << "\n";
    return out.str();
  }

  static PersonalDict parse(std::string_view text) {
    PersonalDict d;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t n = 0;
    enum { kNone, kWords, kBlock } section = kNone;
    auto bad = [&](const std::string& why) {
      fail("FormatError", "line " + std::to_string(n), "line " + std::to_string(n) + ": " + why);
    };
    while (std::getline(in, line)) {
      ++n;
      if (line.empty() || line[0] == '#') continue;
      if (line == "[words]") {
        section = kWords;
        continue;
      }
      if (line == "[blocklist]") {
        section = kBlock;
        continue;
      }
      std::vector<std::string> f;
      std::size_t start = 0;
      while (true) {
        const auto tab = line.find('\t', start);
        f.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
      }
      if (f.size() != 3 || f[0].empty()) bad("expected three tab-separated fields");
      try {
        if (section == kWords) {
          const auto c = std::stoull(f[1]);
          if (c == 0) bad("count must be positive");
          d.words_[f[0]] = {c, std::stoll(f[2])};
          d.total_ += c;
        } else if (section == kBlock) {
          if (f[0] == f[1]) bad("blocklist pair with identical sides");
          d.blocklist_[{f[0], f[1]}] = std::stoull(f[2]);
        } else {
          bad("record outside a section");
        }
      } catch (const Error&) {
        throw;
      } catch (const std::exception&) {
        bad("unparsable number");
      }
    }
    return d;
  }

  /// Write-temp-then-rename so readers never observe a partial file.
  void save(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) fail("IoError", tmp.string(), "cannot write " + tmp.string());
      out << serialize();
    }
    std::filesystem::rename(tmp, path);
  }

  static PersonalDict load(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) return {};
    return parse(read_file(path.string()));
  }

 private:
  void maybe_decay() {
    if (!decay_.enabled || total_ <= decay_.threshold) return;
    total_ = 0;
    for (auto it = words_.begin(); it != words_.end();) {
      it->second.count /= 2;
      if (it->second.count == 0) {
        it = words_.erase(it);
      } else {
        total_ += it->second.count;
        ++it;
      }
    }
  }

  std::map<std::string, PersonalEntry> words_;
  std::map<Pair, std::uint64_t> blocklist_;
  std::uint64_t total_ = 0;
  DecayPolicy decay_;
};

/// (1 - λ)·P_base + λ·P_personal. Words known only to the dictionary get no
/// base mass; words unknown to both get the base model's unknown mass.
inline double personalized_prob(const WordModel& base, const PersonalDict& dict,
                                std::string_view word, Context context) {
  const double lambda = dict.lambda();
  const bool base_knows = base.contains(word);
  const double p_base = (!base_knows && dict.contains(word)) ? 0.0 : base.prob(word, context);
  return (1.0 - lambda) * p_base + lambda * dict.relative(word);
}

/// A base model seen through a snapshot of the personal dictionary.
class PersonalizedModel : public WordModel {
 public:
  PersonalizedModel(std::shared_ptr<const WordModel> base,
                    std::shared_ptr<const PersonalDict> dict)
      : base_(std::move(base)), dict_(std::move(dict)) {
    vocab_ = base_->vocabulary();
    for (const auto& [w, e] : dict_->words()) {
      if (!base_->contains(w)) vocab_.push_back(w);
    }
  }

  double prob(std::string_view word, Context context) const override {
    return personalized_prob(*base_, *dict_, word, context);
  }
  const std::vector<std::string>& vocabulary() const override { return vocab_; }
  bool contains(std::string_view word) const override {
    return base_->contains(word) || dict_->contains(word);
  }
  std::size_t context_size() const override { return base_->context_size(); }

  const WordModel& base() const { return *base_; }
  const PersonalDict& dict() const { return *dict_; }

 private:
  std::shared_ptr<const WordModel> base_;
  std::shared_ptr<const PersonalDict> dict_;
  std::vector<std::string> vocab_;
};

}  // namespace mlime
