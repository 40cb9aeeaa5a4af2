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

// Corpus normalization and wordlist extraction.

#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "mlime/error.hpp"
#include "mlime/profile.hpp"
#include "mlime/unicode.hpp"

namespace mlime {

struct Token {
  std::string text;     // folded form used for modeling
  std::string surface;  // original-case form
  bool operator==(const Token&) const = default;
};

struct RejectionReport {
  std::map<std::string, std::uint64_t> by_reason;     // url, email, digits, inventory
  std::map<std::string, std::uint64_t> by_character;  // offending characters

  std::uint64_t total() const {
    std::uint64_t n = 0;
    for (const auto& [reason, count] : by_reason) n += count;
    return n;
  }
  bool empty() const { return by_reason.empty() && by_character.empty(); }

  void merge(const RejectionReport& other) {
    for (const auto& [k, v] : other.by_reason) by_reason[k] += v;
    for (const auto& [k, v] : other.by_character) by_character[k] += v;
  }

  std::string to_text() const {
    std::ostringstream out;
    out << "rejected tokens: " << total() << "\n";
    for (const auto& [reason, count] : by_reason) out << "reason\t" << reason << "\t" << count << "\n";
    for (const auto& [ch, count] : by_character) {
      char buf[16];
      const auto cps = to_u32(ch);
      std::snprintf(buf, sizeof buf, "U+%04X", cps.empty() ? 0u : static_cast<unsigned>(cps[0]));
      out << "char\t" << ch << "\t" << buf << "\t" << count << "\n";
    }
    return out.str();
  }
};

struct NormalizedText {
  std::vector<Token> tokens;
  RejectionReport report;
};

namespace detail {

inline bool is_word_joiner(char32_t c) {
  return c == U'\'' || c == U'’' || c == U'-' || c == U'‐';
}

inline bool looks_like_url(std::string_view token) {
  const std::string lower = to_lower(token);
  return lower.find("://") != std::string::npos || lower.rfind("www.", 0) == 0;
}

inline bool looks_like_email(std::string_view token) {
  const auto at = token.find('@');
  if (at == std::string_view::npos || at == 0) return false;
  return token.find('.', at + 2) != std::string_view::npos;
}

}  // namespace detail

/// Turns raw text into modeling tokens. Steps: NFC; drop URL, e-mail and
/// digit-run tokens; split on punctuation other than word-internal apostrophe
/// and hyphen; fold case for cased languages; drop tokens with characters
/// outside the inventory. Every drop is counted in the report.
inline NormalizedText normalize(std::string_view raw_text, const LanguageProfile& profile) {
  NormalizedText result;
  const GraphemeSet inventory = profile.inventory.grapheme_set();
  GraphemeSet allowed = inventory;
  for (const char* j : {"'", "’", "-", "‐"}) allowed.insert(j);

  for (const auto& raw : split_whitespace(nfc(raw_text))) {
    if (detail::looks_like_url(raw)) {
      ++result.report.by_reason["url"];
      continue;
    }
    if (detail::looks_like_email(raw)) {
      ++result.report.by_reason["email"];
      continue;
    }
    std::vector<std::u32string> pieces(1);
    for (const char32_t c : to_u32(raw)) {
      if (is_punct_or_symbol(c) && !detail::is_word_joiner(c) &&
          !inventory.contains(std::u32string(1, c))) {
        pieces.emplace_back();
      } else {
        pieces.back().push_back(c);
      }
    }
    for (auto& piece : pieces) {
      std::size_t b = 0;
      std::size_t e = piece.size();
      while (b < e && detail::is_word_joiner(piece[b])) ++b;
      while (e > b && detail::is_word_joiner(piece[e - 1])) --e;
      if (b == e) continue;
      const std::u32string core = piece.substr(b, e - b);
      bool all_digits = true;
      for (const char32_t c : core) all_digits &= is_digit(c);
      if (all_digits) {
        ++result.report.by_reason["digits"];
        continue;
      }
      const std::string surface = to_utf8(core);
      const std::string folded =
          profile.casing == Casing::kCased ? nfc(to_lower(surface)) : surface;
      bool clean = true;
      for (const auto& seg : allowed.segment(std::string_view(folded))) {
        if (!seg.known) {
          clean = false;
          ++result.report.by_character[to_utf8(seg.text)];
        }
      }
      if (!clean) {
        ++result.report.by_reason["inventory"];
        continue;
      }
      result.tokens.push_back({folded, surface});
    }
  }
  return result;
}

/// Sentences of folded tokens, one per corpus line.
struct NormalizedCorpus {
  std::vector<std::vector<std::string>> sentences;
  RejectionReport report;

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.size();
    return n;
  }
  std::vector<std::string> flat() const {
    std::vector<std::string> out;
    for (const auto& s : sentences) out.insert(out.end(), s.begin(), s.end());
    return out;
  }
};

inline NormalizedCorpus normalize_corpus(std::string_view text, const LanguageProfile& profile) {
  NormalizedCorpus corpus;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto nt = normalize(text.substr(start, end - start), profile);
    corpus.report.merge(nt.report);
    if (!nt.tokens.empty()) {
      std::vector<std::string> sentence;
      sentence.reserve(nt.tokens.size());
      for (auto& t : nt.tokens) sentence.push_back(std::move(t.text));
      corpus.sentences.push_back(std::move(sentence));
    }
    start = end + 1;
  }
  return corpus;
}

struct Wordlist {
  std::map<std::string, std::uint64_t> counts;
  std::string source;

  bool contains(const std::string& w) const { return counts.count(w) > 0; }
  std::uint64_t count(const std::string& w) const {
    auto it = counts.find(w);
    return it == counts.end() ? 0 : it->second;
  }

  std::string serialize() const {
    std::ostringstream out;
    out << "# source\t" << source << "\n";
    for (const auto& [w, c] : counts) out << w << "\t" << c << "\n";
    return out.str();
  }

  static Wordlist parse(std::string_view text) {
    Wordlist wl;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      if (line.empty()) continue;
      if (line.rfind("# source\t", 0) == 0) {
        wl.source = line.substr(9);
        continue;
      }
      const auto tab = line.find('\t');
      if (tab == std::string::npos) {
        wl.counts[line] += 1;
        continue;
      }
      try {
        const auto c = std::stoull(line.substr(tab + 1));
        if (c == 0) throw std::invalid_argument("zero");
        wl.counts[line.substr(0, tab)] += c;
      } catch (const std::exception&) {
        fail("FormatError", "line " + std::to_string(n), "bad wordlist count at line " +
                                                             std::to_string(n));
      }
    }
    return wl;
  }
};

template <typename TokenRange>
Wordlist build_wordlist(const TokenRange& tokens, std::string source = {}) {
  Wordlist wl;
  wl.source = std::move(source);
  for (const auto& t : tokens) {
    if constexpr (std::is_same_v<std::decay_t<decltype(t)>, Token>) {
      ++wl.counts[t.text];
    } else {
      ++wl.counts[std::string(t)];
    }
  }
  return wl;
}

}  // namespace mlime
