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

// Automatic Latin-script layout design: start from a culturally chosen base
// grid and place every extra grapheme of the orthography as a long-press on
// its base letter, on a fallback host, as a standalone key, or on page 1.

#pragma once

#include <unicode/uscript.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlime/error.hpp"
#include "mlime/layout.hpp"
#include "mlime/unicode.hpp"

namespace mlime {

struct AutogenOptions {
  BaseGrid base_grid = BaseGrid::kQwerty;
  double standalone_threshold = 0.02;
  std::string fallback_host_key = "e";
  int max_long_press_per_key = 8;
};

struct FrequencyTable {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  std::uint64_t count(const std::string& g) const {
    auto it = counts.find(g);
    return it == counts.end() ? 0 : it->second;
  }
  double relative(const std::string& g) const {
    return total == 0 ? 0.0 : static_cast<double>(count(g)) / static_cast<double>(total);
  }
};

/// Counts inventory graphemes in the corpus using greedy longest-grapheme
/// segmentation. Out-of-inventory text is skipped. Every inventory grapheme
/// appears in the table, possibly with count zero.
template <typename TokenRange>
FrequencyTable char_frequencies(const TokenRange& tokens, const CharacterInventory& inventory) {
  if (std::begin(tokens) == std::end(tokens)) fail("EmptyCorpus", "corpus", "corpus is empty");
  FrequencyTable table;
  for (const auto& g : inventory.required) table.counts[g] = 0;
  for (const auto& g : inventory.optional_loanword) table.counts[g] = 0;
  const GraphemeSet set = inventory.grapheme_set();
  for (const auto& token : tokens) {
    for (const auto& seg : set.segment(std::string_view(token))) {
      if (!seg.known) continue;
      ++table.counts[to_utf8(seg.text)];
      ++table.total;
    }
  }
  return table;
}

/// The a–z letter left after canonical decomposition and removal of combining
/// marks, if that is all that remains.
inline std::optional<char> base_of(std::string_view grapheme) {
  std::u32string residue;
  for (const char32_t c : to_u32(nfd(grapheme))) {
    if (!is_combining_mark(c)) residue.push_back(c);
  }
  if (residue.size() == 1 && residue[0] >= U'a' && residue[0] <= U'z') {
    return static_cast<char>(residue[0]);
  }
  return std::nullopt;
}

/// Letter rows of a base grid, top to bottom.
inline std::vector<std::string> base_grid_rows(BaseGrid grid) {
  switch (grid) {
    case BaseGrid::kQwerty: return {"qwertyuiop", "asdfghjkl", "zxcvbnm"};
    case BaseGrid::kAzerty: return {"azertyuiop", "qsdfghjklm", "wxcvbn"};
    case BaseGrid::kQwertz: return {"qwertzuiop", "asdfghjkl", "yxcvbnm"};
    case BaseGrid::kScriptNative: break;
  }
  fail("InvalidOptions", "base_grid", "autogen needs a Latin base grid");
}

namespace detail {

// Uniform key width chosen so the longest row spans the keyboard; shorter
// rows are centred.
inline void reflow_page(Page& page) {
  std::map<int, int> per_row;
  for (const auto& k : page.keys) ++per_row[k.row];
  int longest = 1;
  for (const auto& [row, n] : per_row) longest = std::max(longest, n);
  const double width = std::min(0.1, 1.0 / longest);
  page.row_offsets.assign(static_cast<std::size_t>(page.rows()), 0.0);
  for (const auto& [row, n] : per_row) {
    page.row_offsets[static_cast<std::size_t>(row)] = (1.0 - n * width) / 2.0;
  }
  for (auto& k : page.keys) k.width = width;
}

inline Key letter_key(const std::string& id, int row, int col, const std::string& out) {
  Key k;
  k.id = id;
  k.row = row;
  k.col = col;
  k.output = out;
  k.face = out;
  const std::string upper = to_upper(out);
  if (upper != out && is_nfc(upper)) k.shift = upper;
  return k;
}

inline bool latin_compatible(std::string_view grapheme) {
  for (const char32_t c : to_u32(grapheme)) {
    UErrorCode status = U_ZERO_ERROR;
    const UScriptCode sc = uscript_getScript(static_cast<UChar32>(c), &status);
    if (U_FAILURE(status)) return false;
    if (sc != USCRIPT_LATIN && sc != USCRIPT_COMMON && sc != USCRIPT_INHERITED) return false;
  }
  return true;
}

}  // namespace detail

/// The bare base grid as a one-page layout.
inline Layout base_grid_layout(BaseGrid grid, const std::string& language_tag) {
  Layout layout;
  layout.language_tag = language_tag;
  layout.layout_id = language_tag + "-auto-" + to_lower(to_string(grid));
  layout.script = "Latn";
  layout.base_grid = grid;
  Page page;
  const auto rows = base_grid_rows(grid);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const std::string letter(1, rows[r][c]);
      page.keys.push_back(detail::letter_key(letter, static_cast<int>(r),
                                             static_cast<int>(c), letter));
    }
  }
  detail::reflow_page(page);
  layout.pages.push_back(std::move(page));
  return layout;
}

inline constexpr int kAutogenPageRows = 3;
inline constexpr int kAutogenPageCols = 10;

inline Layout generate_layout(const AutogenOptions& options, const CharacterInventory& inventory,
                              const FrequencyTable& freqs) {
  if (!(options.standalone_threshold >= 0.0 && options.standalone_threshold <= 1.0)) {
    fail("InvalidOptions", "standalone_threshold", "threshold must lie in [0,1]");
  }
  if (options.max_long_press_per_key < 1) {
    fail("InvalidOptions", "max_long_press_per_key", "need at least one long-press slot");
  }
  for (const auto* set : {&inventory.required, &inventory.optional_loanword}) {
    for (const auto& g : *set) {
      if (!detail::latin_compatible(g)) fail("NonLatinScript", g);
    }
  }

  Layout layout = base_grid_layout(options.base_grid, inventory.language_tag);
  Page& grid = layout.pages[0];
  if (grid.find(options.fallback_host_key) == nullptr) {
    fail("InvalidOptions", options.fallback_host_key, "fallback host is not a grid key");
  }

  std::set<std::string> on_grid;
  for (const auto& k : grid.keys) {
    on_grid.insert(k.output);
    if (k.shift) on_grid.insert(*k.shift);
  }

  std::vector<std::string> extra;
  for (const auto& g : inventory.required) {
    if (on_grid.count(g) == 0) extra.push_back(g);
  }
  for (const auto& g : inventory.optional_loanword) {
    if (on_grid.count(g) == 0 && freqs.count(g) > 0) extra.push_back(g);
  }
  // Descending frequency; ties by codepoint order.
  std::sort(extra.begin(), extra.end(), [&](const std::string& a, const std::string& b) {
    const auto ca = freqs.count(a);
    const auto cb = freqs.count(b);
    if (ca != cb) return ca > cb;
    return to_u32(a) < to_u32(b);
  });

  std::vector<std::string> overflow;
  int standalone = 0;
  const int grid_rows = grid.rows();
  for (const auto& g : extra) {
    if (freqs.total > 0 && freqs.relative(g) >= options.standalone_threshold) {
      // Extend whichever of the two upper rows is shorter (ties: row 1).
      std::map<int, int> per_row;
      for (const auto& k : grid.keys) ++per_row[k.row];
      const int row = grid_rows >= 2 && per_row[0] < per_row[1] ? 0 : std::min(1, grid_rows - 1);
      grid.keys.push_back(detail::letter_key("x" + std::to_string(standalone++), row,
                                             per_row[row], g));
      continue;
    }
    std::string host = options.fallback_host_key;
    if (const auto base = base_of(g)) {
      if (grid.find(std::string(1, *base)) != nullptr) host = std::string(1, *base);
    }
    for (auto& k : grid.keys) {
      if (k.id != host) continue;
      if (static_cast<int>(k.long_press.size()) < options.max_long_press_per_key) {
        k.long_press.push_back(g);
      } else {
        overflow.push_back(g);
      }
      break;
    }
  }

  if (!overflow.empty()) {
    const std::size_t capacity = kAutogenPageRows * kAutogenPageCols - 1;  // minus back key
    if (overflow.size() > capacity) {
      fail("HostOverflowUnresolvable", overflow[capacity],
           "page 1 cannot hold " + std::to_string(overflow.size()) + " overflow graphemes");
    }
    Page second;
    for (std::size_t i = 0; i < overflow.size(); ++i) {
      second.keys.push_back(detail::letter_key(
          "p1_" + std::to_string(i), static_cast<int>(i / kAutogenPageCols),
          static_cast<int>(i % kAutogenPageCols), overflow[i]));
    }
    Key back;
    back.id = "page0";
    back.row = static_cast<int>(overflow.size() / kAutogenPageCols);
    back.col = static_cast<int>(overflow.size() % kAutogenPageCols);
    back.face = "abc";
    back.page_switch = 0;
    second.keys.push_back(back);
    detail::reflow_page(second);

    Key to_second;
    to_second.id = "page1";
    to_second.row = grid_rows - 1;
    int last_col = 0;
    for (const auto& k : grid.keys) {
      if (k.row == grid_rows - 1) last_col = std::max(last_col, k.col + 1);
    }
    to_second.col = last_col;
    to_second.face = "…";
    to_second.page_switch = 1;
    grid.keys.push_back(to_second);
    layout.pages.push_back(std::move(second));
  }
  detail::reflow_page(layout.pages[0]);
  validate_layout(layout);
  return layout;
}

}  // namespace mlime
