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

// UTF-8 helpers backed by ICU: normalization, case mapping, character
// classes and greedy grapheme segmentation against an inventory.

#pragma once

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mlime/error.hpp"

namespace mlime {

namespace detail {

inline icu::UnicodeString to_icu(std::string_view s) {
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

inline std::string from_icu(const icu::UnicodeString& u) {
  std::string out;
  u.toUTF8String(out);
  return out;
}

inline const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    fail("IcuError", "NFC", "cannot load NFC normalizer");
  }
  return *n;
}

inline const icu::Normalizer2& nfd_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    fail("IcuError", "NFD", "cannot load NFD normalizer");
  }
  return *n;
}

}  // namespace detail

/// Decodes UTF-8 into scalar values. Ill-formed sequences become U+FFFD.
inline std::u32string to_u32(std::string_view utf8) {
  const icu::UnicodeString u = detail::to_icu(utf8);
  std::u32string out;
  out.reserve(static_cast<std::size_t>(u.length()));
  for (int32_t i = 0; i < u.length();) {
    const UChar32 c = u.char32At(i);
    out.push_back(static_cast<char32_t>(c));
    i += U16_LENGTH(c);
  }
  return out;
}

inline std::string to_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char32_t c : text) {
    const auto cp = static_cast<uint32_t>(c);
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

inline std::string to_utf8(char32_t c) { return to_utf8(std::u32string(1, c)); }

inline std::size_t codepoint_count(std::string_view utf8) {
  return to_u32(utf8).size();
}

inline std::string nfc(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::UnicodeString out =
      detail::nfc_instance().normalize(detail::to_icu(s), status);
  if (U_FAILURE(status)) fail("IcuError", std::string(s), "NFC failed");
  return detail::from_icu(out);
}

inline std::string nfd(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::UnicodeString out =
      detail::nfd_instance().normalize(detail::to_icu(s), status);
  if (U_FAILURE(status)) fail("IcuError", std::string(s), "NFD failed");
  return detail::from_icu(out);
}

inline bool is_nfc(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const bool ok = detail::nfc_instance().isNormalized(detail::to_icu(s), status);
  return U_SUCCESS(status) && ok;
}

// Case mapping uses the root locale so results do not depend on the host.
inline std::string to_lower(std::string_view s) {
  icu::UnicodeString u = detail::to_icu(s);
  u.toLower(icu::Locale::getRoot());
  return detail::from_icu(u);
}

inline std::string to_upper(std::string_view s) {
  icu::UnicodeString u = detail::to_icu(s);
  u.toUpper(icu::Locale::getRoot());
  return detail::from_icu(u);
}

inline bool is_combining_mark(char32_t c) {
  const int8_t t = u_charType(static_cast<UChar32>(c));
  return t == U_NON_SPACING_MARK || t == U_COMBINING_SPACING_MARK ||
         t == U_ENCLOSING_MARK;
}

inline bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }
inline bool is_digit(char32_t c) { return u_isdigit(static_cast<UChar32>(c)); }

// Punctuation and symbols both split tokens.
inline bool is_punct_or_symbol(char32_t c) {
  const auto cp = static_cast<UChar32>(c);
  if (u_ispunct(cp)) return true;
  const int8_t t = u_charType(cp);
  return t == U_MATH_SYMBOL || t == U_CURRENCY_SYMBOL ||
         t == U_MODIFIER_SYMBOL || t == U_OTHER_SYMBOL;
}

/// Splits UTF-8 text on Unicode whitespace.
inline std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::u32string cur;
  for (const char32_t c : to_u32(text)) {
    if (is_space(c)) {
      if (!cur.empty()) out.push_back(to_utf8(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(to_utf8(cur));
  return out;
}

/// One piece of a greedy segmentation. `known` is false for a codepoint that
/// no inventory entry covers.
struct Segment {
  std::u32string text;
  bool known = false;
};

/// An ordered set of graphemes (NFC codepoint sequences, possibly more than
/// one codepoint each) supporting greedy longest-match segmentation.
class GraphemeSet {
 public:
  GraphemeSet() = default;

  template <typename Range>
  explicit GraphemeSet(const Range& graphemes) {
    for (const auto& g : graphemes) insert(g);
  }

  void insert(std::string_view grapheme) {
    std::u32string g = to_u32(grapheme);
    if (g.empty()) return;
    max_len_ = std::max(max_len_, g.size());
    items_.insert(std::move(g));
  }

  bool contains(std::u32string_view g) const {
    return items_.count(std::u32string(g)) > 0;
  }
  bool contains(std::string_view g) const { return contains(to_u32(g)); }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::set<std::u32string>& items() const { return items_; }

  std::vector<Segment> segment(std::u32string_view text) const {
    std::vector<Segment> out;
    std::size_t i = 0;
    while (i < text.size()) {
      std::size_t take = 0;
      const std::size_t longest = std::min(max_len_, text.size() - i);
      for (std::size_t len = longest; len >= 1; --len) {
        if (items_.count(std::u32string(text.substr(i, len))) > 0) {
          take = len;
          break;
        }
      }
      if (take == 0) {
        out.push_back({std::u32string(1, text[i]), false});
        i += 1;
      } else {
        out.push_back({std::u32string(text.substr(i, take)), true});
        i += take;
      }
    }
    return out;
  }

  std::vector<Segment> segment(std::string_view utf8) const {
    return segment(std::u32string_view(to_u32(utf8)));
  }

 private:
  std::set<std::u32string> items_;
  std::size_t max_len_ = 0;
};

}  // namespace mlime
