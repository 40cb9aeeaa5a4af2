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

// Keyboard layouts: data model, file format, coverage checking, dynamic key
// rules and geometry.
//
// A layout file is UTF-8 JSON:
//
//   {
//     "format": "mlime-layout/1",
//     "layout_id": "hi-deva", "language_tag": "hi", "script": "Deva",
//     "base_grid": "SCRIPT_NATIVE", "version": 1,
//     "inventory": ["क", "ि", ...],            // optional rule closure
//     "classes": {"C": ["क", "ख", ...]},       // named grapheme classes
//     "pages": [{"row_offsets": [0, 0.05], "keys": [
//         {"id": "k", "row": 0, "col": 0, "width": 0.1, "output": "क",
//          "shift": "ख", "long_press": ["क़"], "face": "क",
//          "page_switch": 1}]}],
//     "rules": [{"context": ["@C"], "key": "vs_i",
//                "output": "ि", "face": "{}ि"}]
//   }
//
// Context elements starting with '@' name a class; everything else is a
// literal grapheme sequence. "{}" in a rule face is replaced by the text that
// matched the last context element.

#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mlime/error.hpp"
#include "mlime/unicode.hpp"

namespace mlime {

inline constexpr std::string_view kLayoutFormat = "mlime-layout/1";

enum class BaseGrid { kQwerty, kAzerty, kQwertz, kScriptNative };

inline std::string to_string(BaseGrid g) {
  switch (g) {
    case BaseGrid::kQwerty: return "QWERTY";
    case BaseGrid::kAzerty: return "AZERTY";
    case BaseGrid::kQwertz: return "QWERTZ";
    case BaseGrid::kScriptNative: return "SCRIPT_NATIVE";
  }
  return "SCRIPT_NATIVE";
}

inline std::optional<BaseGrid> parse_base_grid(std::string_view s) {
  std::string up = to_upper(s);
  if (up == "QWERTY") return BaseGrid::kQwerty;
  if (up == "AZERTY") return BaseGrid::kAzerty;
  if (up == "QWERTZ") return BaseGrid::kQwertz;
  if (up == "SCRIPT_NATIVE") return BaseGrid::kScriptNative;
  return std::nullopt;
}

struct Key {
  std::string id;
  int row = 0;
  int col = 0;
  double width = 0.1;
  std::string output;                 // empty: blank key
  std::optional<std::string> shift;
  std::vector<std::string> long_press;  // descending priority
  std::string face;
  std::optional<int> page_switch;

  bool blank() const { return output.empty() && face.empty() && !page_switch; }
  bool operator==(const Key&) const = default;
};

struct Page {
  std::vector<Key> keys;
  std::vector<double> row_offsets;

  int rows() const {
    int r = 0;
    for (const auto& k : keys) r = std::max(r, k.row + 1);
    return std::max(r, 1);
  }
  const Key* find(std::string_view id) const {
    for (const auto& k : keys) {
      if (k.id == id) return &k;
    }
    return nullptr;
  }
  bool operator==(const Page&) const = default;
};

struct ContextElement {
  bool is_class = false;
  std::string value;  // literal text, or class name without '@'
  bool operator==(const ContextElement&) const = default;
};

struct DynamicRule {
  std::vector<ContextElement> context;
  std::string target_key;
  std::string output;
  std::string face;
  bool operator==(const DynamicRule&) const = default;
};

struct CharacterInventory {
  std::string language_tag;
  std::set<std::string> required;
  std::set<std::string> optional_loanword;

  bool contains(std::string_view g) const {
    const std::string s(g);
    return required.count(s) > 0 || optional_loanword.count(s) > 0;
  }
  GraphemeSet grapheme_set() const {
    GraphemeSet set(required);
    for (const auto& g : optional_loanword) set.insert(g);
    return set;
  }
  bool operator==(const CharacterInventory&) const = default;
};

/// Validates and parses an inventory from JSON
/// ({"language_tag", "required": [...], "optional_loanword": [...]}).
inline CharacterInventory inventory_from_json(const nlohmann::json& j) {
  CharacterInventory inv;
  try {
    inv.language_tag = j.value("language_tag", std::string());
    for (const auto& g : j.at("required")) inv.required.insert(g.get<std::string>());
    if (j.contains("optional_loanword")) {
      for (const auto& g : j.at("optional_loanword")) {
        inv.optional_loanword.insert(g.get<std::string>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail("SchemaError", "inventory", e.what());
  }
  for (const auto& g : inv.required) {
    if (!is_nfc(g)) fail("NonNfcOutput", g);
    if (inv.optional_loanword.count(g) > 0) {
      fail("SchemaError", g, "grapheme is both required and optional: " + g);
    }
  }
  for (const auto& g : inv.optional_loanword) {
    if (!is_nfc(g)) fail("NonNfcOutput", g);
  }
  return inv;
}

inline nlohmann::json inventory_to_json(const CharacterInventory& inv) {
  return {{"language_tag", inv.language_tag},
          {"required", inv.required},
          {"optional_loanword", inv.optional_loanword}};
}

struct Layout {
  std::string layout_id;
  std::string language_tag;
  std::string script;
  BaseGrid base_grid = BaseGrid::kScriptNative;
  int version = 1;
  std::vector<Page> pages;
  std::vector<DynamicRule> rules;
  std::map<std::string, std::vector<std::string>> classes;
  std::vector<std::string> inventory;  // declared closure for rule outputs

  bool operator==(const Layout&) const = default;
};

// ---------------------------------------------------------------------------
// File format

namespace detail {

template <typename T>
T field(const nlohmann::json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) {
    fail("SchemaError", where + "." + name, "missing field " + where + "." + name);
  }
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail("SchemaError", where + "." + name, "wrong type for " + where + "." + name);
  }
}

template <typename T>
T field_or(const nlohmann::json& j, const char* name, T fallback,
           const std::string& where) {
  if (!j.contains(name)) return fallback;
  return field<T>(j, name, where);
}

inline void require_nfc(const std::string& s, const std::string& where) {
  if (!is_nfc(s)) fail("NonNfcOutput", where, "output is not NFC at " + where);
}

}  // namespace detail

inline nlohmann::json layout_to_json(const Layout& layout) {
  nlohmann::json pages = nlohmann::json::array();
  for (const auto& page : layout.pages) {
    nlohmann::json keys = nlohmann::json::array();
    for (const auto& k : page.keys) {
      nlohmann::json jk = {{"id", k.id}, {"row", k.row}, {"col", k.col},
                           {"width", k.width}, {"output", k.output},
                           {"face", k.face}};
      if (k.shift) jk["shift"] = *k.shift;
      if (!k.long_press.empty()) jk["long_press"] = k.long_press;
      if (k.page_switch) jk["page_switch"] = *k.page_switch;
      keys.push_back(std::move(jk));
    }
    nlohmann::json jp = {{"keys", std::move(keys)}};
    if (!page.row_offsets.empty()) jp["row_offsets"] = page.row_offsets;
    pages.push_back(std::move(jp));
  }
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& r : layout.rules) {
    nlohmann::json ctx = nlohmann::json::array();
    for (const auto& e : r.context) ctx.push_back(e.is_class ? "@" + e.value : e.value);
    rules.push_back({{"context", std::move(ctx)}, {"key", r.target_key},
                     {"output", r.output}, {"face", r.face}});
  }
  nlohmann::json j = {{"format", kLayoutFormat},
                      {"layout_id", layout.layout_id},
                      {"language_tag", layout.language_tag},
                      {"script", layout.script},
                      {"base_grid", to_string(layout.base_grid)},
                      {"version", layout.version},
                      {"pages", std::move(pages)},
                      {"rules", std::move(rules)}};
  if (!layout.classes.empty()) j["classes"] = layout.classes;
  if (!layout.inventory.empty()) j["inventory"] = layout.inventory;
  return j;
}

inline std::string serialize_layout(const Layout& layout) {
  return layout_to_json(layout).dump(1) + "\n";
}

/// Checks every structural invariant; throws mlime::Error naming the
/// offending element.
inline void validate_layout(const Layout& layout) {
  if (layout.pages.empty()) fail("SchemaError", "pages", "layout has no pages");
  std::set<std::string> all_ids;
  for (std::size_t p = 0; p < layout.pages.size(); ++p) {
    std::set<std::string> ids;
    for (const auto& k : layout.pages[p].keys) {
      if (k.id.empty()) fail("SchemaError", "key.id", "empty key id");
      if (!ids.insert(k.id).second) fail("DuplicateKeyId", k.id);
      all_ids.insert(k.id);
      if (!(k.width > 0.0 && k.width <= 1.0)) {
        fail("SchemaError", k.id, "key width outside (0,1]: " + k.id);
      }
      if (k.row < 0 || k.col < 0) fail("SchemaError", k.id, "negative grid index: " + k.id);
      detail::require_nfc(k.output, k.id);
      detail::require_nfc(k.face, k.id);
      if (k.shift) {
        if (k.shift->empty()) fail("SchemaError", k.id, "empty shift output: " + k.id);
        detail::require_nfc(*k.shift, k.id);
      }
      std::set<std::string> lp;
      for (const auto& g : k.long_press) {
        if (g.empty()) fail("SchemaError", k.id, "empty long-press entry: " + k.id);
        detail::require_nfc(g, k.id);
        if (!lp.insert(g).second) fail("DuplicateLongPress", k.id + ":" + g);
      }
      if (k.page_switch &&
          (*k.page_switch < 0 ||
           static_cast<std::size_t>(*k.page_switch) >= layout.pages.size())) {
        fail("SchemaError", k.id, "page switch to missing page: " + k.id);
      }
    }
  }
  for (const auto& [name, members] : layout.classes) {
    for (const auto& m : members) {
      if (m.empty()) fail("SchemaError", "@" + name, "empty class member");
      detail::require_nfc(m, "@" + name);
    }
  }
  std::set<std::string> closure(layout.inventory.begin(), layout.inventory.end());
  for (const auto& r : layout.rules) {
    if (all_ids.count(r.target_key) == 0) fail("DanglingRuleTarget", r.target_key);
    if (r.context.empty()) {
      fail("SchemaError", r.target_key, "rule with empty context: " + r.target_key);
    }
    for (const auto& e : r.context) {
      if (e.value.empty()) fail("SchemaError", r.target_key, "empty context element");
      if (e.is_class && layout.classes.count(e.value) == 0) {
        fail("UnknownGraphemeClass", "@" + e.value);
      }
      if (!e.is_class) detail::require_nfc(e.value, r.target_key);
    }
    detail::require_nfc(r.output, r.target_key);
    detail::require_nfc(r.face, r.target_key);
    if (!r.output.empty() && closure.count(r.output) == 0) {
      fail("RuleOutputOutsideInventory", r.target_key + ":" + r.output);
    }
  }
}

inline Layout layout_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail("SchemaError", "layout", "layout must be an object");
  const auto format = detail::field<std::string>(j, "format", "layout");
  if (format != kLayoutFormat) {
    fail("SchemaError", "layout.format", "unsupported layout format " + format);
  }
  Layout l;
  l.layout_id = detail::field<std::string>(j, "layout_id", "layout");
  l.language_tag = detail::field<std::string>(j, "language_tag", "layout");
  l.script = detail::field<std::string>(j, "script", "layout");
  const auto grid = detail::field<std::string>(j, "base_grid", "layout");
  const auto parsed = parse_base_grid(grid);
  if (!parsed) fail("SchemaError", "layout.base_grid", "unknown base grid " + grid);
  l.base_grid = *parsed;
  l.version = detail::field_or<int>(j, "version", 1, "layout");
  l.classes = detail::field_or<std::map<std::string, std::vector<std::string>>>(
      j, "classes", {}, "layout");
  l.inventory = detail::field_or<std::vector<std::string>>(j, "inventory", {}, "layout");
  if (!j.contains("pages") || !j["pages"].is_array()) {
    fail("SchemaError", "layout.pages", "missing pages array");
  }
  for (std::size_t p = 0; p < j["pages"].size(); ++p) {
    const auto& jp = j["pages"][p];
    const std::string where = "pages[" + std::to_string(p) + "]";
    Page page;
    page.row_offsets = detail::field_or<std::vector<double>>(jp, "row_offsets", {}, where);
    if (!jp.contains("keys") || !jp["keys"].is_array()) {
      fail("SchemaError", where + ".keys", "missing keys array");
    }
    for (std::size_t i = 0; i < jp["keys"].size(); ++i) {
      const auto& jk = jp["keys"][i];
      const std::string kw = where + ".keys[" + std::to_string(i) + "]";
      Key k;
      k.id = detail::field<std::string>(jk, "id", kw);
      k.row = detail::field<int>(jk, "row", kw);
      k.col = detail::field<int>(jk, "col", kw);
      k.width = detail::field<double>(jk, "width", kw);
      k.output = detail::field_or<std::string>(jk, "output", "", kw);
      k.face = detail::field_or<std::string>(jk, "face", k.output, kw);
      if (jk.contains("shift")) k.shift = detail::field<std::string>(jk, "shift", kw);
      k.long_press = detail::field_or<std::vector<std::string>>(jk, "long_press", {}, kw);
      if (jk.contains("page_switch")) {
        k.page_switch = detail::field<int>(jk, "page_switch", kw);
      }
      page.keys.push_back(std::move(k));
    }
    l.pages.push_back(std::move(page));
  }
  if (j.contains("rules")) {
    if (!j["rules"].is_array()) fail("SchemaError", "layout.rules", "rules must be an array");
    for (std::size_t i = 0; i < j["rules"].size(); ++i) {
      const auto& jr = j["rules"][i];
      const std::string where = "rules[" + std::to_string(i) + "]";
      DynamicRule r;
      for (const auto& s : detail::field<std::vector<std::string>>(jr, "context", where)) {
        if (s.size() > 1 && s[0] == '@') {
          r.context.push_back({true, s.substr(1)});
        } else {
          r.context.push_back({false, s});
        }
      }
      r.target_key = detail::field<std::string>(jr, "key", where);
      r.output = detail::field_or<std::string>(jr, "output", "", where);
      r.face = detail::field_or<std::string>(jr, "face", r.output, where);
      l.rules.push_back(std::move(r));
    }
  }
  validate_layout(l);
  return l;
}

inline Layout load_layout(std::string_view serialized) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(serialized);
  } catch (const nlohmann::json::parse_error& e) {
    fail("SchemaError", "layout", e.what());
  }
  return layout_from_json(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("IoError", path, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Layout load_layout_file(const std::string& path) {
  return load_layout(read_file(path));
}

// ---------------------------------------------------------------------------
// Coverage

enum class ReachPath { kBase, kShift, kLongPress, kDynamic, kPage };

inline std::string to_string(ReachPath p) {
  switch (p) {
    case ReachPath::kBase: return "base";
    case ReachPath::kShift: return "shift";
    case ReachPath::kLongPress: return "long_press";
    case ReachPath::kDynamic: return "dynamic";
    case ReachPath::kPage: return "page_n";
  }
  return "base";
}

struct Reach {
  ReachPath path = ReachPath::kBase;
  std::string key_id;
  int page = 0;
};

struct CoverageReport {
  std::map<std::string, std::optional<Reach>> entries;  // required graphemes
  std::set<std::string> missing;
  bool complete = true;
};

/// Every grapheme a layout can emit, keyed to the first (cheapest) way of
/// reaching it.
inline std::map<std::string, Reach> reachable_graphemes(const Layout& layout) {
  std::map<std::string, Reach> reach;
  auto offer = [&](const std::string& g, ReachPath path, const std::string& key,
                   int page) {
    if (g.empty()) return;
    reach.emplace(g, Reach{page == 0 ? path : ReachPath::kPage, key, page});
  };
  for (std::size_t p = 0; p < layout.pages.size(); ++p) {
    const int page = static_cast<int>(p);
    for (const auto& k : layout.pages[p].keys) offer(k.output, ReachPath::kBase, k.id, page);
    for (const auto& k : layout.pages[p].keys) {
      if (k.shift) offer(*k.shift, ReachPath::kShift, k.id, page);
    }
    for (const auto& k : layout.pages[p].keys) {
      for (const auto& g : k.long_press) offer(g, ReachPath::kLongPress, k.id, page);
    }
    if (p == 0) {
      for (const auto& r : layout.rules) {
        offer(r.output, ReachPath::kDynamic, r.target_key, 0);
        // A class context combined with the rule output yields each
        // "member + output" syllable.
        const auto& last = r.context.back();
        if (last.is_class && !r.output.empty()) {
          for (const auto& m : layout.classes.at(last.value)) {
            offer(m + r.output, ReachPath::kDynamic, r.target_key, 0);
          }
        }
      }
    }
  }
  return reach;
}

inline CoverageReport coverage_report(const Layout& layout,
                                      const CharacterInventory& inventory) {
  const auto reach = reachable_graphemes(layout);
  CoverageReport report;
  for (const auto& g : inventory.required) {
    auto it = reach.find(g);
    if (it == reach.end()) {
      report.entries[g] = std::nullopt;
      report.missing.insert(g);
    } else {
      report.entries[g] = it->second;
    }
  }
  report.complete = report.missing.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Dynamic key state

struct KeyView {
  std::string key_id;
  std::string output;
  std::string face;
  bool operator==(const KeyView&) const = default;
};

namespace detail {

struct SuffixMatch {
  std::size_t length = 0;
  std::u32string last;  // text matched by the last context element
};

// Longest total suffix match of context[0..n) ending at `end`.
inline std::optional<SuffixMatch> match_suffix(
    const Layout& layout, const std::vector<ContextElement>& context,
    std::size_t n, std::u32string_view text, std::size_t end) {
  if (n == 0) return SuffixMatch{};
  const auto& e = context[n - 1];
  std::vector<std::u32string> candidates;
  if (e.is_class) {
    for (const auto& m : layout.classes.at(e.value)) candidates.push_back(to_u32(m));
  } else {
    candidates.push_back(to_u32(e.value));
  }
  std::optional<SuffixMatch> best;
  for (const auto& c : candidates) {
    if (c.empty() || c.size() > end) continue;
    if (text.substr(end - c.size(), c.size()) != c) continue;
    auto rest = match_suffix(layout, context, n - 1, text, end - c.size());
    if (!rest) continue;
    SuffixMatch m{rest->length + c.size(), n == context.size() ? c : rest->last};
    if (!best || m.length > best->length) best = m;
  }
  return best;
}

inline std::string expand_face(const std::string& face, const std::u32string& capture) {
  const auto pos = face.find("{}");
  if (pos == std::string::npos) return face;
  return face.substr(0, pos) + to_utf8(capture) + face.substr(pos + 2);
}

}  // namespace detail

/// Output and face of every key on `page` after dynamic rules are applied to
/// the committed text. Among matching rules for a key the longest context
/// match wins; equal lengths resolve to the earlier rule. Rule outputs never
/// feed other rules.
inline std::vector<KeyView> key_state(const Layout& layout, std::string_view committed_text,
                                      bool shift, std::size_t page = 0) {
  const std::u32string text = to_u32(committed_text);
  std::vector<KeyView> out;
  const auto& keys = layout.pages.at(page).keys;
  out.reserve(keys.size());
  for (const auto& k : keys) {
    KeyView v{k.id, k.output, k.face};
    if (shift && k.shift) {
      v.output = *k.shift;
      if (k.face == k.output) v.face = *k.shift;
    }
    std::optional<detail::SuffixMatch> best;
    const DynamicRule* winner = nullptr;
    for (const auto& r : layout.rules) {
      if (r.target_key != k.id) continue;
      auto m = detail::match_suffix(layout, r.context, r.context.size(), text, text.size());
      if (m && (!best || m->length > best->length)) {
        best = m;
        winner = &r;
      }
    }
    if (winner != nullptr) {
      v.output = winner->output;
      v.face = detail::expand_face(winner->face, best->last);
    }
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Geometry

struct KeyGeometry {
  std::string key_id;
  double cx = 0;
  double cy = 0;
  double width = 0;
  double height = 0;
};

/// Key rectangles in keyboard-normalized coordinates ([0,1] x [0,1]). Keys
/// flow left to right by column inside their row, starting at the row offset.
inline std::vector<KeyGeometry> page_geometry(const Layout& layout, std::size_t page = 0) {
  const Page& pg = layout.pages.at(page);
  const int rows = pg.rows();
  const double height = 1.0 / rows;
  std::vector<KeyGeometry> out;
  out.reserve(pg.keys.size());
  for (const auto& k : pg.keys) {
    double left = static_cast<std::size_t>(k.row) < pg.row_offsets.size()
                      ? pg.row_offsets[static_cast<std::size_t>(k.row)]
                      : 0.0;
    for (const auto& other : pg.keys) {
      if (other.row == k.row &&
          (other.col < k.col || (other.col == k.col && other.id < k.id))) {
        left += other.width;
      }
    }
    out.push_back({k.id, left + k.width / 2.0, (k.row + 0.5) * height, k.width, height});
  }
  return out;
}

inline constexpr double kHitTieEpsilon = 1e-12;

struct HitResult {
  std::string key_id;
  double distance2 = 0;
};

/// Nearest active key to (x, y). A key is active when it has an output, a
/// face, or a page switch; `state` (from key_state) overrides static faces.
inline HitResult hit_test(const Layout& layout, double x, double y, std::size_t page = 0,
                          const std::vector<KeyView>* state = nullptr) {
  const auto geometry = page_geometry(layout, page);
  const auto& keys = layout.pages.at(page).keys;
  std::optional<HitResult> best;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    bool active = !keys[i].blank();
    if (state != nullptr) {
      const auto& v = (*state)[i];
      active = !v.output.empty() || !v.face.empty() || keys[i].page_switch.has_value();
    }
    if (!active) continue;
    const double dx = x - geometry[i].cx;
    const double dy = y - geometry[i].cy;
    const double d2 = dx * dx + dy * dy;
    // Distances within kHitTieEpsilon count as ties, resolved by key id.
    if (!best || d2 < best->distance2 - kHitTieEpsilon ||
        (d2 <= best->distance2 + kHitTieEpsilon && keys[i].id < best->key_id)) {
      best = HitResult{keys[i].id, d2};
    }
  }
  if (!best) fail("NoActiveKeys", "page " + std::to_string(page));
  return *best;
}

// ---------------------------------------------------------------------------
// Text chart

inline std::string render_layout(const Layout& layout) {
  std::ostringstream out;
  out << layout.layout_id << " (" << layout.language_tag << ", " << layout.script << ", "
      << to_string(layout.base_grid) << ", v" << layout.version << ")\n";
  for (std::size_t p = 0; p < layout.pages.size(); ++p) {
    const Page& pg = layout.pages[p];
    out << "page " << p << ":\n";
    for (int r = 0; r < pg.rows(); ++r) {
      std::vector<const Key*> row;
      for (const auto& k : pg.keys) {
        if (k.row == r) row.push_back(&k);
      }
      std::sort(row.begin(), row.end(), [](const Key* a, const Key* b) {
        return a->col != b->col ? a->col < b->col : a->id < b->id;
      });
      const double offset =
          static_cast<std::size_t>(r) < pg.row_offsets.size() ? pg.row_offsets[r] : 0.0;
      out << std::string(static_cast<std::size_t>(offset * 20 + 0.5), ' ');
      for (const Key* k : row) {
        if (k->page_switch) {
          out << "[" << (k->face.empty() ? "⇄" : k->face) << "]";
        } else {
          out << "[" << (k->face.empty() ? " " : k->face) << "]";
        }
      }
      out << "\n";
    }
    for (const auto& k : pg.keys) {
      if (k.long_press.empty()) continue;
      out << "  " << (k.face.empty() ? k.id : k.face) << " …";
      for (const auto& g : k.long_press) out << " " << g;
      out << "\n";
    }
  }
  if (!layout.rules.empty()) {
    out << "dynamic rules (in evaluation order):\n";
    for (const auto& r : layout.rules) {
      out << " ";
      for (const auto& e : r.context) out << " " << (e.is_class ? "@" + e.value : e.value);
      out << " -> " << r.target_key << " = " << (r.output.empty() ? "(blank)" : r.output)
          << "\n";
    }
  }
  return out.str();
}

}  // namespace mlime
