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

// One typing session: the enabled languages, the active layout, committed
// text, the taps of the word in progress and the user's personal dictionary.
// Sessions are deterministic functions of their event history.

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mlime/assets.hpp"
#include "mlime/decode.hpp"
#include "mlime/error.hpp"
#include "mlime/layout.hpp"
#include "mlime/mixer.hpp"
#include "mlime/personal.hpp"
#include "mlime/unicode.hpp"

namespace mlime {

inline constexpr std::size_t kStripSize = 3;

/// Personal dictionaries by user. With a directory, every update is written
/// to <dir>/<user>.dict; writes for all users are serialized.
class PersonalStore {
 public:
  PersonalStore() = default;
  explicit PersonalStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::shared_ptr<const PersonalDict> load(const std::string& user) {
    check_user(user);
    std::lock_guard lock(mu_);
    if (auto it = live_.find(user); it != live_.end()) return it->second;
    auto d = std::make_shared<const PersonalDict>(dir_ ? PersonalDict::load(path(user))
                                                       : PersonalDict());
    live_[user] = d;
    return d;
  }

  void save(const std::string& user, std::shared_ptr<const PersonalDict> dict) {
    check_user(user);
    std::lock_guard lock(mu_);
    if (dir_) dict->save(path(user));
    live_[user] = std::move(dict);
  }

  std::filesystem::path path(const std::string& user) const {
    return dir_.value_or(".") / (user + ".dict");
  }

 private:
  static void check_user(const std::string& user) {
    if (user.empty()) fail("InvalidEvent", "user", "empty user name");
    for (const char c : user) {
      const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '_' || c == '-';
      if (!ok) fail("InvalidEvent", "user", "user names are [A-Za-z0-9_-]+");
    }
  }

  std::optional<std::filesystem::path> dir_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const PersonalDict>> live_;
};

// ---------------------------------------------------------------------------
// Events and responses

enum class EventType {
  kTap,
  kLongPressSelect,
  kBackspace,
  kSpace,
  kCommit,
  kSetLanguages,
  kRevert,
  kRequestSuggestions,
  kSelectSuggestion,
};

inline const std::vector<std::pair<EventType, std::string>>& event_type_names() {
  static const std::vector<std::pair<EventType, std::string>> names = {
      {EventType::kTap, "tap"},
      {EventType::kLongPressSelect, "long_press_select"},
      {EventType::kBackspace, "backspace"},
      {EventType::kSpace, "space"},
      {EventType::kCommit, "commit"},
      {EventType::kSetLanguages, "set_languages"},
      {EventType::kRevert, "revert"},
      {EventType::kRequestSuggestions, "request_suggestions"},
      {EventType::kSelectSuggestion, "select_suggestion"},
  };
  return names;
}

inline std::string to_string(EventType t) {
  for (const auto& [e, name] : event_type_names()) {
    if (e == t) return name;
  }
  return "tap";
}

struct SessionEvent {
  EventType type = EventType::kTap;
  double x = 0;
  double y = 0;
  std::int64_t timestamp = 0;
  int index = 0;                       // long_press_select
  std::vector<std::string> languages;  // set_languages
  std::string surface;                 // select_suggestion
  bool operator==(const SessionEvent&) const = default;
};

inline SessionEvent event_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    fail("InvalidEvent", "type", "event needs a string \"type\"");
  }
  SessionEvent e;
  const std::string type = j["type"].get<std::string>();
  bool known = false;
  for (const auto& [t, name] : event_type_names()) {
    if (name == type) {
      e.type = t;
      known = true;
    }
  }
  if (!known) fail("InvalidEvent", type, "unknown event type " + type);
  try {
    e.timestamp = j.value("t", std::int64_t{0});
    switch (e.type) {
      case EventType::kLongPressSelect:
        e.index = j.at("index").get<int>();
        [[fallthrough]];
      case EventType::kTap:
        e.x = j.at("x").get<double>();
        e.y = j.at("y").get<double>();
        if (!std::isfinite(e.x) || !std::isfinite(e.y)) fail("InvalidEvent", type, "bad coordinates");
        break;
      case EventType::kSetLanguages:
        e.languages = j.at("languages").get<std::vector<std::string>>();
        break;
      case EventType::kSelectSuggestion:
        e.surface = j.at("surface").get<std::string>();
        break;
      default:
        break;
    }
  } catch (const nlohmann::json::exception& ex) {
    fail("InvalidEvent", type, std::string("malformed ") + type + " event: " + ex.what());
  }
  return e;
}

inline nlohmann::json event_to_json(const SessionEvent& e) {
  nlohmann::json j = {{"type", to_string(e.type)}, {"t", e.timestamp}};
  switch (e.type) {
    case EventType::kLongPressSelect:
      j["index"] = e.index;
      [[fallthrough]];
    case EventType::kTap:
      j["x"] = e.x;
      j["y"] = e.y;
      break;
    case EventType::kSetLanguages:
      j["languages"] = e.languages;
      break;
    case EventType::kSelectSuggestion:
      j["surface"] = e.surface;
      break;
    default:
      break;
  }
  return j;
}

struct CommittedDelta {
  std::size_t delete_count = 0;  // codepoints removed from the end first
  std::string insert;
  bool operator==(const CommittedDelta&) const = default;
};

struct Autocorrection {
  std::string literal;
  std::string correction;
  bool operator==(const Autocorrection&) const = default;
};

struct SessionResponse {
  std::vector<Suggestion> suggestions;  // the strip, at most kStripSize
  std::vector<KeyView> key_state;       // keys whose output or face changed
  CommittedDelta committed;
  std::string committed_text;
  std::optional<Autocorrection> autocorrected;
  bool operator==(const SessionResponse&) const = default;
};

inline nlohmann::json response_to_json(const SessionResponse& r) {
  nlohmann::json strip = nlohmann::json::array();
  for (const auto& s : r.suggestions) {
    strip.push_back({{"surface", s.surface}, {"score", s.score}, {"kind", to_string(s.kind)}});
  }
  nlohmann::json keys = nlohmann::json::array();
  for (const auto& k : r.key_state) {
    keys.push_back({{"key", k.key_id}, {"output", k.output}, {"face", k.face}});
  }
  nlohmann::json j = {
      {"suggestions", strip},
      {"key_state", keys},
      {"committed", {{"delete", r.committed.delete_count}, {"insert", r.committed.insert}}},
      {"committed_text", r.committed_text},
  };
  if (r.autocorrected) {
    j["autocorrected"] = {{"literal", r.autocorrected->literal},
                          {"correction", r.autocorrected->correction}};
  }
  return j;
}

inline SuggestionKind parse_suggestion_kind(const std::string& s) {
  for (auto k : {SuggestionKind::kLiteral, SuggestionKind::kCorrection, SuggestionKind::kPrediction,
                 SuggestionKind::kPersonal, SuggestionKind::kReduplication}) {
    if (to_string(k) == s) return k;
  }
  fail("SchemaError", s, "unknown suggestion kind " + s);
}

inline SessionResponse response_from_json(const nlohmann::json& j) {
  SessionResponse r;
  for (const auto& s : j.at("suggestions")) {
    r.suggestions.push_back({s.at("surface").get<std::string>(), s.at("score").get<double>(),
                             parse_suggestion_kind(s.at("kind").get<std::string>())});
  }
  for (const auto& k : j.at("key_state")) {
    r.key_state.push_back({k.at("key").get<std::string>(), k.at("output").get<std::string>(),
                           k.at("face").get<std::string>()});
  }
  r.committed.delete_count = j.at("committed").at("delete").get<std::size_t>();
  r.committed.insert = j.at("committed").at("insert").get<std::string>();
  r.committed_text = j.at("committed_text").get<std::string>();
  if (j.contains("autocorrected")) {
    r.autocorrected = Autocorrection{j["autocorrected"].at("literal").get<std::string>(),
                                     j["autocorrected"].at("correction").get<std::string>()};
  }
  return r;
}

// ---------------------------------------------------------------------------
// Session

struct SessionOptions {
  DecodeOptions decode;
  CommitParams commit;
  std::string user = "default";
};

class Session {
 public:
  Session(std::string id, std::shared_ptr<AssetStore> assets,
          std::shared_ptr<PersonalStore> personal, const std::vector<std::string>& languages,
          SessionOptions options = {})
      : id_(std::move(id)), assets_(std::move(assets)), personal_(std::move(personal)),
        options_(std::move(options)) {
    dict_ = personal_->load(options_.user);
    configure(languages);
  }

  const std::string& id() const { return id_; }
  const std::vector<std::string>& languages() const { return languages_; }
  const Layout& layout() const { return spatial_->layout(); }
  const LanguageProfile& profile() const { return profile_; }
  const std::string& committed_text() const { return committed_; }
  const PersonalDict& dict() const { return *dict_; }
  const MixedModel& mixed() const { return *mixed_; }
  const WordModel& model() const { return *model_; }
  const SpatialModel& spatial() const { return *spatial_; }

  /// The word in progress as literally tapped.
  std::string pending_literal() const {
    std::string s;
    for (const auto& g : literal_graphemes(pending_, *spatial_, committed_)) s += g;
    return s;
  }

  /// Full key state for the current text (what a client renders).
  std::vector<KeyView> current_key_state() const {
    return key_state(layout(), committed_ + pending_literal(), false);
  }

  SessionResponse handle(const SessionEvent& e) {
    const std::optional<Autocorrection> correction_window = last_autocorrect_;
    try {
      return apply(e, correction_window);
    } catch (...) {
      last_autocorrect_ = correction_window;
      throw;
    }
  }

 private:
  SessionResponse apply(const SessionEvent& e,
                        const std::optional<Autocorrection>& correction_window) {
    SessionResponse r;
    last_autocorrect_.reset();
    switch (e.type) {
      case EventType::kTap:
      case EventType::kLongPressSelect:
        pending_.push_back({e.x, e.y, e.timestamp,
                            e.type == EventType::kTap ? TapKind::kTap : TapKind::kLongPressSelect,
                            e.index});
        break;
      case EventType::kBackspace:
        if (!pending_.empty()) {
          pending_.pop_back();
        } else if (!committed_.empty()) {
          std::u32string u = to_u32(committed_);
          u.pop_back();
          committed_ = to_utf8(u);
          r.committed.delete_count = 1;
        }
        break;
      case EventType::kSpace:
        commit_pending(" ", e.timestamp, r);
        break;
      case EventType::kCommit:
        commit_pending("", e.timestamp, r);
        break;
      case EventType::kSetLanguages:
        configure(e.languages);
        break;
      case EventType::kRevert:
        if (!correction_window) fail("InvalidEvent", "revert", "no autocorrection to revert");
        revert(*correction_window, e.timestamp, r);
        break;
      case EventType::kRequestSuggestions:
        break;
      case EventType::kSelectSuggestion:
        if (e.surface.empty()) fail("InvalidEvent", "select_suggestion", "empty surface");
        pending_.clear();
        commit_word(nfc(e.surface), " ", e.timestamp, r);
        break;
    }
    r.suggestions = strip();
    r.committed_text = committed_;
    const auto state = current_key_state();
    for (std::size_t i = 0; i < state.size(); ++i) {
      if (i >= sent_state_.size() || !(sent_state_[i] == state[i])) r.key_state.push_back(state[i]);
    }
    sent_state_ = state;
    return r;
  }

  /// Builds everything for the new language set first, so a failure (for
  /// example a cross-script request) leaves the session untouched.
  void configure(const std::vector<std::string>& languages) {
    if (languages.empty()) fail("EmptyModelList", "languages", "no languages enabled");
    std::vector<MixComponent> components;
    std::vector<std::shared_ptr<const LanguageAssets>> loaded;
    for (const auto& tag : languages) {
      auto a = assets_->get(tag);
      components.push_back({a->model, tag, a->profile.primary_script()});
      loaded.push_back(std::move(a));
    }
    auto mixed = std::make_shared<const MixedModel>(mix(std::move(components)));
    CharacterInventory inventory = loaded.front()->profile.inventory;
    for (std::size_t i = 1; i < loaded.size(); ++i) {
      const auto& other = loaded[i]->profile.inventory;
      inventory.required.insert(other.required.begin(), other.required.end());
      inventory.optional_loanword.insert(other.optional_loanword.begin(),
                                         other.optional_loanword.end());
    }
    languages_ = languages;
    profile_ = loaded.front()->profile;
    inventory_ = std::move(inventory);
    spatial_ = std::make_shared<const SpatialModel>(loaded.front()->layout);
    mixed_ = std::move(mixed);
    lexicon_.reset();
    sent_state_.clear();
    rebuild_model();
  }

  void rebuild_model() {
    model_ = std::make_shared<const PersonalizedModel>(mixed_, dict_);
    if (!lexicon_ || lexicon_size_ != model_->vocabulary().size()) {
      lexicon_ = std::make_shared<const Lexicon>(candidate_words(*model_), *spatial_);
      lexicon_size_ = model_->vocabulary().size();
    }
  }

  std::vector<std::string> context_words() const {
    auto words = split_whitespace(committed_);
    const std::size_t n = model_->context_size();
    if (words.size() > n) words.erase(words.begin(), words.end() - static_cast<std::ptrdiff_t>(n));
    if (profile_.casing == Casing::kCased) {
      for (auto& w : words) w = nfc(to_lower(w));
    }
    return words;
  }

  std::vector<Suggestion> decode_pending(std::size_t k) const {
    DecodeOptions opt = options_.decode;
    opt.committed_text = committed_;
    const auto ctx = context_words();
    return decode_word(pending_, ctx, *model_, *spatial_, profile_, k, opt, lexicon_.get());
  }

  std::vector<Suggestion> strip() const {
    std::vector<Suggestion> out;
    if (!pending_.empty()) {
      out = decode_pending(kStripSize);
    } else {
      const auto ctx = context_words();
      out = next_words(ctx, *model_, profile_, kStripSize);
    }
    for (auto& s : out) {
      if (!std::isfinite(s.score)) s.score = kBosLogprob;
    }
    return out;
  }

  void commit_pending(const std::string& trailing, std::int64_t ts, SessionResponse& r) {
    if (pending_.empty()) {
      committed_ += trailing;
      r.committed.insert = trailing;
      return;
    }
    const std::string literal = pending_literal();
    std::string word;
    std::optional<std::string> correction;
    if (auto expanded = expand_shorthand(literal, profile_)) {
      word = expanded->surface;
    } else {
      const auto decision =
          commit_decision(decode_pending(kStripSize), profile_, dict_.get(), options_.commit);
      word = decision.text;
      correction = decision.correction;
    }
    pending_.clear();
    commit_word(word, trailing, ts, r);
    if (correction) {
      last_autocorrect_ = Autocorrection{literal, *correction};
      r.autocorrected = last_autocorrect_;
    }
  }

  void commit_word(const std::string& word, const std::string& trailing, std::int64_t ts,
                   SessionResponse& r) {
    committed_ += word + trailing;
    r.committed.insert += word + trailing;
    if (word.empty()) return;
    auto next = std::make_shared<PersonalDict>(*dict_);
    try {
      next->learn_commit(word, &inventory_, ts);
    } catch (const Error&) {
      return;  // not learnable in this orthography
    }
    dict_ = std::move(next);
    personal_->save(options_.user, dict_);
    const std::string folded = profile_.casing == Casing::kCased ? nfc(to_lower(word)) : word;
    mixed_ = std::make_shared<const MixedModel>(adapt_weights(*mixed_, folded));
    rebuild_model();
  }

  void revert(const Autocorrection& a, std::int64_t ts, SessionResponse& r) {
    // The correction is the last word committed, followed only by its
    // trailing separator.
    const auto pos = committed_.rfind(a.correction);
    if (pos == std::string::npos) fail("InvalidEvent", "revert", "correction no longer present");
    const std::string tail = committed_.substr(pos);
    const std::string trailing = tail.substr(a.correction.size());
    r.committed.delete_count = codepoint_count(tail);
    r.committed.insert = a.literal + trailing;
    committed_ = committed_.substr(0, pos) + a.literal + trailing;
    auto next = std::make_shared<PersonalDict>(*dict_);
    next->learn_revert(a.literal, a.correction, &inventory_, ts);
    dict_ = std::move(next);
    personal_->save(options_.user, dict_);
    rebuild_model();
  }

  std::string id_;
  std::shared_ptr<AssetStore> assets_;
  std::shared_ptr<PersonalStore> personal_;
  SessionOptions options_;

  std::vector<std::string> languages_;
  LanguageProfile profile_;
  CharacterInventory inventory_;
  std::shared_ptr<const SpatialModel> spatial_;
  std::shared_ptr<const MixedModel> mixed_;
  std::shared_ptr<const PersonalDict> dict_;  // copy-on-write snapshots
  std::shared_ptr<const PersonalizedModel> model_;
  std::shared_ptr<const Lexicon> lexicon_;
  std::size_t lexicon_size_ = 0;

  std::string committed_;
  std::vector<TapEvent> pending_;
  std::optional<Autocorrection> last_autocorrect_;
  std::vector<KeyView> sent_state_;
};

}  // namespace mlime
