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

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mlime/error.hpp"
#include "mlime/layout.hpp"

namespace mlime {

enum class ScriptUsage { kEveryday, kHeritage };
enum class Casing { kCased, kUncased };

struct ScriptEntry {
  std::string script;  // ISO 15924
  ScriptUsage usage = ScriptUsage::kEveryday;
  bool operator==(const ScriptEntry&) const = default;
};

/// Per-language configuration: orthography, scripts, and the knobs that tune
/// autocorrect and prediction for that variety.
struct LanguageProfile {
  std::string language_tag;
  std::string name;
  std::vector<ScriptEntry> scripts;
  CharacterInventory inventory;
  Casing casing = Casing::kCased;
  double leniency = 0.0;
  bool reduplication_enabled = false;

  const std::string& primary_script() const {
    for (const auto& s : scripts) {
      if (s.usage == ScriptUsage::kEveryday) return s.script;
    }
    fail("SchemaError", language_tag, "profile has no everyday script");
  }
  bool operator==(const LanguageProfile&) const = default;
};

inline void validate_profile(const LanguageProfile& p) {
  bool everyday = false;
  for (const auto& s : p.scripts) everyday |= s.usage == ScriptUsage::kEveryday;
  if (!everyday) fail("SchemaError", p.language_tag, "profile needs an everyday script");
  if (!(p.leniency >= 0.0 && p.leniency <= 1.0)) {
    fail("SchemaError", p.language_tag, "leniency outside [0,1]");
  }
}

inline LanguageProfile profile_from_json(const nlohmann::json& j) {
  LanguageProfile p;
  try {
    p.language_tag = j.at("language_tag").get<std::string>();
    p.name = j.value("name", p.language_tag);
    for (const auto& s : j.at("scripts")) {
      const std::string usage = s.value("usage", std::string("everyday"));
      if (usage != "everyday" && usage != "heritage") {
        fail("SchemaError", p.language_tag, "unknown script usage " + usage);
      }
      p.scripts.push_back({s.at("script").get<std::string>(),
                           usage == "heritage" ? ScriptUsage::kHeritage : ScriptUsage::kEveryday});
    }
    const std::string casing = j.value("casing", std::string("cased"));
    if (casing != "cased" && casing != "uncased") {
      fail("SchemaError", p.language_tag, "unknown casing " + casing);
    }
    p.casing = casing == "cased" ? Casing::kCased : Casing::kUncased;
    p.leniency = j.value("leniency", 0.0);
    p.reduplication_enabled = j.value("reduplication_enabled", false);
  } catch (const nlohmann::json::exception& e) {
    fail("SchemaError", "profile", e.what());
  }
  if (j.contains("inventory")) p.inventory = inventory_from_json(j.at("inventory"));
  if (p.inventory.language_tag.empty()) p.inventory.language_tag = p.language_tag;
  validate_profile(p);
  return p;
}

inline nlohmann::json profile_to_json(const LanguageProfile& p) {
  nlohmann::json scripts = nlohmann::json::array();
  for (const auto& s : p.scripts) {
    scripts.push_back({{"script", s.script},
                       {"usage", s.usage == ScriptUsage::kEveryday ? "everyday" : "heritage"}});
  }
  return {{"language_tag", p.language_tag},
          {"name", p.name},
          {"scripts", scripts},
          {"inventory", inventory_to_json(p.inventory)},
          {"casing", p.casing == Casing::kCased ? "cased" : "uncased"},
          {"leniency", p.leniency},
          {"reduplication_enabled", p.reduplication_enabled}};
}

}  // namespace mlime
