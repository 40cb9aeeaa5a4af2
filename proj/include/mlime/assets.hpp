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

// Per-language assets on disk:
//
//   <data>/languages/<tag>/profile.json
//   <data>/languages/<tag>/layout.json
//   <data>/languages/<tag>/model.arpa    (optional; else trained from corpus)
//   <data>/languages/<tag>/corpus.txt
//
// The data directory is $MLIME_DATA_DIR when set.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mlime/error.hpp"
#include "mlime/layout.hpp"
#include "mlime/ngram.hpp"
#include "mlime/profile.hpp"
#include "mlime/text_pipeline.hpp"

#ifndef MLIME_DEFAULT_DATA_DIR
#define MLIME_DEFAULT_DATA_DIR "data"
#endif

namespace mlime {

inline constexpr const char* kDataDirEnv = "MLIME_DATA_DIR";
inline constexpr int kDefaultModelOrder = 3;

inline std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv(kDataDirEnv); env != nullptr && *env != '\0') return env;
  return MLIME_DEFAULT_DATA_DIR;
}

struct LanguageAssets {
  LanguageProfile profile;
  std::shared_ptr<const Layout> layout;
  std::shared_ptr<const NGramModel> model;
  Wordlist wordlist;
};

inline nlohmann::json read_json_asset(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) fail("MissingAsset", path.string(), "missing " + path.string());
  try {
    return nlohmann::json::parse(read_file(path.string()));
  } catch (const nlohmann::json::parse_error& e) {
    fail("SchemaError", path.string(), path.string() + ": " + e.what());
  }
}

inline LanguageAssets load_language_assets(const std::filesystem::path& data_dir,
                                           const std::string& tag) {
  const auto dir = data_dir / "languages" / tag;
  if (!std::filesystem::is_directory(dir)) {
    fail("MissingAsset", dir.string(), "no assets for language " + tag + " at " + dir.string());
  }
  LanguageAssets a;
  a.profile = profile_from_json(read_json_asset(dir / "profile.json"));
  a.layout = std::make_shared<const Layout>(layout_from_json(read_json_asset(dir / "layout.json")));

  const auto corpus_path = dir / "corpus.txt";
  const auto model_path = dir / "model.arpa";
  std::optional<NormalizedCorpus> corpus;
  if (std::filesystem::exists(corpus_path)) {
    corpus = normalize_corpus(read_file(corpus_path.string()), a.profile);
  }
  if (std::filesystem::exists(model_path)) {
    a.model = std::make_shared<const NGramModel>(NGramModel::parse(read_file(model_path.string())));
  } else if (corpus) {
    TrainParams params;
    params.language_tag = tag;
    params.script = a.profile.primary_script();
    a.model = std::make_shared<const NGramModel>(
        train_ngram(corpus->sentences, kDefaultModelOrder, params));
  } else {
    fail("MissingAsset", model_path.string(),
         "missing " + model_path.string() + " and " + corpus_path.string());
  }
  if (corpus) {
    a.wordlist = build_wordlist(corpus->flat(), corpus_path.string());
  } else {
    for (const auto& w : a.model->words()) a.wordlist.counts[w] = 1;
    a.wordlist.source = model_path.string();
  }
  return a;
}

/// Immutable per-language assets, loaded once and shared by every session.
class AssetStore {
 public:
  explicit AssetStore(std::filesystem::path data_dir = default_data_dir())
      : data_dir_(std::move(data_dir)) {}

  const std::filesystem::path& data_dir() const { return data_dir_; }

  std::shared_ptr<const LanguageAssets> get(const std::string& tag) {
    {
      std::lock_guard lock(mu_);
      if (auto it = cache_.find(tag); it != cache_.end()) return it->second;
    }
    auto loaded = std::make_shared<const LanguageAssets>(load_language_assets(data_dir_, tag));
    std::lock_guard lock(mu_);
    return cache_.try_emplace(tag, std::move(loaded)).first->second;
  }

  /// Tags with a profile under the data directory, sorted.
  std::vector<std::string> available() const {
    std::vector<std::string> tags;
    const auto root = data_dir_ / "languages";
    if (!std::filesystem::is_directory(root)) return tags;
    for (const auto& e : std::filesystem::directory_iterator(root)) {
      if (std::filesystem::exists(e.path() / "profile.json")) tags.push_back(e.path().filename());
    }
    std::sort(tags.begin(), tags.end());
    return tags;
  }

 private:
  std::filesystem::path data_dir_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const LanguageAssets>> cache_;
};

}  // namespace mlime
