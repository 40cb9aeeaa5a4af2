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

// Language roadmap registry: metadata records, priority scoring and status
// dashboards generated from the source files alone.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mlime/error.hpp"
#include "mlime/layout.hpp"
#include "mlime/profile.hpp"

namespace mlime {

enum class Confidence { kLow, kMedium, kHigh };

struct PriorityFactors {
  int online_evidence = 0;      // 0..3
  int formal_publications = 0;  // 0..2
  int smartphone_trend = 0;     // 0..2
  bool i18n_ready = false;
  int feature_requests = 0;  // >= 0
  bool usable_alternative_exists = false;
  bool official_status = false;
  bool operator==(const PriorityFactors&) const = default;
};

struct LanguageRecord {
  std::string language_tag;
  std::string autonym;
  std::string exonym;
  std::vector<ScriptEntry> scripts;
  std::int64_t speaker_estimate = 0;
  Confidence speaker_confidence = Confidence::kLow;
  PriorityFactors factors;
};

// Scoring policy. Edit the weights here; the monotonicity tests guard any
// re-weighting.
struct PriorityWeights {
  double online_evidence = 3.0;
  double formal_publications = 2.0;
  double smartphone_trend = 2.0;
  double speakers = 2.0;  // × log10(1 + speakers / speaker_scale)
  double speaker_scale = 1e5;
  double feature_request = 0.3;
  int feature_request_cap = 10;
  double official_status = 2.0;
  double usable_alternative = -1.0;
  std::array<double, 3> bucket_thresholds = {8.0, 5.0, 2.0};  // buckets 1, 2, 3
  int not_i18n_ready_best_bucket = 3;
};

struct Priority {
  double score = 0;
  int bucket = 4;  // 1 = most urgent
};

inline void validate_record(const LanguageRecord& r) {
  const auto& f = r.factors;
  auto check = [&](int v, int lo, int hi, const char* name) {
    if (v < lo || v > hi) fail("InvalidFactorRange", r.language_tag + "." + name);
  };
  check(f.online_evidence, 0, 3, "online_evidence");
  check(f.formal_publications, 0, 2, "formal_publications");
  check(f.smartphone_trend, 0, 2, "smartphone_trend");
  if (f.feature_requests < 0) fail("InvalidFactorRange", r.language_tag + ".feature_requests");
  if (r.speaker_estimate < 0) fail("InvalidFactorRange", r.language_tag + ".speaker_estimate");
}

inline int bucket_for(double score, bool i18n_ready, const PriorityWeights& w = {}) {
  int bucket = 4;
  for (int i = 0; i < 3; ++i) {
    if (score >= w.bucket_thresholds[static_cast<std::size_t>(i)]) {
      bucket = i + 1;
      break;
    }
  }
  if (!i18n_ready) bucket = std::max(bucket, w.not_i18n_ready_best_bucket);
  return bucket;
}

inline Priority priority_score(const LanguageRecord& r, const PriorityWeights& w = {}) {
  validate_record(r);
  const auto& f = r.factors;
  Priority p;
  p.score = w.online_evidence * f.online_evidence + w.formal_publications * f.formal_publications +
            w.smartphone_trend * f.smartphone_trend +
            w.speakers * std::log10(1.0 + static_cast<double>(r.speaker_estimate) / w.speaker_scale) +
            w.feature_request * std::min(f.feature_requests, w.feature_request_cap) +
            (f.official_status ? w.official_status : 0.0) +
            (f.usable_alternative_exists ? w.usable_alternative : 0.0);
  p.bucket = bucket_for(p.score, f.i18n_ready, w);
  return p;
}

// ---------------------------------------------------------------------------
// Rollout status

inline const std::array<std::string, 6>& subtask_names() {
  static const std::array<std::string, 6> names = {"inventory_defined", "layout_designed",
                                                   "corpus_ready",      "model_trained",
                                                   "tested",            "released"};
  return names;
}

enum class TaskState { kTodo, kInProgress, kDone };

inline std::string to_string(TaskState s) {
  switch (s) {
    case TaskState::kTodo: return "todo";
    case TaskState::kInProgress: return "in_progress";
    case TaskState::kDone: return "done";
  }
  return "todo";
}

struct SubtaskStatus {
  TaskState state = TaskState::kTodo;
  std::string owner;
  std::string issue_id;
  std::string doc_link;
};

struct StatusRecord {
  std::string language_tag;
  std::map<std::string, SubtaskStatus> subtasks;

  SubtaskStatus get(const std::string& name) const {
    auto it = subtasks.find(name);
    return it == subtasks.end() ? SubtaskStatus{} : it->second;
  }
};

inline void validate_status(const StatusRecord& s) {
  for (const auto& [name, st] : s.subtasks) {
    if (std::find(subtask_names().begin(), subtask_names().end(), name) == subtask_names().end()) {
      fail("InvalidStatus", s.language_tag + "." + name, "unknown subtask " + name);
    }
  }
  if (s.get("released").state == TaskState::kDone) {
    for (const auto& name : subtask_names()) {
      if (name != "released" && s.get(name).state != TaskState::kDone) {
        fail("InvalidStatus", s.language_tag + "." + name,
             s.language_tag + " is released but " + name + " is not done");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Files

inline LanguageRecord record_from_json(const nlohmann::json& j) {
  LanguageRecord r;
  try {
    r.language_tag = j.at("language_tag").get<std::string>();
    r.autonym = j.value("autonym", std::string());
    r.exonym = j.value("exonym", std::string());
    for (const auto& s : j.value("scripts", nlohmann::json::array())) {
      r.scripts.push_back({s.at("script").get<std::string>(),
                           s.value("usage", std::string("everyday")) == "heritage"
                               ? ScriptUsage::kHeritage
                               : ScriptUsage::kEveryday});
    }
    r.speaker_estimate = j.value("speaker_estimate", std::int64_t{0});
    const std::string conf = j.value("speaker_confidence", std::string("low"));
    r.speaker_confidence = conf == "high"     ? Confidence::kHigh
                           : conf == "medium" ? Confidence::kMedium
                                              : Confidence::kLow;
    const auto& f = j.at("factors");
    r.factors.online_evidence = f.value("online_evidence", 0);
    r.factors.formal_publications = f.value("formal_publications", 0);
    r.factors.smartphone_trend = f.value("smartphone_trend", 0);
    r.factors.i18n_ready = f.value("i18n_ready", false);
    r.factors.feature_requests = f.value("feature_requests", 0);
    r.factors.usable_alternative_exists = f.value("usable_alternative_exists", false);
    r.factors.official_status = f.value("official_status", false);
  } catch (const nlohmann::json::exception& e) {
    fail("SchemaError", "record", e.what());
  }
  validate_record(r);
  return r;
}

inline StatusRecord status_from_json(const nlohmann::json& j) {
  StatusRecord s;
  try {
    s.language_tag = j.at("language_tag").get<std::string>();
    for (const auto& [name, st] : j.at("subtasks").items()) {
      SubtaskStatus t;
      const std::string state = st.value("status", std::string("todo"));
      if (state == "done") {
        t.state = TaskState::kDone;
      } else if (state == "in_progress") {
        t.state = TaskState::kInProgress;
      } else if (state == "todo") {
        t.state = TaskState::kTodo;
      } else {
        fail("InvalidStatus", s.language_tag + "." + name, "unknown state " + state);
      }
      t.owner = st.value("owner", std::string());
      t.issue_id = st.value("issue", std::string());
      t.doc_link = st.value("doc", std::string());
      s.subtasks[name] = t;
    }
  } catch (const nlohmann::json::exception& e) {
    fail("SchemaError", "status", e.what());
  }
  validate_status(s);
  return s;
}

struct Registry {
  std::vector<LanguageRecord> records;
  std::vector<StatusRecord> statuses;

  const LanguageRecord* find(const std::string& tag) const {
    for (const auto& r : records) {
      if (r.language_tag == tag) return &r;
    }
    return nullptr;
  }
};

/// Reads <dir>/records/*.json and <dir>/status/*.json in filename order.
inline Registry load_registry(const std::filesystem::path& dir) {
  Registry reg;
  auto read_all = [](const std::filesystem::path& sub) {
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::is_directory(sub)) return files;
    for (const auto& e : std::filesystem::directory_iterator(sub)) {
      if (e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    return files;
  };
  auto parse = [](const std::filesystem::path& p) {
    try {
      return nlohmann::json::parse(read_file(p.string()));
    } catch (const nlohmann::json::parse_error& e) {
      fail("SchemaError", p.string(), e.what());
    }
  };
  for (const auto& p : read_all(dir / "records")) reg.records.push_back(record_from_json(parse(p)));
  for (const auto& p : read_all(dir / "status")) reg.statuses.push_back(status_from_json(parse(p)));
  return reg;
}

// ---------------------------------------------------------------------------
// Dashboard

struct DashboardRow {
  std::string language_tag;
  int bucket = 4;
  double score = 0;
  TaskState state = TaskState::kTodo;
  std::string owner;
  std::string issue_id;
  std::string doc_link;
};

struct SubtaskSummary {
  std::string subtask;
  std::size_t done = 0;
  std::size_t in_progress = 0;
  std::size_t todo = 0;
  std::vector<DashboardRow> next_up;  // unfinished, by (bucket, -score, tag)
};

struct DashboardReport {
  std::vector<SubtaskSummary> subtasks;
  bool empty() const { return subtasks.empty(); }

  std::string to_text() const {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2);
    for (const auto& s : subtasks) {
      out << "## " << s.subtask << "  (done " << s.done << ", in progress " << s.in_progress
          << ", todo " << s.todo << ")\n";
      if (s.next_up.empty()) continue;
      out << "| language | bucket | score | state | owner | issue | doc |\n";
      out << "|---|---|---|---|---|---|---|\n";
      for (const auto& r : s.next_up) {
        out << "| " << r.language_tag << " | " << r.bucket << " | " << r.score << " | "
            << to_string(r.state) << " | " << r.owner << " | " << r.issue_id << " | "
            << r.doc_link << " |\n";
      }
      out << "\n";
    }
    return out.str();
  }
};

/// Regenerates the dashboard purely from records and statuses. Languages
/// without a status file count as todo everywhere.
inline DashboardReport dashboard_report(const std::vector<LanguageRecord>& records,
                                        const std::vector<StatusRecord>& statuses,
                                        const std::optional<std::string>& only_subtask = {},
                                        const PriorityWeights& weights = {}) {
  std::map<std::string, const StatusRecord*> by_tag;
  for (const auto& s : statuses) {
    const bool known = std::any_of(records.begin(), records.end(), [&](const LanguageRecord& r) {
      return r.language_tag == s.language_tag;
    });
    if (!known) fail("OrphanStatus", s.language_tag);
    by_tag[s.language_tag] = &s;
  }
  DashboardReport report;
  if (records.empty()) return report;
  if (only_subtask && std::find(subtask_names().begin(), subtask_names().end(), *only_subtask) ==
                          subtask_names().end()) {
    fail("InvalidStatus", *only_subtask, "unknown subtask " + *only_subtask);
  }
  for (const auto& name : subtask_names()) {
    if (only_subtask && *only_subtask != name) continue;
    SubtaskSummary sum;
    sum.subtask = name;
    for (const auto& r : records) {
      const auto it = by_tag.find(r.language_tag);
      const SubtaskStatus st = it == by_tag.end() ? SubtaskStatus{} : it->second->get(name);
      switch (st.state) {
        case TaskState::kDone: ++sum.done; continue;
        case TaskState::kInProgress: ++sum.in_progress; break;
        case TaskState::kTodo: ++sum.todo; break;
      }
      const Priority p = priority_score(r, weights);
      sum.next_up.push_back(
          {r.language_tag, p.bucket, p.score, st.state, st.owner, st.issue_id, st.doc_link});
    }
    std::sort(sum.next_up.begin(), sum.next_up.end(), [](const auto& a, const auto& b) {
      if (a.bucket != b.bucket) return a.bucket < b.bucket;
      if (a.score != b.score) return a.score > b.score;
      return a.language_tag < b.language_tag;
    });
    report.subtasks.push_back(std::move(sum));
  }
  return report;
}

}  // namespace mlime
