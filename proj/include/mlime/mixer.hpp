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

// Same-script multilingual mixing of monolingual word models.

#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mlime/error.hpp"
#include "mlime/ngram.hpp"

namespace mlime {

struct MixComponent {
  std::shared_ptr<const WordModel> model;
  std::string language_tag;
  std::string script;
};

inline constexpr double kWeightFloor = 0.05;

/// P_mix(w|c) = Σ λᵢ·Pᵢ(w|c) over the union vocabulary. A component's
/// unknown-word mass is shared evenly between its own <unk> token and every
/// union word it lacks, so each component stays normalized over the union.
class MixedModel : public WordModel {
 public:
  MixedModel(std::vector<MixComponent> components, std::vector<double> weights)
      : components_(std::move(components)), weights_(std::move(weights)) {
    std::unordered_set<std::string> seen;
    for (const auto& c : components_) {
      for (const auto& w : c.model->vocabulary()) {
        if (seen.insert(w).second) vocab_.push_back(w);
      }
    }
    for (const auto& c : components_) {
      std::size_t absent = 0;
      for (const auto& w : vocab_) absent += c.model->contains(w) ? 0 : 1;
      absent_.push_back(absent);
    }
  }

  double prob(std::string_view word, Context context) const override {
    double p = 0;
    for (std::size_t i = 0; i < components_.size(); ++i) {
      p += weights_[i] * component_prob(i, word, context);
    }
    return p;
  }

  /// Component i's probability for `word` over the union vocabulary.
  double component_prob(std::size_t i, std::string_view word, Context context) const {
    const WordModel& m = *components_[i].model;
    if (m.contains(word) && word != kUnk) return m.prob(word, context);
    return m.prob(kUnk, context) / static_cast<double>(absent_[i] + 1);
  }

  const std::vector<std::string>& vocabulary() const override { return vocab_; }

  bool contains(std::string_view word) const override {
    for (const auto& c : components_) {
      if (c.model->contains(word)) return true;
    }
    return false;
  }

  std::size_t context_size() const override {
    std::size_t n = 0;
    for (const auto& c : components_) n = std::max(n, c.model->context_size());
    return n;
  }

  const std::vector<MixComponent>& components() const { return components_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::string& script() const { return components_.front().script; }

  MixedModel with_weights(std::vector<double> weights) const {
    MixedModel copy = *this;
    copy.weights_ = std::move(weights);
    return copy;
  }

 private:
  std::vector<MixComponent> components_;
  std::vector<double> weights_;
  std::vector<std::string> vocab_;
  std::vector<std::size_t> absent_;
};

/// Projects positive weights onto the simplex with every entry at least
/// `floor` (capped at 1/n so the constraint stays feasible).
inline std::vector<double> floor_weights(std::vector<double> w, double floor = kWeightFloor) {
  const std::size_t n = w.size();
  floor = std::min(floor, 1.0 / static_cast<double>(n));
  std::vector<bool> pinned(n, false);
  while (true) {
    double free_sum = 0;
    std::size_t pinned_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (pinned[i]) {
        ++pinned_count;
      } else {
        free_sum += w[i];
      }
    }
    const double room = 1.0 - floor * static_cast<double>(pinned_count);
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (pinned[i]) {
        w[i] = floor;
        continue;
      }
      w[i] = free_sum > 0 ? w[i] * room / free_sum : room / static_cast<double>(n - pinned_count);
      if (w[i] < floor) {
        pinned[i] = true;
        changed = true;
      }
    }
    if (!changed) return w;
  }
}

inline MixedModel mix(std::vector<MixComponent> components,
                      std::optional<std::vector<double>> initial_weights = std::nullopt) {
  if (components.empty()) fail("EmptyModelList", "models", "nothing to mix");
  for (std::size_t i = 1; i < components.size(); ++i) {
    if (components[i].script != components[0].script) {
      fail("CrossScriptMix",
           components[0].language_tag + "/" + components[0].script + "+" +
               components[i].language_tag + "/" + components[i].script,
           "cannot mix " + components[0].language_tag + " (" + components[0].script +
               ") with " + components[i].language_tag + " (" + components[i].script + ")");
    }
  }
  std::vector<double> weights;
  if (initial_weights) {
    weights = *initial_weights;
    if (weights.size() != components.size()) {
      fail("InvalidWeights", "weights", "one weight per model is required");
    }
    double sum = 0;
    for (double x : weights) {
      if (!(x > 0.0) || !std::isfinite(x)) fail("InvalidWeights", "weights", "weights must be positive");
      sum += x;
    }
    for (double& x : weights) x /= sum;
  } else {
    weights.assign(components.size(), 1.0 / static_cast<double>(components.size()));
  }
  return MixedModel(std::move(components), std::move(weights));
}

/// One Bayesian step: λᵢ' ∝ λᵢ·Pᵢ(word), renormalized, then floored.
inline MixedModel adapt_weights(const MixedModel& mixed, std::string_view committed_word) {
  if (committed_word.empty()) return mixed;
  std::vector<double> w = mixed.weights();
  double sum = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] *= mixed.component_prob(i, committed_word, {});
    sum += w[i];
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) return mixed;
  for (double& x : w) x /= sum;
  return mixed.with_weights(floor_weights(std::move(w)));
}

}  // namespace mlime
