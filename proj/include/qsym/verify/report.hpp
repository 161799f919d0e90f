// Copyright 2026 The qsym Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsym/probability.hpp"

namespace qsym::verify {

struct PropertyResult {
  std::string id;
  bool pass = true;
  bool vacuous = false;  // hypothesis not met or clause skipped at this level
  std::string expected;
  std::string actual;
  std::string details;
};

/// Outcome of every check run on one distribution (and level, if any).
struct PropertyReport {
  std::string distribution;
  std::optional<Probability> level;
  std::vector<PropertyResult> results;

  bool passed() const {
    return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.pass; });
  }

  const PropertyResult* find(std::string_view id) const {
    for (const auto& r : results) {
      if (r.id == id) return &r;
    }
    return nullptr;
  }

  /// Appends `other`'s results; ids must stay unique.
  void merge(PropertyReport other) {
    for (auto& r : other.results) add(std::move(r));
  }

  void add(PropertyResult r) {
    if (find(r.id) != nullptr) throw std::logic_error("duplicate property id " + r.id);
    results.push_back(std::move(r));
  }
};

inline nlohmann::json to_json(const PropertyResult& r) {
  return {{"id", r.id},           {"pass", r.pass},     {"vacuous", r.vacuous},
          {"expected", r.expected}, {"actual", r.actual}, {"details", r.details}};
}

inline nlohmann::json to_json(const PropertyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& r : report.results) checks.push_back(to_json(r));
  nlohmann::json out{{"distribution", report.distribution}, {"pass", report.passed()}, {"checks", std::move(checks)}};
  out["level"] = report.level ? nlohmann::json(format(*report.level)) : nlohmann::json(nullptr);
  return out;
}

}  // namespace qsym::verify
