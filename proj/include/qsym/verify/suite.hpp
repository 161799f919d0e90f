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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsym/distribution.hpp"
#include "qsym/error.hpp"
#include "qsym/transform.hpp"
#include "qsym/verify/generator.hpp"
#include "qsym/verify/properties.hpp"
#include "qsym/verify/report.hpp"

namespace qsym::verify {

struct NamedMap {
  std::string name;
  MonotoneMap map;
  // Applied to pushforward(d, pre) instead of d, when set.
  std::optional<MonotoneMap> pre;
};

namespace detail {

inline PiecewiseMonotoneMap three_piece(Direction dir, const Real& s0, const Real& c0, const Real& s1, const Real& c1,
                                        const Real& s2, const Real& c2, const Real& b0, const Real& b1, Side f0,
                                        Side f1) {
  return PiecewiseMonotoneMap(dir,
                              {MapPiece{ExtendedReal::neg_inf(), ExtendedReal(b0), s0, c0},
                               MapPiece{ExtendedReal(b0), ExtendedReal(b1), s1, c1},
                               MapPiece{ExtendedReal(b1), ExtendedReal::pos_inf(), s2, c2}},
                              {f0, f1});
}

}  // namespace detail

/// Maps covering every direction x continuity cell, a continuous map with a
/// flat piece in each direction, a map with mixed jump sides (which meets
/// neither hypothesis), and the smooth kinds.
///
/// Breakpoints sit on the generator lattice so atoms land on them.
inline std::vector<NamedMap> stock_maps() {
  using detail::three_piece;
  const auto up = Direction::kNonDecreasing;
  const auto down = Direction::kNonIncreasing;
  const auto L = Side::kLeft;
  const auto R = Side::kRight;
  const Real z(0), one(1), two(2), three(3), half(1, 2);
  std::vector<NamedMap> maps;
  // x on (-inf,0), 2 on (0,1), 3x on (1,inf): jumps at 0 and 1.
  maps.push_back({"nd-left", three_piece(up, one, z, z, two, three, z, z, one, L, L), std::nullopt});
  maps.push_back({"nd-right", three_piece(up, one, z, z, two, three, z, z, one, R, R), std::nullopt});
  maps.push_back({"ni-left", three_piece(down, -one, z, z, -two, -three, z, z, one, L, L), std::nullopt});
  maps.push_back({"ni-right", three_piece(down, -one, z, z, -two, -three, z, z, one, R, R), std::nullopt});
  // x/2, 0, 2x-2: continuous with a flat piece; the flags are irrelevant.
  maps.push_back({"nd-continuous", three_piece(up, half, z, z, z, two, -two, z, one, L, R), std::nullopt});
  // -2x, 2, 4-x on breakpoints -1 and 2: continuous.
  maps.push_back({"ni-continuous", three_piece(down, -two, z, z, two, -one, Real(4), -one, two, R, L), std::nullopt});
  maps.push_back({"nd-mixed", three_piece(up, one, z, z, two, three, z, z, one, L, R), std::nullopt});
  maps.push_back({"negation", SmoothMonotoneMap::negation(), std::nullopt});
  maps.push_back({"affine-dec", SmoothMonotoneMap::affine(Real(-2), Real(1, 3)), std::nullopt});
  maps.push_back({"affine-inc", SmoothMonotoneMap::affine(Real(3, 2), Real(-1)), std::nullopt});
  maps.push_back({"pow10neg", SmoothMonotoneMap::pow10neg(), std::nullopt});
  maps.push_back({"neglog10", SmoothMonotoneMap::neglog10(), MonotoneMap(SmoothMonotoneMap::pow10neg())});
  return maps;
}

/// A stock map with its source and image distributions precomputed for
/// one mixture.
struct PreparedMap {
  const NamedMap* map;
  std::optional<MixtureDistribution> source;
  std::optional<MixtureDistribution> image;
  std::string why;  // set when the pushforward leaves the model
};

inline std::vector<PreparedMap> prepare_maps(const MixtureDistribution& d, const std::vector<NamedMap>& maps) {
  std::vector<PreparedMap> out;
  out.reserve(maps.size());
  for (const auto& nm : maps) {
    PreparedMap pm{&nm, std::nullopt, std::nullopt, {}};
    try {
      pm.source = nm.pre ? pushforward(d, *nm.pre) : d;
      pm.image = pushforward(*pm.source, nm.map);
    } catch (const Error& e) {
      pm.why = e.what();
    }
    out.push_back(std::move(pm));
  }
  return out;
}

// PreparedMap points into `maps`, which must outlive the result.
std::vector<PreparedMap> prepare_maps(const MixtureDistribution&, std::vector<NamedMap>&&) = delete;

/// Equivariance checks "E:<map>:<side>" for one level; maps whose
/// hypothesis fails or whose pushforward leaves the model are vacuous.
inline PropertyReport check_equivariance(const MixtureDistribution& d, const Probability& p,
                                         const std::vector<PreparedMap>& maps,
                                         const QuantileEngine& engine = kReferenceEngine) {
  PropertyReport report{describe(d), p, {}};
  for (const auto& pm : maps) {
    for (Side side : {Side::kLeft, Side::kRight}) {
      std::string id = "E:" + pm.map->name + ":" + std::string(to_string(side));
      if (!pm.image) {
        report.add(detail::vacuous(std::move(id), pm.why));
        continue;
      }
      if (!equivariance_applies(pm.map->map, side)) {
        report.add(detail::vacuous(std::move(id), "continuity hypothesis not met"));
        continue;
      }
      const auto direct = side == Side::kLeft ? engine.left(*pm.image, p) : engine.right(*pm.image, p);
      const auto expected = equivariant_quantile(*pm.source, pm.map->map, p, side);
      report.add(detail::result(std::move(id), direct == expected, format(expected), format(direct),
                                "quantile of pushforward vs transformed quantile"));
    }
  }
  return report;
}

inline PropertyReport check_equivariance(const MixtureDistribution& d, const Probability& p,
                                         const std::vector<NamedMap>& maps,
                                         const QuantileEngine& engine = kReferenceEngine) {
  return check_equivariance(d, p, prepare_maps(d, maps), engine);
}

/// All checks at one (distribution, level).
inline PropertyReport check_all(const MixtureDistribution& d, const Probability& p,
                                const std::vector<PreparedMap>& maps,
                                const QuantileEngine& engine = kReferenceEngine) {
  auto report = check_quantile_properties(d, p, engine);
  report.merge(check_symmetry(d, p, engine));
  report.merge(check_variants(d, p, engine));
  report.merge(check_equivariance(d, p, maps, engine));
  return report;
}

struct CheckTally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::size_t vacuous = 0;
};

struct SuiteResult {
  // Failing reports always; passing ones only with SuiteOptions::keep_passing.
  std::vector<PropertyReport> reports;
  std::map<std::string, CheckTally> by_id;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::size_t vacuous = 0;
  std::size_t distributions = 0;

  bool passed() const { return failures == 0; }

  /// Failures among ids starting with `prefix`.
  CheckTally tally(std::string_view prefix) const {
    CheckTally t;
    for (const auto& [id, c] : by_id) {
      if (id.compare(0, prefix.size(), prefix) != 0) continue;
      t.checks += c.checks;
      t.failures += c.failures;
      t.vacuous += c.vacuous;
    }
    return t;
  }

  std::optional<std::pair<const PropertyReport*, const PropertyResult*>> first_failure() const {
    for (const auto& rep : reports) {
      for (const auto& r : rep.results) {
        if (!r.pass) return std::make_pair(&rep, &r);
      }
    }
    return std::nullopt;
  }
};

struct SuiteOptions {
  QuantileEngine engine = kReferenceEngine;
  unsigned threads = 0;  // 0: hardware concurrency
  bool keep_passing = false;
};

/// Runs every check over the given mixtures and levels.
///
/// Each mixture contributes one flavor-independence report and one full
/// report per level. Work is split across worker threads by mixture; the
/// output order is the input order regardless.
inline SuiteResult run_suite(const std::vector<MixtureDistribution>& dists, const std::vector<Probability>& levels,
                             const SuiteOptions& options = {}) {
  const auto maps = stock_maps();
  std::vector<std::vector<PropertyReport>> per_dist(dists.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < dists.size(); i += stride) {
      auto& out = per_dist[i];
      out.push_back(check_flavor_independence(dists[i]));
      const auto prepared = prepare_maps(dists[i], maps);
      for (const auto& p : levels) out.push_back(check_all(dists[i], p, prepared, options.engine));
    }
  };
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(dists.size(), 1)));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }

  SuiteResult result;
  result.distributions = dists.size();
  for (auto& group : per_dist) {
    for (auto& rep : group) {
      for (const auto& r : rep.results) {
        auto& t = result.by_id[r.id];
        ++t.checks;
        ++result.checks;
        if (!r.pass) ++t.failures, ++result.failures;
        if (r.vacuous) ++t.vacuous, ++result.vacuous;
      }
      if (options.keep_passing || !rep.passed()) result.reports.push_back(std::move(rep));
    }
    group.clear();
  }
  return result;
}

/// Same, over `n_dists` mixtures drawn from the generator.
inline SuiteResult run_suite(const GeneratorConfig& cfg, int n_dists, const std::vector<Probability>& levels,
                             const SuiteOptions& options = {}) {
  if (n_dists < 1) throw Error(ErrorCode::kInvalidDistribution, "run_suite needs n_dists >= 1");
  MixtureGenerator gen(cfg);
  std::vector<MixtureDistribution> dists;
  dists.reserve(static_cast<std::size_t>(n_dists));
  for (int i = 0; i < n_dists; ++i) dists.push_back(gen.next());
  return run_suite(dists, levels, options);
}

/// Summary, per-id tallies and the retained reports.
inline nlohmann::json to_json(const SuiteResult& s) {
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& rep : s.reports) reports.push_back(to_json(rep));
  nlohmann::json ids = nlohmann::json::object();
  for (const auto& [id, t] : s.by_id) {
    ids[id] = {{"checks", t.checks}, {"failures", t.failures}, {"vacuous", t.vacuous}};
  }
  return {{"pass", s.passed()},   {"distributions", s.distributions}, {"checks", s.checks},
          {"failures", s.failures}, {"vacuous", s.vacuous},           {"by_id", std::move(ids)},
          {"reports", std::move(reports)}};
}

}  // namespace qsym::verify
