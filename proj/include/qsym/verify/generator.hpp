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
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "qsym/distribution.hpp"
#include "qsym/error.hpp"
#include "qsym/probability.hpp"

namespace qsym::verify {

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int max_atoms = 6;
  int max_segments = 3;
  // Locations are drawn from the lattice location_lo + k * lattice_step.
  Real location_lo{-5};
  Real location_hi{5};
  Real lattice_step{1, 2};
  // Each part gets an integer weight in [1, mass_granularity] before rescaling.
  int mass_granularity = 12;
};

/// Shapes the generator cycles through. Every tenth draw is forced to each of
/// the first four shapes; the rest are drawn freely.
enum class MixtureShape { kSingleAtom, kAtomOnly, kAtomFree, kGappedSupport, kGeneral };

/// Seeded stream of random mixtures. Deterministic for a given config.
class MixtureGenerator {
 public:
  explicit MixtureGenerator(GeneratorConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) {
    if (cfg_.max_atoms < 0 || cfg_.max_segments < 0 || cfg_.max_atoms + cfg_.max_segments < 1) {
      throw Error(ErrorCode::kInvalidDistribution, "generator needs max_atoms + max_segments >= 1");
    }
    if (cfg_.mass_granularity < 1 || cfg_.lattice_step <= 0 || cfg_.location_hi <= cfg_.location_lo) {
      throw Error(ErrorCode::kInvalidDistribution, "bad generator lattice or granularity");
    }
    const Real span = (cfg_.location_hi - cfg_.location_lo) / cfg_.lattice_step;
    lattice_size_ = static_cast<int>(mpz_class(span.get_num() / span.get_den()).get_si()) + 1;
    if (lattice_size_ < 4) throw Error(ErrorCode::kInvalidDistribution, "lattice needs at least 4 points");
    phase_ = static_cast<int>(rng_() % 10);
  }

  MixtureShape next_shape() {
    const int slot = static_cast<int>((draws_ + phase_) % 10);
    ++draws_;
    if (slot == 0 && cfg_.max_atoms >= 1) return MixtureShape::kSingleAtom;
    if (slot == 1 && cfg_.max_atoms >= 2) return MixtureShape::kAtomOnly;
    if (slot == 2 && cfg_.max_segments >= 1) return MixtureShape::kAtomFree;
    if (slot == 3 && cfg_.max_segments >= 2) return MixtureShape::kGappedSupport;
    return MixtureShape::kGeneral;
  }

  MixtureDistribution next() { return make(next_shape()); }

  MixtureDistribution make(MixtureShape shape) {
    switch (shape) {
      case MixtureShape::kSingleAtom: return build(1, 0, false);
      case MixtureShape::kAtomOnly: return build(uniform_int(2, cfg_.max_atoms), 0, false);
      case MixtureShape::kAtomFree: return build(0, uniform_int(1, cfg_.max_segments), false);
      case MixtureShape::kGappedSupport: return build(0, uniform_int(2, cfg_.max_segments), true);
      case MixtureShape::kGeneral: break;
    }
    int atoms = uniform_int(0, cfg_.max_atoms);
    int segments = uniform_int(0, cfg_.max_segments);
    if (atoms + segments == 0) (cfg_.max_atoms > 0 ? atoms : segments) = 1;
    return build(atoms, segments, false);
  }

 private:
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Real lattice(int k) const { return Real(cfg_.location_lo + cfg_.lattice_step * k); }

  Real weight() { return Real(uniform_int(1, cfg_.mass_granularity)); }

  std::vector<int> distinct_points(int count) {
    std::vector<int> all(static_cast<std::size_t>(lattice_size_));
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng_);
    all.resize(static_cast<std::size_t>(std::min(count, lattice_size_)));
    std::sort(all.begin(), all.end());
    return all;
  }

  MixtureDistribution build(int n_atoms, int n_segments, bool force_gap) {
    std::vector<Atom> atoms;
    std::vector<UniformSegment> segments;
    for (int k : distinct_points(n_atoms)) atoms.push_back(Atom{lattice(k), weight()});

    if (n_segments > 0) {
      // 2n distinct sorted lattice points paired up; consecutive segments
      // sometimes share an endpoint.
      n_segments = std::min(n_segments, lattice_size_ / 2);
      const auto ends = distinct_points(2 * n_segments);
      int prev_hi = -1;
      for (int s = 0; s < n_segments; ++s) {
        int lo = ends[2 * s];
        const int hi = ends[2 * s + 1];
        if (s > 0 && !force_gap && uniform_int(0, 2) == 0) lo = prev_hi;
        segments.push_back(UniformSegment{lattice(lo), lattice(hi), weight()});
        prev_hi = hi;
      }
    }
    return MixtureDistribution::normalized(std::move(atoms), std::move(segments));
  }

  GeneratorConfig cfg_;
  std::mt19937_64 rng_;
  int lattice_size_ = 0;
  int phase_ = 0;
  std::uint64_t draws_ = 0;
};

/// One mixture from the config's seed.
inline MixtureDistribution random_mixture(const GeneratorConfig& cfg) { return MixtureGenerator(cfg).next(); }

/// `count` levels drawn uniformly from the multiples of 1/denominator in [0,1].
inline std::vector<Probability> random_levels(std::uint64_t seed, int count, long denominator = 1000000) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(0, denominator);
  std::vector<Probability> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.emplace_back(pick(rng), static_cast<unsigned long>(denominator));
  return out;
}

/// {0, 1/20, ..., 1}.
inline std::vector<Probability> level_grid(int steps = 20) {
  std::vector<Probability> out;
  for (long k = 0; k <= steps; ++k) out.emplace_back(k, static_cast<unsigned long>(steps));
  return out;
}

}  // namespace qsym::verify
