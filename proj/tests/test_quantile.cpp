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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "qsym/quantile.hpp"
#include "qsym/verify/generator.hpp"
#include "test_util.hpp"

namespace qsym {
namespace {

using testing::atoms;
using testing::empirical;
using testing::P;
using testing::X;

TEST(LeftQuantile, RainPh) {
  const auto d = empirical(testing::rain_ph());
  EXPECT_EQ(left_quantile(d, P("0.2")), X("4.8327"));
  EXPECT_EQ(left_quantile(d, P("0.25")), X("4.8492"));
  EXPECT_EQ(left_quantile(d, P("0.8")), X("5.2901"));
  EXPECT_EQ(left_quantile(d, P("0.75")), X("5.2901"));
}

TEST(LeftQuantile, RainAh) {
  const auto d = empirical(testing::rain_ah());
  EXPECT_EQ(left_quantile(d, P("0.8")), X("14.1514e-6"));
  EXPECT_EQ(left_quantile(d, P("0.2")), X("2.6724e-6"));
  EXPECT_EQ(left_quantile(d, P("0.25")), X("5.1274e-6"));
  EXPECT_EQ(left_quantile(d, P("0.75")), X("14.1514e-6"));
}

TEST(LeftQuantile, PointMass) {
  const auto d = MixtureDistribution::point_mass(Real(7));
  for (const char* p : {"0.000001", "0.5", "1"}) EXPECT_EQ(left_quantile(d, P(p)), X("7")) << p;
}

TEST(LeftQuantile, Boundaries) {
  const auto d = testing::half_uniform_half_atom();
  EXPECT_EQ(left_quantile(d, Probability::zero()), ExtendedReal::neg_inf());
  EXPECT_EQ(left_quantile(d, Probability::one()), X("2"));
  EXPECT_EQ(right_quantile(d, Probability::one()), ExtendedReal::pos_inf());
  EXPECT_EQ(right_quantile(d, Probability::zero()), X("0"));
}

TEST(LeftQuantile, UniformIsIdentity) {
  const auto u = MixtureDistribution::uniform(Real(0), Real(1));
  EXPECT_EQ(left_quantile(u, P("0.3")), X("0.3"));
  EXPECT_EQ(right_quantile(u, P("0.3")), X("0.3"));
  EXPECT_EQ(left_quantile(u, P("1/3")), X("1/3"));
}

TEST(LeftQuantile, InsideSegmentOfMixture) {
  const auto d = testing::half_uniform_half_atom();
  EXPECT_EQ(left_quantile(d, P("0.25")), X("0.5"));
  EXPECT_EQ(left_quantile(d, P("0.5")), X("1"));
  EXPECT_EQ(right_quantile(d, P("0.5")), X("2"));
  EXPECT_EQ(left_quantile(d, P("0.75")), X("2"));
  const auto g = testing::gapped_uniforms();
  EXPECT_EQ(left_quantile(g, P("0.5")), X("1"));
  EXPECT_EQ(right_quantile(g, P("0.5")), X("2"));
  EXPECT_EQ(left_quantile(g, P("0.75")), X("2.5"));
}

TEST(RightQuantile, Examples) {
  const auto d = empirical(testing::rain_ph());
  EXPECT_EQ(right_quantile(d, P("0.2")), X("4.8492"));
  EXPECT_EQ(right_quantile(d, P("0.8")), X("5.5731"));
  EXPECT_EQ(right_quantile(d, Probability::one()), ExtendedReal::pos_inf());
  EXPECT_EQ(right_quantile(atoms({{"0", "0.5"}, {"1", "0.5"}}), P("0.5")), X("1"));
}

TEST(QuantilePair, Examples) {
  auto q = quantile_pair(empirical(testing::rain_ph()), P("0.2"));
  EXPECT_EQ(q.left, X("4.8327"));
  EXPECT_EQ(q.right, X("4.8492"));
  EXPECT_EQ(q.level, P("0.2"));
  q = quantile_pair(MixtureDistribution::uniform(Real(0), Real(1)), P("0.5"));
  EXPECT_EQ(q.left, X("0.5"));
  EXPECT_EQ(q.right, X("0.5"));
  q = quantile_pair(atoms({{"0", "0.5"}, {"1", "0.5"}}), P("0.5"));
  EXPECT_EQ(q.left, X("0"));
  EXPECT_EQ(q.right, X("1"));
}

TEST(QuantileViaSymmetry, Examples) {
  EXPECT_EQ(left_quantile_via_symmetry(empirical(testing::rain_ph()), P("0.2")), X("4.8327"));
  EXPECT_EQ(left_quantile_via_symmetry(MixtureDistribution::point_mass(Real(3)), P("0.5")), X("3"));
  const auto two = atoms({{"0", "0.5"}, {"1", "0.5"}});
  EXPECT_EQ(right_quantile(negate(two), P("0.5")), X("0"));
  EXPECT_EQ(left_quantile_via_symmetry(two, P("0.5")), X("0"));
  EXPECT_EQ(right_quantile_via_symmetry(two, P("0.5")), X("1"));
}

std::vector<Probability> all_levels() {
  auto levels = verify::level_grid(20);
  auto extra = verify::random_levels(5, 50);
  levels.insert(levels.end(), extra.begin(), extra.end());
  return levels;
}

TEST(QuantileProperty, SymmetryBothWays) {
  verify::GeneratorConfig cfg;
  cfg.seed = 21;
  verify::MixtureGenerator gen(cfg);
  const auto levels = all_levels();
  for (int i = 0; i < 200; ++i) {
    const auto d = gen.next();
    const auto n = negate(d);
    for (const auto& p : levels) {
      ASSERT_EQ(left_quantile(d, p), -right_quantile(n, p.complement())) << d << " p=" << p;
      ASSERT_EQ(right_quantile(d, p), -left_quantile(n, p.complement())) << d << " p=" << p;
    }
  }
}

TEST(QuantileProperty, OrderedAndMonotone) {
  verify::MixtureGenerator gen(verify::GeneratorConfig{});
  const auto grid = verify::level_grid(40);
  for (int i = 0; i < 200; ++i) {
    const auto d = gen.next();
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto lq = left_quantile(d, grid[k]);
      const auto rq = right_quantile(d, grid[k]);
      ASSERT_LE(lq, rq) << d;
      ASSERT_GE(dist_fn(d, DistFnFlavor::kLeftClosed, lq), grid[k]) << d;
      ASSERT_LE(dist_fn(d, DistFnFlavor::kLeftOpen, rq), grid[k]) << d;
      if (k > 0) {
        ASSERT_LE(left_quantile(d, grid[k - 1]), lq) << d;
        ASSERT_LE(right_quantile(d, grid[k - 1]), rq) << d;
        ASSERT_LE(right_quantile(d, grid[k - 1]), lq) << d;
      }
    }
  }
}

TEST(QuantileProperty, EqualWeightOrderStatistics) {
  for (int trial = 0; trial < 50; ++trial) {
    std::mt19937_64 rng(100 + trial);
    const int n = 1 + static_cast<int>(rng() % 12);
    std::vector<Real> values;
    for (int i = 0; i < n; ++i) values.emplace_back(static_cast<long>(rng() % 1000) - 500, 7);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    const auto d = empirical(values);
    const long m = static_cast<long>(values.size());
    for (long k = 1; k <= m; ++k) {
      EXPECT_EQ(left_quantile(d, Probability(k, static_cast<unsigned long>(m))), ExtendedReal(values[k - 1]));
    }
  }
}

}  // namespace
}  // namespace qsym
