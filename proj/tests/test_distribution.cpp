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

#include <cmath>
#include <limits>
#include <vector>

#include "qsym/distribution.hpp"
#include "qsym/error.hpp"
#include "qsym/verify/generator.hpp"
#include "test_util.hpp"

namespace qsym {
namespace {

using testing::atoms;
using testing::empirical;
using testing::R;
using testing::X;

constexpr auto kFc = DistFnFlavor::kLeftClosed;
constexpr auto kFo = DistFnFlavor::kLeftOpen;
constexpr auto kGc = DistFnFlavor::kRightClosed;
constexpr auto kGo = DistFnFlavor::kRightOpen;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidDistribution;
}

TEST(MakeEmpirical, RainPhTenEqualAtoms) {
  const auto ph = testing::rain_ph();
  const auto d = empirical(ph);
  ASSERT_EQ(d.atoms().size(), 10u);
  EXPECT_FALSE(d.has_segments());
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(d.atoms()[i].location, ph[i]);
    EXPECT_EQ(d.atoms()[i].mass, Real(1, 10));
  }
}

TEST(MakeEmpirical, SingleValueIsPointMass) {
  const auto d = empirical({Real(5)});
  ASSERT_EQ(d.atoms().size(), 1u);
  EXPECT_EQ(d.atoms()[0].mass, Real(1));
  EXPECT_EQ(d, MixtureDistribution::point_mass(Real(5)));
}

TEST(MakeEmpirical, DuplicatesAggregate) {
  const auto d = empirical({Real(1), Real(1), Real(2)});
  ASSERT_EQ(d.atoms().size(), 2u);
  EXPECT_EQ(d.atoms()[0].mass, Real(2, 3));
  EXPECT_EQ(d.atoms()[1].mass, Real(1, 3));
}

TEST(MakeEmpirical, WeightsNormalized) {
  const std::vector<Real> v{Real(3), Real(1), Real(3)};
  const std::vector<Real> w{Real(1), Real(2), Real(5)};
  const auto d = make_empirical(std::span<const Real>(v), std::span<const Real>(w));
  ASSERT_EQ(d.atoms().size(), 2u);
  EXPECT_EQ(d.atoms()[0].location, Real(1));
  EXPECT_EQ(d.atoms()[0].mass, Real(1, 4));
  EXPECT_EQ(d.atoms()[1].mass, Real(3, 4));
}

TEST(MakeEmpirical, Errors) {
  const std::vector<Real> none;
  EXPECT_EQ(code_of([&] { make_empirical(std::span<const Real>(none)); }), ErrorCode::kEmptyData);
  const std::vector<double> nan{1.0, std::numeric_limits<double>::quiet_NaN()};
  EXPECT_EQ(code_of([&] { make_empirical(std::span<const double>(nan)); }), ErrorCode::kBadValue);
  const std::vector<double> inf{std::numeric_limits<double>::infinity()};
  EXPECT_EQ(code_of([&] { make_empirical(std::span<const double>(inf)); }), ErrorCode::kBadValue);
  const std::vector<Real> v{Real(1), Real(2)};
  const std::vector<Real> zero{Real(1), Real(0)};
  EXPECT_EQ(code_of([&] { make_empirical(std::span<const Real>(v), std::span<const Real>(zero)); }),
            ErrorCode::kBadWeight);
  const std::vector<Real> neg{Real(-1), Real(2)};
  EXPECT_EQ(code_of([&] { make_empirical(std::span<const Real>(v), std::span<const Real>(neg)); }),
            ErrorCode::kBadWeight);
}

TEST(MixtureDistribution, ConstructionChecks) {
  EXPECT_EQ(code_of([] { MixtureDistribution({}, {}); }), ErrorCode::kInvalidDistribution);
  EXPECT_EQ(code_of([] { MixtureDistribution({Atom{Real(0), Real(0)}, Atom{Real(1), Real(1)}}, {}); }),
            ErrorCode::kBadMass);
  EXPECT_EQ(code_of([] { MixtureDistribution({Atom{Real(0), Real(1, 2)}}, {}); }), ErrorCode::kBadMass);
  EXPECT_ANY_THROW(MixtureDistribution({}, {UniformSegment{Real(1), Real(1), Real(1)}}));
  EXPECT_ANY_THROW(MixtureDistribution(
      {}, {UniformSegment{Real(0), Real(2), Real(1, 2)}, UniformSegment{Real(1), Real(3), Real(1, 2)}}));
  // Touching segments are allowed.
  EXPECT_NO_THROW(MixtureDistribution(
      {}, {UniformSegment{Real(0), Real(1), Real(1, 2)}, UniformSegment{Real(1), Real(3), Real(1, 2)}}));
}

TEST(MixtureDistribution, ToleranceAndRescale) {
  const Real tiny(1, mpz_class("1000000000000000"));  // 1e-15
  const auto d = MixtureDistribution({Atom{Real(0), Real(1, 2)}, Atom{Real(1), Real(Real(1, 2) + tiny)}}, {});
  Real total = d.atoms()[0].mass + d.atoms()[1].mass;
  EXPECT_EQ(total, Real(1));
  const auto n = MixtureDistribution::normalized({Atom{Real(0), Real(3)}, Atom{Real(1), Real(1)}}, {});
  EXPECT_EQ(n.atoms()[0].mass, Real(3, 4));
}

TEST(DistFn, RainExamples) {
  const auto d = empirical(testing::rain_ph());
  EXPECT_EQ(dist_fn(d, kFc, X("4.8327")).value(), Real(1, 5));
  EXPECT_EQ(dist_fn(d, kFo, X("4.8327")).value(), Real(1, 10));
  EXPECT_EQ(dist_fn(d, kGc, X("4.8327")).value(), Real(9, 10));
  EXPECT_EQ(dist_fn(d, kGo, X("4.8327")).value(), Real(4, 5));
  EXPECT_EQ(dist_fn(d, kFc, ExtendedReal::pos_inf()).value(), Real(1));
}

TEST(DistFn, InfinityLimits) {
  const auto d = testing::half_uniform_half_atom();
  EXPECT_EQ(dist_fn(d, kFc, ExtendedReal::neg_inf()).value(), 0);
  EXPECT_EQ(dist_fn(d, kFo, ExtendedReal::neg_inf()).value(), 0);
  EXPECT_EQ(dist_fn(d, kGc, ExtendedReal::neg_inf()).value(), 1);
  EXPECT_EQ(dist_fn(d, kGo, ExtendedReal::neg_inf()).value(), 1);
  EXPECT_EQ(dist_fn(d, kFc, ExtendedReal::pos_inf()).value(), 1);
  EXPECT_EQ(dist_fn(d, kFo, ExtendedReal::pos_inf()).value(), 1);
  EXPECT_EQ(dist_fn(d, kGc, ExtendedReal::pos_inf()).value(), 0);
  EXPECT_EQ(dist_fn(d, kGo, ExtendedReal::pos_inf()).value(), 0);
}

TEST(DistFn, UniformIsLinear) {
  const auto u = MixtureDistribution::uniform(Real(0), Real(1));
  EXPECT_EQ(dist_fn(u, kFc, X("0.25")).value(), Real(1, 4));
  EXPECT_EQ(dist_fn(u, kFo, X("0.25")).value(), Real(1, 4));
  EXPECT_EQ(dist_fn(u, kFc, X("-3")).value(), 0);
  EXPECT_EQ(dist_fn(u, kFc, X("7")).value(), 1);
}

// Breakpoints, midpoints and points outside the hull for each generated mixture.
std::vector<ExtendedReal> probe_grid(const MixtureDistribution& d) {
  std::vector<ExtendedReal> xs{ExtendedReal::neg_inf(), ExtendedReal::pos_inf()};
  const auto& b = d.breakpoints();
  xs.emplace_back(Real(b.front() - 1));
  xs.emplace_back(Real(b.back() + 1));
  for (std::size_t i = 0; i < b.size(); ++i) {
    xs.emplace_back(b[i]);
    if (i + 1 < b.size()) xs.emplace_back(Real((b[i] + b[i + 1]) / 2));
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

std::vector<MixtureDistribution> corpus(int n, std::uint64_t seed = 11) {
  verify::GeneratorConfig cfg;
  cfg.seed = seed;
  verify::MixtureGenerator gen(cfg);
  std::vector<MixtureDistribution> out;
  for (int i = 0; i < n; ++i) out.push_back(gen.next());
  return out;
}

TEST(DistFnProperty, ComplementIdentities) {
  for (const auto& d : corpus(200)) {
    for (const auto& x : probe_grid(d)) {
      EXPECT_EQ(dist_fn(d, kFc, x).value() + dist_fn(d, kGo, x).value(), 1) << d << " at " << x;
      EXPECT_EQ(dist_fn(d, kFo, x).value() + dist_fn(d, kGc, x).value(), 1) << d << " at " << x;
    }
  }
}

TEST(DistFnProperty, Monotone) {
  for (const auto& d : corpus(200)) {
    const auto xs = probe_grid(d);
    for (std::size_t i = 1; i < xs.size(); ++i) {
      for (auto f : {kFc, kFo}) EXPECT_LE(dist_fn(d, f, xs[i - 1]), dist_fn(d, f, xs[i])) << d;
      for (auto f : {kGc, kGo}) EXPECT_GE(dist_fn(d, f, xs[i - 1]), dist_fn(d, f, xs[i])) << d;
    }
  }
}

TEST(DistFnProperty, OneSidedContinuityAtAtoms) {
  for (const auto& d : corpus(200)) {
    const auto& b = d.breakpoints();
    for (const auto& a : d.atoms()) {
      const auto it = std::lower_bound(b.begin(), b.end(), a.location);
      const Real gap_right = std::next(it) != b.end() ? Real(*std::next(it) - a.location) : Real(1);
      const Real gap_left = it != b.begin() ? Real(a.location - *std::prev(it)) : Real(1);
      // F^c is affine just right of a, so two probes pin down the right limit.
      const Real e1 = gap_right / 4, e2 = gap_right / 2;
      const Real right_limit =
          2 * dist_fn(d, kFc, ExtendedReal(Real(a.location + e1))).value() -
          dist_fn(d, kFc, ExtendedReal(Real(a.location + e2))).value();
      EXPECT_EQ(dist_fn(d, kFc, ExtendedReal(a.location)).value(), right_limit) << d;
      const Real f1 = gap_left / 4, f2 = gap_left / 2;
      const Real left_limit = 2 * dist_fn(d, kFo, ExtendedReal(Real(a.location - f1))).value() -
                              dist_fn(d, kFo, ExtendedReal(Real(a.location - f2))).value();
      EXPECT_EQ(dist_fn(d, kFo, ExtendedReal(a.location)).value(), left_limit) << d;
    }
  }
}

TEST(Negate, Examples) {
  EXPECT_EQ(negate(atoms({{"0", "1"}})), atoms({{"0", "1"}}));
  EXPECT_EQ(negate(atoms({{"1", "0.5"}, {"2", "0.5"}})), atoms({{"-2", "0.5"}, {"-1", "0.5"}}));
  const auto n = negate(testing::half_uniform_half_atom());
  ASSERT_EQ(n.segments().size(), 1u);
  EXPECT_EQ(n.segments()[0].lo, Real(-1));
  EXPECT_EQ(n.segments()[0].hi, Real(0));
  EXPECT_EQ(n.atoms()[0].location, Real(-2));
}

TEST(NegateProperty, ReflectsDistributionFunction) {
  for (const auto& d : corpus(200)) {
    const auto n = negate(d);
    for (const auto& x : probe_grid(n)) {
      EXPECT_EQ(dist_fn(n, kFc, x), dist_fn(d, kGc, -x)) << d;
      EXPECT_EQ(dist_fn(n, kFo, x), dist_fn(d, kGo, -x)) << d;
    }
  }
}

TEST(NegateProperty, Involution) {
  for (const auto& d : corpus(200)) EXPECT_EQ(negate(negate(d)), d) << d;
}

TEST(EssentialBounds, Examples) {
  const auto [lo, hi] = essential_bounds(empirical(testing::rain_ph()));
  EXPECT_EQ(lo, X("4.7336"));
  EXPECT_EQ(hi, X("5.6105"));
  const auto pm = essential_bounds(MixtureDistribution::point_mass(Real(3)));
  EXPECT_EQ(pm.first, X("3"));
  EXPECT_EQ(pm.second, X("3"));
  const auto u = essential_bounds(MixtureDistribution::uniform(Real(0), Real(1)));
  EXPECT_EQ(u.first, X("0"));
  EXPECT_EQ(u.second, X("1"));
}

TEST(IsContinuous, Examples) {
  for (auto f : kAllFlavors) {
    EXPECT_TRUE(is_continuous(MixtureDistribution::uniform(Real(0), Real(1)), f));
    EXPECT_FALSE(is_continuous(empirical(testing::rain_ph()), f));
    EXPECT_FALSE(is_continuous(testing::half_uniform_half_atom(), f));
    EXPECT_TRUE(is_continuous(testing::gapped_uniforms(), f));
  }
}

TEST(IsStrictlyMonotoneOnHull, Examples) {
  EXPECT_TRUE(is_strictly_monotone_on_hull(MixtureDistribution::uniform(Real(0), Real(1)), kFc));
  EXPECT_FALSE(is_strictly_monotone_on_hull(testing::gapped_uniforms(), kFc));
  EXPECT_FALSE(is_strictly_monotone_on_hull(atoms({{"1", "0.5"}, {"2", "0.5"}}), kGo));
  // A single atom has a degenerate hull with nothing flat inside it.
  EXPECT_TRUE(is_strictly_monotone_on_hull(MixtureDistribution::point_mass(Real(1)), kFc));
  // An atom at the end of a segment leaves no gap.
  const MixtureDistribution edge({Atom{Real(1), Real(1, 2)}}, {UniformSegment{Real(0), Real(1), Real(1, 2)}});
  for (auto f : kAllFlavors) EXPECT_TRUE(is_strictly_monotone_on_hull(edge, f)) << to_string(f);
}

TEST(FlavorPredicates, IndependentOfFlavor) {
  for (const auto& d : corpus(300)) {
    for (auto f : kAllFlavors) {
      EXPECT_EQ(is_continuous(d, f), is_continuous(d, kFc)) << d;
      EXPECT_EQ(is_strictly_monotone_on_hull(d, f), is_strictly_monotone_on_hull(d, kFc)) << d;
    }
  }
}

TEST(Describe, ListsParts) {
  const auto s = describe(testing::half_uniform_half_atom());
  EXPECT_EQ(s, "atoms{2:0.5} segs{[0,1]:0.5}");
}

}  // namespace
}  // namespace qsym
