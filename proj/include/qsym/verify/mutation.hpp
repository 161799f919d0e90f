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

// Deliberately broken quantile engine used to show the suite can fail.
//
// Mutation: whenever the correct left quantile is an atom location, the
// mutant returns the next atom to the right (atom index + 1). The right
// quantile is untouched.

#pragma once

#include <algorithm>

#include "qsym/quantile.hpp"
#include "qsym/verify/properties.hpp"

namespace qsym::verify {

inline ExtendedReal off_by_one_left_quantile(const MixtureDistribution& d, const Probability& p) {
  ExtendedReal q = left_quantile(d, p);
  if (!q.is_finite()) return q;
  const auto& atoms = d.atoms();
  auto it = std::find_if(atoms.begin(), atoms.end(), [&](const Atom& a) { return a.location == q.value(); });
  if (it != atoms.end() && std::next(it) != atoms.end()) return ExtendedReal(std::next(it)->location);
  return q;
}

inline constexpr QuantileEngine kOffByOneAtomEngine{"off-by-one-atom", &off_by_one_left_quantile, &right_quantile};

}  // namespace qsym::verify
