// Copyright 2026 The catlink Authors
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

#ifndef CATLINK_TESTS_TEST_UTIL_H
#define CATLINK_TESTS_TEST_UTIL_H

#include <random>

#include "catlink/coherent.h"

namespace catlink::testing {

// Random normalized superposition: up to `max_terms` terms, amplitudes |a| <= `max_amp`.
inline CoherentKet random_ket(Rng& rng, std::size_t modes, std::size_t max_terms = 8,
                              double max_amp = 4.0) {
  std::uniform_int_distribution<std::size_t> nterms(1, max_terms);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> radius(0.0, max_amp);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  std::vector<CoherentTerm> terms;
  const std::size_t t = nterms(rng);
  for (std::size_t k = 0; k < t; ++k) {
    Amplitudes amps(modes);
    for (auto& a : amps) a = std::polar(radius(rng), angle(rng));
    terms.push_back({Complex(unit(rng), unit(rng)), std::move(amps)});
  }
  return CoherentKet(modes, std::move(terms)).normalized();
}

}  // namespace catlink::testing

#endif  // CATLINK_TESTS_TEST_UTIL_H
