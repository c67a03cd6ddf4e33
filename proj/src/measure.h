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


#ifndef CATLINK_SRC_MEASURE_H
#define CATLINK_SRC_MEASURE_H

// Photon-counting strategies shared by the measurement-driven flows. A flow
// written against Measure runs unchanged as one sampled trajectory or as an
// exact walk over every count with nonzero probability.

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "catlink/coherent.h"

namespace catlink::detail {

struct CountBranch {
  std::size_t n = 0;
  double probability = 0.0;
  CoherentKet state;  // counted mode removed
};

using Measure = std::function<std::vector<CountBranch>(const CoherentKet&, std::size_t)>;

/// One branch drawn from the exact distribution.
inline Measure sampler(Rng& rng) {
  return [&rng](const CoherentKet& s, std::size_t mode) {
    auto m = measure_photon_count(s, mode, rng);
    return std::vector<CountBranch>{{m.count, m.probability, std::move(m.state)}};
  };
}

/// Every count up to the default cutoff with nonzero probability.
inline Measure enumerator() {
  return [](const CoherentKet& s, std::size_t mode) {
    const auto dist = photon_count_distribution(s, mode, default_count_cutoff(s, mode));
    std::vector<CountBranch> out;
    for (std::size_t n = 0; n < dist.probabilities.size(); ++n) {
      if (!(dist.probabilities[n] > 0.0)) continue;
      auto p = project_photon_count(s, mode, n);
      if (p.vanished) continue;
      out.push_back({n, p.probability, std::move(p.state)});
    }
    return out;
  };
}

}  // namespace catlink::detail

#endif  // CATLINK_SRC_MEASURE_H
