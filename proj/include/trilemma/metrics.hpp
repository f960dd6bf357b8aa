// Copyright 2026 The ldp-trilemma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRILEMMA_METRICS_HPP_
#define TRILEMMA_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace trilemma {

struct ErrorTriple {
  double l1 = 0.0;
  double l2sq = 0.0;
  double linf = 0.0;
};

inline ErrorTriple compute_errors(std::span<const double> estimate,
                                  std::span<const double> truth) {
  if (estimate.size() != truth.size())
    throw std::invalid_argument("compute_errors: size mismatch");
  ErrorTriple e;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    const double diff = std::abs(estimate[i] - truth[i]);
    e.l1 += diff;
    e.l2sq += diff * diff;
    e.linf = std::max(e.linf, diff);
  }
  return e;
}

}  // namespace trilemma

#endif  // TRILEMMA_METRICS_HPP_
