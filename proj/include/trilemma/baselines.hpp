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

#ifndef TRILEMMA_BASELINES_HPP_
#define TRILEMMA_BASELINES_HPP_

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "trilemma/hadamard.hpp"
#include "trilemma/rhr.hpp"
#include "trilemma/rng.hpp"

namespace trilemma {

// Subset selection: each client reports a uniformly structured w-subset of
// [d] that contains its own symbol with boosted probability. Order-optimal
// under the privacy constraint alone, at the cost of d-bit reports.
struct SubsetSelectionParams {
  std::uint32_t d = 0;
  double eps = 0.0;
  std::uint32_t w = 0;       // subset size, ceil(d / (e^eps + 1))
  double include_prob = 0.0; // P(x in report | X = x), the alpha marginal
  double other_prob = 0.0;   // P(j in report | X != j), the beta marginal

  static SubsetSelectionParams create(std::uint32_t d, double eps) {
    if (d < 2) throw std::invalid_argument("SubsetSelectionParams: d must be >= 2");
    if (!(eps > 0.0))
      throw std::invalid_argument("SubsetSelectionParams: eps must be > 0");
    SubsetSelectionParams p;
    p.d = d;
    p.eps = eps;
    const double e = std::exp(eps);
    p.w = static_cast<std::uint32_t>(std::ceil(d / (e + 1.0)));
    const double dw = static_cast<double>(d - p.w);
    const double we = p.w * e;
    p.include_prob = we / (we + dw);
    p.other_prob = p.w * (e * (p.w - 1.0) + dw) / ((d - 1.0) * (we + dw));
    return p;
  }

  std::uint64_t report_bits() const { return d; }
};

// Samples a report from the subset-selection law in two stages: decide
// whether to include the true symbol, then fill the remaining slots
// uniformly without replacement from the other d-1 symbols. Both stages
// together match the target law exactly (all subsets with the same
// membership status of x are equally likely under it).
inline std::vector<std::uint8_t> ss_encode(std::uint32_t x,
                                           const SubsetSelectionParams& params,
                                           Rng& rng) {
  if (x >= params.d) throw std::out_of_range("ss_encode: symbol out of range");
  const bool include = rng.bernoulli(params.include_prob);
  const std::uint32_t fill = include ? params.w - 1 : params.w;

  std::vector<std::uint32_t> others;
  others.reserve(params.d - 1);
  for (std::uint32_t j = 0; j < params.d; ++j)
    if (j != x) others.push_back(j);
  // Partial Fisher-Yates: the first `fill` entries end up a uniform sample.
  for (std::uint32_t i = 0; i < fill; ++i) {
    const std::uint32_t j =
        i + static_cast<std::uint32_t>(rng.next_below(others.size() - i));
    std::swap(others[i], others[j]);
  }

  std::vector<std::uint8_t> report(params.d, 0);
  if (include) report[x] = 1;
  for (std::uint32_t i = 0; i < fill; ++i) report[others[i]] = 1;
  return report;
}

// Affine debias from the inclusion marginals: E[T_j / n] = p_j * alpha +
// (1 - p_j) * beta, so p_hat = (T_j / n - beta) / (alpha - beta).
inline FrequencyEstimate ss_decode_counts(std::span<const std::uint64_t> counts,
                                          std::uint64_t n,
                                          const SubsetSelectionParams& params) {
  if (counts.size() != params.d)
    throw std::invalid_argument("ss_decode: count vector size mismatch");
  if (n == 0) throw std::invalid_argument("ss_decode: n must be >= 1");
  const double gap = params.include_prob - params.other_prob;
  FrequencyEstimate est;
  est.values.resize(params.d);
  for (std::uint32_t j = 0; j < params.d; ++j)
    est.values[j] =
        (static_cast<double>(counts[j]) / n - params.other_prob) / gap;
  est.raw_padded = est.values;
  return est;
}

inline FrequencyEstimate ss_decode(
    std::span<const std::vector<std::uint8_t>> reports,
    const SubsetSelectionParams& params) {
  std::vector<std::uint64_t> counts(params.d, 0);
  for (const auto& report : reports) {
    if (report.size() != params.d)
      throw std::invalid_argument("ss_decode: report size mismatch");
    for (std::uint32_t j = 0; j < params.d; ++j) counts[j] += report[j];
  }
  return ss_decode_counts(counts, reports.size(), params);
}

// Separation baseline: privatize with subset selection over the padded
// alphabet, then quantize by having client i transmit only the slice of its
// report covering group (i mod d/2^b). Each coordinate is then estimated
// from an effective sample of n * 2^b / d clients, which is what blows the
// error up to d^2.
struct SeparationParams {
  std::uint32_t d_raw = 0;
  std::uint32_t d_padded = 0;  // next multiple of 2^b
  double eps = 0.0;
  int b = 0;
  std::uint32_t group_size = 0;  // 2^b coordinates per report slice
  std::uint32_t num_groups = 0;
  SubsetSelectionParams ss;

  static SeparationParams create(std::uint32_t d, double eps, int b) {
    if (b < 1 || b > 20) throw std::invalid_argument("SeparationParams: bad b");
    SeparationParams p;
    p.d_raw = d;
    p.b = b;
    p.eps = eps;
    p.group_size = 1u << b;
    p.num_groups = (d + p.group_size - 1) / p.group_size;
    p.d_padded = p.num_groups * p.group_size;
    p.ss = SubsetSelectionParams::create(p.d_padded, eps);
    return p;
  }

  // Honest accounting for the slice report: group id plus the 2^b-bit slice
  // (may exceed b; that is the point of the baseline).
  std::uint64_t report_bits() const {
    return group_size +
           (num_groups > 1 ? static_cast<std::uint64_t>(ceil_log2(num_groups)) : 0);
  }
};

struct SeparationMessage {
  std::uint32_t group = 0;
  std::vector<std::uint8_t> slice;  // 2^b indicator bits
};

inline SeparationMessage separation_encode(std::uint32_t x,
                                           std::uint64_t client_index,
                                           const SeparationParams& params,
                                           Rng& rng) {
  if (x >= params.d_raw)
    throw std::out_of_range("separation_encode: symbol out of range");
  const std::vector<std::uint8_t> full = ss_encode(x, params.ss, rng);
  SeparationMessage msg;
  msg.group = static_cast<std::uint32_t>(client_index % params.num_groups);
  const std::size_t start = static_cast<std::size_t>(msg.group) * params.group_size;
  msg.slice.assign(full.begin() + start, full.begin() + start + params.group_size);
  return msg;
}

inline FrequencyEstimate separation_decode(
    std::span<const SeparationMessage> messages,
    const SeparationParams& params) {
  std::vector<std::uint64_t> counts(params.d_padded, 0);
  std::vector<std::uint64_t> group_n(params.num_groups, 0);
  for (const auto& msg : messages) {
    if (msg.group >= params.num_groups || msg.slice.size() != params.group_size)
      throw std::invalid_argument("separation_decode: malformed message");
    group_n[msg.group]++;
    const std::size_t start =
        static_cast<std::size_t>(msg.group) * params.group_size;
    for (std::uint32_t j = 0; j < params.group_size; ++j)
      counts[start + j] += msg.slice[j];
  }
  const double gap = params.ss.include_prob - params.ss.other_prob;
  FrequencyEstimate est;
  est.raw_padded.resize(params.d_padded);
  for (std::uint32_t g = 0; g < params.num_groups; ++g) {
    if (group_n[g] == 0)
      throw std::invalid_argument("separation_decode: group with no clients");
    for (std::uint32_t j = 0; j < params.group_size; ++j) {
      const std::size_t idx = static_cast<std::size_t>(g) * params.group_size + j;
      est.raw_padded[idx] =
          (static_cast<double>(counts[idx]) / group_n[g] - params.ss.other_prob) /
          gap;
    }
  }
  est.values.assign(est.raw_padded.begin(), est.raw_padded.begin() + params.d_raw);
  return est;
}

}  // namespace trilemma

#endif  // TRILEMMA_BASELINES_HPP_
