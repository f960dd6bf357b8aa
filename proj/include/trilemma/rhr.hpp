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

#ifndef TRILEMMA_RHR_HPP_
#define TRILEMMA_RHR_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "trilemma/hadamard.hpp"
#include "trilemma/privacy.hpp"
#include "trilemma/rng.hpp"

namespace trilemma {

// Frequency estimation over an alphabet of d symbols under eps-LDP and a
// b-bit budget. The alphabet is padded to D = 2^ceil(log2 d). A k-bit
// message conveys one row of all 2^(k-1) block transforms at once: H_D
// factors as the Kronecker product of H_{2^(k-1)} and H_B with B = D /
// 2^(k-1), and a one-hot symbol makes all but one block product zero, so
// (sign, block) fits in k bits before randomized response.

struct RhrParams {
  std::uint32_t alphabet = 0;  // d, raw symbol range
  std::uint32_t padded = 0;    // D = 2^ceil(log2 d)
  double eps = 0.0;
  int b = 0;
  int k = 0;                   // message bits: min(b, ceil(eps*log2 e), log2 D)
  std::uint32_t groups = 0;    // B = D / 2^(k-1), the Hadamard row-group count
  RRParams rr;

  static RhrParams create(std::uint32_t d, double eps, int b) {
    if (d == 0) throw std::invalid_argument("RhrParams: alphabet must be >= 1");
    if (!(eps > 0.0)) throw std::invalid_argument("RhrParams: eps must be > 0");
    if (b < 1) throw std::invalid_argument("RhrParams: b must be >= 1");
    RhrParams p;
    p.alphabet = d;
    p.padded = 1u << ceil_log2(d);
    p.eps = eps;
    p.b = b;
    const int log_d = ceil_log2(p.padded);
    const int by_eps =
        static_cast<int>(std::min<double>(std::ceil(eps * 1.4426950408889634), 30));
    p.k = std::max(1, std::min({b, by_eps, log_d}));
    p.groups = p.padded >> (p.k - 1);
    p.rr = RRParams::create(eps, p.k);
    return p;
  }

  std::uint32_t block_count() const { return 1u << (k - 1); }

  // Public-coin mode: one group draw over [B] per client.
  std::uint64_t shared_bits_per_client() const {
    return groups > 1 ? static_cast<std::uint64_t>(ceil_log2(groups)) : 0;
  }
};

struct RhrMessage {
  std::uint32_t payload = 0;  // k bits: sign in the top bit, block in the rest
};

struct FrequencyEstimate {
  std::vector<double> values;      // length d, truncated to the raw alphabet
  std::vector<double> raw_padded;  // length D, before truncation
};

// Clips to [0,1] and renormalizes to a probability vector. Display helper
// only; estimates stay unclipped everywhere else to preserve unbiasedness.
inline std::vector<double> clip_to_simplex(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  double total = 0.0;
  for (auto& v : out) {
    v = std::clamp(v, 0.0, 1.0);
    total += v;
  }
  if (total > 0.0)
    for (auto& v : out) v /= total;
  return out;
}

inline std::uint32_t rhr_draw_group(SharedRandomness& shared,
                                    const RhrParams& params) {
  return static_cast<std::uint32_t>(shared.draw_uniform(params.groups));
}

// Encodes symbol x given the client's group index r: the message is the
// signed block position of x, i.e. sign = H_D[r, x] and block = floor(x/B),
// passed through 2^k randomized response.
inline RhrMessage rhr_encode(std::uint32_t x, std::uint32_t r,
                             const RhrParams& params, Rng& private_rng) {
  if (x >= params.alphabet) throw std::out_of_range("rhr_encode: symbol out of range");
  if (r >= params.groups) throw std::out_of_range("rhr_encode: group out of range");
  const std::uint32_t loc = x / params.groups;
  const bool sign = hadamard_entry(r, x, params.padded) > 0;
  const std::uint32_t value =
      (static_cast<std::uint32_t>(sign) << (params.k - 1)) | loc;
  return RhrMessage{rr_perturb(value, params.rr, private_rng)};
}

namespace detail {

// Signed per-group histograms of the debiased payloads: aggregate[r][loc]
// sums +/-1 over the clients in group r. One pass over the messages.
inline std::vector<double> rhr_aggregate(std::span<const RhrMessage> messages,
                                         std::span<const std::uint32_t> groups,
                                         const RhrParams& params,
                                         std::vector<std::uint64_t>* group_sizes) {
  if (messages.size() != groups.size())
    throw std::invalid_argument("rhr: message/group count mismatch");
  const std::uint32_t blocks = params.block_count();
  std::vector<double> agg(static_cast<std::size_t>(params.groups) * blocks, 0.0);
  if (group_sizes) group_sizes->assign(params.groups, 0);
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const std::uint32_t r = groups[i];
    if (r >= params.groups) throw std::runtime_error("rhr: stale group index");
    const std::uint32_t value = messages[i].payload;
    const std::uint32_t loc = value & (blocks - 1);
    const double sign = (value >> (params.k - 1)) & 1u ? 1.0 : -1.0;
    agg[static_cast<std::size_t>(r) * blocks + loc] += sign;
    if (group_sizes) (*group_sizes)[r]++;
  }
  return agg;
}

// Per-group inner transform of length 2^(k-1), scatter into the length-D
// coefficient vector, then the outer transform. Cost O(D log D), independent
// of the client count.
inline FrequencyEstimate rhr_transform(std::vector<double> agg,
                                       std::span<const double> group_scale,
                                       const RhrParams& params) {
  const std::uint32_t blocks = params.block_count();
  std::vector<double> coeff(params.padded, 0.0);
  for (std::uint32_t r = 0; r < params.groups; ++r) {
    const std::span<double> slice(agg.data() + static_cast<std::size_t>(r) * blocks,
                                  blocks);
    fwht_inplace(slice);
    for (std::uint32_t m = 0; m < blocks; ++m)
      coeff[static_cast<std::size_t>(m) * params.groups + r] =
          slice[m] * group_scale[r];
  }
  fwht_inplace(coeff);
  FrequencyEstimate est;
  est.values.assign(coeff.begin(), coeff.begin() + params.alphabet);
  est.raw_padded = std::move(coeff);
  return est;
}

}  // namespace detail

// Frequency decoder (public-coin weighting): every client contributes
// debias / (n * 2^(k-1)) at its group's transform row, regardless of the
// realized group sizes. Callers replay the shared stream to produce groups.
inline FrequencyEstimate rhr_decode_frequency(
    std::span<const RhrMessage> messages, std::span<const std::uint32_t> groups,
    const RhrParams& params) {
  if (messages.empty())
    throw std::invalid_argument("rhr_decode_frequency: no messages");
  std::vector<double> agg = detail::rhr_aggregate(messages, groups, params, nullptr);
  const double scale = params.rr.debias() /
                       (static_cast<double>(messages.size()) * params.block_count());
  std::vector<double> group_scale(params.groups, scale);
  return detail::rhr_transform(std::move(agg), group_scale, params);
}

inline FrequencyEstimate rhr_decode_frequency_public(
    std::span<const RhrMessage> messages, const RhrParams& params,
    std::uint64_t shared_seed) {
  std::vector<std::uint32_t> groups(messages.size());
  for (std::size_t i = 0; i < messages.size(); ++i) {
    SharedRandomness replay(shared_seed, i);
    groups[i] = rhr_draw_group(replay, params);
  }
  return rhr_decode_frequency(messages, groups, params);
}

// Distribution-estimation variant: client i belongs to group (i mod B), so
// group sizes are deterministic and no shared randomness is consumed. Each
// group is normalized by its own size and the final transform carries the
// 1/D inverse.
inline RhrMessage rhr_encode_distribution(std::uint32_t x,
                                          std::uint64_t client_index,
                                          const RhrParams& params,
                                          Rng& private_rng) {
  return rhr_encode(x, static_cast<std::uint32_t>(client_index % params.groups),
                    params, private_rng);
}

inline FrequencyEstimate rhr_decode_distribution(
    std::span<const RhrMessage> messages, const RhrParams& params) {
  if (messages.size() < params.groups)
    throw std::invalid_argument(
        "rhr_decode_distribution: need at least one client per group");
  std::vector<std::uint32_t> groups(messages.size());
  for (std::size_t i = 0; i < messages.size(); ++i)
    groups[i] = static_cast<std::uint32_t>(i % params.groups);
  std::vector<std::uint64_t> sizes;
  std::vector<double> agg = detail::rhr_aggregate(messages, groups, params, &sizes);
  const double debias = params.rr.debias();
  std::vector<double> group_scale(params.groups);
  for (std::uint32_t r = 0; r < params.groups; ++r) {
    if (sizes[r] == 0)
      throw std::invalid_argument("rhr_decode_distribution: empty group");
    group_scale[r] = debias / (static_cast<double>(sizes[r]) * params.padded);
  }
  return detail::rhr_transform(std::move(agg), group_scale, params);
}

// ---------------------------------------------------------------------------
// Heavy-hitter estimator with a per-symbol (l-infinity) guarantee: each
// client samples k = min(b, ceil(eps)) coordinates of its one-hot symbol's
// Hadamard column and sends each sign through a binary eps/k channel.

struct HeavyHitterParams {
  std::uint32_t alphabet = 0;
  std::uint32_t padded = 0;
  double eps = 0.0;
  int b = 0;
  int k = 0;
  double eps_prime = 0.0;  // per-bit privacy level eps / k

  static HeavyHitterParams create(std::uint32_t d, double eps, int b) {
    if (d == 0) throw std::invalid_argument("HeavyHitterParams: alphabet must be >= 1");
    if (!(eps > 0.0)) throw std::invalid_argument("HeavyHitterParams: eps must be > 0");
    if (b < 1) throw std::invalid_argument("HeavyHitterParams: b must be >= 1");
    HeavyHitterParams p;
    p.alphabet = d;
    p.padded = 1u << ceil_log2(d);
    p.eps = eps;
    p.b = b;
    p.k = static_cast<int>(std::min<double>(std::ceil(eps), std::min(b, 30)));
    p.eps_prime = eps / p.k;
    return p;
  }

  std::uint64_t shared_bits_per_client() const {
    return padded > 1
               ? static_cast<std::uint64_t>(k) * ceil_log2(padded)
               : 0;
  }
};

struct HeavyHitterMessage {
  std::uint32_t payload = 0;  // k perturbed sign bits, bit m = draw m
};

inline HeavyHitterMessage hh_encode(std::uint32_t x,
                                    const HeavyHitterParams& params,
                                    SharedRandomness& shared, Rng& private_rng) {
  if (x >= params.alphabet) throw std::out_of_range("hh_encode: symbol out of range");
  std::uint32_t payload = 0;
  for (int m = 0; m < params.k; ++m) {
    const std::uint32_t r =
        static_cast<std::uint32_t>(shared.draw_uniform(params.padded));
    const int bit = hadamard_entry(x, r, params.padded) > 0 ? 1 : 0;
    if (binary_ldp(bit, params.eps_prime, private_rng))
      payload |= 1u << m;
  }
  return HeavyHitterMessage{payload};
}

// Decoder kernel with explicit coordinates (coords is row-major n x k):
// accumulate debiased signs per sampled coordinate, then one transform.
inline FrequencyEstimate hh_decode_with_coords(
    std::span<const HeavyHitterMessage> messages,
    std::span<const std::uint32_t> coords, const HeavyHitterParams& params) {
  if (messages.empty()) throw std::invalid_argument("hh_decode: no messages");
  if (coords.size() != messages.size() * static_cast<std::size_t>(params.k))
    throw std::invalid_argument("hh_decode: coordinate count mismatch");
  std::vector<double> acc(params.padded, 0.0);
  for (std::size_t i = 0; i < messages.size(); ++i) {
    for (int m = 0; m < params.k; ++m) {
      const std::uint32_t r = coords[i * params.k + m];
      if (r >= params.padded) throw std::runtime_error("hh_decode: stale coordinate");
      acc[r] += (messages[i].payload >> m) & 1u ? 1.0 : -1.0;
    }
  }
  const double scale = binary_debias(params.eps_prime) /
                       (static_cast<double>(messages.size()) * params.k);
  fwht_inplace(acc);
  FrequencyEstimate est;
  est.raw_padded.resize(params.padded);
  for (std::uint32_t j = 0; j < params.padded; ++j)
    est.raw_padded[j] = acc[j] * scale;
  est.values.assign(est.raw_padded.begin(),
                    est.raw_padded.begin() + params.alphabet);
  return est;
}

inline FrequencyEstimate hh_decode(std::span<const HeavyHitterMessage> messages,
                                   const HeavyHitterParams& params,
                                   std::uint64_t shared_seed) {
  std::vector<std::uint32_t> coords(messages.size() *
                                    static_cast<std::size_t>(params.k));
  for (std::size_t i = 0; i < messages.size(); ++i) {
    SharedRandomness replay(shared_seed, i);
    for (int m = 0; m < params.k; ++m)
      coords[i * params.k + m] =
          static_cast<std::uint32_t>(replay.draw_uniform(params.padded));
  }
  return hh_decode_with_coords(messages, coords, params);
}

}  // namespace trilemma

#endif  // TRILEMMA_RHR_HPP_
