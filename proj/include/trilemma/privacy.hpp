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

#ifndef TRILEMMA_PRIVACY_HPP_
#define TRILEMMA_PRIVACY_HPP_

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "trilemma/rng.hpp"

namespace trilemma {

// Parameters of the 2^k randomized response channel on k-bit strings: the
// input is kept with probability e^eps / (e^eps + 2^k - 1) and otherwise
// replaced by a uniform draw over the remaining 2^k - 1 values. eps is in
// nats throughout.
struct RRParams {
  double eps = 0.0;
  int k = 1;

  static RRParams create(double eps, int k) {
    if (!(eps >= 0.0)) throw std::invalid_argument("RRParams: eps must be >= 0");
    if (k < 1 || k > 30) throw std::invalid_argument("RRParams: k out of [1,30]");
    return RRParams{eps, k};
  }

  std::uint32_t alphabet() const { return 1u << k; }

  // e^eps / (e^eps + 2^k - 1), computed as 1 / (1 + (2^k - 1) e^-eps) so it
  // stays finite for large eps.
  double keep_prob() const {
    const double others = std::ldexp(1.0, k) - 1.0;
    return 1.0 / (1.0 + others * std::exp(-eps));
  }

  // (e^eps + 2^k - 1) / (e^eps - 1): the multiplicative factor restoring
  // unbiasedness of signed indicators after the channel. Undefined at eps=0.
  double debias() const {
    if (eps <= 0.0)
      throw std::domain_error("RRParams::debias: requires eps > 0");
    const double others = std::ldexp(1.0, k) - 1.0;
    const double e = std::exp(-eps);
    return (1.0 + others * e) / (1.0 - e);
  }
};

inline std::uint32_t rr_perturb(std::uint32_t value, const RRParams& params,
                                Rng& rng) {
  if (value >= params.alphabet())
    throw std::out_of_range("rr_perturb: value does not fit in k bits");
  if (rng.bernoulli(params.keep_prob())) return value;
  std::uint64_t r = rng.next_below(params.alphabet() - 1);
  if (r >= value) ++r;  // uniform over the 2^k - 1 values != value
  return static_cast<std::uint32_t>(r);
}

// One-bit eps-LDP channel (2-RR) plus its debias factor (e^eps+1)/(e^eps-1).
inline int binary_ldp(int bit, double eps, Rng& rng) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("binary_ldp: bad bit");
  return static_cast<int>(rr_perturb(static_cast<std::uint32_t>(bit),
                                     RRParams::create(eps, 1), rng));
}

inline double binary_debias(double eps) {
  return RRParams::create(eps, 1).debias();
}

// Full 2^k x 2^k transition matrix, row-major with Q[out * 2^k + in].
// Intended for certification tests; k <= 10 keeps it small.
inline std::vector<double> rr_transition_matrix(const RRParams& params) {
  if (params.k > 10)
    throw std::invalid_argument("rr_transition_matrix: k too large");
  const std::uint32_t m = params.alphabet();
  const double keep = params.keep_prob();
  const double other = (1.0 - keep) / static_cast<double>(m - 1);
  std::vector<double> q(static_cast<std::size_t>(m) * m, other);
  for (std::uint32_t v = 0; v < m; ++v) q[static_cast<std::size_t>(v) * m + v] = keep;
  return q;
}

// A deterministic stream shared between one client and the server: both
// sides construct it from the same (seed, client_id) and must make the same
// draws in the same order. Tracks the shared-randomness bill at
// ceil(log2 range) bits per draw.
class SharedRandomness {
 public:
  SharedRandomness(std::uint64_t seed, std::uint64_t client_id)
      : rng_(derive_key(seed, kStreamTag, client_id)) {}

  std::uint64_t draw_uniform(std::uint64_t range) {
    if (range == 0)
      throw std::invalid_argument("SharedRandomness: range must be >= 1");
    const std::uint64_t v = rng_.next_below(range);
    if (range > 1) bits_consumed_ += std::bit_width(range - 1);
    ++draws_;
    return v;
  }

  std::uint64_t draws() const { return draws_; }
  std::uint64_t bits_consumed() const { return bits_consumed_; }

 private:
  static constexpr std::uint64_t kStreamTag = 0x73686172656472ULL;

  Rng rng_;
  std::uint64_t draws_ = 0;
  std::uint64_t bits_consumed_ = 0;
};

}  // namespace trilemma

#endif  // TRILEMMA_PRIVACY_HPP_
