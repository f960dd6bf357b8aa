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

#ifndef TRILEMMA_SQKR_HPP_
#define TRILEMMA_SQKR_HPP_

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "trilemma/bits.hpp"
#include "trilemma/frame.hpp"
#include "trilemma/privacy.hpp"
#include "trilemma/rng.hpp"

namespace trilemma {

// Mean estimation for unit-ball vectors under eps-LDP and a b-bit budget.
// Pipeline per client: spread x into uniformly small frame coefficients,
// quantize each to one stochastic sign bit, keep k = min(ceil(eps), b)
// sampled bits, and pass them through 2^k randomized response. The server
// debiases, rescales and synthesizes back to R^d.

enum class SqkrMode { kPublicCoin, kPrivateCoin, kStatisticalGrouping };

struct SqkrParams {
  std::uint32_t d = 0;
  double eps = 0.0;
  int b = 0;
  SqkrMode mode = SqkrMode::kPublicCoin;
  TightFrame frame;
  int k = 0;            // sampled-bit count, min(ceil(eps), b)
  int b_star = 0;       // grouping-mode message width, min(ceil(eps*log2 e), b)
  std::uint32_t num_groups = 0;  // grouping mode: ceil(N / b_star)
  double quant_level = 0.0;      // shared quantizer magnitude K0 / sqrt(N)
  RRParams rr;
  KashinOptions kashin;

  static SqkrParams create(std::uint32_t d, double eps, int b, SqkrMode mode,
                           std::uint64_t frame_seed,
                           const KashinOptions& kashin = {}) {
    if (d == 0) throw std::invalid_argument("SqkrParams: d must be >= 1");
    if (!(eps > 0.0)) throw std::invalid_argument("SqkrParams: eps must be > 0");
    if (b < 1) throw std::invalid_argument("SqkrParams: b must be >= 1");
    SqkrParams p;
    p.d = d;
    p.eps = eps;
    p.b = b;
    p.mode = mode;
    p.frame = TightFrame::build(d, frame_seed);
    p.k = static_cast<int>(std::min<double>(std::ceil(eps), b));
    p.b_star = static_cast<int>(
        std::min<double>(std::ceil(eps * 1.4426950408889634), b));
    if (p.k > 30 || p.b_star > 30)
      throw std::invalid_argument("SqkrParams: message width exceeds 30 bits");
    p.num_groups = (p.frame.size() + p.b_star - 1) / p.b_star;
    p.quant_level =
        kashin.level / std::sqrt(static_cast<double>(p.frame.size()));
    p.rr = RRParams::create(
        eps, mode == SqkrMode::kStatisticalGrouping ? p.b_star : p.k);
    p.kashin = kashin;
    return p;
  }

  int message_bits() const {
    return mode == SqkrMode::kStatisticalGrouping ? b_star : k;
  }

  // Bits of shared randomness one client consumes: k index draws over [N]
  // in public-coin mode, none otherwise.
  std::uint64_t shared_bits_per_client() const {
    if (mode != SqkrMode::kPublicCoin) return 0;
    return static_cast<std::uint64_t>(k) * ceil_log2(frame.size());
  }

  // Total wire bits per client: the RR payload, plus the transmitted index
  // draws in private-coin mode.
  std::uint64_t wire_bits_per_client() const {
    std::uint64_t bits = message_bits();
    if (mode == SqkrMode::kPrivateCoin)
      bits += static_cast<std::uint64_t>(k) * ceil_log2(frame.size());
    return bits;
  }
};

struct SqkrMessage {
  std::uint32_t payload = 0;             // k (or b*) RR-perturbed sign bits
  std::vector<std::uint32_t> indices;    // sampled coordinates, private-coin only
};

// Stochastic one-bit quantizer: q_j = +/-level with P(+) = (a_j + level) /
// (2 level), so E[q_j] = a_j. Coefficients must already obey the level
// bound; violations are an error rather than a silent projection.
inline std::vector<double> sqkr_quantize(std::span<const double> coeffs,
                                         double level, Rng& rng) {
  std::vector<double> q(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double a = coeffs[j];
    if (std::abs(a) > level * (1.0 + 1e-9))
      throw std::domain_error("sqkr_quantize: coefficient exceeds level bound");
    const double p_plus = std::clamp((a + level) / (2.0 * level), 0.0, 1.0);
    q[j] = rng.bernoulli(p_plus) ? level : -level;
  }
  return q;
}

namespace detail {

inline void check_unit_ball(std::span<const double> x) {
  if (l2_norm(x) > 1.0 + 1e-9)
    throw std::invalid_argument("sqkr: input norm exceeds 1");
}

}  // namespace detail

// Encodes one client's vector. Public-coin mode draws the k sampled
// coordinates from the client's shared stream (shared must be non-null);
// private-coin mode draws them from private_rng and ships them in the
// message.
inline SqkrMessage sqkr_encode(std::span<const double> x,
                               const SqkrParams& params,
                               SharedRandomness* shared, Rng& private_rng) {
  if (params.mode == SqkrMode::kStatisticalGrouping)
    throw std::logic_error("sqkr_encode: use sqkr_encode_statistical");
  if (params.mode == SqkrMode::kPublicCoin && shared == nullptr)
    throw std::invalid_argument("sqkr_encode: public-coin mode needs a shared stream");
  detail::check_unit_ball(x);

  const std::uint32_t n = params.frame.size();
  const KashinCoefficients kc =
      kashin_decompose(params.frame, x, params.kashin);
  if (kc.level_bound > params.quant_level * (1.0 + 1e-9))
    throw std::domain_error(
        "sqkr_encode: decomposition exceeded the shared quantizer level");
  const std::vector<double> q =
      sqkr_quantize(kc.coeffs, params.quant_level, private_rng);

  SqkrMessage msg;
  std::uint32_t value = 0;
  for (int m = 0; m < params.k; ++m) {
    const std::uint32_t idx =
        params.mode == SqkrMode::kPublicCoin
            ? static_cast<std::uint32_t>(shared->draw_uniform(n))
            : static_cast<std::uint32_t>(private_rng.next_below(n));
    if (params.mode == SqkrMode::kPrivateCoin) msg.indices.push_back(idx);
    if (q[idx] > 0.0) value |= 1u << m;
  }
  msg.payload = rr_perturb(value, params.rr, private_rng);
  return msg;
}

// Decodes all client messages into an estimate of the empirical mean.
// Public-coin mode replays client i's shared stream from (shared_seed, i);
// private-coin messages carry their indices. Per client the coordinate
// estimates are (N/k) * debias * q~_m at the sampled indices, and everything
// is linear, so clients accumulate into one length-N vector.
inline std::vector<double> sqkr_decode(std::span<const SqkrMessage> messages,
                                       const SqkrParams& params,
                                       std::uint64_t shared_seed = 0) {
  if (params.mode == SqkrMode::kStatisticalGrouping)
    throw std::logic_error("sqkr_decode: use sqkr_decode_statistical");
  if (messages.empty()) throw std::invalid_argument("sqkr_decode: no messages");
  const std::uint32_t n = params.frame.size();
  std::vector<double> acc(n, 0.0);
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const SqkrMessage& msg = messages[i];
    SharedRandomness replay(shared_seed, i);
    for (int m = 0; m < params.k; ++m) {
      std::uint32_t idx;
      if (params.mode == SqkrMode::kPublicCoin) {
        idx = static_cast<std::uint32_t>(replay.draw_uniform(n));
      } else {
        if (msg.indices.size() != static_cast<std::size_t>(params.k))
          throw std::runtime_error("sqkr_decode: missing sampled indices");
        idx = msg.indices[m];
        if (idx >= n) throw std::runtime_error("sqkr_decode: index out of range");
      }
      acc[idx] += (msg.payload >> m) & 1u ? 1.0 : -1.0;
    }
  }
  const double scale = params.quant_level * (static_cast<double>(n) / params.k) *
                       params.rr.debias() / static_cast<double>(messages.size());
  for (auto& v : acc) v *= scale;
  return params.frame.synthesize(acc);
}

// Grouping-mode client count actually used: whole groups only, remainder
// clients are dropped so every coordinate block sees the same sample count.
inline std::uint64_t sqkr_statistical_effective_n(std::uint64_t n,
                                                  const SqkrParams& params) {
  return n - n % params.num_groups;
}

// Statistical-mean variant: client i deterministically covers the
// coordinate block (i mod num_groups), so no shared randomness is needed.
inline SqkrMessage sqkr_encode_statistical(std::span<const double> x,
                                           std::uint64_t client_index,
                                           const SqkrParams& params,
                                           Rng& private_rng) {
  if (params.mode != SqkrMode::kStatisticalGrouping)
    throw std::logic_error("sqkr_encode_statistical: wrong mode");
  detail::check_unit_ball(x);
  const std::uint32_t n = params.frame.size();
  const KashinCoefficients kc =
      kashin_decompose(params.frame, x, params.kashin);
  if (kc.level_bound > params.quant_level * (1.0 + 1e-9))
    throw std::domain_error(
        "sqkr_encode_statistical: decomposition exceeded the quantizer level");

  const std::uint32_t group =
      static_cast<std::uint32_t>(client_index % params.num_groups);
  std::uint32_t value = 0;
  for (int m = 0; m < params.b_star; ++m) {
    const std::uint64_t j =
        static_cast<std::uint64_t>(group) * params.b_star + m;
    // Blocks past the frame edge are padded with zero coefficients; the
    // decoder never reads them.
    const double a = j < n ? kc.coeffs[j] : 0.0;
    const double p_plus =
        std::clamp((a + params.quant_level) / (2.0 * params.quant_level), 0.0, 1.0);
    if (private_rng.bernoulli(p_plus)) value |= 1u << m;
  }
  SqkrMessage msg;
  msg.payload = rr_perturb(value, params.rr, private_rng);
  return msg;
}

inline std::vector<double> sqkr_decode_statistical(
    std::span<const SqkrMessage> messages, const SqkrParams& params) {
  if (params.mode != SqkrMode::kStatisticalGrouping)
    throw std::logic_error("sqkr_decode_statistical: wrong mode");
  if (messages.size() < params.num_groups)
    throw std::invalid_argument(
        "sqkr_decode_statistical: need at least one client per group");
  if (messages.size() % params.num_groups != 0)
    throw std::invalid_argument(
        "sqkr_decode_statistical: message count must be a whole number of groups");
  const std::uint32_t n = params.frame.size();
  const double per_group =
      static_cast<double>(messages.size()) / params.num_groups;
  std::vector<double> acc(n, 0.0);
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const std::uint32_t group =
        static_cast<std::uint32_t>(i % params.num_groups);
    for (int m = 0; m < params.b_star; ++m) {
      const std::uint64_t j =
          static_cast<std::uint64_t>(group) * params.b_star + m;
      if (j >= n) break;
      acc[j] += (messages[i].payload >> m) & 1u ? 1.0 : -1.0;
    }
  }
  const double scale = params.quant_level * params.rr.debias() / per_group;
  for (auto& v : acc) v *= scale;
  return params.frame.synthesize(acc);
}

// Wire format: [mode u8][k u8][payload bytes, big-endian within bytes]
// [private-coin only: k indices of ceil(log2 N) bits each, packed LSB-first].
inline std::vector<std::uint8_t> sqkr_serialize(const SqkrMessage& msg,
                                                const SqkrParams& params) {
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(params.mode));
  const int width = params.message_bits();
  out.push_back(static_cast<std::uint8_t>(width));
  BitPayload payload;
  payload.append_bits(msg.payload, width);
  out.insert(out.end(), payload.bytes().begin(), payload.bytes().end());
  if (params.mode == SqkrMode::kPrivateCoin) {
    const int idx_bits = ceil_log2(params.frame.size());
    std::uint64_t buf = 0;
    int filled = 0;
    for (std::uint32_t idx : msg.indices) {
      buf |= static_cast<std::uint64_t>(idx) << filled;
      filled += idx_bits;
      while (filled >= 8) {
        out.push_back(static_cast<std::uint8_t>(buf & 0xFF));
        buf >>= 8;
        filled -= 8;
      }
    }
    if (filled > 0) out.push_back(static_cast<std::uint8_t>(buf & 0xFF));
  }
  return out;
}

inline SqkrMessage sqkr_parse(std::span<const std::uint8_t> wire,
                              const SqkrParams& params) {
  if (wire.size() < 2) throw std::invalid_argument("sqkr_parse: short message");
  if (wire[0] != static_cast<std::uint8_t>(params.mode))
    throw std::invalid_argument("sqkr_parse: mode mismatch");
  const int width = wire[1];
  if (width != params.message_bits())
    throw std::invalid_argument("sqkr_parse: width mismatch");
  const std::size_t payload_bytes = (width + 7) / 8;
  if (wire.size() < 2 + payload_bytes)
    throw std::invalid_argument("sqkr_parse: truncated payload");
  BitPayload payload;
  for (std::size_t i = 0; i < payload_bytes; ++i) {
    const int bits_here = static_cast<int>(std::min<std::size_t>(8, width - i * 8));
    payload.append_bits(wire[2 + i] >> (8 - bits_here), bits_here);
  }
  SqkrMessage msg;
  msg.payload = static_cast<std::uint32_t>(payload.read_bits(0, width));
  if (params.mode == SqkrMode::kPrivateCoin) {
    const int idx_bits = ceil_log2(params.frame.size());
    const std::size_t total_bits = static_cast<std::size_t>(params.k) * idx_bits;
    const std::size_t idx_bytes = (total_bits + 7) / 8;
    if (wire.size() != 2 + payload_bytes + idx_bytes)
      throw std::invalid_argument("sqkr_parse: bad index block size");
    std::uint64_t buf = 0;
    int filled = 0;
    std::size_t pos = 2 + payload_bytes;
    for (int m = 0; m < params.k; ++m) {
      while (filled < idx_bits) {
        buf |= static_cast<std::uint64_t>(wire[pos++]) << filled;
        filled += 8;
      }
      msg.indices.push_back(
          static_cast<std::uint32_t>(buf & ((1ull << idx_bits) - 1)));
      buf >>= idx_bits;
      filled -= idx_bits;
    }
  } else if (wire.size() != 2 + payload_bytes) {
    throw std::invalid_argument("sqkr_parse: trailing bytes");
  }
  return msg;
}

}  // namespace trilemma

#endif  // TRILEMMA_SQKR_HPP_
