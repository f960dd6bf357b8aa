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

#ifndef TRILEMMA_FRAME_HPP_
#define TRILEMMA_FRAME_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "trilemma/hadamard.hpp"
#include "trilemma/rng.hpp"

namespace trilemma {

// Randomized tight frame in R^d with N = 2^(ceil(log2 d) + 1) columns: the
// analysis operator is the first d rows of H_N scaled by 1/sqrt(N), sign
// randomized by a +/-1 diagonal on each side (input coordinates and frame
// indices), both drawn from the seed. Every frame vector has entries
// +/- 1/sqrt(N) and A * A^T = I_d exactly, so analyze/synthesize are a
// Parseval pair.
//
// The input-side diagonal matters: with frame-index signs alone the analysis
// magnitudes |(H x)_j| are not randomized, and inputs aligned with a Walsh
// row (the all-ones direction, say) provably admit no representation below
// level sqrt(d) when N = 2d. Sign-flipping the input coordinates first makes
// any fixed input generic with high probability over the seed.
//
// Immutable after construction; a frame is fully reproducible from (d, seed).
class TightFrame {
 public:
  TightFrame() = default;  // empty frame; build() makes the real thing

  static TightFrame build(std::uint32_t d, std::uint64_t seed) {
    if (d == 0) throw std::invalid_argument("TightFrame: d must be >= 1");
    const std::uint32_t n = 1u << (ceil_log2(d) + 1);
    Rng rng(derive_key(seed, kDiagTag));
    std::vector<double> col_signs(n);
    for (auto& s : col_signs) s = rng.bernoulli(0.5) ? 1.0 : -1.0;
    std::vector<double> row_signs(d);
    for (auto& s : row_signs) s = rng.bernoulli(0.5) ? 1.0 : -1.0;
    return TightFrame(d, n, seed, std::move(col_signs), std::move(row_signs));
  }

  std::uint32_t dim() const { return d_; }
  std::uint32_t size() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  double scale() const { return scale_; }

  // A^T x: frame coefficients of x, length N. O(N log N).
  std::vector<double> analyze(std::span<const double> x) const {
    if (x.size() != d_) throw std::invalid_argument("analyze: dimension mismatch");
    std::vector<double> a(n_, 0.0);
    for (std::uint32_t i = 0; i < d_; ++i) a[i] = row_signs_[i] * x[i];
    fwht_inplace(a);
    for (std::uint32_t j = 0; j < n_; ++j) a[j] *= col_signs_[j] * scale_;
    return a;
  }

  // A a: reconstruction from coefficients, length d. O(N log N).
  std::vector<double> synthesize(std::span<const double> a) const {
    if (a.size() != n_) throw std::invalid_argument("synthesize: dimension mismatch");
    std::vector<double> t(a.begin(), a.end());
    for (std::uint32_t j = 0; j < n_; ++j) t[j] *= col_signs_[j];
    fwht_inplace(t);
    t.resize(d_);
    for (std::uint32_t i = 0; i < d_; ++i) t[i] *= row_signs_[i] * scale_;
    return t;
  }

  // Entry A[i][j] = entry i of frame vector u_j; for cross-checks against the
  // transform path.
  double entry(std::uint32_t i, std::uint32_t j) const {
    if (i >= d_ || j >= n_) throw std::out_of_range("TightFrame::entry");
    return row_signs_[i] * hadamard_entry(i, j, n_) * col_signs_[j] * scale_;
  }

 private:
  TightFrame(std::uint32_t d, std::uint32_t n, std::uint64_t seed,
             std::vector<double> col_signs, std::vector<double> row_signs)
      : d_(d), n_(n), seed_(seed), scale_(1.0 / std::sqrt(n)),
        col_signs_(std::move(col_signs)), row_signs_(std::move(row_signs)) {}

  static constexpr std::uint64_t kDiagTag = 0x6672616d65ULL;

  std::uint32_t d_ = 0;
  std::uint32_t n_ = 0;
  std::uint64_t seed_ = 0;
  double scale_ = 0.0;
  std::vector<double> col_signs_;
  std::vector<double> row_signs_;
};

struct KashinOptions {
  double level = 6.0;     // coefficient budget K0, in units of ||x|| / sqrt(N)
  double tol = 1e-7;      // stop once ||residual|| <= tol * ||x||
  int max_restarts = 4;   // level doublings before giving up
  int max_iterations = 100;
};

struct KashinCoefficients {
  std::vector<double> coeffs;  // length N
  double level_bound = 0.0;    // K0 * ||x|| / sqrt(N); max |coeff| <= this
  double residual_norm = 0.0;  // ||x - synthesize(coeffs)||
};

namespace detail {

inline double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace detail

// Computes frame coefficients of x that are uniformly small: every
// coefficient is bounded by level * ||x|| / sqrt(N) and the reconstruction
// error is at most tol * ||x||.
//
// Alternating projection between the coefficient box {max |a_j| <= L} and
// the affine set {synthesize(a) = x}. Because the frame is tight, the
// correction step a += analyze(x - synthesize(a)) lands exactly on the
// affine set, and the clamp keeps the level bound at every iterate, so a
// successful return satisfies both invariants simultaneously. If the box is
// too small for this x (the sets do not intersect) the iteration stops
// making progress; the level is then doubled and the run restarted, and
// exhausting the restarts reports a bad frame draw to the caller.
inline KashinCoefficients kashin_decompose(const TightFrame& frame,
                                           std::span<const double> x,
                                           const KashinOptions& opt = {}) {
  if (x.size() != frame.dim())
    throw std::invalid_argument("kashin_decompose: dimension mismatch");
  if (!(opt.level > 1.0))
    throw std::invalid_argument("kashin_decompose: level must be > 1");
  if (!(opt.tol > 0.0) || !(opt.tol < 1.0))
    throw std::invalid_argument("kashin_decompose: tol must be in (0,1)");

  const std::uint32_t n = frame.size();
  const std::uint32_t d = frame.dim();
  const double norm_x = detail::l2_norm(x);
  if (norm_x == 0.0) return {std::vector<double>(n, 0.0), 0.0, 0.0};

  double level = opt.level;
  for (int restart = 0; restart <= opt.max_restarts; ++restart) {
    const double bound = level * norm_x / std::sqrt(static_cast<double>(n));
    std::vector<double> coeffs(n, 0.0);
    std::vector<double> residual(x.begin(), x.end());
    for (int iter = 0; iter < opt.max_iterations; ++iter) {
      const std::vector<double> corr = frame.analyze(residual);
      for (std::uint32_t j = 0; j < n; ++j)
        coeffs[j] = std::clamp(coeffs[j] + corr[j], -bound, bound);
      const std::vector<double> recon = frame.synthesize(coeffs);
      for (std::uint32_t i = 0; i < d; ++i) residual[i] = x[i] - recon[i];
      const double res_norm = detail::l2_norm(residual);
      if (res_norm <= opt.tol * norm_x)
        return {std::move(coeffs), bound, res_norm};
    }
    level *= 2.0;
  }
  throw std::runtime_error(
      "kashin_decompose: no convergence within restart budget; "
      "rebuild the frame with a new seed");
}

}  // namespace trilemma

#endif  // TRILEMMA_FRAME_HPP_
