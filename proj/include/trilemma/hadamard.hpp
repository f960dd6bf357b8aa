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

#ifndef TRILEMMA_HADAMARD_HPP_
#define TRILEMMA_HADAMARD_HPP_

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace trilemma {

inline constexpr bool is_power_of_two(std::uint64_t v) {
  return v != 0 && (v & (v - 1)) == 0;
}

// ceil(log2(v)) for v >= 1.
inline constexpr int ceil_log2(std::uint64_t v) {
  if (v == 0) throw std::invalid_argument("ceil_log2: v must be > 0");
  return v == 1 ? 0 : std::bit_width(v - 1);
}

// Entry (row, col) of the Sylvester-ordered Hadamard matrix of the given
// power-of-two order: (-1)^popcount(row & col). All indices 0-based, so the
// first row and first column are all +1.
inline int hadamard_entry(std::uint32_t row, std::uint32_t col,
                          std::uint32_t order) {
  if (!is_power_of_two(order))
    throw std::invalid_argument("hadamard_entry: order must be a power of two");
  if (row >= order || col >= order)
    throw std::out_of_range("hadamard_entry: index out of range");
  return (std::popcount(row & col) & 1) ? -1 : 1;
}

// In-place fast Walsh-Hadamard transform: v <- H_d * v, unnormalized.
// Applying it twice multiplies by d. Length must be a power of two.
inline void fwht_inplace(std::span<double> v) {
  const std::size_t d = v.size();
  if (!is_power_of_two(d))
    throw std::invalid_argument("fwht: length must be a power of two");
  for (std::size_t h = 1; h < d; h <<= 1) {
    for (std::size_t i = 0; i < d; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

inline std::vector<double> fwht(std::vector<double> v) {
  fwht_inplace(v);
  return v;
}

}  // namespace trilemma

#endif  // TRILEMMA_HADAMARD_HPP_
