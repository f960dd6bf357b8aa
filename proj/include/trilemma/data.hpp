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

#ifndef TRILEMMA_DATA_HPP_
#define TRILEMMA_DATA_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "trilemma/rng.hpp"

namespace trilemma {

// Data generator selector, parsed from strings like "geometric(0.8)",
// "uniform", "point_mass", "gauss_mix" or "file:path/to/symbols.txt".
struct SourceSpec {
  enum class Kind { kGeometric, kUniform, kFile, kPointMass, kGaussMix };

  Kind kind = Kind::kGeometric;
  double lambda = 0.8;
  std::string path;

  static SourceSpec parse(const std::string& text) {
    SourceSpec s;
    if (text == "uniform") {
      s.kind = Kind::kUniform;
    } else if (text == "point_mass") {
      s.kind = Kind::kPointMass;
    } else if (text == "gauss_mix") {
      s.kind = Kind::kGaussMix;
    } else if (text.rfind("file:", 0) == 0) {
      s.kind = Kind::kFile;
      s.path = text.substr(5);
      if (s.path.empty()) throw std::invalid_argument("source: empty file path");
    } else if (text.rfind("geometric(", 0) == 0 && text.back() == ')') {
      s.kind = Kind::kGeometric;
      s.lambda = std::stod(text.substr(10, text.size() - 11));
      if (!(s.lambda >= 0.0) || !(s.lambda <= 1.0))
        throw std::invalid_argument("source: geometric lambda must be in [0,1]");
    } else {
      throw std::invalid_argument("source: unknown spec '" + text + "'");
    }
    return s;
  }

  std::string str() const {
    switch (kind) {
      case Kind::kUniform: return "uniform";
      case Kind::kPointMass: return "point_mass";
      case Kind::kGaussMix: return "gauss_mix";
      case Kind::kFile: return "file:" + path;
      case Kind::kGeometric: {
        std::ostringstream os;
        os << "geometric(" << lambda << ")";
        return os.str();
      }
    }
    return "";
  }
};

// Unit direction (1,...,1)/sqrt(d), the fixed point-mass location for mean
// tasks.
inline std::vector<double> point_mass_direction(std::uint32_t d) {
  return std::vector<double>(d, 1.0 / std::sqrt(static_cast<double>(d)));
}

// Mean-task dataset, flattened row-major n x d. Half the clients draw from
// an isotropic Gaussian centered at (1,...,1), half at (10,...,10), and
// every draw is normalized onto the unit sphere; the resulting mean is far
// from the origin, which keeps the task non-degenerate.
inline std::vector<double> gen_mean_data(std::uint32_t d, std::uint64_t n,
                                         std::uint64_t seed) {
  if (d == 0) throw std::invalid_argument("gen_mean_data: d must be >= 1");
  if (n % 2 != 0) throw std::invalid_argument("gen_mean_data: n must be even");
  std::vector<double> data(n * static_cast<std::size_t>(d));
  Rng rng(derive_key(seed, 0x6d65616eULL));
  for (std::uint64_t i = 0; i < n; ++i) {
    const double center = i < n / 2 ? 1.0 : 10.0;
    double norm_sq = 0.0;
    double* row = data.data() + i * d;
    for (std::uint32_t j = 0; j < d; ++j) {
      row[j] = center + rng.next_normal();
      norm_sq += row[j] * row[j];
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (std::uint32_t j = 0; j < d; ++j) row[j] *= inv;
  }
  return data;
}

// Probability vector of a categorical source. The geometric law is
// P(x) proportional to lambda^x on [0, d); lambda = 0 degenerates to a point
// mass at 0 and lambda = 1 to uniform.
inline std::vector<double> source_pmf(std::uint32_t d, const SourceSpec& source) {
  if (d == 0) throw std::invalid_argument("source_pmf: d must be >= 1");
  std::vector<double> p(d, 0.0);
  switch (source.kind) {
    case SourceSpec::Kind::kUniform:
      std::fill(p.begin(), p.end(), 1.0 / d);
      return p;
    case SourceSpec::Kind::kPointMass:
      p[0] = 1.0;
      return p;
    case SourceSpec::Kind::kGeometric: {
      double mass = 1.0, total = 0.0;
      for (std::uint32_t x = 0; x < d; ++x) {
        p[x] = mass;
        total += mass;
        mass *= source.lambda;
      }
      for (auto& v : p) v /= total;
      return p;
    }
    default:
      throw std::invalid_argument("source_pmf: source has no closed-form pmf");
  }
}

// n categorical symbols in [0, d). Sampling inverts the cdf with a binary
// search so only the portable uniform generator is involved; file sources
// are read verbatim.
inline std::vector<std::uint32_t> gen_categorical_data(std::uint32_t d,
                                                       std::uint64_t n,
                                                       const SourceSpec& source,
                                                       std::uint64_t seed) {
  if (source.kind == SourceSpec::Kind::kFile) {
    std::ifstream in(source.path);
    if (!in) throw std::runtime_error("gen_categorical_data: cannot open " + source.path);
    std::vector<std::uint32_t> symbols;
    symbols.reserve(n);
    long long v = 0;
    while (symbols.size() < n && (in >> v)) {
      if (v < 0 || static_cast<std::uint64_t>(v) >= d)
        throw std::out_of_range("gen_categorical_data: file symbol out of range");
      symbols.push_back(static_cast<std::uint32_t>(v));
    }
    if (symbols.size() < n)
      throw std::runtime_error("gen_categorical_data: file has fewer than n symbols");
    return symbols;
  }
  const std::vector<double> p = source_pmf(d, source);
  std::vector<double> cdf(d);
  double run = 0.0;
  for (std::uint32_t x = 0; x < d; ++x) {
    run += p[x];
    cdf[x] = run;
  }
  cdf[d - 1] = 1.0;
  std::vector<std::uint32_t> symbols(n);
  Rng rng(derive_key(seed, 0x636174ULL));
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = rng.next_double();
    symbols[i] = static_cast<std::uint32_t>(
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  }
  return symbols;
}

inline std::vector<double> empirical_frequency(std::span<const std::uint32_t> symbols,
                                               std::uint32_t d) {
  std::vector<double> freq(d, 0.0);
  for (std::uint32_t x : symbols) {
    if (x >= d) throw std::out_of_range("empirical_frequency: symbol out of range");
    freq[x] += 1.0;
  }
  for (auto& v : freq) v /= static_cast<double>(symbols.size());
  return freq;
}

inline std::vector<double> empirical_mean(std::span<const double> rows,
                                          std::uint32_t d) {
  if (d == 0 || rows.size() % d != 0)
    throw std::invalid_argument("empirical_mean: bad layout");
  const std::size_t n = rows.size() / d;
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < d; ++j) mean[j] += rows[i * d + j];
  for (auto& v : mean) v /= static_cast<double>(n);
  return mean;
}

}  // namespace trilemma

#endif  // TRILEMMA_DATA_HPP_
