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
//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
// the measured quantity; the process exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "trilemma/baselines.hpp"
#include "trilemma/harness.hpp"
#include "trilemma/rhr.hpp"
#include "trilemma/sqkr.hpp"

namespace trilemma {
namespace {

int g_failures = 0;
int g_index = 0;

void report(bool pass, const std::string& name, const std::string& detail,
            double seconds) {
  ++g_index;
  if (!pass) ++g_failures;
  std::printf("[%d] %s  %s: %s  (%.1fs)\n", g_index, pass ? "PASS" : "FAIL",
              name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
}

double run_timed(const std::function<bool(std::string*)>& body,
                 const std::string& name) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = body(&detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(pass, name, detail, seconds);
  return seconds;
}

std::vector<double> random_unit_vector(std::uint32_t d, Rng& rng) {
  std::vector<double> x(d);
  double norm = 0.0;
  for (auto& v : x) {
    v = rng.next_normal();
    norm += v * v;
  }
  norm = std::sqrt(norm);
  for (auto& v : x) v /= norm;
  return x;
}

// --- criterion 1a: SQKR single-client exact expectation -------------------

bool sqkr_oracle(std::string* detail) {
  KashinOptions opt;
  opt.tol = 1e-12;
  const SqkrParams params =
      SqkrParams::create(2, std::log(3.0), 1, SqkrMode::kPrivateCoin, 17, opt);
  if (params.frame.size() != 4 || params.k != 1) {
    *detail = "unexpected parameters";
    return false;
  }
  Rng rng(31);
  const std::vector<double> x = random_unit_vector(2, rng);
  const KashinCoefficients kc = kashin_decompose(params.frame, x, opt);
  const double level = params.quant_level;
  const double keep = params.rr.keep_prob();

  std::vector<double> expected(2, 0.0);
  for (std::uint32_t idx = 0; idx < 4; ++idx) {
    for (int sign = 0; sign < 2; ++sign) {
      const double p_plus = (kc.coeffs[idx] + level) / (2.0 * level);
      const double p_sign = sign ? p_plus : 1.0 - p_plus;
      for (std::uint32_t out = 0; out < 2; ++out) {
        const double channel =
            out == static_cast<std::uint32_t>(sign) ? keep : 1.0 - keep;
        SqkrMessage msg;
        msg.payload = out;
        msg.indices = {idx};
        const std::vector<double> est =
            sqkr_decode(std::vector<SqkrMessage>{msg}, params);
        for (int i = 0; i < 2; ++i)
          expected[i] += 0.25 * p_sign * channel * est[i];
      }
    }
  }
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    worst = std::max(worst, std::abs(expected[i] - x[i]));
  char buf[128];
  std::snprintf(buf, sizeof(buf), "max |E[estimate] - x| = %.2e (tol 1e-9)", worst);
  *detail = buf;
  return worst <= 1e-9;
}

// --- criterion 1b: RHR single-client exact expectation --------------------

bool rhr_oracle(std::string* detail) {
  const RhrParams params = RhrParams::create(4, std::log(3.0), 2);
  if (params.k != 2 || params.groups != 2) {
    *detail = "unexpected parameters";
    return false;
  }
  const std::uint32_t x = 2;
  const double keep = params.rr.keep_prob();
  std::vector<double> expected(4, 0.0);
  for (std::uint32_t r = 0; r < 2; ++r) {
    const std::uint32_t loc = x / params.groups;
    const bool sign = hadamard_entry(r, x, 4) > 0;
    const std::uint32_t truth =
        (static_cast<std::uint32_t>(sign) << 1) | loc;
    for (std::uint32_t out = 0; out < 4; ++out) {
      const double channel = out == truth ? keep : (1.0 - keep) / 3.0;
      const std::vector<RhrMessage> msgs{RhrMessage{out}};
      const std::vector<std::uint32_t> groups{r};
      const FrequencyEstimate est = rhr_decode_frequency(msgs, groups, params);
      for (std::uint32_t s = 0; s < 4; ++s)
        expected[s] += 0.5 * channel * est.values[s];
    }
  }
  double worst = 0.0;
  for (std::uint32_t s = 0; s < 4; ++s)
    worst = std::max(worst, std::abs(expected[s] - (s == x ? 1.0 : 0.0)));
  char buf[128];
  std::snprintf(buf, sizeof(buf), "max |E[estimate] - one_hot| = %.2e (tol 1e-9)",
                worst);
  *detail = buf;
  return worst <= 1e-9;
}

// --- criterion 1c: heavy-hitter single-client exact expectation -----------

bool hh_oracle(std::string* detail) {
  const HeavyHitterParams params = HeavyHitterParams::create(4, std::log(3.0), 1);
  if (params.k != 1) {
    *detail = "unexpected parameters";
    return false;
  }
  const std::uint32_t x = 1;
  const double keep = 1.0 / (1.0 + std::exp(-params.eps_prime));
  std::vector<double> expected(4, 0.0);
  for (std::uint32_t r = 0; r < 4; ++r) {
    const int bit = hadamard_entry(x, r, 4) > 0 ? 1 : 0;
    for (int flip = 0; flip < 2; ++flip) {
      const double prob = 0.25 * (flip ? 1.0 - keep : keep);
      const std::uint32_t sent = flip ? 1 - bit : bit;
      const std::vector<HeavyHitterMessage> msgs{HeavyHitterMessage{sent}};
      const std::vector<std::uint32_t> coords{r};
      const FrequencyEstimate est = hh_decode_with_coords(msgs, coords, params);
      for (std::uint32_t s = 0; s < 4; ++s)
        expected[s] += prob * est.values[s];
    }
  }
  double worst = 0.0;
  for (std::uint32_t s = 0; s < 4; ++s)
    worst = std::max(worst, std::abs(expected[s] - (s == x ? 1.0 : 0.0)));
  char buf[128];
  std::snprintf(buf, sizeof(buf), "max |E[estimate] - one_hot| = %.2e (tol 1e-9)",
                worst);
  *detail = buf;
  return worst <= 1e-9;
}

// --- criterion 2: LDP certificate ------------------------------------------

bool ldp_certificate(std::string* detail) {
  // every (eps, k) pair exercised anywhere in this suite, k <= 10
  std::vector<std::pair<double, int>> pairs{
      {std::log(3.0), 1}, {std::log(3.0), 2}, {1.0, 1},  {2.0, 3},
      {10.0, 2},          {10.0, 5},          {1.0, 1},  {0.5, 1},
      {5.0, 3},           {8.0, 6},           {3.0, 10},
  };
  Rng rng(404);
  for (int t = 0; t < 20; ++t)
    pairs.emplace_back(0.25 + 0.5 * rng.next_below(16),
                       1 + static_cast<int>(rng.next_below(10)));
  double worst_rel = 0.0;
  for (const auto& [eps, k] : pairs) {
    const RRParams p = RRParams::create(eps, k);
    const std::vector<double> q = rr_transition_matrix(p);
    const std::uint32_t m = p.alphabet();
    double worst = 0.0;
    for (std::uint32_t out = 0; out < m; ++out) {
      double lo = 1.0, hi = 0.0;
      for (std::uint32_t in = 0; in < m; ++in) {
        lo = std::min(lo, q[out * m + in]);
        hi = std::max(hi, q[out * m + in]);
      }
      worst = std::max(worst, hi / lo);
    }
    const double rel = std::abs(worst - std::exp(eps)) / std::exp(eps);
    worst_rel = std::max(worst_rel, rel);
    if (worst > std::exp(eps) * (1.0 + 1e-9)) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "ratio %.6g exceeds e^eps at eps=%.3g k=%d",
                    worst, eps, k);
      *detail = buf;
      return false;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "%zu (eps,k) pairs, max relative gap to e^eps = %.2e",
                pairs.size(), worst_rel);
  *detail = buf;
  return true;
}

// --- criterion 3: SQKR dimension law ---------------------------------------

double mean_l2sq(Scheme scheme, Task task, std::uint32_t d, std::uint64_t n,
                 double eps, int b, std::uint32_t reps, const char* source,
                 std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.scheme = scheme;
  cfg.task = task;
  cfg.d = d;
  cfg.n = n;
  cfg.eps = eps;
  cfg.b = b;
  cfg.repetitions = reps;
  cfg.seed = seed;
  cfg.source = SourceSpec::parse(source);
  return run_experiment(cfg).mean.l2sq;
}

bool sqkr_dimension_law(std::string* detail) {
  const double err64 =
      mean_l2sq(Scheme::kSqkr, Task::kMean, 64, 100000, 1.0, 1, 8, "gauss_mix", 7);
  const double err16 =
      mean_l2sq(Scheme::kSqkr, Task::kMean, 16, 100000, 1.0, 1, 8, "gauss_mix", 7);
  const double ratio = err64 / err16;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "l2sq(d=64)=%.4g l2sq(d=16)=%.4g ratio=%.3g in [3.1, 5.2]",
                err64, err16, ratio);
  *detail = buf;
  return ratio >= 3.1 && ratio <= 5.2;
}

// --- criterion 4: RHR budget law -------------------------------------------

bool rhr_budget_law(std::string* detail) {
  const double err_b2 = mean_l2sq(Scheme::kRhr, Task::kFrequency, 1024, 100000,
                                  10.0, 2, 8, "geometric(0.8)", 11);
  const double err_b5 = mean_l2sq(Scheme::kRhr, Task::kFrequency, 1024, 100000,
                                  10.0, 5, 8, "geometric(0.8)", 11);
  const double ratio = err_b2 / err_b5;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "l2sq(b=2)=%.4g l2sq(b=5)=%.4g ratio=%.3g in [5, 13]", err_b2,
                err_b5, ratio);
  *detail = buf;
  return ratio >= 5.0 && ratio <= 13.0;
}

// --- criterion 5: distribution-estimation slope vs n ------------------------

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  return num / den;
}

bool distribution_slope(std::string* detail) {
  const std::vector<std::uint64_t> grid{50000, 200000, 500000};
  std::vector<double> log_n, log_l1;
  for (std::uint64_t n : grid) {
    ExperimentConfig cfg;
    cfg.scheme = Scheme::kRhrDist;
    cfg.task = Task::kDistribution;
    cfg.d = 1000;
    cfg.n = n;
    cfg.eps = 2.0;
    cfg.b = 3;
    cfg.repetitions = 30;
    cfg.seed = 13;
    cfg.source = SourceSpec::parse("geometric(0.8)");
    const EstimateReport report = run_experiment(cfg);
    log_n.push_back(std::log(static_cast<double>(n)));
    log_l1.push_back(std::log(report.mean.l1));
  }
  const double slope = fit_slope(log_n, log_l1);
  char buf[160];
  std::snprintf(buf, sizeof(buf), "l1 log-log slope vs n = %.3f in [-0.65, -0.38]",
                slope);
  *detail = buf;
  return slope >= -0.65 && slope <= -0.38;
}

// --- criterion 6: separation suboptimality ----------------------------------

bool separation_gap(std::string* detail) {
  const std::vector<std::uint32_t> dims{32, 64, 128, 256};
  std::vector<double> log_d, log_sep, log_rhr;
  for (std::uint32_t d : dims) {
    const double sep = mean_l2sq(Scheme::kSeparation, Task::kDistribution, d,
                                 100000, 1.0, 1, 6, "uniform", 19);
    const double rhr = mean_l2sq(Scheme::kRhrDist, Task::kDistribution, d,
                                 100000, 1.0, 1, 6, "uniform", 19);
    log_d.push_back(std::log(static_cast<double>(d)));
    log_sep.push_back(std::log(sep));
    log_rhr.push_back(std::log(rhr));
  }
  const double slope_sep = fit_slope(log_d, log_sep);
  const double slope_rhr = fit_slope(log_d, log_rhr);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "l2sq slope vs d: separation=%.2f rhr=%.2f gap=%.2f (need >= 0.5)",
                slope_sep, slope_rhr, slope_sep - slope_rhr);
  *detail = buf;
  return slope_sep - slope_rhr >= 0.5;
}

// --- criterion 7: Kashin property sweep --------------------------------------

bool kashin_sweep(std::string* detail) {
  const KashinOptions opt;
  Rng rng(23);
  double worst_level = 0.0, worst_residual = 0.0;
  for (std::uint32_t d : {16u, 64u, 200u}) {
    const TightFrame frame = TightFrame::build(d, 29);
    const double bound = opt.level / std::sqrt(static_cast<double>(frame.size()));
    for (int trial = 0; trial < 1000; ++trial) {
      const std::vector<double> x = random_unit_vector(d, rng);
      const KashinCoefficients kc = kashin_decompose(frame, x, opt);
      double max_coeff = 0.0;
      for (double a : kc.coeffs) max_coeff = std::max(max_coeff, std::abs(a));
      if (max_coeff > bound * (1 + 1e-12) || kc.residual_norm > 1e-6) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "violation at d=%u: level=%.4g bound=%.4g residual=%.2e", d,
                      max_coeff, bound, kc.residual_norm);
        *detail = buf;
        return false;
      }
      worst_level = std::max(worst_level,
                             max_coeff * std::sqrt(static_cast<double>(frame.size())));
      worst_residual = std::max(worst_residual, kc.residual_norm);
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "3000/3000 ok; worst level %.3f (budget %.1f), worst residual %.1e",
                worst_level, opt.level, worst_residual);
  *detail = buf;
  return true;
}

// --- criterion 8: bit accounting ---------------------------------------------

bool accounting(std::string* detail) {
  Rng rng(55);
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    const std::uint32_t d = 2 + static_cast<std::uint32_t>(rng.next_below(199));
    const double eps = 0.3 + 0.4 * rng.next_below(20);
    const int b = 1 + static_cast<int>(rng.next_below(6));
    const int which = static_cast<int>(rng.next_below(3));
    ExperimentConfig cfg;
    cfg.d = d;
    cfg.n = 64;
    cfg.eps = eps;
    cfg.b = b;
    cfg.repetitions = 1;
    cfg.seed = derive_key(100, t);
    std::uint64_t expected_shared = 0;
    std::uint64_t expected_payload = 0;
    if (which == 0) {
      cfg.scheme = Scheme::kSqkr;
      cfg.task = Task::kMean;
      cfg.source = SourceSpec::parse("gauss_mix");
      const SqkrParams p =
          SqkrParams::create(d, eps, b, SqkrMode::kPublicCoin, 1);
      expected_shared = static_cast<std::uint64_t>(p.k) * ceil_log2(p.frame.size());
      expected_payload = p.k;
    } else if (which == 1) {
      cfg.scheme = Scheme::kRhr;
      cfg.task = Task::kFrequency;
      cfg.source = SourceSpec::parse("uniform");
      const RhrParams p = RhrParams::create(d, eps, b);
      expected_shared = p.groups > 1 ? ceil_log2(p.groups) : 0;
      expected_payload = p.k;
    } else {
      cfg.scheme = Scheme::kHeavyHitter;
      cfg.task = Task::kFrequency;
      cfg.source = SourceSpec::parse("uniform");
      const HeavyHitterParams p = HeavyHitterParams::create(d, eps, b);
      expected_shared =
          p.padded > 1 ? static_cast<std::uint64_t>(p.k) * ceil_log2(p.padded) : 0;
      expected_payload = p.k;
    }
    const EstimateReport report = run_experiment(cfg);
    const RepetitionRow& row = report.rows[0];
    if (row.shared_bits != expected_shared || row.payload_bits != expected_payload ||
        row.payload_bits > static_cast<std::uint64_t>(b)) {
      char buf[200];
      std::snprintf(buf, sizeof(buf),
                    "config %d (%s d=%u eps=%.2g b=%d): shared %llu vs %llu, "
                    "payload %llu vs %llu",
                    t, to_string(cfg.scheme), d, eps, b,
                    static_cast<unsigned long long>(row.shared_bits),
                    static_cast<unsigned long long>(expected_shared),
                    static_cast<unsigned long long>(row.payload_bits),
                    static_cast<unsigned long long>(expected_payload));
      *detail = buf;
      return false;
    }
    ++checked;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "%d random configs: counters match formulas, payload <= b", checked);
  *detail = buf;
  return true;
}

// --- criterion 9: heavy-hitter l-infinity scaling ----------------------------

bool heavy_hitter_scaling(std::string* detail) {
  auto mean_linf = [&](std::uint64_t n) {
    ExperimentConfig cfg;
    cfg.scheme = Scheme::kHeavyHitter;
    cfg.task = Task::kHeavyHitter;
    cfg.d = 1024;
    cfg.n = n;
    cfg.eps = 1.0;
    cfg.b = 1;
    cfg.repetitions = 24;
    cfg.seed = 43;
    cfg.source = SourceSpec::parse("geometric(0.8)");
    return run_experiment(cfg).mean.linf;
  };
  const double small_n = mean_linf(10000);
  const double large_n = mean_linf(40000);
  const double ratio = small_n / large_n;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "linf(n=1e4)=%.4g linf(n=4e4)=%.4g ratio=%.3g in [1.5, 2.6]",
                small_n, large_n, ratio);
  *detail = buf;
  return ratio >= 1.5 && ratio <= 2.6;
}

}  // namespace
}  // namespace trilemma

int main() {
  using trilemma::run_timed;
  double total = 0.0;
  total += run_timed(trilemma::sqkr_oracle,
                     "criterion 1a: SQKR exact-expectation oracle");
  total += run_timed(trilemma::rhr_oracle,
                     "criterion 1b: RHR exact-expectation oracle");
  total += run_timed(trilemma::hh_oracle,
                     "criterion 1c: heavy-hitter exact-expectation oracle");
  total += run_timed(trilemma::ldp_certificate, "criterion 2: LDP certificate");
  total += run_timed(trilemma::sqkr_dimension_law,
                     "criterion 3: SQKR dimension law");
  total += run_timed(trilemma::rhr_budget_law, "criterion 4: RHR budget law");
  total += run_timed(trilemma::distribution_slope,
                     "criterion 5: distribution-estimation slope");
  total += run_timed(trilemma::separation_gap,
                     "criterion 6: separation suboptimality gap");
  total += run_timed(trilemma::kashin_sweep, "criterion 7: Kashin property sweep");
  total += run_timed(trilemma::accounting, "criterion 8: bit accounting");
  total += run_timed(trilemma::heavy_hitter_scaling,
                     "criterion 9: heavy-hitter 1/sqrt(n) law");
  std::printf("%s: %d/%d criteria passed (%.1fs total)\n",
              trilemma::g_failures == 0 ? "ALL PASS" : "FAILURES",
              11 - trilemma::g_failures, 11, total);
  return trilemma::g_failures;
}
