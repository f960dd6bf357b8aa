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

#ifndef TRILEMMA_HARNESS_HPP_
#define TRILEMMA_HARNESS_HPP_

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "trilemma/baselines.hpp"
#include "trilemma/data.hpp"
#include "trilemma/metrics.hpp"
#include "trilemma/rhr.hpp"
#include "trilemma/sqkr.hpp"

namespace trilemma {

enum class Task { kMean, kStatisticalMean, kFrequency, kDistribution, kHeavyHitter };
enum class Scheme { kSqkr, kSqkrStat, kRhr, kRhrDist, kHeavyHitter, kSs, kSeparation };

inline const char* to_string(Task t) {
  switch (t) {
    case Task::kMean: return "mean";
    case Task::kStatisticalMean: return "statistical_mean";
    case Task::kFrequency: return "frequency";
    case Task::kDistribution: return "distribution";
    case Task::kHeavyHitter: return "heavy_hitter";
  }
  return "?";
}

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::kSqkr: return "sqkr";
    case Scheme::kSqkrStat: return "sqkr_stat";
    case Scheme::kRhr: return "rhr";
    case Scheme::kRhrDist: return "rhr_dist";
    case Scheme::kHeavyHitter: return "heavy_hitter";
    case Scheme::kSs: return "ss";
    case Scheme::kSeparation: return "separation";
  }
  return "?";
}

inline Task parse_task(const std::string& s) {
  for (Task t : {Task::kMean, Task::kStatisticalMean, Task::kFrequency,
                 Task::kDistribution, Task::kHeavyHitter})
    if (s == to_string(t)) return t;
  throw std::invalid_argument("unknown task '" + s + "'");
}

inline Scheme parse_scheme(const std::string& s) {
  for (Scheme v : {Scheme::kSqkr, Scheme::kSqkrStat, Scheme::kRhr,
                   Scheme::kRhrDist, Scheme::kHeavyHitter, Scheme::kSs,
                   Scheme::kSeparation})
    if (s == to_string(v)) return v;
  throw std::invalid_argument("unknown scheme '" + s + "'");
}

struct ExperimentConfig {
  Task task = Task::kFrequency;
  Scheme scheme = Scheme::kRhr;
  std::uint32_t d = 16;
  std::uint64_t n = 1000;
  double eps = 1.0;
  int b = 1;
  SourceSpec source = SourceSpec{};
  std::uint32_t repetitions = 1;
  std::uint64_t seed = 1;
  std::string out;
  bool private_coin = false;   // sqkr only: transmit the sampled indices
  bool clip_display = false;   // clip + renormalize estimates on stdout only

  void set(const std::string& key, const std::string& value) {
    if (key == "task") task = parse_task(value);
    else if (key == "scheme") scheme = parse_scheme(value);
    else if (key == "d") d = static_cast<std::uint32_t>(std::stoul(value));
    else if (key == "n") n = std::stoull(value);
    else if (key == "eps") eps = std::stod(value);
    else if (key == "b") b = std::stoi(value);
    else if (key == "source") source = SourceSpec::parse(value);
    else if (key == "reps") repetitions = static_cast<std::uint32_t>(std::stoul(value));
    else if (key == "seed") seed = std::stoull(value);
    else if (key == "out") out = value;
    else if (key == "coin") {
      if (value == "public") private_coin = false;
      else if (value == "private") private_coin = true;
      else throw std::invalid_argument("coin must be public or private");
    } else if (key == "clip") {
      clip_display = value == "on" || value == "true" || value == "1";
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }

  static ExperimentConfig from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    ExperimentConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (!key.empty()) cfg.set(key, value);
    }
    return cfg;
  }

  void validate() const {
    if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const bool ok =
        (scheme == Scheme::kSqkr && task == Task::kMean) ||
        (scheme == Scheme::kSqkrStat && task == Task::kStatisticalMean) ||
        (scheme == Scheme::kRhr && task == Task::kFrequency) ||
        (scheme == Scheme::kRhrDist && task == Task::kDistribution) ||
        (scheme == Scheme::kHeavyHitter &&
         (task == Task::kHeavyHitter || task == Task::kFrequency)) ||
        (scheme == Scheme::kSs &&
         (task == Task::kFrequency || task == Task::kDistribution)) ||
        (scheme == Scheme::kSeparation && task == Task::kDistribution);
    if (!ok)
      throw std::invalid_argument(std::string("scheme ") + to_string(scheme) +
                                  " is incompatible with task " + to_string(task));
    if (private_coin && scheme != Scheme::kSqkr)
      throw std::invalid_argument("private coin mode applies to sqkr only");
    const bool mean_task = task == Task::kMean || task == Task::kStatisticalMean;
    if (mean_task) {
      if (source.kind != SourceSpec::Kind::kGaussMix &&
          source.kind != SourceSpec::Kind::kPointMass)
        throw std::invalid_argument("mean tasks need source gauss_mix or point_mass");
    } else if (source.kind == SourceSpec::Kind::kGaussMix) {
      throw std::invalid_argument("gauss_mix is a mean-task source");
    }
  }
};

struct RepetitionRow {
  std::uint32_t rep = 0;
  ErrorTriple err;
  std::uint64_t payload_bits = 0;  // max over clients
  std::uint64_t shared_bits = 0;   // per client
  double encode_ms = 0.0;
  double decode_ms = 0.0;
};

struct EstimateReport {
  std::vector<RepetitionRow> rows;
  ErrorTriple mean;
  ErrorTriple std_error;
  double mean_encode_ms = 0.0;
  double mean_decode_ms = 0.0;
  std::uint64_t effective_n = 0;
  std::vector<double> last_estimate;
};

// Payload-bit budget enforcement. Every message's semantic payload size is
// checked against the declared per-client budget; a violation means an
// encoder bug and aborts the run.
class Channel {
 public:
  explicit Channel(std::uint64_t budget_bits) : budget_(budget_bits) {}

  void transmit(std::uint64_t payload_bits) {
    if (payload_bits > budget_)
      throw std::runtime_error("channel: payload of " +
                               std::to_string(payload_bits) +
                               " bits exceeds the budget of " +
                               std::to_string(budget_) + " bits");
    if (payload_bits > max_seen_) max_seen_ = payload_bits;
  }

  std::uint64_t budget() const { return budget_; }
  std::uint64_t max_seen() const { return max_seen_; }

 private:
  std::uint64_t budget_;
  std::uint64_t max_seen_ = 0;
};

namespace detail {

class StopWatch {
 public:
  StopWatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Runs fn(i) for i in [0, n) across a few threads; client work is keyed by
// index so the split cannot change results.
inline void parallel_for(std::uint64_t n, const std::function<void(std::uint64_t)>& fn) {
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned workers = n >= 4096 && hw > 1 ? std::min(hw, 8u) : 1;
  if (workers == 1) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::uint64_t lo = n * w / workers;
        const std::uint64_t hi = n * (w + 1) / workers;
        for (std::uint64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline constexpr std::uint64_t kRepTag = 0x726570ULL;
inline constexpr std::uint64_t kFrameTag = 0x6672ULL;
inline constexpr std::uint64_t kPrivTag = 0x70726976ULL;
inline constexpr std::uint64_t kDataTag = 0x64617461ULL;
inline constexpr std::uint64_t kTruthTag = 0x7472757468ULL;

// theta(P) for the statistical-mean task. The two-Gaussian source has no
// closed-form mean after normalization, so it is pinned down once per
// experiment by a large fixed-seed reference sample.
inline std::vector<double> statistical_mean_truth(const ExperimentConfig& cfg) {
  if (cfg.source.kind == SourceSpec::Kind::kPointMass)
    return point_mass_direction(cfg.d);
  constexpr std::uint64_t kReferenceSamples = 500000;
  std::vector<double> mean(cfg.d, 0.0);
  Rng rng(derive_key(cfg.seed, kTruthTag));
  std::vector<double> z(cfg.d);
  for (std::uint64_t i = 0; i < kReferenceSamples; ++i) {
    const double center = i < kReferenceSamples / 2 ? 1.0 : 10.0;
    double norm_sq = 0.0;
    for (auto& v : z) {
      v = center + rng.next_normal();
      norm_sq += v * v;
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (std::uint32_t j = 0; j < cfg.d; ++j) mean[j] += z[j] * inv;
  }
  for (auto& v : mean) v /= static_cast<double>(kReferenceSamples);
  return mean;
}

inline std::vector<double> mean_task_data(const ExperimentConfig& cfg,
                                          std::uint64_t rep_seed) {
  if (cfg.source.kind == SourceSpec::Kind::kPointMass) {
    const std::vector<double> dir = point_mass_direction(cfg.d);
    std::vector<double> rows(cfg.n * static_cast<std::size_t>(cfg.d));
    for (std::uint64_t i = 0; i < cfg.n; ++i)
      for (std::uint32_t j = 0; j < cfg.d; ++j) rows[i * cfg.d + j] = dir[j];
    return rows;
  }
  return gen_mean_data(cfg.d, cfg.n, derive_key(rep_seed, kDataTag));
}

}  // namespace detail

// Column order is fixed:
// scheme,task,d,n,eps,b,rep,l1,l2sq,linf,bits_per_client,shared_bits,encode_ms,decode_ms
inline void write_csv(std::ostream& out, const ExperimentConfig& cfg,
                      const EstimateReport& report) {
  char buf[512];
  auto emit = [&](const char* rep_label, const ErrorTriple& e,
                  std::uint64_t payload_bits, std::uint64_t shared_bits,
                  double enc_ms, double dec_ms) {
    std::snprintf(buf, sizeof(buf),
                  "%s,%s,%u,%llu,%.10g,%d,%s,%.10g,%.10g,%.10g,%llu,%llu,%.3f,%.3f\n",
                  to_string(cfg.scheme), to_string(cfg.task), cfg.d,
                  static_cast<unsigned long long>(cfg.n), cfg.eps, cfg.b,
                  rep_label, e.l1, e.l2sq, e.linf,
                  static_cast<unsigned long long>(payload_bits),
                  static_cast<unsigned long long>(shared_bits), enc_ms, dec_ms);
    out << buf;
  };
  for (const auto& row : report.rows) {
    char rep_label[16];
    std::snprintf(rep_label, sizeof(rep_label), "%u", row.rep);
    emit(rep_label, row.err, row.payload_bits, row.shared_bits, row.encode_ms,
         row.decode_ms);
  }
  const std::uint64_t payload_bits =
      report.rows.empty() ? 0 : report.rows.front().payload_bits;
  const std::uint64_t shared_bits =
      report.rows.empty() ? 0 : report.rows.front().shared_bits;
  emit("summary", report.mean, payload_bits, shared_bits, report.mean_encode_ms,
       report.mean_decode_ms);
}

// Runs one configuration: every repetition generates fresh data and streams
// from seeds derived from (seed, rep), pushes every client message through
// the budget-enforcing channel, decodes, and scores against the task's
// ground truth. Appends one CSV row per repetition plus a summary row when
// cfg.out is set.
inline EstimateReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  EstimateReport report;

  for (std::uint32_t rep = 0; rep < cfg.repetitions; ++rep) {
    const std::uint64_t rep_seed = derive_key(cfg.seed, detail::kRepTag, rep);
    RepetitionRow row;
    row.rep = rep;
    std::vector<double> estimate;
    std::vector<double> truth;

    switch (cfg.scheme) {
      case Scheme::kSqkr: {
        const std::vector<double> rows = detail::mean_task_data(cfg, rep_seed);
        truth = empirical_mean(rows, cfg.d);
        const SqkrMode mode =
            cfg.private_coin ? SqkrMode::kPrivateCoin : SqkrMode::kPublicCoin;
        const SqkrParams params = SqkrParams::create(
            cfg.d, cfg.eps, cfg.b, mode, derive_key(rep_seed, detail::kFrameTag));
        Channel channel(params.wire_bits_per_client());
        std::vector<SqkrMessage> messages(cfg.n);
        std::uint64_t measured_shared = 0;
        detail::StopWatch encode_clock;
        detail::parallel_for(cfg.n, [&](std::uint64_t i) {
          SharedRandomness shared(rep_seed, i);
          Rng priv(derive_key(rep_seed, detail::kPrivTag, i));
          messages[i] = sqkr_encode(
              std::span<const double>(rows.data() + i * cfg.d, cfg.d), params,
              mode == SqkrMode::kPublicCoin ? &shared : nullptr, priv);
          if (i == 0) measured_shared = shared.bits_consumed();
        });
        row.encode_ms = encode_clock.elapsed_ms();
        for (const auto& m : messages)
          channel.transmit(static_cast<std::uint64_t>(params.k) +
                           m.indices.size() * ceil_log2(params.frame.size()));
        row.payload_bits = channel.max_seen();
        row.shared_bits = measured_shared;
        if (measured_shared != params.shared_bits_per_client())
          throw std::runtime_error("sqkr: shared-randomness accounting mismatch");
        detail::StopWatch decode_clock;
        estimate = sqkr_decode(messages, params, rep_seed);
        row.decode_ms = decode_clock.elapsed_ms();
        report.effective_n = cfg.n;
        break;
      }
      case Scheme::kSqkrStat: {
        const std::vector<double> rows = detail::mean_task_data(cfg, rep_seed);
        truth = detail::statistical_mean_truth(cfg);
        const SqkrParams params = SqkrParams::create(
            cfg.d, cfg.eps, cfg.b, SqkrMode::kStatisticalGrouping,
            derive_key(rep_seed, detail::kFrameTag));
        const std::uint64_t n_eff = sqkr_statistical_effective_n(cfg.n, params);
        if (n_eff == 0)
          throw std::invalid_argument("sqkr_stat: n is below the group count");
        Channel channel(params.b_star);
        std::vector<SqkrMessage> messages(n_eff);
        detail::StopWatch encode_clock;
        detail::parallel_for(n_eff, [&](std::uint64_t i) {
          Rng priv(derive_key(rep_seed, detail::kPrivTag, i));
          messages[i] = sqkr_encode_statistical(
              std::span<const double>(rows.data() + i * cfg.d, cfg.d), i, params,
              priv);
        });
        row.encode_ms = encode_clock.elapsed_ms();
        for (std::size_t i = 0; i < messages.size(); ++i)
          channel.transmit(params.b_star);
        row.payload_bits = channel.max_seen();
        row.shared_bits = 0;
        detail::StopWatch decode_clock;
        estimate = sqkr_decode_statistical(messages, params);
        row.decode_ms = decode_clock.elapsed_ms();
        report.effective_n = n_eff;
        break;
      }
      case Scheme::kRhr: {
        const std::vector<std::uint32_t> symbols = gen_categorical_data(
            cfg.d, cfg.n, cfg.source, derive_key(rep_seed, detail::kDataTag));
        truth = empirical_frequency(symbols, cfg.d);
        const RhrParams params = RhrParams::create(cfg.d, cfg.eps, cfg.b);
        Channel channel(cfg.b);
        std::vector<RhrMessage> messages(cfg.n);
        std::uint64_t measured_shared = 0;
        detail::StopWatch encode_clock;
        detail::parallel_for(cfg.n, [&](std::uint64_t i) {
          SharedRandomness shared(rep_seed, i);
          Rng priv(derive_key(rep_seed, detail::kPrivTag, i));
          messages[i] = rhr_encode(symbols[i], rhr_draw_group(shared, params),
                                   params, priv);
          if (i == 0) measured_shared = shared.bits_consumed();
        });
        row.encode_ms = encode_clock.elapsed_ms();
        for (std::size_t i = 0; i < messages.size(); ++i)
          channel.transmit(params.k);
        row.payload_bits = channel.max_seen();
        row.shared_bits = measured_shared;
        if (measured_shared != params.shared_bits_per_client())
          throw std::runtime_error("rhr: shared-randomness accounting mismatch");
        detail::StopWatch decode_clock;
        estimate = rhr_decode_frequency_public(messages, params, rep_seed).values;
        row.decode_ms = decode_clock.elapsed_ms();
        report.effective_n = cfg.n;
        break;
      }
      case Scheme::kRhrDist: {
        const std::vector<std::uint32_t> symbols = gen_categorical_data(
            cfg.d, cfg.n, cfg.source, derive_key(rep_seed, detail::kDataTag));
        truth = source_pmf(cfg.d, cfg.source);
        const RhrParams params = RhrParams::create(cfg.d, cfg.eps, cfg.b);
        Channel channel(cfg.b);
        std::vector<RhrMessage> messages(cfg.n);
        detail::StopWatch encode_clock;
        detail::parallel_for(cfg.n, [&](std::uint64_t i) {
          Rng priv(derive_key(rep_seed, detail::kPrivTag, i));
          messages[i] = rhr_encode_distribution(symbols[i], i, params, priv);
        });
        row.encode_ms = encode_clock.elapsed_ms();
        for (std::size_t i = 0; i < messages.size(); ++i)
          channel.transmit(params.k);
        row.payload_bits = channel.max_seen();
        row.shared_bits = 0;
        detail::StopWatch decode_clock;
        estimate = rhr_decode_distribution(messages, params).values;
        row.decode_ms = decode_clock.elapsed_ms();
        report.effective_n = cfg.n;
        break;
      }
      case Scheme::kHeavyHitter: {
        const std::vector<std::uint32_t> symbols = gen_categorical_data(
            cfg.d, cfg.n, cfg.source, derive_key(rep_seed, detail::kDataTag));
        truth = empirical_frequency(symbols, cfg.d);
        const HeavyHitterParams params =
            HeavyHitterParams::create(cfg.d, cfg.eps, cfg.b);
        Channel channel(cfg.b);
        std::vector<HeavyHitterMessage> messages(cfg.n);
        std::uint64_t measured_shared = 0;
        detail::StopWatch encode_clock;
        detail::parallel_for(cfg.n, [&](std::uint64_t i) {
          SharedRandomness shared(rep_seed, i);
          Rng priv(derive_key(rep_seed, detail::kPrivTag, i));
          messages[i] = hh_encode(symbols[i], params, shared, priv);
          if (i == 0) measured_shared = shared.bits_consumed();
        });
        row.encode_ms = encode_clock.elapsed_ms();
        for (std::size_t i = 0; i < messages.size(); ++i)
          channel.transmit(params.k);
        row.payload_bits = channel.max_seen();
        row.shared_bits = measured_shared;
        if (measured_shared != params.shared_bits_per_client())
          throw std::runtime_error("heavy_hitter: shared-randomness accounting mismatch");
        detail::StopWatch decode_clock;
        estimate = hh_decode(messages, params, rep_seed).values;
        row.decode_ms = decode_clock.elapsed_ms();
        report.effective_n = cfg.n;
        break;
      }
      case Scheme::kSs: {
        const std::vector<std::uint32_t> symbols = gen_categorical_data(
            cfg.d, cfg.n, cfg.source, derive_key(rep_seed, detail::kDataTag));
        truth = cfg.task == Task::kDistribution ? source_pmf(cfg.d, cfg.source)
                                                : empirical_frequency(symbols, cfg.d);
        const SubsetSelectionParams params =
            SubsetSelectionParams::create(cfg.d, cfg.eps);
        Channel channel(params.report_bits());
        std::vector<std::uint64_t> counts(cfg.d, 0);
        detail::StopWatch encode_clock;
        for (std::uint64_t i = 0; i < cfg.n; ++i) {
          Rng priv(derive_key(rep_seed, detail::kPrivTag, i));
          const std::vector<std::uint8_t> report = ss_encode(symbols[i], params, priv);
          for (std::uint32_t j = 0; j < cfg.d; ++j) counts[j] += report[j];
        }
        row.encode_ms = encode_clock.elapsed_ms();
        for (std::uint64_t i = 0; i < cfg.n; ++i)
          channel.transmit(params.report_bits());
        row.payload_bits = channel.max_seen();
        row.shared_bits = 0;
        detail::StopWatch decode_clock;
        estimate = ss_decode_counts(counts, cfg.n, params).values;
        row.decode_ms = decode_clock.elapsed_ms();
        report.effective_n = cfg.n;
        break;
      }
      case Scheme::kSeparation: {
        const std::vector<std::uint32_t> symbols = gen_categorical_data(
            cfg.d, cfg.n, cfg.source, derive_key(rep_seed, detail::kDataTag));
        truth = source_pmf(cfg.d, cfg.source);
        const SeparationParams params =
            SeparationParams::create(cfg.d, cfg.eps, cfg.b);
        Channel channel(params.report_bits());
        std::vector<SeparationMessage> messages(cfg.n);
        detail::StopWatch encode_clock;
        detail::parallel_for(cfg.n, [&](std::uint64_t i) {
          Rng priv(derive_key(rep_seed, detail::kPrivTag, i));
          messages[i] = separation_encode(symbols[i], i, params, priv);
        });
        row.encode_ms = encode_clock.elapsed_ms();
        for (std::size_t i = 0; i < messages.size(); ++i)
          channel.transmit(params.report_bits());
        row.payload_bits = channel.max_seen();
        row.shared_bits = 0;
        detail::StopWatch decode_clock;
        estimate = separation_decode(messages, params).values;
        row.decode_ms = decode_clock.elapsed_ms();
        report.effective_n = cfg.n;
        break;
      }
    }

    row.err = compute_errors(estimate, truth);
    report.rows.push_back(row);
    report.last_estimate = std::move(estimate);
  }

  const double reps = static_cast<double>(report.rows.size());
  for (const auto& row : report.rows) {
    report.mean.l1 += row.err.l1 / reps;
    report.mean.l2sq += row.err.l2sq / reps;
    report.mean.linf += row.err.linf / reps;
    report.mean_encode_ms += row.encode_ms / reps;
    report.mean_decode_ms += row.decode_ms / reps;
  }
  if (report.rows.size() > 1) {
    ErrorTriple var;
    for (const auto& row : report.rows) {
      var.l1 += (row.err.l1 - report.mean.l1) * (row.err.l1 - report.mean.l1);
      var.l2sq +=
          (row.err.l2sq - report.mean.l2sq) * (row.err.l2sq - report.mean.l2sq);
      var.linf +=
          (row.err.linf - report.mean.linf) * (row.err.linf - report.mean.linf);
    }
    const double denom = reps * (reps - 1.0);
    report.std_error.l1 = std::sqrt(var.l1 / denom);
    report.std_error.l2sq = std::sqrt(var.l2sq / denom);
    report.std_error.linf = std::sqrt(var.linf / denom);
  }

  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out, std::ios::app);
    if (!out) throw std::runtime_error("cannot open output file " + cfg.out);
    write_csv(out, cfg, report);
  }
  return report;
}

}  // namespace trilemma

#endif  // TRILEMMA_HARNESS_HPP_
