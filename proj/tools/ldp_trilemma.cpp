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

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trilemma/harness.hpp"
#include "trilemma/rhr.hpp"

namespace {

using trilemma::EstimateReport;
using trilemma::ExperimentConfig;

struct FlagOverrides {
  std::vector<std::pair<std::string, std::string>> kv;

  void bind(CLI::App* app) {
    auto add = [&](const std::string& name, const std::string& desc) {
      app->add_option_function<std::string>(
          "--" + name,
          [this, name](const std::string& v) { kv.emplace_back(name, v); },
          desc);
    };
    add("task", "mean|statistical_mean|frequency|distribution|heavy_hitter");
    add("scheme", "sqkr|sqkr_stat|rhr|rhr_dist|heavy_hitter|ss|separation");
    add("d", "dimension / alphabet size");
    add("n", "number of clients");
    add("eps", "privacy level (nats)");
    add("b", "communication budget in bits");
    add("source", "geometric(l)|uniform|point_mass|gauss_mix|file:PATH");
    add("reps", "repetitions");
    add("seed", "root seed");
    add("out", "CSV output path (appended)");
    add("coin", "public|private (sqkr)");
    add("clip", "on|off: clip displayed estimate to the simplex");
  }

  void apply(ExperimentConfig* cfg) const {
    for (const auto& [key, value] : kv) cfg->set(key, value);
  }
};

void print_summary(const ExperimentConfig& cfg, const EstimateReport& report) {
  std::printf(
      "%s/%s d=%u n=%llu eps=%g b=%d reps=%zu effective_n=%llu\n"
      "  l1    %.6g (stderr %.3g)\n"
      "  l2sq  %.6g (stderr %.3g)\n"
      "  linf  %.6g (stderr %.3g)\n"
      "  bits/client=%llu shared_bits/client=%llu encode=%.1fms decode=%.1fms\n",
      to_string(cfg.scheme), to_string(cfg.task), cfg.d,
      static_cast<unsigned long long>(cfg.n), cfg.eps, cfg.b,
      report.rows.size(), static_cast<unsigned long long>(report.effective_n),
      report.mean.l1, report.std_error.l1, report.mean.l2sq,
      report.std_error.l2sq, report.mean.linf, report.std_error.linf,
      static_cast<unsigned long long>(
          report.rows.empty() ? 0 : report.rows.front().payload_bits),
      static_cast<unsigned long long>(
          report.rows.empty() ? 0 : report.rows.front().shared_bits),
      report.mean_encode_ms, report.mean_decode_ms);
  if (cfg.clip_display && !report.last_estimate.empty()) {
    const std::vector<double> clipped =
        trilemma::clip_to_simplex(report.last_estimate);
    std::printf("  clipped estimate (last rep):");
    for (std::size_t i = 0; i < std::min<std::size_t>(clipped.size(), 16); ++i)
      std::printf(" %.4f", clipped[i]);
    if (clipped.size() > 16) std::printf(" ...");
    std::printf("\n");
  }
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally private, communication-constrained estimation simulator"};
  app.require_subcommand(1);

  // run <config-file> [flag overrides]
  std::string config_path;
  FlagOverrides run_flags;
  CLI::App* run = app.add_subcommand("run", "run one experiment configuration");
  run->add_option("config", config_path, "key=value config file")->required();
  run_flags.bind(run);

  // sweep --grid param=v1,v2 ... [base flags]
  std::vector<std::string> grid_specs;
  std::string sweep_config_path;
  FlagOverrides sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "cross-product over parameter grids");
  sweep->add_option("--config", sweep_config_path, "optional base config file");
  sweep->add_option("--grid", grid_specs, "param=v1,v2,... (repeatable)")
      ->required();
  sweep_flags.bind(sweep);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
      run_flags.apply(&cfg);
      const EstimateReport report = trilemma::run_experiment(cfg);
      print_summary(cfg, report);
      return 0;
    }

    ExperimentConfig base;
    if (!sweep_config_path.empty())
      base = ExperimentConfig::from_file(sweep_config_path);
    sweep_flags.apply(&base);

    std::vector<std::pair<std::string, std::vector<std::string>>> grids;
    for (const std::string& spec : grid_specs) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("--grid expects param=v1,v2,...");
      grids.emplace_back(spec.substr(0, eq), split_list(spec.substr(eq + 1)));
      if (grids.back().second.empty())
        throw std::invalid_argument("--grid has an empty value list");
    }

    std::vector<std::size_t> cursor(grids.size(), 0);
    while (true) {
      ExperimentConfig cfg = base;
      for (std::size_t g = 0; g < grids.size(); ++g)
        cfg.set(grids[g].first, grids[g].second[cursor[g]]);
      const EstimateReport report = trilemma::run_experiment(cfg);
      print_summary(cfg, report);

      std::size_t g = 0;
      for (; g < grids.size(); ++g) {
        if (++cursor[g] < grids[g].second.size()) break;
        cursor[g] = 0;
      }
      if (g == grids.size()) break;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
