// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "irssl/orchestrator.hpp"

namespace irssl {

enum ExitStatus : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitInfeasible = 2,
  kExitConfig = 3,
  kExitSolver = 4,
};

/// proposed, full-local, full-offload, ga, admm.
const std::vector<std::string>& scheme_names();
bool is_scheme(const std::string& name);

/// Runs one scheme on a prepared scenario. Throws RunAborted on solver failure.
RunResult run_scheme(const Scenario& scenario, const std::string& scheme, const RunOptions& opts);

std::string format_number(double x);  // 12 significant digits

std::string trace_csv(const RunResult& r);
std::string alpha_csv(const RunResult& r);
std::string summary_json(const RunResult& r, std::uint64_t seed, int status,
                         const std::string& message = "");

struct ExperimentOutcome {
  int status = kExitOk;
  RunResult result;
  std::string message;
};

/// Writes trace.csv, summary.json and alpha.csv under out_dir.
ExperimentOutcome run_experiment(const SystemConfig& config, const std::string& scheme,
                                 std::uint64_t seed, const std::filesystem::path& out_dir,
                                 const RunOptions& opts);

enum class SweepAxis { kUsers, kIrsElements, kTotalPower };

SweepAxis parse_axis(const std::string& name);
std::string axis_name(SweepAxis axis);
SystemConfig with_axis(SystemConfig config, SweepAxis axis, double value);

struct SweepRow {
  double value = 0;
  std::string scheme;
  std::uint64_t seed = 0;
  int status = kExitOk;
  double j_value = 0;
  double sum_delay = 0;
  double loss_term = 0;
  double mean_p_ap = 0;
  double dt_fraction = 0;
};

/// One row per (value, scheme, seed); also writes sweep_median.csv.
std::vector<SweepRow> run_sweep(const SystemConfig& config, SweepAxis axis,
                                const std::vector<double>& values,
                                const std::vector<std::string>& schemes,
                                const std::vector<std::uint64_t>& seeds,
                                const std::filesystem::path& out_dir, const RunOptions& opts);

double median(std::vector<double> xs);

}  // namespace irssl
