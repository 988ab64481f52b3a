// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "irssl/channel.hpp"
#include "irssl/config.hpp"
#include "irssl/delay.hpp"
#include "irssl/numerics.hpp"

namespace irssl {

/// Everything a run needs besides the decision variables.
struct Scenario {
  SystemConfig config;
  Geometry geometry;
  ChannelSet channels;
  std::vector<UDProfile> profiles;
  std::uint64_t seed = 0;
};

/// Geometry, device profiles and channels for one seed. Each draws from its
/// own stream, so changing n_irs leaves the device profiles untouched.
Scenario make_scenario(const SystemConfig& config, std::uint64_t seed);

struct IterationTrace {
  int iter = 0;
  double j_value = 0;
  double sum_delay = 0;
  double loss_term = 0;
  double t_dl_sum = 0;
  double t_ul_sum = 0;
  double t_comp_sum = 0;
  std::array<double, 5> per_step_ms{};
  std::array<double, 5> step_j{};  // J after each block update
  int violations = 0;
  double alpha_fraction_dt = 0;
};

struct RunResult {
  std::string scheme;
  SolutionState final;
  std::vector<IterationTrace> traces;
  bool converged = false;
  int iterations_used = 0;
  bool feasible = true;
  std::vector<Violation> violations;
  std::vector<DelayBreakdown> delays;  // per device at the final state
  ObjectiveParts totals;
};

/// Thrown when a block solver fails mid-run; carries the trace so far.
class RunAborted : public Error {
 public:
  RunAborted(const std::string& what, RunResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const RunResult& partial() const noexcept { return partial_; }

 private:
  RunResult partial_;
};

struct RunOptions {
  int max_iter = 25;
  double eps_conv = 1e-4;
  bool record_timing = false;
  std::ostream* log = nullptr;  // per-step J when set
};

/// Bisection tolerances from the config; `coarse` loosens them for inner
/// evaluations of the search baselines.
BisectionSpec<double> bisection_controls(const SystemConfig& config, bool coarse = false);

/// Random cuts, activation by rule, zero offsets, all-ones phases and an
/// equal power split.
SolutionState initialize(const SystemConfig& config, const ChannelSet& ch,
                         const std::vector<UDProfile>& profiles, std::uint64_t seed);

/// Alternating optimization over the five blocks until the relative change in
/// J drops below eps_conv or max_iter passes are done.
RunResult run(const SystemConfig& config, const ChannelSet& ch,
              const std::vector<UDProfile>& profiles, std::uint64_t seed, const RunOptions& opts);

RunResult run(const SystemConfig& config, const ChannelSet& ch,
              const std::vector<UDProfile>& profiles, std::uint64_t seed, int max_iter,
              double eps_conv);

/// Fill in final-state bookkeeping (delays, totals, audit) of a result.
void finalize_result(RunResult& result, const SystemConfig& config, const ChannelSet& ch,
                     const std::vector<UDProfile>& profiles, AuditScope scope = {});

/// alpha from the rule, offsets, and power for a given cut vector and phase
/// vector: the non-search blocks exactly as the alternating scheme computes them.
SolutionState resolve_blocks(const SystemConfig& config, const ChannelSet& ch,
                             const std::vector<UDProfile>& profiles, const VectorXi& m,
                             const VectorXc& v, const BisectionSpec<double>& controls);

double dt_fraction(const VectorXi& alpha);

}  // namespace irssl
