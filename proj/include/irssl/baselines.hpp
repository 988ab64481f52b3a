// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "irssl/orchestrator.hpp"

namespace irssl {

/// Every device runs the whole network; no IRS, no AP power. With the
/// direct link enabled the downlink payload still travels over it.
RunResult run_full_local(const SystemConfig& config, const ChannelSet& ch,
                         const std::vector<UDProfile>& profiles);

/// Raw input goes up through the IRS, the AP runs every layer at f_ap_hz.
/// Power keeps each device at the minimum rate; an unmeetable floor yields
/// an infeasible result rather than an exception.
RunResult run_full_offload(const SystemConfig& config, const ChannelSet& ch,
                           const std::vector<UDProfile>& profiles, std::uint64_t seed = 0);

/// Genetic search over cut vectors. Fitness is J with the remaining blocks
/// resolved as in the alternating scheme. `seeds` are injected into the
/// initial population.
RunResult run_ga(const SystemConfig& config, const ChannelSet& ch,
                 const std::vector<UDProfile>& profiles, const GaParams& params,
                 std::uint64_t seed, const std::vector<VectorXi>& seeds = {});

struct AdmmOutcome {
  RunResult result;
  double primal_residual = 0;
  double dual_residual = 0;
  int iterations = 0;
  bool converged = false;
};

/// Consensus ADMM on the continuous relaxation of the cut layers, then
/// rounding and one resolution of the remaining blocks.
AdmmOutcome run_admm_detailed(const SystemConfig& config, const ChannelSet& ch,
                              const std::vector<UDProfile>& profiles, const AdmmParams& params,
                              std::uint64_t seed);

RunResult run_admm(const SystemConfig& config, const ChannelSet& ch,
                   const std::vector<UDProfile>& profiles, double rho, std::uint64_t seed);

/// J of a cut vector with every other block resolved. Shared by the search
/// baselines and their oracles.
double resolved_objective(const SystemConfig& config, const ChannelSet& ch,
                          const std::vector<UDProfile>& profiles, const VectorXi& m,
                          const VectorXc& v, const BisectionSpec<double>& controls);

/// Phase vector the search baselines use: SDR from the all-ones start.
VectorXc baseline_phases(const SystemConfig& config, const ChannelSet& ch, std::uint64_t seed);

}  // namespace irssl
