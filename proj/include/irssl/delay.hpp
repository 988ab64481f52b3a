// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irssl/channel.hpp"
#include "irssl/config.hpp"
#include "irssl/types.hpp"

namespace irssl {

/// Static description of one device and its model.
///
/// Loads are cumulative: layer_loads[m-1] is the cycle count of layers 1..m.
/// layer_uplink_bits[m-1] is the activation size sent up when cutting after
/// layer m; raw_input_bits is the payload for cut 0 (nothing run locally).
struct UDProfile {
  double f_loc = 1.0;
  std::vector<double> layer_loads;
  std::vector<double> layer_uplink_bits;
  double raw_input_bits = 0.0;
  double d_dl_bits = 0.0;
  double p_ul = 0.0;

  int layers() const { return static_cast<int>(layer_loads.size()); }
  double load(int m) const;
  double uplink_bits(int m) const;
};

/// Device profiles with per-layer loads and local frequencies drawn
/// uniformly from the configured ranges.
std::vector<UDProfile> generate_profiles(const SystemConfig& config, std::uint64_t seed);

struct DelayBreakdown {
  double t_dl = 0;
  double t_ul = 0;
  double t_comp = 0;
  double t_total = 0;

  static DelayBreakdown of(double dl, double ul, double comp) {
    return {dl, ul, comp, dl + ul + comp};
  }
};

/// The five decision blocks. m is 1-based; alpha is 1 for local execution
/// and 0 when the digital twin runs the device-side layers.
struct SolutionState {
  VectorXi m;
  VectorXi alpha;
  VectorXr delta_f;
  VectorXc v;
  VectorXr p_ap;

  int users() const { return static_cast<int>(m.size()); }
};

double downlink_rate(double p_w, double gain, const SystemConfig& config);
double uplink_rate(double p_ul_w, double gain, const SystemConfig& config);

/// bits / rate, or +inf when the rate is zero.
double comm_delay(double bits, double rate_bps);

/// alpha*C/f + (1-alpha)*C/(f+delta_f) for the first m layers.
double compute_delay(const UDProfile& profile, int m, int alpha, double delta_f);

DelayBreakdown total_delay(const SystemConfig& config, const ChannelSet& ch,
                           const UDProfile& profile, const SolutionState& sol, int k);
DelayBreakdown total_delay(const SystemConfig& config, const LinkGains& gains,
                           const UDProfile& profile, const SolutionState& sol, int k);

std::vector<DelayBreakdown> all_delays(const SystemConfig& config, const LinkGains& gains,
                                       const std::vector<UDProfile>& profiles,
                                       const SolutionState& sol);

/// J split into its parts, J = sum_delay + lambda * loss_term.
struct ObjectiveParts {
  double j = 0;
  double sum_delay = 0;
  double loss_term = 0;
  double t_dl_sum = 0;
  double t_ul_sum = 0;
  double t_comp_sum = 0;
};

ObjectiveParts objective_parts(const SystemConfig& config, const LinkGains& gains,
                               const std::vector<UDProfile>& profiles, const SolutionState& sol);

double objective(const SystemConfig& config, const ChannelSet& ch,
                 const std::vector<UDProfile>& profiles, const SolutionState& sol);

/// One failed constraint. The id is the constraint's number in the problem
/// statement (19..27); 31 is the global DT frequency budget, 36 the rule that
/// local devices get no frequency offset, 10 a zero downlink rate.
struct Violation {
  int constraint = 0;
  int k = -1;  // -1 for system-wide constraints
  double residual = 0;
};

/// Which link-dependent checks apply (baselines that never use a link skip it).
struct AuditScope {
  bool downlink = true;
  bool uplink = true;
  bool compute_deadline = true;
};

std::vector<Violation> audit_constraints(const SystemConfig& config, const ChannelSet& ch,
                                         const std::vector<UDProfile>& profiles,
                                         const SolutionState& sol, AuditScope scope = {});

std::string describe(const Violation& v);

}  // namespace irssl
