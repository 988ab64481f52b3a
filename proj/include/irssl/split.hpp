// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "irssl/delay.hpp"

namespace irssl {

/// Mean of the per-device table lookups L(m_k). Throws DomainError for a cut
/// outside 1..M.
double surrogate_loss(const VectorXi& m, const std::vector<double>& loss_table);

/// Outcome of the per-device exhaustive search.
struct SplitChoice {
  int m = 1;
  int alpha = 1;
  double metric = kInf;  // T_k^total(m) + (lambda/K) L(m)
};

/// Exhaustive search over m = 1..M for device k with every other block of
/// sol held fixed. The activation rule is re-applied at each candidate and
/// the current delta_f[k] prices the twin branch. Ties go to the smaller m.
SplitChoice best_split(const SystemConfig& config, const LinkGains& gains,
                       const UDProfile& profile, const SolutionState& sol, int k,
                       const std::vector<double>& loss_table);

/// Same search with an explicit offset for the twin-executed candidates.
SplitChoice best_split(const SystemConfig& config, const LinkGains& gains,
                       const UDProfile& profile, const SolutionState& sol, int k,
                       const std::vector<double>& loss_table, double twin_offset);

VectorXi select_split_points(const SystemConfig& config, const LinkGains& gains,
                             const std::vector<UDProfile>& profiles, const SolutionState& sol);

/// Sequential variant: device k prices a twin at an equal share of the AP
/// budget among the twins already chosen plus itself. Lets devices that
/// currently run locally move onto a twin.
VectorXi select_split_points_shared(const SystemConfig& config, const LinkGains& gains,
                                    const std::vector<UDProfile>& profiles,
                                    const SolutionState& sol);

VectorXi select_split_points(const SystemConfig& config, const ChannelSet& ch,
                             const std::vector<UDProfile>& profiles, const SolutionState& sol);

}  // namespace irssl
