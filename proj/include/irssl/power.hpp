// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "irssl/config.hpp"
#include "irssl/delay.hpp"
#include "irssl/numerics.hpp"

namespace irssl {

/// Downlink power problem: minimize sum_k c_k / ln(1 + a_k p_k) subject to
/// sum p_k <= p_total and p_min_k <= p_k <= p_max.
struct PowerInstance {
  VectorXr a;      // gain / noise, 1/W
  VectorXr c;      // D_DL ln2 / B, s
  double p_total = 0;
  double p_max = 0;
  VectorXr p_min;  // optional per-user floor; empty means zero

  int users() const { return static_cast<int>(a.size()); }
  double floor(int k) const { return p_min.size() ? p_min(k) : 0.0; }
};

PowerInstance make_power_instance(const SystemConfig& config, const LinkGains& gains,
                                  const std::vector<UDProfile>& profiles);

/// Power meeting a rate floor: (2^(r/B) - 1) / a.
VectorXr min_rate_powers(const VectorXr& a, double r_min_bps, double bandwidth_hz);

/// Unconstrained stationary point for dual value nu:
/// p = expm1(2 W(z)) / a with z = sqrt(c a / nu) / 2.
double interior_power(const PowerInstance& inst, int k, double nu);

/// The stationarity residual c a / ((1 + a p) ln^2(1 + a p)).
double marginal_value(const PowerInstance& inst, int k, double p);

double downlink_delay_sum(const PowerInstance& inst, const VectorXr& p);

struct PowerAllocation {
  VectorXr p;
  double nu = 0;                 // 0 when every user sits at p_max
  std::vector<int> excluded;     // users with a_k == 0 (never served)
};

PowerAllocation allocate_power_detailed(const PowerInstance& inst,
                                        const BisectionSpec<double>& controls);

VectorXr allocate_power(const PowerInstance& inst, const BisectionSpec<double>& controls);

}  // namespace irssl
