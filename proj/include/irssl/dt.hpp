// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "irssl/config.hpp"
#include "irssl/delay.hpp"
#include "irssl/numerics.hpp"

namespace irssl {

struct DtBudget {
  double delta_f_max = 0;  // total AP frequency budget, Hz
  double t_max = 0;        // local-execution deadline, s

  static DtBudget from(const SystemConfig& config) {
    return {config.delta_f_max_hz, config.t_max_s};
  }
};

/// 1 when the device meets the deadline on its own (f_loc >= C^(m)/t_max).
int activation_rule(const UDProfile& profile, int m, double t_max);

VectorXi decide_activation(const std::vector<UDProfile>& profiles, const VectorXi& m,
                           const DtBudget& budget);

/// Frequency offsets minimizing sum (1-alpha_k) C_k/(f_k+df_k) under
/// sum (1-alpha_k) df_k <= delta_f_max.
///
/// Closed form df_k = max(sqrt(C_k/lambda) - f_k, 0) with the multiplier
/// found by bisection on log(lambda). Only the tolerances and max_iter of
/// `controls` are used; the bracket is derived from the instance.
VectorXr allocate_frequency_offsets(const std::vector<UDProfile>& profiles, const VectorXi& m,
                                    const VectorXi& alpha, const DtBudget& budget,
                                    const BisectionSpec<double>& controls);

/// sum over twin-assisted devices of C/(f + df).
double twin_delay_sum(const std::vector<UDProfile>& profiles, const VectorXi& m,
                      const VectorXi& alpha, const VectorXr& delta_f);

}  // namespace irssl
