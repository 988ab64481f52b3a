// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#include "irssl/dt.hpp"

#include <cmath>

namespace irssl {

int activation_rule(const UDProfile& profile, int m, double t_max) {
  // Written as a delay comparison so the boundary case C/f == T_max stays local.
  return profile.load(m) / profile.f_loc <= t_max ? 1 : 0;
}

VectorXi decide_activation(const std::vector<UDProfile>& profiles, const VectorXi& m,
                           const DtBudget& budget) {
  VectorXi alpha(m.size());
  for (int k = 0; k < m.size(); ++k)
    alpha(k) = activation_rule(profiles[static_cast<std::size_t>(k)], m(k), budget.t_max);
  return alpha;
}

namespace {

double offset_at(const UDProfile& p, double load, double lambda) {
  return std::max(std::sqrt(load / lambda) - p.f_loc, 0.0);
}

}  // namespace

VectorXr allocate_frequency_offsets(const std::vector<UDProfile>& profiles, const VectorXi& m,
                                    const VectorXi& alpha, const DtBudget& budget,
                                    const BisectionSpec<double>& controls) {
  const int k_users = static_cast<int>(m.size());
  VectorXr df = VectorXr::Zero(k_users);

  std::vector<int> twins;
  std::vector<double> loads;
  double lambda_max = 0;
  for (int k = 0; k < k_users; ++k) {
    if (alpha(k) != 0) continue;
    const auto& p = profiles[static_cast<std::size_t>(k)];
    twins.push_back(k);
    loads.push_back(p.load(m(k)));
    lambda_max = std::max(lambda_max, loads.back() / (p.f_loc * p.f_loc));
  }
  if (twins.empty()) return df;

  auto fill = [&](double lambda) {
    double total = 0;
    for (std::size_t i = 0; i < twins.size(); ++i) {
      const int k = twins[i];
      df(k) = offset_at(profiles[static_cast<std::size_t>(k)], loads[i], lambda);
      total += df(k);
    }
    return total;
  };

  // Residual in budget units, decreasing in log(lambda).
  auto residual = [&](double log_lambda) { return fill(std::exp(log_lambda)) / budget.delta_f_max - 1.0; };

  BisectionSpec<double> spec = controls;
  spec.lo = std::log(1e-30);
  spec.hi = std::log(lambda_max);
  if (residual(spec.lo) <= 0) return df;  // budget cannot be exhausted; keep lambda_min

  double log_lambda = 0;
  try {
    log_lambda = bisect(residual, spec);
  } catch (const ConvergenceError& e) {
    fill(std::exp(e.best_iterate()));
    throw;
  }
  double total = fill(std::exp(log_lambda));
  // Land on the feasible side of the budget.
  if (total > budget.delta_f_max) {
    const double shrink = budget.delta_f_max / total;
    for (int k : twins) df(k) *= shrink;
  }
  return df;
}

double twin_delay_sum(const std::vector<UDProfile>& profiles, const VectorXi& m,
                      const VectorXi& alpha, const VectorXr& delta_f) {
  double acc = 0;
  for (int k = 0; k < m.size(); ++k)
    if (alpha(k) == 0) {
      const auto& p = profiles[static_cast<std::size_t>(k)];
      acc += p.load(m(k)) / (p.f_loc + delta_f(k));
    }
  return acc;
}

}  // namespace irssl
