// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#include "irssl/power.hpp"

#include <cmath>

namespace irssl {

PowerInstance make_power_instance(const SystemConfig& config, const LinkGains& gains,
                                  const std::vector<UDProfile>& profiles) {
  PowerInstance inst;
  const int k_users = static_cast<int>(gains.downlink.size());
  inst.a = gains.downlink / config.noise_w;
  inst.c.resize(k_users);
  for (int k = 0; k < k_users; ++k)
    inst.c(k) = profiles[static_cast<std::size_t>(k)].d_dl_bits * std::log(2.0) / config.bandwidth_hz;
  inst.p_total = config.p_total_w;
  inst.p_max = config.p_max_w;
  return inst;
}

VectorXr min_rate_powers(const VectorXr& a, double r_min_bps, double bandwidth_hz) {
  VectorXr out(a.size());
  const double snr = std::expm1(r_min_bps / bandwidth_hz * std::log(2.0));
  for (int k = 0; k < a.size(); ++k) out(k) = a(k) > 0 ? snr / a(k) : kInf;
  return out;
}

double interior_power(const PowerInstance& inst, int k, double nu) {
  if (!(nu > 0)) throw DomainError("interior_power: nu must be > 0");
  const double a = inst.a(k);
  const double z = 0.5 * std::sqrt(inst.c(k) * a / nu);
  // (z/W(z))^2 - 1 == e^{2W(z)} - 1, computed without cancellation.
  return std::expm1(2.0 * lambert_w0(z)) / a;
}

double marginal_value(const PowerInstance& inst, int k, double p) {
  const double a = inst.a(k);
  const double t = std::log1p(a * p);
  return inst.c(k) * a / ((1.0 + a * p) * t * t);
}

double downlink_delay_sum(const PowerInstance& inst, const VectorXr& p) {
  double acc = 0;
  for (int k = 0; k < inst.users(); ++k) {
    const double t = std::log1p(inst.a(k) * p(k));
    acc += t > 0 ? inst.c(k) / t : kInf;
  }
  return acc;
}

PowerAllocation allocate_power_detailed(const PowerInstance& inst,
                                        const BisectionSpec<double>& controls) {
  const int k_users = inst.users();
  if (inst.c.size() != k_users || (inst.p_min.size() && inst.p_min.size() != k_users))
    throw ShapeError("allocate_power: inconsistent instance sizes");
  if (!(inst.p_total > 0) || !(inst.p_max > 0)) throw DomainError("allocate_power: budgets must be > 0");

  PowerAllocation out;
  out.p = VectorXr::Zero(k_users);
  std::vector<int> active;
  double floor_sum = 0;
  for (int k = 0; k < k_users; ++k) {
    if (!(inst.a(k) > 0) || !std::isfinite(inst.a(k))) {
      out.excluded.push_back(k);
      continue;
    }
    if (!(inst.c(k) > 0)) throw DomainError("allocate_power: c_k must be > 0");
    if (inst.floor(k) > inst.p_max)
      throw InfeasibleError("allocate_power: rate floor exceeds p_max for user " + std::to_string(k));
    active.push_back(k);
    floor_sum += inst.floor(k);
  }
  if (active.empty()) return out;
  if (floor_sum > inst.p_total)
    throw InfeasibleError("allocate_power: rate floors exceed the power budget");

  const double cap_sum = inst.p_max * static_cast<double>(active.size());
  if (cap_sum <= inst.p_total) {
    for (int k : active) out.p(k) = inst.p_max;
    return out;
  }
  const double target = inst.p_total;
  if (floor_sum >= target) {
    for (int k : active) out.p(k) = inst.floor(k);
    return out;
  }

  auto project = [&](double nu) {
    double total = 0;
    for (int k : active) {
      const double p = std::clamp(interior_power(inst, k, nu), inst.floor(k), inst.p_max);
      out.p(k) = p;
      total += p;
    }
    return total;
  };

  const double p_small = 1e-12 * inst.p_total;
  double nu_hi = 0;
  double nu_lo = kInf;
  for (int k : active) {
    nu_hi = std::max(nu_hi, marginal_value(inst, k, p_small));
    nu_lo = std::min(nu_lo, marginal_value(inst, k, inst.p_max));
  }

  BisectionSpec<double> spec = controls;
  spec.lo = std::log(nu_lo) - 1.0;
  spec.hi = std::log(nu_hi) + 1.0;
  auto residual = [&](double log_nu) { return project(std::exp(log_nu)) / target - 1.0; };

  double log_nu = 0;
  try {
    log_nu = bisect(residual, spec);
  } catch (const ConvergenceError& e) {
    out.nu = std::exp(e.best_iterate());
    project(out.nu);
    throw;
  }
  out.nu = std::exp(log_nu);
  const double total = project(out.nu);
  if (total > target) out.p *= target / total;
  return out;
}

VectorXr allocate_power(const PowerInstance& inst, const BisectionSpec<double>& controls) {
  return allocate_power_detailed(inst, controls).p;
}

}  // namespace irssl
