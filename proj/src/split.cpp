// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#include "irssl/split.hpp"

#include "irssl/dt.hpp"

namespace irssl {

double surrogate_loss(const VectorXi& m, const std::vector<double>& loss_table) {
  if (m.size() == 0) return 0.0;
  const int layers = static_cast<int>(loss_table.size());
  double acc = 0;
  for (int k = 0; k < m.size(); ++k) {
    if (m(k) < 1 || m(k) > layers) throw DomainError("surrogate_loss: cut layer out of range");
    acc += loss_table[static_cast<std::size_t>(m(k) - 1)];
  }
  return acc / static_cast<double>(m.size());
}

SplitChoice best_split(const SystemConfig& config, const LinkGains& gains,
                       const UDProfile& profile, const SolutionState& sol, int k,
                       const std::vector<double>& loss_table) {
  return best_split(config, gains, profile, sol, k, loss_table, sol.delta_f(k));
}

SplitChoice best_split(const SystemConfig& config, const LinkGains& gains,
                       const UDProfile& profile, const SolutionState& sol, int k,
                       const std::vector<double>& loss_table, double twin_offset) {
  // The loss enters J averaged over users, so device k sees weight lambda/K.
  const double loss_weight = config.lambda_weight / static_cast<double>(sol.users());
  const double t_dl = comm_delay(profile.d_dl_bits, downlink_rate(sol.p_ap(k), gains.downlink(k), config));
  const double r_ul = uplink_rate(profile.p_ul, gains.uplink(k), config);

  SplitChoice best;
  best.m = 1;
  best.alpha = activation_rule(profile, 1, config.t_max_s);
  for (int m = 1; m <= profile.layers(); ++m) {
    const int alpha = activation_rule(profile, m, config.t_max_s);
    const double t_comp = compute_delay(profile, m, alpha, alpha == 1 ? 0.0 : twin_offset);
    const double t_total = t_dl + comm_delay(profile.uplink_bits(m), r_ul) + t_comp;
    const double metric = t_total + loss_weight * loss_table[static_cast<std::size_t>(m - 1)];
    if (metric < best.metric) {
      best = {m, alpha, metric};
    }
  }
  return best;
}

VectorXi select_split_points(const SystemConfig& config, const LinkGains& gains,
                             const std::vector<UDProfile>& profiles, const SolutionState& sol) {
  const auto table = config.loss.table(config.m_layers);
  VectorXi m(sol.users());
  for (int k = 0; k < sol.users(); ++k)
    m(k) = best_split(config, gains, profiles[static_cast<std::size_t>(k)], sol, k, table).m;
  return m;
}

VectorXi select_split_points_shared(const SystemConfig& config, const LinkGains& gains,
                                    const std::vector<UDProfile>& profiles,
                                    const SolutionState& sol) {
  const auto table = config.loss.table(config.m_layers);
  int twins = static_cast<int>((sol.alpha.array() == 0).count());
  VectorXi m(sol.users());
  for (int k = 0; k < sol.users(); ++k) {
    if (sol.alpha(k) == 0) --twins;
    const double share = config.delta_f_max_hz / (twins + 1);
    const auto choice = best_split(config, gains, profiles[static_cast<std::size_t>(k)], sol, k, table, share);
    m(k) = choice.m;
    if (choice.alpha == 0) ++twins;
  }
  return m;
}

VectorXi select_split_points(const SystemConfig& config, const ChannelSet& ch,
                             const std::vector<UDProfile>& profiles, const SolutionState& sol) {
  return select_split_points(config, link_gains(ch, sol.v), profiles, sol);
}

}  // namespace irssl
