// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#include "irssl/delay.hpp"

#include <cmath>
#include <sstream>

#include "irssl/numerics.hpp"
#include "irssl/split.hpp"

namespace irssl {

double UDProfile::load(int m) const {
  if (m < 1 || m > layers()) throw DomainError("UDProfile::load: cut layer out of range");
  return layer_loads[static_cast<std::size_t>(m - 1)];
}

double UDProfile::uplink_bits(int m) const {
  if (m == 0) return raw_input_bits;
  if (m < 1 || m > static_cast<int>(layer_uplink_bits.size()))
    throw DomainError("UDProfile::uplink_bits: cut layer out of range");
  return layer_uplink_bits[static_cast<std::size_t>(m - 1)];
}

std::vector<UDProfile> generate_profiles(const SystemConfig& config, std::uint64_t seed) {
  const auto& pp = config.profile;
  const auto& pay = config.payload;
  auto eng = make_engine(seed, Stream::kProfiles);
  std::uniform_real_distribution<double> freq(pp.f_loc_min, pp.f_loc_max);
  std::uniform_real_distribution<double> layer(pp.layer_load_min, pp.layer_load_max);

  std::vector<double> ul(static_cast<std::size_t>(config.m_layers));
  for (int m = 1; m <= config.m_layers; ++m)
    ul[static_cast<std::size_t>(m - 1)] = pay.bits_per_element * pay.width0 * std::pow(pay.width_decay, m);
  const double raw = pay.raw_input_bits > 0 ? pay.raw_input_bits : pay.bits_per_element * pay.width0;

  std::vector<UDProfile> out;
  out.reserve(static_cast<std::size_t>(config.k_users));
  for (int k = 0; k < config.k_users; ++k) {
    UDProfile p;
    p.f_loc = freq(eng);
    p.layer_loads.resize(static_cast<std::size_t>(config.m_layers));
    double acc = 0;
    for (auto& c : p.layer_loads) {
      acc += layer(eng);
      c = acc;
    }
    p.layer_uplink_bits = ul;
    p.raw_input_bits = raw;
    p.d_dl_bits = pay.dl_bits;
    p.p_ul = config.p_ul_w;
    out.push_back(std::move(p));
  }
  return out;
}

double downlink_rate(double p_w, double gain, const SystemConfig& config) {
  return config.bandwidth_hz * std::log2(1.0 + p_w * gain / config.noise_w);
}

double uplink_rate(double p_ul_w, double gain, const SystemConfig& config) {
  return config.bandwidth_hz * std::log2(1.0 + p_ul_w * gain / config.noise_w);
}

double comm_delay(double bits, double rate_bps) {
  if (bits == 0) return 0.0;
  if (!(rate_bps > 0)) return kInf;
  return bits / rate_bps;
}

double compute_delay(const UDProfile& profile, int m, int alpha, double delta_f) {
  const double c = profile.load(m);
  if (alpha == 1) return c / profile.f_loc;
  return c / (profile.f_loc + delta_f);
}

DelayBreakdown total_delay(const SystemConfig& config, const LinkGains& gains,
                           const UDProfile& profile, const SolutionState& sol, int k) {
  const double r_dl = downlink_rate(sol.p_ap(k), gains.downlink(k), config);
  const double r_ul = uplink_rate(profile.p_ul, gains.uplink(k), config);
  const int m = sol.m(k);
  return DelayBreakdown::of(comm_delay(profile.d_dl_bits, r_dl),
                            comm_delay(profile.uplink_bits(m), r_ul),
                            compute_delay(profile, m, sol.alpha(k), sol.delta_f(k)));
}

DelayBreakdown total_delay(const SystemConfig& config, const ChannelSet& ch,
                           const UDProfile& profile, const SolutionState& sol, int k) {
  LinkGains g;
  g.downlink = VectorXr::Zero(ch.users());
  g.uplink = VectorXr::Zero(ch.users());
  g.downlink(k) = effective_downlink_gain(ch, k, sol.v);
  g.uplink(k) = effective_uplink_gain(ch, k, sol.v);
  return total_delay(config, g, profile, sol, k);
}

std::vector<DelayBreakdown> all_delays(const SystemConfig& config, const LinkGains& gains,
                                       const std::vector<UDProfile>& profiles,
                                       const SolutionState& sol) {
  std::vector<DelayBreakdown> out;
  out.reserve(profiles.size());
  for (int k = 0; k < sol.users(); ++k)
    out.push_back(total_delay(config, gains, profiles[static_cast<std::size_t>(k)], sol, k));
  return out;
}

ObjectiveParts objective_parts(const SystemConfig& config, const LinkGains& gains,
                               const std::vector<UDProfile>& profiles, const SolutionState& sol) {
  ObjectiveParts parts;
  for (const auto& d : all_delays(config, gains, profiles, sol)) {
    parts.sum_delay += d.t_total;
    parts.t_dl_sum += d.t_dl;
    parts.t_ul_sum += d.t_ul;
    parts.t_comp_sum += d.t_comp;
  }
  parts.loss_term = surrogate_loss(sol.m, config.loss.table(config.m_layers));
  parts.j = parts.sum_delay + config.lambda_weight * parts.loss_term;
  return parts;
}

double objective(const SystemConfig& config, const ChannelSet& ch,
                 const std::vector<UDProfile>& profiles, const SolutionState& sol) {
  return objective_parts(config, link_gains(ch, sol.v), profiles, sol).j;
}

std::vector<Violation> audit_constraints(const SystemConfig& config, const ChannelSet& ch,
                                         const std::vector<UDProfile>& profiles,
                                         const SolutionState& sol, AuditScope scope) {
  std::vector<Violation> out;
  const int k_users = sol.users();
  const double rel = 1e-9;
  auto add = [&](int id, int k, double residual) { out.push_back({id, k, residual}); };

  const bool shapes_ok = sol.alpha.size() == k_users && sol.delta_f.size() == k_users &&
                         sol.p_ap.size() == k_users && sol.v.size() == ch.n_irs() &&
                         static_cast<int>(profiles.size()) == k_users && ch.users() == k_users;
  if (!shapes_ok) throw ShapeError("audit_constraints: solution does not match the scenario");

  for (int k = 0; k < k_users; ++k) {
    const int m = sol.m(k);
    if (m < 1 || m > config.m_layers) add(19, k, m < 1 ? 1.0 - m : double(m - config.m_layers));
    const int a = sol.alpha(k);
    if (a != 0 && a != 1) add(20, k, std::abs(double(a)));
  }

  const double p_sum = sol.p_ap.sum();
  if (p_sum > config.p_total_w * (1 + rel)) add(21, -1, p_sum - config.p_total_w);
  for (int k = 0; k < k_users; ++k) {
    const double p = sol.p_ap(k);
    if (p < 0) add(22, k, -p);
    else if (p > config.p_max_w * (1 + rel)) add(22, k, p - config.p_max_w);
  }

  double df_sum = 0;
  for (int k = 0; k < k_users; ++k) {
    const double df = sol.delta_f(k);
    if (df < 0) add(23, k, -df);
    else if (df > config.delta_f_max_hz * (1 + rel)) add(23, k, df - config.delta_f_max_hz);
    if (sol.alpha(k) == 1 && df != 0) add(36, k, df);
    if (sol.alpha(k) == 0) df_sum += df;
  }
  if (df_sum > config.delta_f_max_hz * (1 + 1e-6)) add(31, -1, df_sum - config.delta_f_max_hz);

  for (int i = 0; i < sol.v.size(); ++i) {
    const auto vi = sol.v(i);
    if (!std::isfinite(vi.real()) || !std::isfinite(vi.imag())) add(24, i, kInf);
    const double dev = std::abs(std::abs(vi) - 1.0);
    if (!(dev <= tol::kUnitModulus)) add(27, i, dev);
  }
  const bool v_ok = is_unit_modulus(sol.v);

  for (int k = 0; k < k_users; ++k) {
    const auto& prof = profiles[static_cast<std::size_t>(k)];
    const int m = sol.m(k);
    if (v_ok && scope.uplink) {
      const double r_ul = uplink_rate(prof.p_ul, effective_uplink_gain(ch, k, sol.v), config);
      if (r_ul < config.r_min_bps * (1 - rel)) add(25, k, config.r_min_bps - r_ul);
    }
    if (v_ok && scope.downlink) {
      const double r_dl = downlink_rate(sol.p_ap(k), effective_downlink_gain(ch, k, sol.v), config);
      if (!(r_dl > 0)) add(10, k, kInf);
    }
    if (scope.compute_deadline && m >= 1 && m <= config.m_layers &&
        (sol.alpha(k) == 0 || sol.alpha(k) == 1)) {
      const double t = compute_delay(prof, m, sol.alpha(k), sol.delta_f(k));
      if (t > config.t_max_s * (1 + rel)) add(26, k, t - config.t_max_s);
    }
  }
  return out;
}

std::string describe(const Violation& v) {
  std::ostringstream s;
  s << "constraint " << v.constraint;
  if (v.k >= 0) s << " (index " << v.k << ")";
  s << " residual " << v.residual;
  return s.str();
}

}  // namespace irssl
