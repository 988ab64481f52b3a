// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#include "irssl/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "irssl/dt.hpp"
#include "irssl/irs.hpp"
#include "irssl/power.hpp"
#include "irssl/split.hpp"

namespace irssl {

namespace {

IterationTrace trace_of(int iter, const ObjectiveParts& parts, int violations, double dtf) {
  IterationTrace tr;
  tr.iter = iter;
  tr.j_value = parts.j;
  tr.sum_delay = parts.sum_delay;
  tr.loss_term = parts.loss_term;
  tr.t_dl_sum = parts.t_dl_sum;
  tr.t_ul_sum = parts.t_ul_sum;
  tr.t_comp_sum = parts.t_comp_sum;
  tr.step_j.fill(parts.j);
  tr.violations = violations;
  tr.alpha_fraction_dt = dtf;
  return tr;
}

ObjectiveParts sum_parts(const SystemConfig& config, const std::vector<DelayBreakdown>& delays,
                         const VectorXi& m) {
  ObjectiveParts parts;
  for (const auto& d : delays) {
    parts.sum_delay += d.t_total;
    parts.t_dl_sum += d.t_dl;
    parts.t_ul_sum += d.t_ul;
    parts.t_comp_sum += d.t_comp;
  }
  parts.loss_term = surrogate_loss(m, config.loss.table(config.m_layers));
  parts.j = parts.sum_delay + config.lambda_weight * parts.loss_term;
  return parts;
}

// Closes a result whose delays were computed outside the split model.
void close_custom(RunResult& r, const SystemConfig& config, const ChannelSet& ch,
                  const std::vector<UDProfile>& profiles, AuditScope scope) {
  r.totals = sum_parts(config, r.delays, r.final.m);
  auto audit = audit_constraints(config, ch, profiles, r.final, scope);
  r.violations.insert(r.violations.end(), audit.begin(), audit.end());
  r.feasible = r.violations.empty();
  r.traces = {trace_of(1, r.totals, static_cast<int>(r.violations.size()),
                       dt_fraction(r.final.alpha))};
  r.iterations_used = 1;
  r.converged = true;
}

std::uint64_t phase_seed(std::uint64_t seed) { return seed * 0x9E3779B97F4A7C15ULL; }

// Memoized J over cut vectors.
class CutEvaluator {
 public:
  CutEvaluator(const SystemConfig& config, const ChannelSet& ch,
               const std::vector<UDProfile>& profiles, VectorXc v)
      : config_(config), ch_(ch), profiles_(profiles), v_(std::move(v)),
        controls_(bisection_controls(config, true)) {}

  double operator()(const VectorXi& m) {
    std::vector<int> key(m.data(), m.data() + m.size());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const double j = resolved_objective(config_, ch_, profiles_, m, v_, controls_);
    memo_.emplace(std::move(key), j);
    return j;
  }

  ObjectiveParts parts(const VectorXi& m) const {
    const auto s = resolve_blocks(config_, ch_, profiles_, m, v_, controls_);
    return objective_parts(config_, link_gains(ch_, v_), profiles_, s);
  }

  const VectorXc& v() const { return v_; }
  std::size_t evaluations() const { return memo_.size(); }

 private:
  const SystemConfig& config_;
  const ChannelSet& ch_;
  const std::vector<UDProfile>& profiles_;
  VectorXc v_;
  BisectionSpec<double> controls_;
  std::map<std::vector<int>, double> memo_;
};

RunResult resolved_result(const std::string& scheme, const SystemConfig& config,
                          const ChannelSet& ch, const std::vector<UDProfile>& profiles,
                          const VectorXi& m, const VectorXc& v) {
  RunResult r;
  r.scheme = scheme;
  r.final = resolve_blocks(config, ch, profiles, m, v, bisection_controls(config));
  return r;
}

// Minimizer of a piecewise-linear function through (j, y[j-1]), j = 1..M,
// plus rho/2 (x - c)^2 over [1, M].
double prox_piecewise(const std::vector<double>& y, double rho, double c) {
  const int n = static_cast<int>(y.size());
  if (n == 1) return 1.0;
  double best_x = 1.0;
  double best_val = kInf;
  for (int j = 1; j < n; ++j) {
    const double s = y[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(j - 1)];
    const double x = std::clamp(c - s / rho, double(j), double(j + 1));
    const double val = y[static_cast<std::size_t>(j - 1)] + s * (x - j) + 0.5 * rho * (x - c) * (x - c);
    if (val < best_val) {
      best_val = val;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace

double resolved_objective(const SystemConfig& config, const ChannelSet& ch,
                          const std::vector<UDProfile>& profiles, const VectorXi& m,
                          const VectorXc& v, const BisectionSpec<double>& controls) {
  const auto s = resolve_blocks(config, ch, profiles, m, v, controls);
  return objective_parts(config, link_gains(ch, v), profiles, s).j;
}

VectorXc baseline_phases(const SystemConfig& config, const ChannelSet& ch, std::uint64_t seed) {
  return optimize_phases(ch, config.solver.n_rand, config.solver.sdp_tol, phase_seed(seed),
                         VectorXc::Ones(ch.n_irs()), config.solver.sdp_max_iter)
      .v;
}

RunResult run_full_local(const SystemConfig& config, const ChannelSet& ch,
                         const std::vector<UDProfile>& profiles) {
  const int k_users = static_cast<int>(profiles.size());
  RunResult r;
  r.scheme = "full-local";
  auto& s = r.final;
  s.m = VectorXi::Constant(k_users, config.m_layers);
  s.alpha = VectorXi::Ones(k_users);
  s.delta_f = VectorXr::Zero(k_users);
  s.v = VectorXc::Ones(ch.n_irs());
  s.p_ap = ch.direct_link
               ? VectorXr::Constant(k_users, std::min(config.p_total_w / k_users, config.p_max_w))
               : VectorXr::Zero(k_users);
  for (int k = 0; k < k_users; ++k) {
    const auto& prof = profiles[static_cast<std::size_t>(k)];
    double dl = 0;
    if (ch.direct_link) {
      const double gain = ch.h_direct[static_cast<std::size_t>(k)].squaredNorm();
      dl = comm_delay(prof.d_dl_bits, downlink_rate(s.p_ap(k), gain, config));
    }
    r.delays.push_back(DelayBreakdown::of(dl, 0.0, compute_delay(prof, config.m_layers, 1, 0.0)));
  }
  close_custom(r, config, ch, profiles, AuditScope{false, false, true});
  return r;
}

RunResult run_full_offload(const SystemConfig& config, const ChannelSet& ch,
                           const std::vector<UDProfile>& profiles, std::uint64_t seed) {
  const int k_users = static_cast<int>(profiles.size());
  RunResult r;
  r.scheme = "full-offload";
  auto& s = r.final;
  s.m = VectorXi::Ones(k_users);
  s.alpha = VectorXi::Ones(k_users);
  s.delta_f = VectorXr::Zero(k_users);
  s.v = baseline_phases(config, ch, seed);
  const auto gains = link_gains(ch, s.v);

  auto inst = make_power_instance(config, gains, profiles);
  inst.p_min = min_rate_powers(inst.a, config.r_min_bps, config.bandwidth_hz);
  try {
    s.p_ap = allocate_power(inst, bisection_controls(config));
  } catch (const InfeasibleError&) {
    s.p_ap = inst.p_min.cwiseMin(config.p_max_w);
    const double scale = s.p_ap.sum() > config.p_total_w ? config.p_total_w / s.p_ap.sum() : 1.0;
    s.p_ap *= scale;
    r.violations.push_back({21, -1, inst.p_min.sum() - config.p_total_w});
  }

  for (int k = 0; k < k_users; ++k) {
    const auto& prof = profiles[static_cast<std::size_t>(k)];
    const double dl = comm_delay(prof.d_dl_bits, downlink_rate(s.p_ap(k), gains.downlink(k), config));
    const double ul = comm_delay(prof.uplink_bits(0), uplink_rate(prof.p_ul, gains.uplink(k), config));
    const double comp = std::isinf(config.f_ap_hz) ? 0.0 : prof.load(config.m_layers) / config.f_ap_hz;
    r.delays.push_back(DelayBreakdown::of(dl, ul, comp));
  }
  close_custom(r, config, ch, profiles, AuditScope{true, true, false});
  return r;
}

RunResult run_ga(const SystemConfig& config, const ChannelSet& ch,
                 const std::vector<UDProfile>& profiles, const GaParams& params,
                 std::uint64_t seed, const std::vector<VectorXi>& seeds) {
  if (params.population < 2 || params.tournament_size < 1 || params.crossover_rate < 0 ||
      params.crossover_rate > 1 || params.mutation_rate < 0 || params.mutation_rate > 1)
    throw DomainError("run_ga: invalid parameters");
  const int k_users = static_cast<int>(profiles.size());
  const int m_layers = config.m_layers;
  CutEvaluator fitness(config, ch, profiles, baseline_phases(config, ch, seed));

  auto finish = [&](const VectorXi& best, std::vector<IterationTrace> traces) {
    RunResult r = resolved_result("ga", config, ch, profiles, best, fitness.v());
    r.traces = std::move(traces);
    r.converged = true;
    finalize_result(r, config, ch, profiles);
    return r;
  };

  if (m_layers == 1) {
    const VectorXi only = VectorXi::Ones(k_users);
    return finish(only, {trace_of(1, fitness.parts(only), 0, 0.0)});
  }

  auto eng = make_engine(seed, Stream::kGa);
  std::uniform_int_distribution<int> gene(1, m_layers);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, params.population - 1);

  std::vector<VectorXi> pop;
  for (const auto& sd : seeds) {
    if (static_cast<int>(pop.size()) == params.population) break;
    if (sd.size() != k_users || sd.minCoeff() < 1 || sd.maxCoeff() > m_layers)
      throw ShapeError("run_ga: seed chromosome does not fit the scenario");
    pop.push_back(sd);
  }
  while (static_cast<int>(pop.size()) < params.population) {
    VectorXi c(k_users);
    for (int k = 0; k < k_users; ++k) c(k) = gene(eng);
    pop.push_back(std::move(c));
  }

  std::vector<double> fit(pop.size());
  VectorXi best;
  double best_j = kInf;
  std::vector<IterationTrace> traces;
  ObjectiveParts best_parts;

  auto score = [&](int iter) {
    bool improved = false;
    for (std::size_t i = 0; i < pop.size(); ++i) {
      fit[i] = fitness(pop[i]);
      if (fit[i] < best_j) {
        best_j = fit[i];
        best = pop[i];
        improved = true;
      }
    }
    if (improved || traces.empty()) best_parts = fitness.parts(best);
    traces.push_back(trace_of(iter, best_parts, 0, 0.0));
  };
  auto tournament = [&]() -> const VectorXi& {
    int w = pick(eng);
    for (int t = 1; t < params.tournament_size; ++t) {
      const int c = pick(eng);
      if (fit[static_cast<std::size_t>(c)] < fit[static_cast<std::size_t>(w)]) w = c;
    }
    return pop[static_cast<std::size_t>(w)];
  };

  score(1);
  for (int g = 1; g <= params.generations; ++g) {
    std::vector<VectorXi> next{best};
    while (static_cast<int>(next.size()) < params.population) {
      VectorXi child = tournament();
      const VectorXi& other = tournament();
      if (unit(eng) < params.crossover_rate)
        for (int k = 0; k < k_users; ++k)
          if (unit(eng) < 0.5) child(k) = other(k);
      for (int k = 0; k < k_users; ++k)
        if (unit(eng) < params.mutation_rate) child(k) = gene(eng);
      next.push_back(std::move(child));
    }
    pop = std::move(next);
    score(g + 1);
  }
  return finish(best, std::move(traces));
}

AdmmOutcome run_admm_detailed(const SystemConfig& config, const ChannelSet& ch,
                              const std::vector<UDProfile>& profiles, const AdmmParams& params,
                              std::uint64_t seed) {
  if (!(params.rho > 0)) throw DomainError("run_admm: rho must be positive");
  if (params.max_iter < 1) throw DomainError("run_admm: max_iter must be >= 1");
  const int k_users = static_cast<int>(profiles.size());
  const int m_layers = config.m_layers;

  // Relaxation uses the starting link: all-ones phases, equal power, no DT.
  const auto gains0 = link_gains(ch, VectorXc::Ones(ch.n_irs()));
  std::vector<std::vector<double>> delay_knots(static_cast<std::size_t>(k_users));
  for (int k = 0; k < k_users; ++k) {
    const auto& prof = profiles[static_cast<std::size_t>(k)];
    const double r_ul = std::max(uplink_rate(prof.p_ul, gains0.uplink(k), config), 1e-300);
    auto& y = delay_knots[static_cast<std::size_t>(k)];
    for (int m = 1; m <= m_layers; ++m) y.push_back(prof.uplink_bits(m) / r_ul + prof.load(m) / prof.f_loc);
  }
  const std::vector<double> loss_table = config.loss.table(m_layers);

  // Each device's subproblem is measured in units of its smallest slope of
  // delay plus loss, so one rho suits every device.
  std::vector<std::vector<double>> loss_knots(static_cast<std::size_t>(k_users));
  for (int k = 0; k < k_users; ++k) {
    auto& y = delay_knots[static_cast<std::size_t>(k)];
    auto& g = loss_knots[static_cast<std::size_t>(k)];
    for (double l : loss_table) g.push_back(l * config.lambda_weight / k_users);
    double max_slope = 0, unit = kInf;
    for (int j = 1; j < m_layers; ++j) {
      const auto i = static_cast<std::size_t>(j);
      const double s = std::abs(y[i] - y[i - 1] + g[i] - g[i - 1]);
      max_slope = std::max(max_slope, s);
      if (s > 0) unit = std::min(unit, s);
    }
    unit = std::max(unit, 1e-3 * max_slope);
    if (!(unit > 0) || !std::isfinite(unit)) continue;
    for (auto& v : y) v /= unit;
    for (auto& v : g) v /= unit;
  }

  CutEvaluator eval(config, ch, profiles, baseline_phases(config, ch, seed));
  auto round_cut = [&](const VectorXr& z) {
    VectorXi m(k_users);
    for (int k = 0; k < k_users; ++k)
      m(k) = std::clamp(static_cast<int>(std::lround(z(k))), 1, m_layers);
    return m;
  };

  const double rho = params.rho;
  VectorXr z = VectorXr::Constant(k_users, 0.5 * (1 + m_layers));
  VectorXr x = z, u = VectorXr::Zero(k_users);
  AdmmOutcome out;
  VectorXi best;
  double best_j = kInf;
  std::vector<IterationTrace> traces;

  for (int it = 1; it <= params.max_iter; ++it) {
    for (int k = 0; k < k_users; ++k)
      x(k) = prox_piecewise(delay_knots[static_cast<std::size_t>(k)], rho, z(k) - u(k));
    const VectorXr z_prev = z;
    for (int k = 0; k < k_users; ++k)
      z(k) = prox_piecewise(loss_knots[static_cast<std::size_t>(k)], rho, x(k) + u(k));
    u += x - z;

    out.primal_residual = (x - z).cwiseAbs().maxCoeff();
    out.dual_residual = rho * (z - z_prev).cwiseAbs().maxCoeff();
    out.iterations = it;

    const VectorXi m = round_cut(z);
    const double j = eval(m);
    if (j < best_j) {
      best_j = j;
      best = m;
    }
    traces.push_back(trace_of(it, eval.parts(m), 0, 0.0));
    if (out.primal_residual <= params.tol && out.dual_residual <= params.tol) {
      out.converged = true;
      break;
    }
  }

  const VectorXi final_m = out.converged ? round_cut(z) : best;
  out.result = resolved_result("admm", config, ch, profiles, final_m, eval.v());
  out.result.traces = std::move(traces);
  out.result.converged = out.converged;
  finalize_result(out.result, config, ch, profiles);
  return out;
}

RunResult run_admm(const SystemConfig& config, const ChannelSet& ch,
                   const std::vector<UDProfile>& profiles, double rho, std::uint64_t seed) {
  AdmmParams p = config.admm;
  p.rho = rho;
  return run_admm_detailed(config, ch, profiles, p, seed).result;
}

}  // namespace irssl
