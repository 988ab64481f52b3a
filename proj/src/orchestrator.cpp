// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#include "irssl/orchestrator.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include "irssl/dt.hpp"
#include "irssl/irs.hpp"
#include "irssl/power.hpp"
#include "irssl/split.hpp"

namespace irssl {

Scenario make_scenario(const SystemConfig& config, std::uint64_t seed) {
  config.validate();
  Scenario s;
  s.config = config;
  s.seed = seed;
  s.geometry = make_geometry(config, seed);
  s.profiles = generate_profiles(config, seed);
  s.channels = generate_channels(config, s.geometry, seed);
  return s;
}

BisectionSpec<double> bisection_controls(const SystemConfig& config, bool coarse) {
  BisectionSpec<double> spec;
  spec.tol_abs = coarse ? std::max(config.solver.bisect_tol_rel, 1e-9) : config.solver.bisect_tol_rel;
  spec.tol_rel = 0;
  spec.max_iter = config.solver.bisect_max_iter;
  return spec;
}

double dt_fraction(const VectorXi& alpha) {
  if (alpha.size() == 0) return 0.0;
  return static_cast<double>((alpha.array() == 0).count()) / static_cast<double>(alpha.size());
}

SolutionState initialize(const SystemConfig& config, const ChannelSet& ch,
                         const std::vector<UDProfile>& profiles, std::uint64_t seed) {
  const int k_users = static_cast<int>(profiles.size());
  auto eng = make_engine(seed, Stream::kInit);
  std::uniform_int_distribution<int> cut(1, config.m_layers);
  SolutionState s;
  s.m.resize(k_users);
  for (int k = 0; k < k_users; ++k) s.m(k) = cut(eng);
  s.alpha = decide_activation(profiles, s.m, DtBudget::from(config));
  s.delta_f = VectorXr::Zero(k_users);
  s.v = VectorXc::Ones(ch.n_irs());
  s.p_ap = VectorXr::Constant(k_users, std::min(config.p_total_w / k_users, config.p_max_w));
  return s;
}

SolutionState resolve_blocks(const SystemConfig& config, const ChannelSet& ch,
                             const std::vector<UDProfile>& profiles, const VectorXi& m,
                             const VectorXc& v, const BisectionSpec<double>& controls) {
  const auto budget = DtBudget::from(config);
  SolutionState s;
  s.m = m;
  s.alpha = decide_activation(profiles, m, budget);
  s.delta_f = allocate_frequency_offsets(profiles, m, s.alpha, budget, controls);
  s.v = v;
  const auto gains = link_gains(ch, v);
  s.p_ap = allocate_power(make_power_instance(config, gains, profiles), controls);
  return s;
}

void finalize_result(RunResult& result, const SystemConfig& config, const ChannelSet& ch,
                     const std::vector<UDProfile>& profiles, AuditScope scope) {
  const auto gains = link_gains(ch, result.final.v);
  result.delays = all_delays(config, gains, profiles, result.final);
  result.totals = objective_parts(config, gains, profiles, result.final);
  result.violations = audit_constraints(config, ch, profiles, result.final, scope);
  result.feasible = result.violations.empty();
  result.iterations_used = static_cast<int>(result.traces.size());
}

namespace {

class StepTimer {
 public:
  explicit StepTimer(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
    return enabled_ ? ms : 0.0;
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

std::uint64_t irs_seed(std::uint64_t seed, int iter) {
  return seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(iter);
}

}  // namespace

RunResult run(const SystemConfig& config, const ChannelSet& ch,
              const std::vector<UDProfile>& profiles, std::uint64_t seed, const RunOptions& opts) {
  if (opts.max_iter < 1) throw DomainError("run: max_iter must be >= 1");
  const auto budget = DtBudget::from(config);
  const auto controls = bisection_controls(config);

  RunResult result;
  result.scheme = "proposed";
  SolutionState sol = initialize(config, ch, profiles, seed);
  LinkGains gains = link_gains(ch, sol.v);
  auto eval = [&](const SolutionState& s, const LinkGains& g) {
    return objective_parts(config, g, profiles, s).j;
  };
  double j_prev = eval(sol, gains);

  try {
    for (int t = 1; t <= opts.max_iter; ++t) {
      IterationTrace tr;
      tr.iter = t;
      StepTimer timer(opts.record_timing);

      // Step 1: per-device exhaustive cut search.
      const SolutionState before = sol;
      sol.m = select_split_points(config, gains, profiles, sol);
      tr.per_step_ms[0] = timer.lap();

      // Step 2: activation rule; local devices release their offsets.
      sol.alpha = decide_activation(profiles, sol.m, budget);
      for (int k = 0; k < sol.users(); ++k)
        if (sol.alpha(k) == 1) sol.delta_f(k) = 0.0;
      double j_cur = eval(sol, gains);
      tr.step_j[0] = tr.step_j[1] = j_cur;
      tr.per_step_ms[1] = timer.lap();

      // Step 3: offsets under the AP frequency budget.
      {
        SolutionState cand = sol;
        cand.delta_f = allocate_frequency_offsets(profiles, sol.m, sol.alpha, budget, controls);
        const double j_cand = eval(cand, gains);
        if (j_cand <= j_cur) {
          sol = std::move(cand);
          j_cur = j_cand;
        }
      }
      tr.step_j[2] = j_cur;

      // Steps 1-3 again with twins priced at a budget share, so that local
      // devices can discover a twin. Kept only if strictly better.
      {
        SolutionState cand = before;
        cand.m = select_split_points_shared(config, gains, profiles, before);
        cand.alpha = decide_activation(profiles, cand.m, budget);
        cand.delta_f = allocate_frequency_offsets(profiles, cand.m, cand.alpha, budget, controls);
        const double j_cand = eval(cand, gains);
        if (j_cand < j_cur) {
          sol = std::move(cand);
          j_cur = j_cand;
          tr.step_j[0] = tr.step_j[1] = tr.step_j[2] = j_cur;
        }
      }
      tr.per_step_ms[2] = timer.lap();

      // Step 4: SDR phases. The candidate is priced with the cuts, offsets
      // and power it would lead to, and only replaces the incumbent if J
      // does not go up.
      {
        const auto phase = optimize_phases(ch, config.solver.n_rand, config.solver.sdp_tol,
                                           irs_seed(seed, t), sol.v, config.solver.sdp_max_iter);
        if (!phase.kept_incumbent) {
          SolutionState cand = sol;
          cand.v = phase.v;
          const auto cand_gains = link_gains(ch, cand.v);
          cand.p_ap = allocate_power(make_power_instance(config, cand_gains, profiles), controls);
          cand.m = select_split_points(config, cand_gains, profiles, cand);
          cand.alpha = decide_activation(profiles, cand.m, budget);
          cand.delta_f = allocate_frequency_offsets(profiles, cand.m, cand.alpha, budget, controls);
          const double j_cand = eval(cand, cand_gains);
          if (j_cand <= j_cur) {
            sol = std::move(cand);
            gains = cand_gains;
            j_cur = j_cand;
          }
        }
      }
      tr.step_j[3] = j_cur;
      tr.per_step_ms[3] = timer.lap();

      // Step 5: downlink power.
      {
        SolutionState cand = sol;
        cand.p_ap = allocate_power(make_power_instance(config, gains, profiles), controls);
        const double j_cand = eval(cand, gains);
        if (j_cand <= j_cur) {
          sol = std::move(cand);
          j_cur = j_cand;
        }
      }
      tr.step_j[4] = j_cur;
      tr.per_step_ms[4] = timer.lap();

      const auto parts = objective_parts(config, gains, profiles, sol);
      tr.j_value = parts.j;
      tr.sum_delay = parts.sum_delay;
      tr.loss_term = parts.loss_term;
      tr.t_dl_sum = parts.t_dl_sum;
      tr.t_ul_sum = parts.t_ul_sum;
      tr.t_comp_sum = parts.t_comp_sum;
      tr.violations = static_cast<int>(audit_constraints(config, ch, profiles, sol).size());
      tr.alpha_fraction_dt = dt_fraction(sol.alpha);
      result.traces.push_back(tr);

      if (opts.log) {
        *opts.log << "iter " << t << " J after steps:";
        for (double j : tr.step_j) *opts.log << ' ' << j;
        *opts.log << '\n';
      }

      const double change = std::abs(tr.j_value - j_prev);
      j_prev = tr.j_value;
      // Strict, so eps_conv = 0 always runs max_iter passes.
      if (change < opts.eps_conv * std::max(1.0, std::abs(tr.j_value))) {
        result.converged = true;
        break;
      }
    }
  } catch (const ConvergenceError& e) {
    result.final = sol;
    result.iterations_used = static_cast<int>(result.traces.size());
    throw RunAborted(std::string("run aborted: ") + e.what(), std::move(result));
  }

  result.final = std::move(sol);
  finalize_result(result, config, ch, profiles);
  return result;
}

RunResult run(const SystemConfig& config, const ChannelSet& ch,
              const std::vector<UDProfile>& profiles, std::uint64_t seed, int max_iter,
              double eps_conv) {
  RunOptions opts;
  opts.max_iter = max_iter;
  opts.eps_conv = eps_conv;
  opts.record_timing = config.solver.record_timing;
  return run(config, ch, profiles, seed, opts);
}

}  // namespace irssl
