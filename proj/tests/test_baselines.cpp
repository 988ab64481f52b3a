// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "irssl/baselines.hpp"
#include "irssl/orchestrator.hpp"

using namespace irssl;
using namespace irssl::testing;

namespace {

SystemConfig tiny_config() {
  SystemConfig c;
  c.k_users = 3;
  c.m_layers = 3;
  c.n_ap = 2;
  c.n_irs = 4;
  c.solver.n_rand = 20;
  c.t_max_s = 0.3;
  return c;
}

bool has(const std::vector<Violation>& vs, int id) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.constraint == id; });
}

/// Every cut vector of a tiny scenario, scored with the shared resolver.
std::pair<VectorXi, double> exhaustive(const SystemConfig& c, const Scenario& sc, const VectorXc& v) {
  const auto controls = bisection_controls(c, true);
  VectorXi m = VectorXi::Ones(c.k_users), best = m;
  double best_j = kInf;
  while (true) {
    const double j = resolved_objective(c, sc.channels, sc.profiles, m, v, controls);
    if (j < best_j) {
      best_j = j;
      best = m;
    }
    int k = 0;
    while (k < c.k_users && m(k) == c.m_layers) m(k++) = 1;
    if (k == c.k_users) break;
    ++m(k);
  }
  return {best, best_j};
}

}  // namespace

TEST_CASE("full-local runs every layer on the device") {
  auto c = tiny_config();
  c.t_max_s = 100;
  c.lambda_weight = 0.5;
  const auto sc = make_scenario(c, 1);
  const auto r = run_full_local(c, sc.channels, sc.profiles);
  CHECK(r.scheme == "full-local");
  CHECK(r.final.m == VectorXi::Constant(3, 3));
  CHECK(r.final.alpha.isOnes());
  double expect = 0;
  for (const auto& p : sc.profiles) expect += p.load(3) / p.f_loc;
  CHECK(r.totals.sum_delay == Catch::Approx(expect));
  CHECK(r.totals.t_ul_sum == 0.0);
  CHECK(r.totals.t_dl_sum == 0.0);
  CHECK(r.totals.j == Catch::Approx(expect + 0.5 * c.loss.table(3)[2]));
  CHECK(r.feasible);
  CHECK(r.traces.size() == 1);
}

TEST_CASE("full-local misses a tight deadline") {
  auto c = tiny_config();
  c.t_max_s = 1e-3;
  const auto sc = make_scenario(c, 1);
  const auto r = run_full_local(c, sc.channels, sc.profiles);
  CHECK_FALSE(r.feasible);
  CHECK(has(r.violations, 26));
}

TEST_CASE("full-local uses the direct link when present") {
  auto c = tiny_config();
  c.direct_link = true;
  const auto sc = make_scenario(c, 2);
  const auto r = run_full_local(c, sc.channels, sc.profiles);
  CHECK(r.totals.t_dl_sum > 0);
  CHECK(std::isfinite(r.totals.t_dl_sum));
}

TEST_CASE("full-offload sends raw input and computes at the AP") {
  auto c = tiny_config();
  const auto sc = make_scenario(c, 3);
  const auto r = run_full_offload(c, sc.channels, sc.profiles, 3);
  CHECK(r.final.m.isOnes());
  CHECK(is_unit_modulus(r.final.v));
  CHECK(r.final.p_ap.sum() <= c.p_total_w * (1 + 1e-9));
  const auto gains = link_gains(sc.channels, r.final.v);
  for (int k = 0; k < c.k_users; ++k) {
    const auto& p = sc.profiles[static_cast<std::size_t>(k)];
    const double ul = p.uplink_bits(0) / uplink_rate(p.p_ul, gains.uplink(k), c);
    CHECK(r.delays[static_cast<std::size_t>(k)].t_ul == Catch::Approx(ul));
    CHECK(r.delays[static_cast<std::size_t>(k)].t_comp == Catch::Approx(p.load(3) / c.f_ap_hz));
  }
  c.f_ap_hz = kInf;
  CHECK(run_full_offload(c, sc.channels, sc.profiles, 3).totals.t_comp_sum == 0.0);
}

TEST_CASE("full-offload reports an unmeetable rate floor") {
  auto c = tiny_config();
  c.r_min_bps = 1e9;
  const auto sc = make_scenario(c, 3);
  const auto r = run_full_offload(c, sc.channels, sc.profiles, 3);
  CHECK_FALSE(r.feasible);
  CHECK(has(r.violations, 21));
}

TEST_CASE("GA finds the exhaustive optimum on a tiny scenario") {
  const auto c = tiny_config();
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto sc = make_scenario(c, seed);
    GaParams p;
    p.population = 20;
    p.generations = 30;
    const auto r = run_ga(c, sc.channels, sc.profiles, p, seed);
    const auto [m_best, j_best] = exhaustive(c, sc, baseline_phases(c, sc.channels, seed));
    CHECK(r.traces.back().j_value == Catch::Approx(j_best).epsilon(1e-9));
    CHECK(r.traces.size() == 31);
    for (std::size_t i = 1; i < r.traces.size(); ++i)
      CHECK(r.traces[i].j_value <= r.traces[i - 1].j_value);
  }
}

TEST_CASE("GA keeps an injected seed if nothing beats it") {
  const auto c = tiny_config();
  const auto sc = make_scenario(c, 5);
  const auto [m_best, j_best] = exhaustive(c, sc, baseline_phases(c, sc.channels, 5));
  GaParams p;
  p.population = 4;
  p.generations = 1;
  const auto r = run_ga(c, sc.channels, sc.profiles, p, 5, {m_best});
  CHECK(r.final.m == m_best);
  VectorXi bad = VectorXi::Constant(3, 9);
  CHECK_THROWS_AS(run_ga(c, sc.channels, sc.profiles, p, 5, {bad}), ShapeError);
  p.population = 1;
  CHECK_THROWS_AS(run_ga(c, sc.channels, sc.profiles, p, 5), DomainError);
}

TEST_CASE("GA is reproducible") {
  const auto c = tiny_config();
  const auto sc = make_scenario(c, 6);
  GaParams p;
  p.population = 8;
  p.generations = 5;
  const auto a = run_ga(c, sc.channels, sc.profiles, p, 6);
  const auto b = run_ga(c, sc.channels, sc.profiles, p, 6);
  CHECK(a.final.m == b.final.m);
  CHECK(a.totals.j == b.totals.j);
}

TEST_CASE("ADMM converges to the relaxation's knot minimizer") {
  auto c = tiny_config();
  c.k_users = 6;
  c.m_layers = 8;
  c.lambda_weight = 3.0;
  // Equal layer loads keep every device's relaxed cost convex.
  c.profile.layer_load_min = c.profile.layer_load_max = 1e9;
  const auto sc = make_scenario(c, 4);
  const auto gains = link_gains(sc.channels, VectorXc::Ones(c.n_irs));
  const auto table = c.loss.table(c.m_layers);
  for (double rho : {0.1, 1.0, 10.0}) {
    AdmmParams p;
    p.rho = rho;
    p.max_iter = 500;
    p.tol = 1e-6;
    const auto out = run_admm_detailed(c, sc.channels, sc.profiles, p, 4);
    REQUIRE(out.converged);
    CHECK(out.primal_residual <= 1e-6);
    CHECK(out.dual_residual <= 1e-6);
    for (int k = 0; k < c.k_users; ++k) {
      const auto& prof = sc.profiles[static_cast<std::size_t>(k)];
      const double r_ul = uplink_rate(prof.p_ul, gains.uplink(k), c);
      double best = kInf;
      int arg = 0;
      for (int m = 1; m <= c.m_layers; ++m) {
        const double v = prof.uplink_bits(m) / r_ul + prof.load(m) / prof.f_loc +
                         c.lambda_weight / c.k_users * table[static_cast<std::size_t>(m - 1)];
        if (v < best) {
          best = v;
          arg = m;
        }
      }
      CHECK(out.result.final.m(k) == arg);
    }
  }
}

TEST_CASE("ADMM rejects bad parameters") {
  const auto c = tiny_config();
  const auto sc = make_scenario(c, 1);
  AdmmParams p;
  p.rho = 0;
  CHECK_THROWS_AS(run_admm_detailed(c, sc.channels, sc.profiles, p, 1), DomainError);
}

TEST_CASE("search baselines report resolved states") {
  const auto c = tiny_config();
  const auto sc = make_scenario(c, 7);
  const auto r = run_admm(c, sc.channels, sc.profiles, 1.0, 7);
  const auto s = resolve_blocks(c, sc.channels, sc.profiles, r.final.m, r.final.v, bisection_controls(c));
  CHECK(s.alpha == r.final.alpha);
  CHECK(r.totals.j == Catch::Approx(objective(c, sc.channels, sc.profiles, r.final)));
}

TEST_CASE("ADMM lands near the exhaustive optimum on a tiny scenario") {
  // Default deadline: the relaxation has no twin branch, so it is only
  // expected to be close when twins are rare.
  auto c = tiny_config();
  c.k_users = 2;
  c.t_max_s = SystemConfig{}.t_max_s;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto sc = make_scenario(c, seed);
    const auto r = run_admm(c, sc.channels, sc.profiles, 1.0, seed);
    const auto [m_best, j_best] = exhaustive(c, sc, r.final.v);
    CHECK(r.totals.j <= j_best * 1.05);
  }
}

TEST_CASE("GA seeded with the proposed cuts is no worse than them") {
  auto c = tiny_config();
  c.k_users = 6;
  c.m_layers = 6;
  const auto sc = make_scenario(c, 2);
  const auto prop = run(c, sc.channels, sc.profiles, 2, 25, 1e-4);
  GaParams p;
  p.population = 10;
  p.generations = 5;
  const auto r = run_ga(c, sc.channels, sc.profiles, p, 2, {prop.final.m});
  const auto v = baseline_phases(c, sc.channels, 2);
  CHECK(r.totals.j <= resolved_objective(c, sc.channels, sc.profiles, prop.final.m, v,
                                         bisection_controls(c)) * (1 + 1e-9));
}

TEST_CASE("full-offload gets faster with a larger IRS") {
  auto c = tiny_config();
  c.k_users = 10;
  std::vector<double> small, large;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    c.n_irs = 4;
    auto sc = make_scenario(c, seed);
    small.push_back(run_full_offload(c, sc.channels, sc.profiles, seed).totals.sum_delay);
    c.n_irs = 32;
    sc = make_scenario(c, seed);
    large.push_back(run_full_offload(c, sc.channels, sc.profiles, seed).totals.sum_delay);
  }
  std::sort(small.begin(), small.end());
  std::sort(large.begin(), large.end());
  CHECK(large[2] < small[2]);
}
