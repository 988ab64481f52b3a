// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "irssl/experiment.hpp"

using namespace irssl;
namespace fs = std::filesystem;

namespace {

SystemConfig small_config() {
  SystemConfig c;
  c.k_users = 5;
  c.m_layers = 4;
  c.n_ap = 2;
  c.n_irs = 4;
  c.solver.n_rand = 10;
  c.ga.population = 6;
  c.ga.generations = 3;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("irssl_test_" + name);
  fs::remove_all(p);
  return p;
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3) == "0.333333333333");
  CHECK(format_number(kInf) == "inf");
  CHECK(format_number(-kInf) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("scheme names") {
  CHECK(scheme_names().size() == 5);
  CHECK(is_scheme("admm"));
  CHECK_FALSE(is_scheme("random"));
}

TEST_CASE("experiment writes all outputs") {
  const auto dir = scratch("exp");
  RunOptions o;
  o.max_iter = 5;
  const auto out = run_experiment(small_config(), "proposed", 2, dir, o);
  REQUIRE(out.status == kExitOk);
  const auto trace = slurp(dir / "trace.csv");
  CHECK(trace.rfind("iter,j_value,sum_delay_s,loss_term,", 0) == 0);
  CHECK(count_lines(trace) == 1 + out.result.iterations_used);
  const auto alpha = slurp(dir / "alpha.csv");
  CHECK(alpha.rfind("k,alpha_k,m_k,delta_f_k,p_ap_k\n", 0) == 0);
  CHECK(count_lines(alpha) == 6);

  const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(j["scheme"] == "proposed");
  CHECK(j["seed"] == 2);
  CHECK(j["status"] == 0);
  CHECK(j["final"]["m"].size() == 5);
  CHECK(j["final"]["v_re"].size() == 4);
  CHECK(j["totals"]["j_value"].get<double>() == Catch::Approx(out.result.totals.j));
  fs::remove_all(dir);
}

TEST_CASE("every scheme runs through the experiment driver") {
  auto c = small_config();
  c.t_max_s = 100;
  for (const auto& s : scheme_names()) {
    const auto dir = scratch("scheme_" + s);
    RunOptions o;
    o.max_iter = 3;
    const auto out = run_experiment(c, s, 1, dir, o);
    CHECK((out.status == kExitOk || out.status == kExitInfeasible));
    CHECK(fs::exists(dir / "summary.json"));
    CHECK(nlohmann::json::parse(slurp(dir / "summary.json"))["scheme"] == s);
    fs::remove_all(dir);
  }
}

TEST_CASE("traces are byte-identical across runs") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  RunOptions o;
  o.max_iter = 6;
  run_experiment(small_config(), "proposed", 9, a, o);
  run_experiment(small_config(), "proposed", 9, b, o);
  CHECK(slurp(a / "trace.csv") == slurp(b / "trace.csv"));
  CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("error statuses") {
  RunOptions o;
  CHECK(run_experiment(small_config(), "nope", 1, scratch("bad"), o).status == kExitConfig);
  auto c = small_config();
  c.k_users = 0;
  CHECK(run_experiment(c, "proposed", 1, scratch("badcfg"), o).status == kExitConfig);

  const auto file = scratch("blocker");
  { std::ofstream(file) << "x"; }
  CHECK(run_experiment(small_config(), "proposed", 1, file / "sub", o).status == kExitIo);
  fs::remove(file);

  c = small_config();
  c.t_max_s = 1e-6;
  const auto dir = scratch("infeasible");
  const auto out = run_experiment(c, "full-local", 1, dir, o);
  CHECK(out.status == kExitInfeasible);
  CHECK(nlohmann::json::parse(slurp(dir / "summary.json"))["status"] == kExitInfeasible);
  fs::remove_all(dir);
}

TEST_CASE("sweep axes") {
  CHECK(parse_axis("n_irs") == SweepAxis::kIrsElements);
  CHECK(axis_name(parse_axis("k_users")) == "k_users");
  CHECK_THROWS_AS(parse_axis("bandwidth"), DomainError);
  CHECK(with_axis(SystemConfig{}, SweepAxis::kTotalPower, 7.5).p_total_w == 7.5);
  CHECK(with_axis(SystemConfig{}, SweepAxis::kUsers, 12).k_users == 12);
}

TEST_CASE("median") {
  CHECK(median({3, 1, 2}) == 2);
  CHECK(median({4, 1, 3, 2}) == 2.5);
  CHECK(std::isnan(median({})));
}

TEST_CASE("sweep writes one row per run and a median table") {
  const auto dir = scratch("sweep");
  RunOptions o;
  o.max_iter = 3;
  const auto rows = run_sweep(small_config(), SweepAxis::kIrsElements, {2, 4},
                              {"proposed", "full-offload"}, {0, 1, 2}, dir, o);
  CHECK(rows.size() == 12);
  CHECK(count_lines(slurp(dir / "sweep.csv")) == 13);
  const auto med = slurp(dir / "sweep_median.csv");
  CHECK(count_lines(med) == 5);
  CHECK(med.rfind("n_irs,scheme,n,", 0) == 0);
  CHECK_THROWS_AS(run_sweep(small_config(), SweepAxis::kUsers, {}, {"ga"}, {0}, dir, o), DomainError);
  fs::remove_all(dir);
}
