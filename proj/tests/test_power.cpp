// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "irssl/power.hpp"

using namespace irssl;
using namespace irssl::testing;

namespace {

BisectionSpec<double> controls() {
  BisectionSpec<double> s;
  s.tol_abs = 1e-13;
  s.max_iter = 400;
  return s;
}

PowerInstance instance(std::vector<double> a, std::vector<double> c, double p_total, double p_max) {
  PowerInstance inst;
  inst.a = Eigen::Map<VectorXr>(a.data(), static_cast<Eigen::Index>(a.size()));
  inst.c = Eigen::Map<VectorXr>(c.data(), static_cast<Eigen::Index>(c.size()));
  inst.p_total = p_total;
  inst.p_max = p_max;
  return inst;
}

}  // namespace

TEST_CASE("interior power closed form") {
  // z = e makes W(z) = 1 and p = e^2 - 1 for a = 1.
  const double e = std::exp(1.0);
  const auto inst = instance({1.0}, {1.0}, 10, 10);
  const double nu = 1.0 / (4 * e * e);
  CHECK(interior_power(inst, 0, nu) == Catch::Approx(e * e - 1).epsilon(1e-12));
  CHECK(marginal_value(inst, 0, e * e - 1) == Catch::Approx(nu).epsilon(1e-12));
  CHECK_THROWS_AS(interior_power(inst, 0, 0.0), DomainError);
}

TEST_CASE("interior power inverts the marginal value") {
  std::mt19937_64 eng(3);
  std::uniform_real_distribution<double> la(0, 20), lc(-6, 2);
  for (int i = 0; i < 200; ++i) {
    const auto inst = instance({std::pow(10.0, la(eng))}, {std::pow(10.0, lc(eng))}, 1, 1);
    const double p = std::pow(10.0, -3 + 3 * (i % 7) / 7.0);
    const double nu = marginal_value(inst, 0, p);
    CHECK(rel_err(interior_power(inst, 0, nu), p) <= 1e-9);
  }
}

TEST_CASE("two users against a grid search") {
  const auto inst = instance({2e8, 2e7}, {1.0, 1.0}, 3.0, 3.0);
  const auto p = allocate_power(inst, controls());
  CHECK(p.sum() == Catch::Approx(3.0).epsilon(1e-12));
  double grid = kInf;
  for (int i = 1; i < 30000; ++i) {
    const double x = 1e-4 * i;
    VectorXr q(2);
    q << x, 3.0 - x;
    grid = std::min(grid, downlink_delay_sum(inst, q));
  }
  const double got = downlink_delay_sum(inst, p);
  CHECK(got <= grid * (1 + 1e-12));
  CHECK(got >= grid * (1 - 1e-6));
  // The weaker link gets more power.
  CHECK(p(1) > p(0));
}

TEST_CASE("KKT conditions hold on random instances") {
  std::mt19937_64 eng(17);
  std::uniform_real_distribution<double> la(5, 11), lc(-3, 0), lp(0.2, 2.0);
  for (int rep = 0; rep < 50; ++rep) {
    const int k = 2 + rep % 6;
    std::vector<double> a, c;
    for (int i = 0; i < k; ++i) {
      a.push_back(std::pow(10.0, la(eng)));
      c.push_back(std::pow(10.0, lc(eng)));
    }
    const double p_max = lp(eng);
    const auto inst = instance(a, c, 0.7 * p_max * k, p_max);
    const auto out = allocate_power_detailed(inst, controls());
    CHECK(out.p.sum() <= inst.p_total * (1 + 1e-12));
    CHECK(out.p.sum() >= inst.p_total * (1 - 1e-9));
    REQUIRE(out.nu > 0);
    for (int i = 0; i < k; ++i) {
      CHECK(out.p(i) >= 0);
      CHECK(out.p(i) <= p_max * (1 + 1e-12));
      const double g = marginal_value(inst, i, out.p(i));
      if (out.p(i) < p_max * (1 - 1e-9)) CHECK(rel_err(g, out.nu) <= 1e-6);
      else CHECK(g >= out.nu * (1 - 1e-6));
    }
  }
}

TEST_CASE("budget above the caps puts everyone at p_max") {
  const auto inst = instance({1e8, 1e9, 1e7}, {1, 1, 1}, 10.0, 2.0);
  const auto out = allocate_power_detailed(inst, controls());
  CHECK(out.p == VectorXr::Constant(3, 2.0));
  CHECK(out.nu == 0.0);
}

TEST_CASE("users without a link are excluded") {
  const auto inst = instance({1e8, 0.0, 1e7}, {1, 1, 1}, 1.0, 1.0);
  const auto out = allocate_power_detailed(inst, controls());
  REQUIRE(out.excluded.size() == 1);
  CHECK(out.excluded[0] == 1);
  CHECK(out.p(1) == 0.0);
  CHECK(out.p.sum() == Catch::Approx(1.0));
}

TEST_CASE("rate floors are respected") {
  auto inst = instance({1e8, 1e9, 1e6}, {1, 1, 1}, 1.0, 1.0);
  inst.p_min = VectorXr::Zero(3);
  inst.p_min(1) = 0.5;  // the strong user would get far less without the floor
  const auto p = allocate_power(inst, controls());
  CHECK(p(1) >= 0.5 * (1 - 1e-12));
  CHECK(p.sum() <= 1.0 + 1e-12);

  inst.p_min << 0.5, 0.5, 0.5;
  CHECK_THROWS_AS(allocate_power(inst, controls()), InfeasibleError);
  inst.p_min << 0, 1.5, 0;
  CHECK_THROWS_AS(allocate_power(inst, controls()), InfeasibleError);
}

TEST_CASE("min rate powers") {
  VectorXr a(3);
  a << 1.0, 2.0, 0.0;
  const auto p = min_rate_powers(a, 2.0, 1.0);  // snr 3
  CHECK(p(0) == Catch::Approx(3.0));
  CHECK(p(1) == Catch::Approx(1.5));
  CHECK(std::isinf(p(2)));
}

TEST_CASE("instance from a scenario") {
  auto c = unit_config(2, 1);
  c.noise_w = 0.5;
  c.bandwidth_hz = 2.0;
  LinkGains g;
  g.downlink = VectorXr::Constant(2, 3.0);
  g.uplink = g.downlink;
  std::vector<UDProfile> ps{make_profile(1, {1}, {1}, 4.0), make_profile(1, {1}, {1}, 2.0)};
  const auto inst = make_power_instance(c, g, ps);
  CHECK(inst.a(0) == Catch::Approx(6.0));
  CHECK(inst.c(0) == Catch::Approx(2.0 * std::log(2.0)));
  CHECK(inst.c(1) == Catch::Approx(std::log(2.0)));
  CHECK(inst.p_total == c.p_total_w);
}

TEST_CASE("bad instances are rejected") {
  auto inst = instance({1.0, 1.0}, {1.0}, 1.0, 1.0);
  CHECK_THROWS_AS(allocate_power(inst, controls()), ShapeError);
  inst = instance({1.0}, {1.0}, 0.0, 1.0);
  CHECK_THROWS_AS(allocate_power(inst, controls()), DomainError);
}
