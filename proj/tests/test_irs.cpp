// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "irssl/irs.hpp"
#include "irssl/numerics.hpp"

using namespace irssl;
using namespace irssl::testing;

TEST_CASE("all-ones cost") {
  SdpProblem prob{MatrixXc::Ones(2, 2)};
  const auto s = solve_sdp(prob);
  CHECK(s.objective == Catch::Approx(4.0).epsilon(1e-7));
  CHECK(s.objective_upper >= s.objective - 1e-9);
  CHECK(s.objective_upper == Catch::Approx(4.0).epsilon(1e-6));
  const auto r = gaussian_randomization(s, prob, 20, 1);
  CHECK(is_unit_modulus(r.v));
  CHECK(r.objective == Catch::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("rank-one cost is solved exactly") {
  std::mt19937_64 eng(2);
  for (int n : {3, 5, 8}) {
    VectorXc u(n);
    for (int i = 0; i < n; ++i) u(i) = cn(eng);
    SdpProblem prob{u * u.adjoint()};
    const double best = std::pow(u.cwiseAbs().sum(), 2);
    const auto s = solve_sdp(prob);
    CHECK(rel_err(s.objective, best) <= 1e-6);
    const auto r = gaussian_randomization(s, prob, 50, 3);
    CHECK(rel_err(r.objective, best) <= 1e-6);
  }
}

TEST_CASE("dual bound holds for every unit-modulus vector") {
  std::mt19937_64 eng(8);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + rep;
    const auto ch = random_channels(3, n, 4, 100 + rep);
    const auto prob = build_sdp(ch);
    const auto s = solve_sdp(prob);
    CHECK(s.residuals.primal <= 1e-6);
    CHECK(s.objective_upper - s.objective <= 1e-7 * (1 + std::abs(s.objective)));
    CHECK(s.v_matrix.diagonal().real().isOnes(1e-12));
    for (int t = 0; t < 50; ++t) CHECK(quadratic_form(prob.q_total, random_phases(n, eng)) <= s.objective_upper * (1 + 1e-9));
    const auto r = gaussian_randomization(s, prob, 100, rep);
    CHECK(is_unit_modulus(r.v));
    CHECK(r.objective <= s.objective_upper * (1 + 1e-9));
    CHECK(r.objective == Catch::Approx(quadratic_form(prob.q_total, r.v)));
  }
}

TEST_CASE("relaxed solution is positive semidefinite") {
  const auto ch = random_channels(4, 6, 3, 9);
  const auto s = solve_sdp(build_sdp(ch));
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(s.v_matrix);
  CHECK(es.eigenvalues().minCoeff() >= -1e-8);
}

TEST_CASE("build_sdp sums the per-user matrices") {
  const auto ch = random_channels(3, 4, 2, 4);
  MatrixXc sum = MatrixXc::Zero(4, 4);
  for (int k = 0; k < 3; ++k) sum += build_qk(ch, k);
  CHECK((build_sdp(ch).q_total - sum).norm() <= 1e-12 * sum.norm());
}

TEST_CASE("randomization is seeded") {
  const auto ch = random_channels(3, 6, 2, 1);
  const auto prob = build_sdp(ch);
  const auto s = solve_sdp(prob);
  const auto a = gaussian_randomization(s, prob, 30, 7);
  const auto b = gaussian_randomization(s, prob, 30, 7);
  CHECK(a.v == b.v);
}

TEST_CASE("optimize_phases keeps a better incumbent") {
  const auto ch = random_channels(2, 5, 2, 12);
  const auto prob = build_sdp(ch);
  const auto fresh = optimize_phases(ch, 20, 1e-7, 1);
  CHECK_FALSE(fresh.kept_incumbent);
  CHECK(fresh.objective <= fresh.upper * (1 + 1e-9));
  const auto again = optimize_phases(ch, 20, 1e-7, 2, fresh.v);
  CHECK(again.objective >= fresh.objective);
  VectorXc worse = VectorXc::Ones(5);
  const auto r = optimize_phases(ch, 20, 1e-7, 1, worse);
  CHECK(r.objective >= quadratic_form(prob.q_total, worse));
  CHECK_THROWS_AS(optimize_phases(ch, 20, 1e-7, 1, VectorXc::Ones(3)), ShapeError);
}

TEST_CASE("degenerate problems") {
  SdpProblem one{MatrixXc::Constant(1, 1, Complex(2.5, 0))};
  CHECK(solve_sdp(one).objective == Catch::Approx(2.5));
  SdpProblem zero{MatrixXc::Zero(3, 3)};
  CHECK(solve_sdp(zero).objective == 0.0);
  CHECK_THROWS_AS(solve_sdp(SdpProblem{MatrixXc::Zero(2, 3)}), ShapeError);
  CHECK_THROWS_AS(solve_sdp(SdpProblem{MatrixXc::Ones(2, 2)}, 0.0), DomainError);
}
