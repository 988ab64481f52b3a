// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#include "irssl/irs.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "irssl/numerics.hpp"

namespace irssl {

SdpProblem build_sdp(const ChannelSet& ch) {
  const int n = ch.n_irs();
  MatrixXc q = MatrixXc::Zero(n, n);
  for (int k = 0; k < ch.users(); ++k) q += build_qk(ch, k);
  return {(q + q.adjoint()) / 2.0};
}

double quadratic_form(const MatrixXc& q, const VectorXc& v) {
  return (v.adjoint() * q * v)(0, 0).real();
}

namespace {

/// Largest step t with X + t*dX still positive semidefinite (inf if unbounded).
double max_step(const MatrixXc& x, const MatrixXc& dx) {
  Eigen::LLT<MatrixXc> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  const auto l = llt.matrixL();
  MatrixXc w = l.solve(dx);
  w = l.solve(MatrixXc(w.adjoint())).adjoint().eval();
  w = ((w + w.adjoint()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(w, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  return lmin >= 0 ? kInf : -1.0 / lmin;
}

MatrixXc unit_diagonal(const MatrixXc& x) {
  VectorXr d = x.diagonal().real().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  MatrixXc v = d.asDiagonal() * x * d.asDiagonal();
  v = ((v + v.adjoint()) / 2.0).eval();
  for (int i = 0; i < v.rows(); ++i) v(i, i) = 1.0;
  return v;
}

}  // namespace

SdpSolution solve_sdp(const SdpProblem& prob, double tol, int max_iter) {
  const int n = prob.n();
  if (n < 1 || prob.q_total.cols() != n) throw ShapeError("solve_sdp: q_total must be square and non-empty");
  if (!(tol > 0)) throw DomainError("solve_sdp: tol must be > 0");

  const MatrixXc q = (prob.q_total + prob.q_total.adjoint()) / 2.0;
  const double scale = q.cwiseAbs().maxCoeff();
  SdpSolution out;
  if (n == 1 || scale == 0) {
    out.v_matrix = MatrixXc::Identity(n, n);
    out.objective = q.diagonal().real().sum();
    out.objective_upper = out.objective;
    return out;
  }

  // Work with a unit-scale cost; objective values are scaled back at the end.
  const MatrixXc c = q / scale;
  MatrixXc x = MatrixXc::Identity(n, n);
  VectorXr y(n);
  for (int i = 0; i < n; ++i) y(i) = c.row(i).cwiseAbs().sum() + 1.0;
  MatrixXc z = MatrixXc(y.cast<Complex>().asDiagonal()) - c;
  const VectorXr ones = VectorXr::Ones(n);

  auto finish = [&](int iterations) {
    SdpSolution s;
    s.v_matrix = unit_diagonal(x);
    s.iterations = iterations;
    const double obj = (c.cwiseProduct(s.v_matrix.conjugate())).sum().real();  // tr(C V)
    s.objective = scale * obj;
    s.objective_upper = scale * y.sum();
    s.residuals.primal = (x.diagonal().real() - ones).cwiseAbs().maxCoeff();
    MatrixXc zr = MatrixXc(y.cast<Complex>().asDiagonal()) - c - z;
    s.residuals.dual = zr.norm() / (1.0 + c.norm());
    s.residuals.gap = s.objective_upper - s.objective;
    return s;
  };

  for (int it = 0; it < max_iter; ++it) {
    SdpSolution cur = finish(it);
    const double gap_s = cur.residuals.gap / scale;
    const double obj_s = cur.objective / scale;
    if (gap_s <= tol * (1 + std::abs(obj_s)) &&
        cur.residuals.gap <= tol * (1 + std::abs(cur.objective)) && cur.residuals.primal <= 1e-6) {
      return cur;
    }

    Eigen::LLT<MatrixXc> zl(z);
    if (zl.info() != Eigen::Success) throw SdpConvergenceError("solve_sdp: dual iterate lost definiteness", cur);
    const MatrixXc zinv = zl.solve(MatrixXc::Identity(n, n));
    const MatrixXr schur = x.cwiseProduct(zinv.conjugate()).real();
    Eigen::LLT<MatrixXr> sl(schur);
    if (sl.info() != Eigen::Success) throw SdpConvergenceError("solve_sdp: singular Schur complement", cur);

    const double mu = x.cwiseProduct(z.conjugate()).sum().real() / n;  // tr(XZ)/n
    const VectorXr zinv_diag = zinv.diagonal().real();

    // Predictor (affine scaling).
    VectorXr dy = sl.solve(-ones);
    MatrixXc dz = dy.cast<Complex>().asDiagonal();
    MatrixXc dx = -x - x * dz * zinv;
    dx = ((dx + dx.adjoint()) / 2.0).eval();
    const double ap = std::min(1.0, max_step(x, dx));
    const double ad = std::min(1.0, max_step(z, dz));
    const MatrixXc xa = x + ap * dx;
    const MatrixXc za = z + ad * dz;
    const double mu_aff = xa.cwiseProduct(za.conjugate()).sum().real() / n;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // Corrector with the second-order term.
    const MatrixXc second = dx * dz * zinv;
    VectorXr rhs = sigma * mu * zinv_diag - ones - second.diagonal().real();
    dy = sl.solve(rhs);
    dz = dy.cast<Complex>().asDiagonal();
    dx = sigma * mu * zinv - x - x * dz * zinv - second;
    dx = ((dx + dx.adjoint()) / 2.0).eval();

    const double step_p = std::min(1.0, 0.95 * max_step(x, dx));
    const double step_d = std::min(1.0, 0.95 * max_step(z, dz));
    x += step_p * dx;
    x = ((x + x.adjoint()) / 2.0).eval();
    y += step_d * dy;
    z = MatrixXc(y.cast<Complex>().asDiagonal()) - c;
  }
  throw SdpConvergenceError("solve_sdp: iteration cap reached", finish(max_iter));
}

PhaseCandidate gaussian_randomization(const SdpSolution& sol, const SdpProblem& prob, int n_rand,
                                      std::uint64_t seed) {
  if (n_rand < 1) throw DomainError("gaussian_randomization: n_rand must be >= 1");
  const int n = prob.n();
  const auto eig = hermitian_eig(sol.v_matrix);
  MatrixXc factor = eig.vectors * eig.values.cwiseMax(0.0).cwiseSqrt().cast<Complex>().asDiagonal();

  PhaseCandidate best;
  best.objective = -kInf;
  VectorXc zvec(n);
  VectorXc v(n);
  for (int trial = 0; trial < n_rand; ++trial) {
    auto eng = make_engine(seed, Stream::kIrs, static_cast<std::uint64_t>(trial));
    for (int i = 0; i < n; ++i) zvec(i) = draw_cn(eng);
    const VectorXc raw = factor * zvec;
    for (int i = 0; i < n; ++i) {
      const double mag = std::abs(raw(i));
      v(i) = mag < 1e-15 ? Complex(1.0, 0.0) : raw(i) / mag;
    }
    const double obj = quadratic_form(prob.q_total, v);
    if (obj > best.objective) {
      best.objective = obj;
      best.v = v;
    }
  }
  return best;
}

PhaseResult optimize_phases(const ChannelSet& ch, int n_rand, double tol, std::uint64_t seed,
                            const VectorXc& incumbent, int max_iter) {
  const auto prob = build_sdp(ch);
  const auto sdp = solve_sdp(prob, tol, max_iter);
  const auto cand = gaussian_randomization(sdp, prob, n_rand, seed);

  PhaseResult out{cand.v, cand.objective, sdp.objective_upper, false};
  if (incumbent.size() == prob.n()) {
    const double inc = quadratic_form(prob.q_total, incumbent);
    if (inc >= cand.objective) {
      out.v = incumbent;
      out.objective = inc;
      out.kept_incumbent = true;
    }
  } else if (incumbent.size() != 0) {
    throw ShapeError("optimize_phases: incumbent has the wrong length");
  }
  return out;
}

}  // namespace irssl
