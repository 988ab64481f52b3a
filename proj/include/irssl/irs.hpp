// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "irssl/channel.hpp"
#include "irssl/types.hpp"

namespace irssl {

/// max tr(Q V) s.t. diag(V) = 1, V psd.
struct SdpProblem {
  MatrixXc q_total;
  int n() const { return static_cast<int>(q_total.rows()); }
};

SdpProblem build_sdp(const ChannelSet& ch);

struct SdpResiduals {
  double primal = 0;  // max |diag(X) - 1| before the final rescaling
  double dual = 0;    // ||Z - (Diag(y) - Q)||, relative
  double gap = 0;     // dual objective - primal objective
};

struct SdpSolution {
  MatrixXc v_matrix;
  double objective = 0;        // tr(Q V)
  double objective_upper = 0;  // dual objective, bounds every unit-modulus v
  int iterations = 0;
  SdpResiduals residuals;
};

class SdpConvergenceError : public ConvergenceError {
 public:
  SdpConvergenceError(const std::string& what, SdpSolution best)
      : ConvergenceError(what, best.objective), best_(std::move(best)) {}
  const SdpSolution& best() const noexcept { return best_; }

 private:
  SdpSolution best_;
};

/// Primal-dual interior point (HKM direction, Mehrotra predictor-corrector)
/// specialized to unit-diagonal constraints.
SdpSolution solve_sdp(const SdpProblem& prob, double tol = 1e-7, int max_iter = 200);

/// Real part of v^H q v.
double quadratic_form(const MatrixXc& q, const VectorXc& v);

struct PhaseCandidate {
  VectorXc v;
  double objective = 0;
};

/// Draws n_rand vectors U Lambda^(1/2) z with z ~ CN(0, I), projects each entry
/// onto the unit circle and keeps the one with the largest v^H Q v.
PhaseCandidate gaussian_randomization(const SdpSolution& sol, const SdpProblem& prob, int n_rand,
                                      std::uint64_t seed);

struct PhaseResult {
  VectorXc v;
  double objective = 0;
  double upper = 0;
  bool kept_incumbent = false;
};

/// build_sdp -> solve_sdp -> gaussian_randomization, then keeps the incumbent
/// (if given) whenever it scores at least as well.
PhaseResult optimize_phases(const ChannelSet& ch, int n_rand, double tol, std::uint64_t seed,
                            const VectorXc& incumbent = VectorXc(), int max_iter = 200);

}  // namespace irssl
