// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <type_traits>
#include <utility>

#include <Eigen/Dense>

#include "irssl/types.hpp"

namespace irssl {

namespace tol {
inline constexpr double kLambertResidual = 1e-12;
inline constexpr double kEigReconstruction = 1e-8;
inline constexpr double kHermitianSymmetry = 1e-10;
inline constexpr double kUnitModulus = 1e-9;
}  // namespace tol

/// Controls for a scalar bisection on [lo, hi].
template <typename Scalar = double>
struct BisectionSpec {
  Scalar lo = 0;
  Scalar hi = 1;
  Scalar tol_abs = 1e-12;
  Scalar tol_rel = 0;
  int max_iter = 200;

  void validate() const {
    if (!(lo < hi)) throw DomainError("BisectionSpec: lo must be < hi");
    if (!(tol_abs > 0)) throw DomainError("BisectionSpec: tol_abs must be > 0");
    if (tol_rel < 0) throw DomainError("BisectionSpec: tol_rel must be >= 0");
    if (max_iter < 1) throw DomainError("BisectionSpec: max_iter must be >= 1");
  }
};

/// Principal branch of the Lambert W function restricted to z >= 0.
///
/// Halley iteration on w e^w - z, seeded by log(1+z) for z >= e and
/// z/(1+z) below that.
template <typename Scalar>
Scalar lambert_w0(Scalar z) {
  using std::abs;
  using std::exp;
  using std::log;
  if (std::isnan(z) || z < Scalar(0)) throw DomainError("lambert_w0: z must be >= 0");
  if (z == Scalar(0)) return Scalar(0);
  if (std::isinf(z)) return z;

  const Scalar e = Scalar(2.718281828459045235360287471352662498L);
  Scalar w = z >= e ? log(Scalar(1) + z) : z / (Scalar(1) + z);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  for (int it = 0; it < 64; ++it) {
    const Scalar ew = exp(w);
    const Scalar f = w * ew - z;
    const Scalar wp1 = w + Scalar(1);
    const Scalar step = f / (ew * wp1 - (w + Scalar(2)) * f / (Scalar(2) * wp1));
    w -= step;
    if (abs(step) <= Scalar(4) * eps * (Scalar(1) + abs(w))) break;
  }
  return std::max(w, Scalar(0));
}

/// Bisection for a root of a function with a sign change on [spec.lo, spec.hi].
///
/// Stops when |f(x)| <= tol_abs or the bracket shrinks below
/// tol_abs + tol_rel*|x|. Throws BracketError without a sign change and
/// ConvergenceError (carrying the midpoint with smallest |f|) when max_iter
/// runs out.
template <typename Scalar, typename F>
Scalar bisect(F&& f, const BisectionSpec<Scalar>& spec) {
  using std::abs;
  spec.validate();
  Scalar lo = spec.lo;
  Scalar hi = spec.hi;
  Scalar flo = f(lo);
  Scalar fhi = f(hi);
  if (flo == Scalar(0)) return lo;
  if (fhi == Scalar(0)) return hi;
  if ((flo > 0) == (fhi > 0)) throw BracketError("bisect: no sign change in bracket");

  Scalar best = abs(flo) < abs(fhi) ? lo : hi;
  Scalar best_res = std::min(abs(flo), abs(fhi));
  for (int it = 0; it < spec.max_iter; ++it) {
    const Scalar mid = lo + (hi - lo) / Scalar(2);
    const Scalar fm = f(mid);
    if (abs(fm) < best_res) {
      best_res = abs(fm);
      best = mid;
    }
    if (abs(fm) <= spec.tol_abs) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= spec.tol_abs + spec.tol_rel * abs(mid)) return lo + (hi - lo) / Scalar(2);
  }
  throw ConvergenceError("bisect: max_iter exhausted", static_cast<double>(best));
}

template <typename Scalar>
struct HermitianEig {
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  Eigen::Matrix<RealScalar, Eigen::Dynamic, 1> values;   // descending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
};

/// Eigendecomposition A = U diag(values) U^H of a Hermitian matrix by cyclic
/// Jacobi rotations. Input is symmetrized first. Eigenvalues come back sorted
/// in descending order.
template <typename Derived>
HermitianEig<typename Derived::Scalar> hermitian_eig(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using std::abs;
  using std::sqrt;

  if (input.rows() != input.cols()) throw ShapeError("hermitian_eig: matrix must be square");
  const Eigen::Index n = input.rows();
  Mat a = (input + input.adjoint()) / Real(2);
  Mat u = Mat::Identity(n, n);

  const Real scale = a.norm();
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int sweep = 0; sweep < 100 && scale > Real(0); ++sweep) {
    Real off = 0;
    for (Eigen::Index q = 1; q < n; ++q)
      for (Eigen::Index p = 0; p < q; ++p) off += std::norm(a(p, q));
    if (sqrt(off) <= eps * scale) break;

    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        const Real mag = abs(apq);
        if (mag <= eps * eps * scale) continue;
        // Phase factor that makes a(p,q) real, then a real Jacobi rotation.
        const Scalar phase = apq / mag;
        const Real app = std::real(a(p, p));
        const Real aqq = std::real(a(q, q));
        const Real tau = (aqq - app) / (Real(2) * mag);
        const Real t = (tau >= 0 ? Real(1) : Real(-1)) / (abs(tau) + sqrt(Real(1) + tau * tau));
        const Real c = Real(1) / sqrt(Real(1) + t * t);
        const Real s = t * c;
        // J = [c, s; -s*conj(phase), c*conj(phase)] acting on columns (p, q).
        const Scalar jpp = c;
        const Scalar jpq = s;
        const Scalar jqp = -s * Eigen::numext::conj(phase);
        const Scalar jqq = c * Eigen::numext::conj(phase);

        for (Eigen::Index i = 0; i < n; ++i) {  // a <- a J
          const Scalar aip = a(i, p);
          const Scalar aiq = a(i, q);
          a(i, p) = aip * jpp + aiq * jqp;
          a(i, q) = aip * jpq + aiq * jqq;
        }
        for (Eigen::Index j = 0; j < n; ++j) {  // a <- J^H a
          const Scalar apj = a(p, j);
          const Scalar aqj = a(q, j);
          a(p, j) = Eigen::numext::conj(jpp) * apj + Eigen::numext::conj(jqp) * aqj;
          a(q, j) = Eigen::numext::conj(jpq) * apj + Eigen::numext::conj(jqq) * aqj;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = std::real(a(p, p));
        a(q, q) = std::real(a(q, q));
        for (Eigen::Index i = 0; i < n; ++i) {  // u <- u J
          const Scalar uip = u(i, p);
          const Scalar uiq = u(i, q);
          u(i, p) = uip * jpp + uiq * jqp;
          u(i, q) = uip * jpq + uiq * jqq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::real(a(i, i)) > std::real(a(j, j));
  });

  HermitianEig<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.values(k) = std::real(a(src, src));
    out.vectors.col(k) = u.col(src);
  }
  return out;
}

/// True when every entry of v lies on the unit circle within tolerance.
inline bool is_unit_modulus(const VectorXc& v, double tolerance = tol::kUnitModulus) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!(std::abs(std::abs(v(i)) - 1.0) <= tolerance)) return false;
  return true;
}

}  // namespace irssl
