// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace irssl {

using Complex = std::complex<double>;

using VectorXr = Eigen::VectorXd;
using VectorXc = Eigen::VectorXcd;
using VectorXi = Eigen::VectorXi;
using MatrixXr = Eigen::MatrixXd;
using MatrixXc = Eigen::MatrixXcd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Errors. Everything derives from irssl::Error so callers can catch broadly.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

/// Iterative method ran out of iterations. Carries the best iterate seen.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_iterate)
      : Error(what), best_iterate_(best_iterate) {}
  double best_iterate() const noexcept { return best_iterate_; }

 private:
  double best_iterate_;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> issues)
      : Error(join(issues)), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string out = "invalid configuration:";
    for (const auto& s : issues) out += "\n  " + s;
    return out;
  }
  std::vector<std::string> issues_;
};

// ---------------------------------------------------------------------------
// Seeded random streams. Each consumer draws from its own stream so that,
// e.g., device profiles do not change when the IRS size changes.

enum class Stream : std::uint64_t {
  kGeometry = 1,
  kProfiles = 2,
  kChannels = 3,
  kInit = 4,
  kIrs = 5,
  kGa = 6,
};

inline std::mt19937_64 make_engine(std::uint64_t seed, Stream stream,
                                   std::uint64_t sub = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(sub),
                    static_cast<std::uint32_t>(sub >> 32)};
  return std::mt19937_64(seq);
}

/// Circularly-symmetric complex Gaussian with unit variance.
template <typename Engine>
Complex draw_cn(Engine& eng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(eng);
  const double im = n(eng);
  return {re, im};
}

}  // namespace irssl
