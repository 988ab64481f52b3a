// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

// Small hand-built scenarios and random generators shared by the unit tests.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "irssl/channel.hpp"
#include "irssl/config.hpp"
#include "irssl/delay.hpp"

namespace irssl::testing {

inline UDProfile make_profile(double f_loc, std::vector<double> loads, std::vector<double> ul_bits,
                              double dl_bits, double p_ul = 1.0, double raw_bits = 0.0) {
  UDProfile p;
  p.f_loc = f_loc;
  p.layer_loads = std::move(loads);
  p.layer_uplink_bits = std::move(ul_bits);
  p.d_dl_bits = dl_bits;
  p.p_ul = p_ul;
  p.raw_input_bits = raw_bits;
  return p;
}

/// Unit-free config: B = 1, sigma^2 = 1, generous budgets.
inline SystemConfig unit_config(int k_users, int m_layers) {
  SystemConfig c;
  c.k_users = k_users;
  c.m_layers = m_layers;
  c.n_ap = 1;
  c.n_irs = 1;
  c.bandwidth_hz = 1.0;
  c.noise_w = 1.0;
  c.p_total_w = 10.0;
  c.p_max_w = 10.0;
  c.p_ul_w = 1.0;
  c.r_min_bps = 0.0;
  c.delta_f_max_hz = 10.0;
  c.t_max_s = 1e9;
  c.lambda_weight = 0.0;
  c.loss.values.assign(static_cast<std::size_t>(m_layers), 0.0);
  return c;
}

/// One IRS element, one AP antenna, h_k given per user, G = g.
inline ChannelSet scalar_channels(const std::vector<Complex>& h, Complex g) {
  ChannelSet ch;
  ch.g_ap_irs = MatrixXc::Constant(1, 1, g);
  ch.g_irs_ap = ch.g_ap_irs;
  for (auto hk : h) ch.h_irs_ud.push_back(VectorXc::Constant(1, hk));
  for (std::size_t k = 0; k < h.size(); ++k) ch.h_direct.push_back(VectorXc::Zero(1));
  return ch;
}

inline Complex cn(std::mt19937_64& eng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(eng);
  return {re, n(eng)};
}

/// i.i.d. CN(0,1) channels with an optional independent uplink matrix.
inline ChannelSet random_channels(int k_users, int n_irs, int n_ap, std::uint64_t seed,
                                  bool reciprocal = true) {
  std::mt19937_64 eng(seed);
  ChannelSet ch;
  ch.g_ap_irs.resize(n_irs, n_ap);
  for (int i = 0; i < n_irs; ++i)
    for (int j = 0; j < n_ap; ++j) ch.g_ap_irs(i, j) = cn(eng);
  for (int k = 0; k < k_users; ++k) {
    VectorXc h(n_irs);
    for (int i = 0; i < n_irs; ++i) h(i) = cn(eng);
    ch.h_irs_ud.push_back(h);
    ch.h_direct.push_back(VectorXc::Zero(n_ap));
  }
  if (reciprocal) {
    ch.g_irs_ap = ch.g_ap_irs;
  } else {
    ch.g_irs_ap.resize(n_irs, n_ap);
    for (int i = 0; i < n_irs; ++i)
      for (int j = 0; j < n_ap; ++j) ch.g_irs_ap(i, j) = cn(eng);
  }
  return ch;
}

inline VectorXc random_phases(int n, std::mt19937_64& eng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  VectorXc v(n);
  for (int i = 0; i < n; ++i) v(i) = std::polar(1.0, u(eng));
  return v;
}

inline MatrixXc random_hermitian(int n, std::mt19937_64& eng) {
  MatrixXc b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = cn(eng);
  MatrixXc a = (b + b.adjoint()) / 2.0;
  return a;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace irssl::testing
