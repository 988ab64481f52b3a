// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "irssl/config.hpp"
#include "irssl/types.hpp"

namespace irssl {

/// PL(d) = c0 * (d/d0)^-exponent, as a linear power gain.
double path_loss(double distance_m, double exponent, const PathLossParams& params);

struct Geometry {
  Point2 ap;
  Point2 irs;
  std::vector<Point2> uds;
};

double distance(const Point2& a, const Point2& b);

/// Explicit positions from the config, or K devices drawn uniformly in the
/// configured square (deterministic per seed).
Geometry make_geometry(const SystemConfig& config, std::uint64_t seed);

/// One realization of every channel in the system.
///
/// Conventions: the downlink through the IRS is h_k^H diag(v) G, the uplink is
/// its transpose-reciprocal h_k^H diag(v) g_irs_ap. With reciprocity on,
/// g_irs_ap == G and both links have the same gain.
struct ChannelSet {
  MatrixXc g_ap_irs;               // N_IRS x N_AP
  std::vector<VectorXc> h_irs_ud;  // K vectors of N_IRS
  MatrixXc g_irs_ap;               // N_IRS x N_AP
  std::vector<VectorXc> h_direct;  // K vectors of N_AP, empty if never generated
  bool direct_link = false;

  int users() const { return static_cast<int>(h_irs_ud.size()); }
  int n_irs() const { return static_cast<int>(g_ap_irs.rows()); }
  int n_ap() const { return static_cast<int>(g_ap_irs.cols()); }

  /// True when the IRS-to-AP channel is an exact copy of the AP-to-IRS one.
  bool reciprocity_pair() const {
    return g_irs_ap.rows() == g_ap_irs.rows() && g_irs_ap.cols() == g_ap_irs.cols() &&
           g_irs_ap == g_ap_irs;
  }
};

ChannelSet generate_channels(const SystemConfig& config, const Geometry& geometry,
                             std::uint64_t seed);

/// ||h_k^H diag(v) G (+ direct)||^2, the gain seen with maximum-ratio transmission.
double effective_downlink_gain(const ChannelSet& ch, int k, const VectorXc& v);

/// ||h_k^H diag(v) g_irs_ap (+ direct)||^2, the gain seen with maximum-ratio combining.
double effective_uplink_gain(const ChannelSet& ch, int k, const VectorXc& v);

/// Hermitian Q_k with v^H Q_k v = downlink gain + uplink gain for every
/// unit-modulus v. Covers the cascaded channel only; the direct link, when
/// enabled, adds terms that are not a quadratic form in v.
MatrixXc build_qk(const ChannelSet& ch, int k);

/// All downlink and uplink gains for a phase vector.
struct LinkGains {
  VectorXr downlink;
  VectorXr uplink;
};

LinkGains link_gains(const ChannelSet& ch, const VectorXc& v);

}  // namespace irssl
