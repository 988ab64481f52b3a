// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#include "irssl/channel.hpp"

#include <cmath>
#include <string>

#include "irssl/numerics.hpp"

namespace irssl {

double path_loss(double distance_m, double exponent, const PathLossParams& params) {
  if (!(distance_m > 0)) throw DomainError("path_loss: distance must be > 0");
  return params.c0 * std::pow(distance_m / params.d0, -exponent);
}

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

Geometry make_geometry(const SystemConfig& config, std::uint64_t seed) {
  const auto& gc = config.geometry;
  Geometry g{gc.ap, gc.irs, {}};
  if (!gc.ud_positions.empty()) {
    g.uds = gc.ud_positions;
  } else {
    auto eng = make_engine(seed, Stream::kGeometry);
    std::uniform_real_distribution<double> off(-gc.ud_side / 2, gc.ud_side / 2);
    g.uds.reserve(static_cast<std::size_t>(config.k_users));
    for (int k = 0; k < config.k_users; ++k) {
      const double dx = off(eng);
      const double dy = off(eng);
      g.uds.push_back({gc.ud_center.x + dx, gc.ud_center.y + dy});
    }
  }
  if (static_cast<int>(g.uds.size()) != config.k_users)
    throw ShapeError("make_geometry: device count does not match k_users");
  if (!(distance(g.ap, g.irs) > 0)) throw DomainError("make_geometry: AP and IRS coincide");
  for (const auto& p : g.uds)
    if (!(distance(p, g.irs) > 0) || !(distance(p, g.ap) > 0))
      throw DomainError("make_geometry: a device coincides with the AP or IRS");
  return g;
}

ChannelSet generate_channels(const SystemConfig& config, const Geometry& geometry,
                             std::uint64_t seed) {
  const int n_irs = config.n_irs;
  const int n_ap = config.n_ap;
  const int k_users = config.k_users;
  if (n_irs < 1 || n_ap < 1 || k_users < 1) throw ShapeError("generate_channels: empty dimensions");
  if (static_cast<int>(geometry.uds.size()) != k_users)
    throw ShapeError("generate_channels: geometry does not match k_users");

  const auto& pl = config.path_loss;
  auto eng = make_engine(seed, Stream::kChannels);
  ChannelSet ch;
  ch.direct_link = config.direct_link;

  const double amp_g = std::sqrt(path_loss(distance(geometry.ap, geometry.irs), pl.alpha_ap_irs, pl));
  ch.g_ap_irs.resize(n_irs, n_ap);
  for (int j = 0; j < n_ap; ++j)
    for (int i = 0; i < n_irs; ++i) ch.g_ap_irs(i, j) = amp_g * draw_cn(eng);

  ch.h_irs_ud.reserve(static_cast<std::size_t>(k_users));
  for (int k = 0; k < k_users; ++k) {
    const double amp = std::sqrt(
        path_loss(distance(geometry.irs, geometry.uds[static_cast<std::size_t>(k)]), pl.alpha_irs_ud, pl));
    VectorXc h(n_irs);
    for (int i = 0; i < n_irs; ++i) h(i) = amp * draw_cn(eng);
    ch.h_irs_ud.push_back(std::move(h));
  }

  if (config.reciprocity) {
    ch.g_irs_ap = ch.g_ap_irs;
  } else {
    ch.g_irs_ap.resize(n_irs, n_ap);
    for (int j = 0; j < n_ap; ++j)
      for (int i = 0; i < n_irs; ++i) ch.g_irs_ap(i, j) = amp_g * draw_cn(eng);
  }

  // Always drawn so that toggling the flag does not shift other draws.
  ch.h_direct.reserve(static_cast<std::size_t>(k_users));
  for (int k = 0; k < k_users; ++k) {
    const double amp = std::sqrt(
        path_loss(distance(geometry.ap, geometry.uds[static_cast<std::size_t>(k)]), pl.alpha_direct, pl));
    VectorXc h(n_ap);
    for (int j = 0; j < n_ap; ++j) h(j) = amp * draw_cn(eng);
    ch.h_direct.push_back(std::move(h));
  }
  return ch;
}

namespace {

void check_args(const ChannelSet& ch, int k, const VectorXc& v) {
  if (k < 0 || k >= ch.users()) throw ShapeError("channel: user index out of range");
  if (v.size() != ch.n_irs()) throw ShapeError("channel: phase vector has wrong length");
  if (ch.h_irs_ud[static_cast<std::size_t>(k)].size() != ch.n_irs())
    throw ShapeError("channel: IRS-to-device vector has wrong length");
  if (ch.g_irs_ap.rows() != ch.n_irs() || ch.g_irs_ap.cols() != ch.n_ap())
    throw ShapeError("channel: IRS-to-AP matrix has wrong shape");
  if (!is_unit_modulus(v)) throw DomainError("channel: phase vector is not unit-modulus");
}

double cascaded_gain(const MatrixXc& g, const ChannelSet& ch, int k, const VectorXc& v) {
  const auto& h = ch.h_irs_ud[static_cast<std::size_t>(k)];
  VectorXc w = h.conjugate().cwiseProduct(v);
  VectorXc row = g.transpose() * w;  // (h^H diag(v) g)^T
  if (ch.direct_link) {
    if (ch.h_direct.size() != ch.h_irs_ud.size()) throw ShapeError("channel: direct link missing");
    row += ch.h_direct[static_cast<std::size_t>(k)];
  }
  return row.squaredNorm();
}

}  // namespace

double effective_downlink_gain(const ChannelSet& ch, int k, const VectorXc& v) {
  check_args(ch, k, v);
  return cascaded_gain(ch.g_ap_irs, ch, k, v);
}

double effective_uplink_gain(const ChannelSet& ch, int k, const VectorXc& v) {
  check_args(ch, k, v);
  return cascaded_gain(ch.g_irs_ap, ch, k, v);
}

MatrixXc build_qk(const ChannelSet& ch, int k) {
  if (k < 0 || k >= ch.users()) throw ShapeError("build_qk: user index out of range");
  const auto& h = ch.h_irs_ud[static_cast<std::size_t>(k)];
  // v^H diag(h) conj(g g^H) diag(conj h) v == ||h^H diag(v) g||^2
  auto term = [&](const MatrixXc& g) -> MatrixXc {
    MatrixXc ggh = (g * g.adjoint()).conjugate();
    return h.asDiagonal() * ggh * h.conjugate().asDiagonal();
  };
  MatrixXc q = ch.reciprocity_pair() ? MatrixXc(2.0 * term(ch.g_ap_irs))
                                     : MatrixXc(term(ch.g_ap_irs) + term(ch.g_irs_ap));
  return (q + q.adjoint()) / 2.0;
}

LinkGains link_gains(const ChannelSet& ch, const VectorXc& v) {
  LinkGains out;
  out.downlink.resize(ch.users());
  out.uplink.resize(ch.users());
  for (int k = 0; k < ch.users(); ++k) {
    out.downlink(k) = effective_downlink_gain(ch, k, v);
    out.uplink(k) = ch.reciprocity_pair() ? out.downlink(k) : effective_uplink_gain(ch, k, v);
  }
  return out;
}

}  // namespace irssl
