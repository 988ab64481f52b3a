// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "irssl/types.hpp"

namespace irssl {

/// Large-scale path loss PL(d) = c0 * (d/d0)^-alpha.
struct PathLossParams {
  double c0 = 1e-3;  // -30 dB at the reference distance
  double d0 = 1.0;
  double alpha_ap_irs = 2.2;
  double alpha_irs_ud = 2.8;
  double alpha_direct = 3.5;
};

struct Point2 {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Node placement. Device positions are drawn uniformly in a square around
/// ud_center unless listed explicitly.
struct GeometryConfig {
  Point2 ap{0.0, 0.0};
  Point2 irs{50.0, 10.0};
  Point2 ud_center{60.0, 0.0};
  double ud_side = 20.0;
  std::vector<Point2> ud_positions;
};

/// Surrogate training loss per cut layer: L(m) for m = 1..M.
/// Either an explicit table or scale*exp(-decay*m).
struct LossProfile {
  std::vector<double> values;  // explicit table; empty means parametric
  double scale = 0.5;
  double decay = 0.3;

  /// Materialized table of length m_layers.
  std::vector<double> table(int m_layers) const;
};

/// Per-layer uplink payload model: bits(m) = bits_per_element * width0 * decay^m.
struct PayloadParams {
  double bits_per_element = 32.0;
  double width0 = 3e5;
  double width_decay = 0.6;
  double dl_bits = 2e5;
  double raw_input_bits = 0.0;  // uplink payload at cut 0; 0 means bits(0)
};

/// Distributions for the randomly drawn device profiles.
struct ProfileParams {
  double layer_load_min = 0.5e9;  // cycles per layer
  double layer_load_max = 1.5e9;
  double f_loc_min = 5e9;  // Hz
  double f_loc_max = 12e9;
};

struct SolverParams {
  int max_iter = 25;
  double eps_conv = 1e-4;
  double sdp_tol = 1e-7;
  int sdp_max_iter = 200;
  int n_rand = 100;
  double bisect_tol_rel = 1e-13;
  int bisect_max_iter = 400;
  bool record_timing = false;
};

struct GaParams {
  int population = 40;
  int generations = 60;
  double crossover_rate = 0.8;
  double mutation_rate = 0.05;
  int tournament_size = 3;
};

struct AdmmParams {
  double rho = 1.0;
  int max_iter = 100;
  double tol = 1e-4;
};

/// Every scenario parameter. Defaults follow the reference simulation setup;
/// values not pinned there are documented in README.md.
struct SystemConfig {
  int k_users = 100;
  int m_layers = 12;
  int n_ap = 32;
  int n_irs = 32;

  double bandwidth_hz = 10e6;
  double noise_w = 1e-11;
  double p_total_w = 3.0;
  double p_max_w = 1.0;
  double p_ul_w = 0.1;
  double delta_f_max_hz = 20e9;
  double t_max_s = 2.0;
  double r_min_bps = 5e3;
  double lambda_weight = 1.0;
  double kappa = 1e-28;  // parsed and carried, not part of the objective
  double f_ap_hz = 50e9;

  bool reciprocity = true;
  bool direct_link = false;

  LossProfile loss;
  PathLossParams path_loss;
  GeometryConfig geometry;
  PayloadParams payload;
  ProfileParams profile;
  SolverParams solver;
  GaParams ga;
  AdmmParams admm;

  /// Throws ConfigError listing every violated rule.
  void validate() const;
  std::vector<std::string> validation_issues() const;
};

/// Parses flat "section.key = value" text. Missing keys keep their defaults.
SystemConfig parse_config(const std::string& text);
SystemConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config; every key is written with full precision.
std::string serialize_config(const SystemConfig& config);

}  // namespace irssl
