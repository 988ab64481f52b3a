// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#include "irssl/config.hpp"

#include <algorithm>
#include <charconv>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace irssl {

std::vector<double> LossProfile::table(int m_layers) const {
  if (!values.empty()) return values;
  std::vector<double> out(static_cast<std::size_t>(std::max(m_layers, 0)));
  for (int m = 1; m <= m_layers; ++m)
    out[static_cast<std::size_t>(m - 1)] = scale * std::exp(-decay * m);
  return out;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

double to_double(const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
    throw std::invalid_argument("expected a number, got '" + s + "'");
  return v;
}

int to_int(const std::string& s) {
  const double v = to_double(s);
  if (v != std::floor(v) || std::abs(v) > 2e9)
    throw std::invalid_argument("expected an integer, got '" + s + "'");
  return static_cast<int>(v);
}

bool to_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument("expected true/false, got '" + s + "'");
}

// Shortest text that parses back to the same double.
std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Field {
  std::string key;
  std::function<void(SystemConfig&, const std::string&)> set;
  std::function<std::string(const SystemConfig&)> get;
};

template <typename Ref>
Field real_field(std::string key, Ref ref) {
  return {std::move(key), [ref](SystemConfig& c, const std::string& v) { ref(c) = to_double(v); },
          [ref](const SystemConfig& c) { return fmt(ref(const_cast<SystemConfig&>(c))); }};
}

template <typename Ref>
Field int_field(std::string key, Ref ref) {
  return {std::move(key), [ref](SystemConfig& c, const std::string& v) { ref(c) = to_int(v); },
          [ref](const SystemConfig& c) { return std::to_string(ref(const_cast<SystemConfig&>(c))); }};
}

template <typename Ref>
Field bool_field(std::string key, Ref ref) {
  return {std::move(key), [ref](SystemConfig& c, const std::string& v) { ref(c) = to_bool(v); },
          [ref](const SystemConfig& c) {
            return std::string(ref(const_cast<SystemConfig&>(c)) ? "true" : "false");
          }};
}

#define IRSSL_REF(expr) [](SystemConfig& c) -> auto& { return c.expr; }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(int_field("system.k_users", IRSSL_REF(k_users)));
    f.push_back(int_field("system.m_layers", IRSSL_REF(m_layers)));
    f.push_back(int_field("system.n_ap", IRSSL_REF(n_ap)));
    f.push_back(int_field("system.n_irs", IRSSL_REF(n_irs)));
    f.push_back(real_field("radio.bandwidth_hz", IRSSL_REF(bandwidth_hz)));
    f.push_back(real_field("radio.noise_w", IRSSL_REF(noise_w)));
    f.push_back(real_field("radio.r_min_bps", IRSSL_REF(r_min_bps)));
    f.push_back(bool_field("radio.reciprocity", IRSSL_REF(reciprocity)));
    f.push_back(bool_field("radio.direct_link", IRSSL_REF(direct_link)));
    f.push_back(real_field("power.p_total_w", IRSSL_REF(p_total_w)));
    f.push_back(real_field("power.p_max_w", IRSSL_REF(p_max_w)));
    f.push_back(real_field("power.p_ul_w", IRSSL_REF(p_ul_w)));
    f.push_back(real_field("dt.delta_f_max_hz", IRSSL_REF(delta_f_max_hz)));
    f.push_back(real_field("dt.t_max_s", IRSSL_REF(t_max_s)));
    f.push_back(real_field("objective.lambda", IRSSL_REF(lambda_weight)));
    f.push_back(real_field("energy.kappa", IRSSL_REF(kappa)));
    f.push_back(real_field("ap.f_ap_hz", IRSSL_REF(f_ap_hz)));
    f.push_back(real_field("loss.scale", IRSSL_REF(loss.scale)));
    f.push_back(real_field("loss.decay", IRSSL_REF(loss.decay)));
    f.push_back({"loss.values",
                 [](SystemConfig& c, const std::string& v) {
                   c.loss.values.clear();
                   for (const auto& s : split(v, ',')) c.loss.values.push_back(to_double(s));
                 },
                 [](const SystemConfig& c) {
                   std::string out;
                   for (std::size_t i = 0; i < c.loss.values.size(); ++i)
                     out += (i ? "," : "") + fmt(c.loss.values[i]);
                   return out;
                 }});
    f.push_back(real_field("path_loss.c0", IRSSL_REF(path_loss.c0)));
    f.push_back(real_field("path_loss.d0", IRSSL_REF(path_loss.d0)));
    f.push_back(real_field("path_loss.alpha_ap_irs", IRSSL_REF(path_loss.alpha_ap_irs)));
    f.push_back(real_field("path_loss.alpha_irs_ud", IRSSL_REF(path_loss.alpha_irs_ud)));
    f.push_back(real_field("path_loss.alpha_direct", IRSSL_REF(path_loss.alpha_direct)));
    f.push_back(real_field("geometry.ap_x", IRSSL_REF(geometry.ap.x)));
    f.push_back(real_field("geometry.ap_y", IRSSL_REF(geometry.ap.y)));
    f.push_back(real_field("geometry.irs_x", IRSSL_REF(geometry.irs.x)));
    f.push_back(real_field("geometry.irs_y", IRSSL_REF(geometry.irs.y)));
    f.push_back(real_field("geometry.ud_center_x", IRSSL_REF(geometry.ud_center.x)));
    f.push_back(real_field("geometry.ud_center_y", IRSSL_REF(geometry.ud_center.y)));
    f.push_back(real_field("geometry.ud_side", IRSSL_REF(geometry.ud_side)));
    f.push_back({"geometry.ud_positions",
                 [](SystemConfig& c, const std::string& v) {
                   c.geometry.ud_positions.clear();
                   for (const auto& s : split(v, ',')) {
                     const auto xy = split(s, ':');
                     if (xy.size() != 2) throw std::invalid_argument("expected x:y, got '" + s + "'");
                     c.geometry.ud_positions.push_back({to_double(xy[0]), to_double(xy[1])});
                   }
                 },
                 [](const SystemConfig& c) {
                   std::string out;
                   const auto& p = c.geometry.ud_positions;
                   for (std::size_t i = 0; i < p.size(); ++i)
                     out += (i ? "," : "") + fmt(p[i].x) + ":" + fmt(p[i].y);
                   return out;
                 }});
    f.push_back(real_field("payload.bits_per_element", IRSSL_REF(payload.bits_per_element)));
    f.push_back(real_field("payload.width0", IRSSL_REF(payload.width0)));
    f.push_back(real_field("payload.width_decay", IRSSL_REF(payload.width_decay)));
    f.push_back(real_field("payload.dl_bits", IRSSL_REF(payload.dl_bits)));
    f.push_back(real_field("payload.raw_input_bits", IRSSL_REF(payload.raw_input_bits)));
    f.push_back(real_field("profile.layer_load_min", IRSSL_REF(profile.layer_load_min)));
    f.push_back(real_field("profile.layer_load_max", IRSSL_REF(profile.layer_load_max)));
    f.push_back(real_field("profile.f_loc_min", IRSSL_REF(profile.f_loc_min)));
    f.push_back(real_field("profile.f_loc_max", IRSSL_REF(profile.f_loc_max)));
    f.push_back(int_field("solver.max_iter", IRSSL_REF(solver.max_iter)));
    f.push_back(real_field("solver.eps_conv", IRSSL_REF(solver.eps_conv)));
    f.push_back(real_field("solver.sdp_tol", IRSSL_REF(solver.sdp_tol)));
    f.push_back(int_field("solver.sdp_max_iter", IRSSL_REF(solver.sdp_max_iter)));
    f.push_back(int_field("solver.n_rand", IRSSL_REF(solver.n_rand)));
    f.push_back(real_field("solver.bisect_tol_rel", IRSSL_REF(solver.bisect_tol_rel)));
    f.push_back(int_field("solver.bisect_max_iter", IRSSL_REF(solver.bisect_max_iter)));
    f.push_back(bool_field("solver.record_timing", IRSSL_REF(solver.record_timing)));
    f.push_back(int_field("ga.population", IRSSL_REF(ga.population)));
    f.push_back(int_field("ga.generations", IRSSL_REF(ga.generations)));
    f.push_back(real_field("ga.crossover_rate", IRSSL_REF(ga.crossover_rate)));
    f.push_back(real_field("ga.mutation_rate", IRSSL_REF(ga.mutation_rate)));
    f.push_back(int_field("ga.tournament_size", IRSSL_REF(ga.tournament_size)));
    f.push_back(real_field("admm.rho", IRSSL_REF(admm.rho)));
    f.push_back(int_field("admm.max_iter", IRSSL_REF(admm.max_iter)));
    f.push_back(real_field("admm.tol", IRSSL_REF(admm.tol)));
    return f;
  }();
  return table;
}

#undef IRSSL_REF

}  // namespace

std::vector<std::string> SystemConfig::validation_issues() const {
  std::vector<std::string> bad;
  auto positive = [&](const char* key, double v) {
    if (!(v > 0) || !std::isfinite(v)) bad.push_back(std::string(key) + " must be positive and finite");
  };
  auto nonneg = [&](const char* key, double v) {
    if (!(v >= 0) || !std::isfinite(v)) bad.push_back(std::string(key) + " must be >= 0 and finite");
  };
  auto at_least = [&](const char* key, int v, int lo) {
    if (v < lo) bad.push_back(std::string(key) + " must be >= " + std::to_string(lo));
  };
  auto unit = [&](const char* key, double v) {
    if (!(v >= 0 && v <= 1)) bad.push_back(std::string(key) + " must lie in [0, 1]");
  };

  at_least("system.k_users", k_users, 1);
  at_least("system.m_layers", m_layers, 1);
  at_least("system.n_ap", n_ap, 1);
  at_least("system.n_irs", n_irs, 1);
  positive("radio.bandwidth_hz", bandwidth_hz);
  positive("radio.noise_w", noise_w);
  nonneg("radio.r_min_bps", r_min_bps);
  positive("power.p_total_w", p_total_w);
  positive("power.p_max_w", p_max_w);
  nonneg("power.p_ul_w", p_ul_w);
  positive("dt.delta_f_max_hz", delta_f_max_hz);
  positive("dt.t_max_s", t_max_s);
  nonneg("objective.lambda", lambda_weight);
  nonneg("energy.kappa", kappa);
  if (!(f_ap_hz > 0)) bad.push_back("ap.f_ap_hz must be positive");  // +inf allowed

  if (loss.values.empty()) {
    nonneg("loss.scale", loss.scale);
    if (!std::isfinite(loss.decay)) bad.push_back("loss.decay must be finite");
  } else {
    if (static_cast<int>(loss.values.size()) != m_layers)
      bad.push_back("loss.values must have system.m_layers entries");
    for (double v : loss.values)
      if (!(v >= 0) || !std::isfinite(v)) {
        bad.push_back("loss.values entries must be finite and >= 0");
        break;
      }
  }

  positive("path_loss.c0", path_loss.c0);
  positive("path_loss.d0", path_loss.d0);
  positive("path_loss.alpha_ap_irs", path_loss.alpha_ap_irs);
  positive("path_loss.alpha_irs_ud", path_loss.alpha_irs_ud);
  positive("path_loss.alpha_direct", path_loss.alpha_direct);

  nonneg("geometry.ud_side", geometry.ud_side);
  if (!geometry.ud_positions.empty() && static_cast<int>(geometry.ud_positions.size()) != k_users)
    bad.push_back("geometry.ud_positions must have system.k_users entries");
  if (geometry.ap == geometry.irs) bad.push_back("geometry: AP and IRS positions must differ");

  positive("payload.bits_per_element", payload.bits_per_element);
  positive("payload.width0", payload.width0);
  positive("payload.width_decay", payload.width_decay);
  positive("payload.dl_bits", payload.dl_bits);
  nonneg("payload.raw_input_bits", payload.raw_input_bits);

  positive("profile.layer_load_min", profile.layer_load_min);
  if (!(profile.layer_load_max >= profile.layer_load_min))
    bad.push_back("profile.layer_load_max must be >= profile.layer_load_min");
  positive("profile.f_loc_min", profile.f_loc_min);
  if (!(profile.f_loc_max >= profile.f_loc_min))
    bad.push_back("profile.f_loc_max must be >= profile.f_loc_min");

  at_least("solver.max_iter", solver.max_iter, 1);
  nonneg("solver.eps_conv", solver.eps_conv);
  positive("solver.sdp_tol", solver.sdp_tol);
  at_least("solver.sdp_max_iter", solver.sdp_max_iter, 1);
  at_least("solver.n_rand", solver.n_rand, 1);
  positive("solver.bisect_tol_rel", solver.bisect_tol_rel);
  at_least("solver.bisect_max_iter", solver.bisect_max_iter, 1);

  at_least("ga.population", ga.population, 2);
  at_least("ga.generations", ga.generations, 1);
  unit("ga.crossover_rate", ga.crossover_rate);
  unit("ga.mutation_rate", ga.mutation_rate);
  at_least("ga.tournament_size", ga.tournament_size, 1);
  positive("admm.rho", admm.rho);
  at_least("admm.max_iter", admm.max_iter, 1);
  positive("admm.tol", admm.tol);
  return bad;
}

void SystemConfig::validate() const {
  auto bad = validation_issues();
  if (!bad.empty()) throw ConfigError(std::move(bad));
}

SystemConfig parse_config(const std::string& text) {
  SystemConfig cfg;
  std::vector<std::string> issues;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      issues.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
      continue;
    }
    const auto key = trim(std::string_view(body).substr(0, eq));
    const auto value = trim(std::string_view(body).substr(eq + 1));
    const auto& table = fields();
    auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return f.key == key; });
    if (it == table.end()) {
      issues.push_back("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      continue;
    }
    if (!seen.insert(key).second) {
      issues.push_back("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
      continue;
    }
    try {
      it->set(cfg, value);
    } catch (const std::invalid_argument& e) {
      issues.push_back("line " + std::to_string(lineno) + ": " + key + ": " + e.what());
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  cfg.validate();
  return cfg;
}

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path.string() + "'"});
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const SystemConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    const auto v = f.get(config);
    if (v.empty()) continue;  // empty lists mean "use the generated default"
    out += f.key + " = " + v + "\n";
  }
  return out;
}

}  // namespace irssl
