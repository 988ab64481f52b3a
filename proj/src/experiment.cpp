// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

#include "irssl/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "irssl/baselines.hpp"

namespace irssl {

namespace fs = std::filesystem;

const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names{"proposed", "full-local", "full-offload", "ga",
                                              "admm"};
  return names;
}

bool is_scheme(const std::string& name) {
  const auto& n = scheme_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

RunResult run_scheme(const Scenario& sc, const std::string& scheme, const RunOptions& opts) {
  const auto& cfg = sc.config;
  if (scheme == "proposed") return run(cfg, sc.channels, sc.profiles, sc.seed, opts);
  if (scheme == "full-local") return run_full_local(cfg, sc.channels, sc.profiles);
  if (scheme == "full-offload") return run_full_offload(cfg, sc.channels, sc.profiles, sc.seed);
  if (scheme == "ga") return run_ga(cfg, sc.channels, sc.profiles, cfg.ga, sc.seed);
  if (scheme == "admm") return run_admm_detailed(cfg, sc.channels, sc.profiles, cfg.admm, sc.seed).result;
  throw DomainError("unknown scheme: " + scheme);
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string trace_csv(const RunResult& r) {
  std::ostringstream s;
  s << "iter,j_value,sum_delay_s,loss_term,t_dl_sum,t_ul_sum,t_comp_sum,dt_fraction,violations,"
       "step1_ms,step2_ms,step3_ms,step4_ms,step5_ms\n";
  for (const auto& t : r.traces) {
    s << t.iter << ',' << format_number(t.j_value) << ',' << format_number(t.sum_delay) << ','
      << format_number(t.loss_term) << ',' << format_number(t.t_dl_sum) << ','
      << format_number(t.t_ul_sum) << ',' << format_number(t.t_comp_sum) << ','
      << format_number(t.alpha_fraction_dt) << ',' << t.violations;
    for (double ms : t.per_step_ms) s << ',' << format_number(ms);
    s << '\n';
  }
  return s.str();
}

std::string alpha_csv(const RunResult& r) {
  std::ostringstream s;
  s << "k,alpha_k,m_k,delta_f_k,p_ap_k\n";
  const auto& f = r.final;
  for (int k = 0; k < f.users(); ++k)
    s << k << ',' << f.alpha(k) << ',' << f.m(k) << ',' << format_number(f.delta_f(k)) << ','
      << format_number(f.p_ap(k)) << '\n';
  return s.str();
}

std::string summary_json(const RunResult& r, std::uint64_t seed, int status,
                         const std::string& message) {
  using nlohmann::json;
  const auto& f = r.final;
  auto vec = [](const auto& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
  };
  json v_re = json::array(), v_im = json::array();
  for (Eigen::Index i = 0; i < f.v.size(); ++i) {
    v_re.push_back(f.v(i).real());
    v_im.push_back(f.v(i).imag());
  }
  json viol = json::array();
  for (const auto& v : r.violations)
    viol.push_back({{"constraint", v.constraint}, {"k", v.k}, {"residual", v.residual}});
  json j = {
      {"scheme", r.scheme},
      {"seed", seed},
      {"status", status},
      {"converged", r.converged},
      {"feasible", r.feasible},
      {"iterations_used", r.iterations_used},
      {"totals",
       {{"j_value", r.totals.j},
        {"sum_delay_s", r.totals.sum_delay},
        {"loss_term", r.totals.loss_term},
        {"t_dl_sum", r.totals.t_dl_sum},
        {"t_ul_sum", r.totals.t_ul_sum},
        {"t_comp_sum", r.totals.t_comp_sum}}},
      {"final",
       {{"m", vec(f.m)},
        {"alpha", vec(f.alpha)},
        {"delta_f", vec(f.delta_f)},
        {"v_re", v_re},
        {"v_im", v_im},
        {"p_ap", vec(f.p_ap)}}},
      {"violations", viol},
  };
  if (!message.empty()) j["message"] = message;
  return j.dump(2) + "\n";
}

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path.string());
  out << text;
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
}

bool prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  return fs::is_directory(dir, ec);
}

}  // namespace

ExperimentOutcome run_experiment(const SystemConfig& config, const std::string& scheme,
                                 std::uint64_t seed, const fs::path& out_dir,
                                 const RunOptions& opts) {
  ExperimentOutcome out;
  if (!is_scheme(scheme)) {
    out.status = kExitConfig;
    out.message = "unknown scheme: " + scheme;
    return out;
  }
  if (!prepare_dir(out_dir)) {
    out.status = kExitIo;
    out.message = "cannot create output directory " + out_dir.string();
    return out;
  }
  try {
    const auto sc = make_scenario(config, seed);
    try {
      out.result = run_scheme(sc, scheme, opts);
      out.status = out.result.feasible ? kExitOk : kExitInfeasible;
      if (!out.result.feasible) {
        std::ostringstream s;
        s << out.result.violations.size() << " constraint violations; first: "
          << describe(out.result.violations.front());
        out.message = s.str();
      }
    } catch (const RunAborted& e) {
      out.result = e.partial();
      out.status = kExitSolver;
      out.message = e.what();
    } catch (const InfeasibleError& e) {
      out.status = kExitInfeasible;
      out.message = e.what();
    } catch (const ConvergenceError& e) {
      out.status = kExitSolver;
      out.message = e.what();
    }
  } catch (const ConfigError& e) {
    out.status = kExitConfig;
    out.message = e.what();
    return out;
  }
  if (out.result.scheme.empty()) out.result.scheme = scheme;
  try {
    write_file(out_dir / "trace.csv", trace_csv(out.result));
    write_file(out_dir / "summary.json", summary_json(out.result, seed, out.status, out.message));
    if (out.result.final.users() > 0) write_file(out_dir / "alpha.csv", alpha_csv(out.result));
  } catch (const std::ios_base::failure& e) {
    out.status = kExitIo;
    out.message = e.what();
  }
  return out;
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "k_users") return SweepAxis::kUsers;
  if (name == "n_irs") return SweepAxis::kIrsElements;
  if (name == "p_total_w") return SweepAxis::kTotalPower;
  throw DomainError("unknown sweep axis: " + name);
}

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kUsers: return "k_users";
    case SweepAxis::kIrsElements: return "n_irs";
    case SweepAxis::kTotalPower: return "p_total_w";
  }
  return "";
}

SystemConfig with_axis(SystemConfig config, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kUsers: config.k_users = static_cast<int>(std::lround(value)); break;
    case SweepAxis::kIrsElements: config.n_irs = static_cast<int>(std::lround(value)); break;
    case SweepAxis::kTotalPower: config.p_total_w = value; break;
  }
  return config;
}

double median(std::vector<double> xs) {
  if (xs.empty()) return std::nan("");
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

std::vector<SweepRow> run_sweep(const SystemConfig& config, SweepAxis axis,
                                const std::vector<double>& values,
                                const std::vector<std::string>& schemes,
                                const std::vector<std::uint64_t>& seeds, const fs::path& out_dir,
                                const RunOptions& opts) {
  if (values.empty()) throw DomainError("run_sweep: values must be nonempty");
  for (const auto& s : schemes)
    if (!is_scheme(s)) throw DomainError("unknown scheme: " + s);
  if (!prepare_dir(out_dir)) throw std::ios_base::failure("cannot create " + out_dir.string());

  std::vector<SweepRow> rows;
  for (double value : values) {
    const auto cfg = with_axis(config, axis, value);
    cfg.validate();
    for (auto seed : seeds) {
      const auto sc = make_scenario(cfg, seed);
      for (const auto& scheme : schemes) {
        SweepRow row;
        row.value = value;
        row.scheme = scheme;
        row.seed = seed;
        RunResult r;
        try {
          r = run_scheme(sc, scheme, opts);
          row.status = r.feasible ? kExitOk : kExitInfeasible;
        } catch (const RunAborted& e) {
          r = e.partial();
          row.status = kExitSolver;
        }
        row.j_value = r.totals.j;
        row.sum_delay = r.totals.sum_delay;
        row.loss_term = r.totals.loss_term;
        row.mean_p_ap = r.final.p_ap.size() ? r.final.p_ap.mean() : 0.0;
        row.dt_fraction = dt_fraction(r.final.alpha);
        rows.push_back(row);
      }
    }
  }

  const std::string ax = axis_name(axis);
  std::ostringstream s;
  s << ax << ",scheme,seed,status,j_value,sum_delay_s,loss_term,mean_p_ap,dt_fraction\n";
  for (const auto& r : rows)
    s << format_number(r.value) << ',' << r.scheme << ',' << r.seed << ',' << r.status << ','
      << format_number(r.j_value) << ',' << format_number(r.sum_delay) << ','
      << format_number(r.loss_term) << ',' << format_number(r.mean_p_ap) << ','
      << format_number(r.dt_fraction) << '\n';
  write_file(out_dir / "sweep.csv", s.str());

  std::ostringstream med;
  med << ax << ",scheme,n,j_value,sum_delay_s,loss_term,mean_p_ap,dt_fraction\n";
  for (double value : values)
    for (const auto& scheme : schemes) {
      std::vector<double> j, d, l, p, f;
      for (const auto& r : rows)
        if (r.value == value && r.scheme == scheme) {
          j.push_back(r.j_value);
          d.push_back(r.sum_delay);
          l.push_back(r.loss_term);
          p.push_back(r.mean_p_ap);
          f.push_back(r.dt_fraction);
        }
      med << format_number(value) << ',' << scheme << ',' << j.size() << ','
          << format_number(median(j)) << ',' << format_number(median(d)) << ','
          << format_number(median(l)) << ',' << format_number(median(p)) << ','
          << format_number(median(f)) << '\n';
    }
  write_file(out_dir / "sweep_median.csv", med.str());
  return rows;
}

}  // namespace irssl
