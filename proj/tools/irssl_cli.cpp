// Copyright 2026 The irssl Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: single runs and parameter sweeps.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irssl/config.hpp"
#include "irssl/experiment.hpp"

namespace {

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::istringstream is(item);
    T v;
    if (!(is >> v) || !(is >> std::ws).eof()) throw irssl::DomainError("bad list entry: " + item);
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRS-assisted split inference with digital-twin backup"};
  std::string config_path, scheme = "proposed", out_dir = "out";
  std::uint64_t seed = 0;
  int iters = -1;
  std::string sweep, values, seeds_text, schemes_text;
  bool verbose = false, timing = false, dump_config = false;

  app.add_option("--config", config_path, "scenario file (section.key = value)");
  app.add_option("--scheme", scheme, "proposed | full-local | full-offload | ga | admm");
  app.add_option("--seed", seed, "scenario seed");
  app.add_option("--iters", iters, "outer iteration cap (default from config)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--sweep", sweep, "sweep axis: k_users | n_irs | p_total_w");
  app.add_option("--values", values, "comma-separated axis values");
  app.add_option("--seeds", seeds_text, "comma-separated seeds for a sweep");
  app.add_option("--schemes", schemes_text, "comma-separated schemes for a sweep");
  app.add_flag("--verbose", verbose, "print per-step objective values");
  app.add_flag("--timing", timing, "record wall-clock step timings in trace.csv");
  app.add_flag("--dump-config", dump_config, "print the effective config and exit");
  CLI11_PARSE(app, argc, argv);

  irssl::SystemConfig config;
  try {
    config = config_path.empty() ? irssl::parse_config("") : irssl::load_config(config_path);
  } catch (const irssl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    for (const auto& issue : e.issues()) std::cerr << "  " << issue << '\n';
    return irssl::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return irssl::kExitConfig;
  }
  if (timing) config.solver.record_timing = true;
  if (iters > 0) config.solver.max_iter = iters;

  if (dump_config) {
    std::cout << irssl::serialize_config(config);
    return irssl::kExitOk;
  }

  irssl::RunOptions opts;
  opts.max_iter = config.solver.max_iter;
  opts.eps_conv = config.solver.eps_conv;
  opts.record_timing = config.solver.record_timing;
  if (verbose) opts.log = &std::cerr;

  if (!sweep.empty()) {
    try {
      const auto axis = irssl::parse_axis(sweep);
      const auto vals = parse_list<double>(values);
      auto seeds = parse_list<std::uint64_t>(seeds_text);
      if (seeds.empty()) seeds.push_back(seed);
      auto schemes = split_names(schemes_text);
      if (schemes.empty()) schemes.push_back(scheme);
      const auto rows = irssl::run_sweep(config, axis, vals, schemes, seeds, out_dir, opts);
      std::cout << "wrote " << rows.size() << " rows to " << out_dir << "/sweep.csv\n";
      return irssl::kExitOk;
    } catch (const irssl::ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return irssl::kExitConfig;
    } catch (const irssl::DomainError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return irssl::kExitConfig;
    } catch (const std::ios_base::failure& e) {
      std::cerr << "i/o error: " << e.what() << '\n';
      return irssl::kExitIo;
    }
  }

  const auto outcome = irssl::run_experiment(config, scheme, seed, out_dir, opts);
  if (!outcome.message.empty()) std::cerr << outcome.message << '\n';
  if (outcome.status != irssl::kExitConfig && outcome.status != irssl::kExitIo) {
    const auto& t = outcome.result.totals;
    std::cout << scheme << " seed=" << seed << " J=" << irssl::format_number(t.j)
              << " delay=" << irssl::format_number(t.sum_delay)
              << " iters=" << outcome.result.iterations_used << " status=" << outcome.status << '\n';
  }
  return outcome.status;
}
