// Copyright 2026 The qwalk authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "qwalk/json_io.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitBudget = 3;

qwalk::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open config file '" << path << "'\n";
    std::exit(kExitBadConfig);
  }
  try {
    return qwalk::json::parse(in);
  } catch (const std::exception& e) {
    std::cerr << "error: malformed config '" << path << "': " << e.what()
              << "\n";
    std::exit(kExitBadConfig);
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    std::exit(kExitBadConfig);
  }
  out << content;
}

int print_report(const qwalk::CheckReport& rep, const std::string& out_base) {
  for (const auto& r : rep.rows)
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
              << "  deviation=" << qwalk::format_double(r.deviation)
              << " tol=" << qwalk::format_double(r.tol) << "\n";
  if (!out_base.empty()) write_file(out_base + ".json", rep.to_json());
  return rep.all_pass ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qwalk: quantum random walks on toy Fock space, their vacuum/QS "
      "cocycle limits, and the verification suites around them"};
  app.set_help_flag("--help", "print usage");  // keep --h free for step sizes
  app.require_subcommand(1);

  double tol = 1e-10;
  std::size_t max_dim = 4096;
  std::size_t workers = 1;
  std::uint64_t seed = 1;
  std::string out_base = "report";
  app.add_option("--tol", tol, "assertion tolerance");
  app.add_option("--max-dim", max_dim, "tensor dimension budget");
  app.add_option("--workers", workers, "worker threads (output-invariant)");
  app.add_option("--seed", seed, "PRNG seed for generated instances");
  app.add_option("--out", out_base, "output path base (.csv/.json appended)");

  auto* conv = app.add_subcommand("converge", "walk vs cocycle sweep");
  std::string conv_config;
  conv->add_option("--config", conv_config, "sweep config JSON")->required();

  auto* ex7 = app.add_subcommand("example7", "scalar example suite");
  double ex7_c = 0.0, ex7_h = 0.01, ex7_tmax = 1.0;
  ex7->add_option("--c", ex7_c, "gauge weight c");
  ex7->add_option("--h", ex7_h, "step size");
  ex7->add_option("--tmax", ex7_tmax, "time horizon");

  auto* dil = app.add_subcommand("dilate", "compressed cocycle vs exponential");
  std::string dil_config;
  std::vector<double> dil_t{0.1, 1.0};
  std::size_t dil_dh = 2, dil_dk = 1;
  dil->add_option("--config", dil_config, "GKSL data JSON");
  dil->add_option("--t", dil_t, "time grid");
  dil->add_option("--dh", dil_dh, "system dimension for seeded data");
  dil->add_option("--dk", dil_dk, "noise dimension for seeded data");

  auto* dec = app.add_subcommand("decompose",
                                 "discrete chaos decomposition residuals");
  std::size_t dec_count = 20, dec_n = 6, dec_dh = 2, dec_dk = 1;
  double dec_h = 0.5;
  dec->add_option("--count", dec_count, "number of seeded instances");
  dec->add_option("--h", dec_h, "step size");
  dec->add_option("--n", dec_n, "walk steps");
  dec->add_option("--dh", dec_dh, "system dimension");
  dec->add_option("--dk", dec_dk, "noise dimension");

  auto* apx = app.add_subcommand("appendix-a",
                                 "projection remainder estimate check");
  std::size_t apx_count = 50;
  apx->add_option("--count", apx_count, "number of seeded instances");

  auto* mult = app.add_subcommand("multhom", "walk homomorphism deviations");
  std::string mult_config;
  double mult_h = 0.1;
  std::size_t mult_mmax = 3, mult_dh = 2, mult_dk = 1;
  mult->add_option("--config", mult_config, "GKSL data JSON");
  mult->add_option("--h", mult_h, "step size");
  mult->add_option("--mmax", mult_mmax, "largest walk power");
  mult->add_option("--dh", mult_dh, "system dimension for seeded data");
  mult->add_option("--dk", mult_dk, "noise dimension for seeded data");

  CLI11_PARSE(app, argc, argv);

  try {
    if (conv->parsed()) {
      qwalk::json cfg_json = load_config(conv_config);
      qwalk::SweepConfig cfg;
      try {
        cfg = qwalk::sweep_config_from_json(cfg_json);
      } catch (const std::exception& e) {
        std::cerr << "error: invalid sweep config '" << conv_config
                  << "': " << e.what() << "\n";
        return kExitBadConfig;
      }
      cfg.max_dim = max_dim;
      cfg.workers = workers;
      if (cfg.seed == 0) cfg.seed = seed;
      const qwalk::ConvergenceReport rep = qwalk::convergence_sweep(cfg);
      write_file(out_base + ".csv", rep.to_csv());
      write_file(out_base + ".json", rep.to_json());
      std::cout << (rep.sup_monotone ? "[PASS] " : "[FAIL] ")
                << "sup error decreasing over h grid; final sup = "
                << qwalk::format_double(rep.final_sup) << "\n";
      return rep.sup_monotone ? 0 : kExitCheckFailed;
    }

    if (ex7->parsed()) {
      const qwalk::CheckReport rep =
          qwalk::example7_suite(ex7_c, ex7_h, ex7_tmax, tol);
      return print_report(rep, out_base);
    }

    if (dil->parsed()) {
      qwalk::GKSLData data = [&] {
        if (!dil_config.empty())
          return qwalk::gksl_from_json(load_config(dil_config));
        qwalk::Prng rng(seed);
        return rng.gksl(dil_dh, dil_dk, 0.8);
      }();
      qwalk::CheckReport rep = qwalk::dilation_check(data, dil_t, tol);
      rep.seed = seed;
      return print_report(rep, out_base);
    }

    if (dec->parsed()) {
      qwalk::Prng rng(seed);
      qwalk::CheckReport rep;
      rep.seed = seed;
      for (std::size_t i = 0; i < dec_count; ++i) {
        const qwalk::Generator phi = rng.generator(dec_dh, dec_dk);
        const qwalk::ExpVectorLabel bra{rng.vector(dec_dh),
                                        rng.step_function(dec_dk, 3, 2.0)};
        const qwalk::ExpVectorLabel ket{rng.vector(dec_dh),
                                        rng.step_function(dec_dk, 3, 2.0)};
        const qwalk::Operator a = rng.matrix(dec_dh, dec_dh);
        const double res = qwalk::decomposition_residual(
            phi, dec_h, dec_n, a, bra, ket, max_dim);
        rep.add("residual_" + std::to_string(i), res, 1e-11);
      }
      return print_report(rep, out_base);
    }

    if (apx->parsed()) {
      qwalk::Prng rng(seed);
      qwalk::CheckReport rep;
      rep.seed = seed;
      for (std::size_t i = 0; i < apx_count; ++i) {
        const qwalk::StepFunction f = rng.step_function(1, 4, 2.0);
        const double h = rng.uniform(0.05, 0.5);
        const std::size_t m = 1 + (i % 3);
        const double t = rng.uniform(0.2, 2.0);
        const auto res = qwalk::appendix_a_check(f, h, m, t);
        // the exact remainder must stay below the closed bound
        rep.add("estimate_" + std::to_string(i),
                std::max(res.exact - res.bound, 0.0) +
                    std::max(-res.exact, 0.0),
                1e-12);
      }
      return print_report(rep, out_base);
    }

    if (mult->parsed()) {
      qwalk::GKSLData data = [&] {
        if (!mult_config.empty())
          return qwalk::gksl_from_json(load_config(mult_config));
        qwalk::Prng rng(seed);
        return rng.gksl(mult_dh, mult_dk, 0.8);
      }();
      const qwalk::CheckReport rep =
          qwalk::multiplicativity_check(data, mult_h, mult_mmax, tol, seed);
      return print_report(rep, out_base);
    }
  } catch (const qwalk::budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  }
  return 0;
}
