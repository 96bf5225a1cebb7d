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

#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "qwalk/cocycle.hpp"
#include "qwalk/random.hpp"

namespace qwalk {

enum class Family { euler, repeated_interaction, example7 };

/// Everything a convergence experiment needs: the limit generator, the rule
/// producing the step-h walk family, grids, test vectors and operands.
struct SweepConfig {
  Family family = Family::euler;
  Adaptedness adaptedness = Adaptedness::vacuum;
  std::optional<Generator> limit;   // identity-form theta for identity mode,
                                    // vacuum-form psi for vacuum mode
  std::optional<GKSLData> gksl;     // family == repeated_interaction
  double c = 0.0;                   // family == example7
  bool limit_is_homomorphic = false;
  std::vector<double> h_grid;  // positive, decreasing
  std::vector<double> t_grid;
  std::vector<std::pair<ExpVectorLabel, ExpVectorLabel>> test_vectors;
  std::vector<Operator> a_list;
  double tol = 1e-10;
  std::size_t max_dim = 4096;
  std::size_t workers = 1;
  std::uint64_t seed = 0;  // recorded in reports
};

struct ConvergenceRow {
  double h, t;
  std::size_t test_id, a_id;
  cx walk, limit;
  double abs_err;
};

struct NormRow {
  double h, t;
  std::size_t test_id, a_id;
  double walk_norm;
  double limit_norm;  // NaN when the limit is not known to be multiplicative
  double bound;       // chaos-series norm bound
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::vector<NormRow> norm_rows;
  std::vector<std::pair<double, double>> sup_per_h;  // (h, sup abs error)
  bool sup_monotone = false;
  double final_sup = 0.0;
  std::uint64_t seed = 0;

  std::string to_csv() const;
  std::string to_json() const;
};

ConvergenceReport convergence_sweep(const SweepConfig& cfg);

struct CheckRow {
  std::string name;
  double deviation;
  double tol;
  bool pass;
};

struct CheckReport {
  std::vector<CheckRow> rows;
  bool all_pass = true;
  std::uint64_t seed = 0;

  void add(std::string name, double deviation, double tol);
  std::string to_json() const;
};

// The scalar example: one-step closed form against matrix powers, vacuum
// moments of the embedded walk against tensor contractions, the limit
// moments against the stochastic-exponential iteration, the walk position
// lattice, and the two asymmetric mixed inner products.
CheckReport example7_suite(double c, double h, double t_max,
                           double tol = 1e-10);

// Closed forms used by the suite and by the acceptance tests.
double example7_single_step_moment(double c, double h, std::size_t m);
double example7_limit_moment(double c, double t, std::size_t m);
Generator example7_walk_generator(double c, double h);
Generator example7_theta(double c);
// Stochastic-exponential action: value and new argument of
// X_t eps(f) = exp(int_0^t f) eps(f + 1_{[0,t)}(1 + c f)).
std::pair<cx, StepFunction> doleans_action(double c, double t,
                                           const StepFunction& f);
// Mixed products <k_s(1) eps(1_{[0,T)}), K_t(1) eps(0)> and
// <K_t(1) eps(1_{[0,T)}), k_s(1) eps(0)>, in closed form.
double example7_mixed_k_walk(double c, double h, double s, double t);
double example7_mixed_walk_k(double c, double h, double s, double t);

CheckReport dilation_check(const GKSLData& data,
                           const std::vector<double>& t_grid,
                           double tol = 1e-10);

CheckReport multiplicativity_check(const GKSLData& data, double h,
                                   std::size_t m_max, double tol = 1e-10,
                                   std::uint64_t seed = 1);

struct AppendixAResult {
  double exact;
  double bound;
};

// Exact squared mass of the projected grid tensor over the part of the
// simplex not covered by full increasing h-boxes, with the closed upper
// bound it must respect.
AppendixAResult appendix_a_check(const StepFunction& f, double h,
                                 std::size_t m, double t);

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

std::string format_double(double v);

}  // namespace qwalk
