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

#include <optional>

#include "qwalk/toywalk.hpp"

namespace qwalk {

/// Ingredients of the chaos-series truncation bound: a single order-m term
/// is worth c_t^m gen_norm^m f_norm^m / sqrt(m!), with c_t = sqrt(2 max{t,1}).
struct TailBound {
  std::size_t m;
  double t;
  double c_t;
  double gen_norm;  // khat-bounded norm surrogate of the generator
  double f_norm;    // ||1_{[0,t)} fhat|| of the ket data

  double term(std::size_t order) const;
  double value() const { return term(m); }
  // sum of all terms from order m on
  double tail_sum() const;
};

// <v, j^{g,f}_t(a) u> through the semigroup product over the refinement of
// the breakpoints of both step functions: the earliest cell's exponential
// acts outermost. Vacuum adaptedness: only f, g restricted to [0, t) enter.
cx semigroup_element_vacuum(const Generator& psi, double t, const Operator& a,
                            const ExpVectorLabel& bra,
                            const ExpVectorLabel& ket);

// The composed superoperator matrix behind the previous element (exposed for
// the cocycle-identity tests); compose_reversed flips the cell order.
Operator semigroup_superop(const Generator& psi, double t,
                           const StepFunction& bra_f, const StepFunction& ket_f,
                           bool compose_reversed = false);

// <v eps(g), k^theta_t(a) u eps(f)> via the adaptedness switch: the vacuum
// element of theta + . (x) delta times exp(integral_t^inf <g, f>).
cx qs_element(const Generator& theta, double t, const Operator& a,
              const ExpVectorLabel& bra, const ExpVectorLabel& ket);

// Exact m-fold integral over the increasing simplex of
// <v (x) ghat^m(t_), X (u (x) fhat^m(t_))>, cell-decomposed over the
// breakpoint grid with the r!-measure for repeated cells.
cx qs_integral_element(const Operator& x, std::size_t m, double t,
                       const ExpVectorLabel& bra, const ExpVectorLabel& ket);

// Same cell sum restricted to the full strictly increasing h-boxes, with the
// sampled legs projected onto the h-grid.
cx modified_integral_element(const Operator& x, std::size_t m, double h,
                             double t, const ExpVectorLabel& bra,
                             const ExpVectorLabel& ket);

struct ChaosOptions {
  std::optional<std::size_t> order;  // explicit truncation order
  double tolerance = 1e-8;           // used when order is not given
  std::size_t order_cap = 12;
  std::size_t max_dim = 4096;
};

struct ChaosResult {
  cx value;
  TailBound tail;       // bound data at the first omitted order
  std::size_t order;    // truncation order actually used
  double element_tail;  // tail_sum scaled by the bra/ket/operand factors
};

// Sum_{m <= M} of the m-fold integrals of the walk powers of psi. When no
// explicit order is given, M is the smallest order whose element-level tail
// bound is below the tolerance; hitting the cap raises budget_error.
ChaosResult chaos_series_element(const Generator& psi, double t,
                                 const Operator& a, const ExpVectorLabel& bra,
                                 const ExpVectorLabel& ket,
                                 const ChaosOptions& opts = {});

// exp(t . E^omega psi(.) E_omega) applied to a.
Operator cpc_semigroup(const Generator& psi, double t, const Operator& a);

}  // namespace qwalk
