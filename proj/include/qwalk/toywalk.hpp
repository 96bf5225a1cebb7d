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

#include "qwalk/generator.hpp"
#include "qwalk/step_function.hpp"

namespace qwalk {

/// Label (u, f) for the vector u eps(f); bra labels are written (v, g) at
/// call sites but carry the same type.
struct ExpVectorLabel {
  std::vector<cx> u;
  StepFunction f;
};

// <v (x) ghat(0;h) ... ghat(n-1;h), phi^(n)(a) (u (x) fhat(0;h) ...)> with
// n = floor(t/h); the vacuum tail contributes factor 1 since the hat lift
// keeps a unit omega component. Evaluated by peeling one slot per step, so
// nothing larger than phi(a) is ever materialised.
cx walk_element_vacuum(const Generator& phi, double h, double t,
                       const Operator& a, const ExpVectorLabel& bra,
                       const ExpVectorLabel& ket, std::size_t max_dim = 4096);

// Same head contraction, multiplied by the identity tail
// prod_{m >= n} (1 + <g(m;h), f(m;h)>), a finite product for compactly
// supported step functions.
cx walk_element_identity(const Generator& phi, double h, double t,
                         const Operator& a, const ExpVectorLabel& bra,
                         const ExpVectorLabel& ket,
                         std::size_t max_dim = 4096);

// Cross-check route that materialises phi^(n)(a) and contracts it.
cx walk_element_vacuum_materialized(const Generator& phi, double h, double t,
                                    const Operator& a,
                                    const ExpVectorLabel& bra,
                                    const ExpVectorLabel& ket,
                                    std::size_t max_dim = 4096);

// || phi^(n)(a) (u (x) fhat(0;h) (x) ... (x) fhat(n-1;h)) ||; omega tail
// slots have norm one and drop out.
double walk_vector_norm(const Generator& phi, double h, double t,
                        const Operator& a, const ExpVectorLabel& ket,
                        std::size_t max_dim = 4096);

// Sum over strictly increasing m-tuples p with (p_m + 1) h <= t of the
// contraction that places the Xi_{1/h}-scaled legs of X at toy slots p_i and
// omega at every other slot. m = 0 reads <v, X u>.
cx discrete_iterated_integral(const Operator& x, std::size_t m, double h,
                              double t, const ExpVectorLabel& bra,
                              const ExpVectorLabel& ket,
                              std::size_t max_dim = 4096);

// | walk element at t = n h  -  sum_{m=0}^{n} discrete integral of the
// m-th walk power of scale(vacuum_deficit(phi), h) |; an exact identity,
// so the residual is rounding-level.
double decomposition_residual(const Generator& phi, double h, std::size_t n,
                              const Operator& a, const ExpVectorLabel& bra,
                              const ExpVectorLabel& ket,
                              std::size_t max_dim = 4096);

// e^{||f||^2} - prod_m (1 + ||f(m;h)||^2), the embedding defect; nonnegative
// and vanishing as h -> 0.
double embedding_defect(const StepFunction& f, double h);

}  // namespace qwalk
