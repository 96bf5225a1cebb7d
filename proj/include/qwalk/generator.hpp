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

#include <functional>
#include <vector>

#include "qwalk/operator.hpp"

namespace qwalk {

// Column-major vectorization; every superoperator matrix in this library
// acts on these coordinates.
std::vector<cx> vec_cm(const Operator& a);
Operator unvec_cm(std::span<const cx> v, std::vector<std::size_t> row_factors,
                  std::vector<std::size_t> col_factors);

/// Linear map from B(C^{d_h}) to B(C^{d_h} (x) khat), stored as its action
/// matrix on column-major-vectorized operators. The walk, scaling, deficit
/// and compression machinery all run through this matrix.
class Generator {
 public:
  Generator(std::size_t d_h, std::size_t d_k);  // zero map
  Generator(std::size_t d_h, std::size_t d_k, Operator action);

  // Builds the action matrix by applying fn to every matrix unit of B(h).
  static Generator from_apply(std::size_t d_h, std::size_t d_k,
                              const std::function<Operator(const Operator&)>& fn);

  std::size_t d_h() const { return d_h_; }
  std::size_t d_k() const { return d_k_; }
  std::size_t d_khat() const { return d_k_ + 1; }
  const Operator& action() const { return action_; }

  // phi(a) as an Operator with factors (d_h, d_khat).
  Operator apply(const Operator& a) const;

  Generator operator+(const Generator& o) const;
  Generator operator-(const Generator& o) const;
  Generator operator*(cx s) const;

 private:
  std::size_t d_h_, d_k_;
  Operator action_;  // (d_h * d_khat)^2 x d_h^2
};

enum class Adaptedness { vacuum, identity };

// Superoperator matrix of a -> a (x) p for a fixed p on khat (d_h^2 columns).
Operator tensor_embed_superop(std::size_t d_h, const Operator& p);

// Walk power phi^(n)(a) on h (x) khat^{(x) n}. Slots are ordered so that the
// freshest lifting sits immediately after h; the defining compression
// identity then peels the trailing slot. Dimension budget is enforced,
// never truncated.
Operator walk_power(const Generator& phi, std::size_t n, const Operator& a,
                    std::size_t max_dim = 4096);

// One lifting step: B(h (x) K) -> B(h (x) khat (x) K).
Operator lift_apply(const Generator& phi, const Operator& t);

// s_h: conjugation by I (x) Xi_h, Xi_h = diag(h^{-1/2}, I_k).
Generator scale_gen(const Generator& phi, double h);
// Conjugates the m khat slots of an operator on h (x) khat^{(x) m} by Xi_h.
Operator scale_slots(const Operator& x, std::size_t m, double h);

Generator vacuum_deficit(const Generator& phi);    // phi(a) - a (x) delta_perp
Generator identity_deficit(const Generator& phi);  // phi(a) - a (x) I
Generator plus_delta(const Generator& theta);      // theta(a) + a (x) delta

// The d_h^2 x d_h^2 superoperator a -> E^x psi(a) E_y.
Operator compress_gen(const Generator& psi, std::span<const cx> x,
                      std::span<const cx> y);

Generator adjoint_gen(const Generator& phi);  // a -> phi(a*)*

// Exact right-inverse of the scaling condition: the returned family has
// scale_gen(vacuum_deficit(phi_h), h) == limit (vacuum mode; identity mode
// uses identity_deficit).
Generator euler_family(const Generator& limit, double h, Adaptedness mode);

enum class HpSide { left, right };
// a -> (a (x) I) F (left) or F (a (x) I) (right).
Generator hp_generator(const Operator& f, HpSide side);

/// Data for the bounded-generator dilation: g self-adjoint, pi a unital
/// *-homomorphism B(h) -> B(h (x) k) given as a superoperator matrix,
/// r in B(h (x) k, h), w a co-isometry on h (x) k.
struct GKSLData {
  std::size_t d_h, d_k;
  Operator g;          // d_h x d_h
  Operator pi_action;  // (d_h*d_k)^2 x d_h^2, column-major convention
  Operator r;          // d_h x (d_h*d_k)
  Operator w;          // (d_h*d_k) x (d_h*d_k)

  Operator pi_apply(const Operator& a) const;
  // Largest deviation from the structural requirements (self-adjointness,
  // unital *-homomorphism property on a basis, co-isometry).
  double validate() const;

  static GKSLData conjugation(std::size_t d_h, std::size_t d_k,
                              const Operator& g, const Operator& q,
                              const Operator& r, const Operator& w);
};

// a -> V_h^* U_h^* pihat(a) U_h V_h with U_h = exp(sqrt(h) R),
// V_h = diag(exp(ihg), w exp(ih g (x) I_k)); a *-homomorphism for every h.
Generator repeated_interaction(const GKSLData& data, double h);

// The limit generator, assembled from its two-by-two block form.
Generator homgen(const GKSLData& data);
// Same map built as B* pihat(a) B + A* pihat(a) C + C* pihat(a) A;
// kept separate so the two routes can be compared.
Generator homgen_abc(const GKSLData& data);

// L(a) = i[a,g] - (1/2){a, r r*} + r pi(a) r*
Operator gkls_apply(const GKSLData& data, const Operator& a);
// L as a superoperator matrix (d_h^2 x d_h^2).
Operator gkls_superop(const GKSLData& data);

// Blocks of an operator on h (x) khat over the splitting khat = C (+) k.
Operator assemble_khat_blocks(const Operator& p, const Operator& q,
                              const Operator& r, const Operator& s,
                              std::size_t d_h, std::size_t d_k);

// (dim khat) * (action-matrix operator norm): the finite-dimensional
// khat-bounded norm surrogate.
double khat_norm(const Generator& phi);

}  // namespace qwalk
