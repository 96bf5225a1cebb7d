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

#include "qwalk/toywalk.hpp"

#include <cmath>

#include "qwalk/kernels.hpp"

namespace qwalk {

namespace {

void check_labels(const Generator& phi, const ExpVectorLabel& bra,
                  const ExpVectorLabel& ket) {
  if (bra.u.size() != phi.d_h() || ket.u.size() != phi.d_h())
    throw dimension_error("walk element: test vector dim is not d_h");
  if (bra.f.dim() != phi.d_k() || ket.f.dim() != phi.d_k())
    throw dimension_error("walk element: step function dim is not d_k");
}

// <v, b u>
cx sandwich(std::span<const cx> v, const Operator& b, std::span<const cx> u) {
  const std::vector<cx> bu = b.apply(u);
  return kern::zdotc(v.data(), bu.data(), v.size());
}

// Head contraction shared by both embeddings: peel the trailing slot of
// phi(.) with the cell-n-1 data first, so the earliest cell acts outermost.
// Tail slots never enter: <ghat, delta_perp fhat> = conj(ghat_0) fhat_0 = 1
// because hat lifts keep a unit omega component.
Operator walk_head(const Generator& phi, double h, std::size_t n,
                   const Operator& a, const ExpVectorLabel& bra,
                   const ExpVectorLabel& ket) {
  KhatBasis kb{phi.d_k()};
  Operator b = a;
  for (std::size_t jj = n; jj-- > 0;) {
    const auto gx = kb.hat(discretize(bra.f, h, jj));
    const auto fy = kb.hat(discretize(ket.f, h, jj));
    b = compress(phi.apply(b), gx, fy);
  }
  return b;
}

// <ghat(m;h), fhat(m;h)> = 1 + <g(m;h), f(m;h)>, and past both supports the
// factor is 1, so the product over the identity tail is finite.
cx identity_tail(const ExpVectorLabel& bra, const ExpVectorLabel& ket,
                 double h, std::size_t n) {
  const double sup = std::max(bra.f.support_end(), ket.f.support_end());
  const std::size_t last = static_cast<std::size_t>(std::ceil(sup / h)) + 1;
  cx tail(1.0, 0.0);
  for (std::size_t m = n; m < last; ++m) {
    const auto gm = discretize(bra.f, h, m);
    const auto fm = discretize(ket.f, h, m);
    tail *= cx(1.0, 0.0) + kern::zdotc(gm.data(), fm.data(), gm.size());
  }
  return tail;
}

}  // namespace

cx walk_element_vacuum(const Generator& phi, double h, double t,
                       const Operator& a, const ExpVectorLabel& bra,
                       const ExpVectorLabel& ket, std::size_t max_dim) {
  if (!(h > 0.0) || t < 0.0)
    throw dimension_error("walk_element_vacuum: need h > 0 and t >= 0");
  check_labels(phi, bra, ket);
  const std::size_t n = grid_step(t, h);
  // the recursion materialises one lifting at a time, nothing larger
  if (phi.d_h() * phi.d_khat() > max_dim)
    throw budget_error("walk element: single lifting exceeds the budget");
  const Operator b = walk_head(phi, h, n, a, bra, ket);
  return sandwich(bra.u, b, ket.u);
}

cx walk_element_identity(const Generator& phi, double h, double t,
                         const Operator& a, const ExpVectorLabel& bra,
                         const ExpVectorLabel& ket, std::size_t max_dim) {
  const cx head = walk_element_vacuum(phi, h, t, a, bra, ket, max_dim);
  return head * identity_tail(bra, ket, h, grid_step(t, h));
}

cx walk_element_vacuum_materialized(const Generator& phi, double h, double t,
                                    const Operator& a,
                                    const ExpVectorLabel& bra,
                                    const ExpVectorLabel& ket,
                                    std::size_t max_dim) {
  check_labels(phi, bra, ket);
  const std::size_t n = grid_step(t, h);
  const Operator x = walk_power(phi, n, a, max_dim);
  KhatBasis kb{phi.d_k()};
  std::vector<cx> wb = bra.u, wk = ket.u;
  for (std::size_t j = 0; j < n; ++j) {
    wb = kron_vec(wb, kb.hat(discretize(bra.f, h, j)));
    wk = kron_vec(wk, kb.hat(discretize(ket.f, h, j)));
  }
  const std::vector<cx> xk = x.apply(wk);
  return kern::zdotc(wb.data(), xk.data(), wb.size());
}

double walk_vector_norm(const Generator& phi, double h, double t,
                        const Operator& a, const ExpVectorLabel& ket,
                        std::size_t max_dim) {
  check_labels(phi, ket, ket);
  if (phi.d_h() * phi.d_khat() > max_dim)
    throw budget_error("walk_vector_norm: single lifting exceeds the budget");
  const std::size_t n = grid_step(t, h);
  const std::size_t d_h = phi.d_h();
  const std::size_t dd = phi.d_khat();
  const std::size_t d2 = d_h * d_h;
  KhatBasis kb{phi.d_k()};
  const Generator phid = adjoint_gen(phi);

  // || phi^(n)(a) w ||^2 peels the trailing slot with a completeness
  // insertion: pairs (b1*, b2) propagate through the doubled superoperator
  // sum_p  (E^{fhat} phi^дагger(.) E_{e_p}) (x) (E^{e_p} phi(.) E_{fhat}),
  // one d_h^4 matrix-vector product per step.
  std::vector<cx> v = kron_vec(vec_cm(a.adjoint()), vec_cm(a));
  std::vector<cx> basis_p(dd, cx(0.0, 0.0));
  for (std::size_t j = n; j-- > 0;) {
    const auto fj = kb.hat(discretize(ket.f, h, j));
    Operator m = Operator::matrix(d2 * d2, d2 * d2,
                                  std::vector<cx>(d2 * d2 * d2 * d2));
    for (std::size_t p = 0; p < dd; ++p) {
      std::fill(basis_p.begin(), basis_p.end(), cx(0.0, 0.0));
      basis_p[p] = 1.0;
      const Operator left = compress_gen(phid, fj, basis_p);
      const Operator right = compress_gen(phi, basis_p, fj);
      m += kron(left, right);
    }
    std::vector<cx> next(v.size());
    kern::zgemv(m.data(), v.data(), next.data(), v.size(), v.size());
    v.swap(next);
  }

  // evaluate sum_alpha <u, c1_alpha b2_alpha u>
  cx val(0.0, 0.0);
  for (std::size_t i = 0; i < d_h; ++i)
    for (std::size_t k = 0; k < d_h; ++k)
      for (std::size_t l = 0; l < d_h; ++l)
        val += std::conj(ket.u[i]) * v[(i + k * d_h) * d2 + (k + l * d_h)] *
               ket.u[l];
  return std::sqrt(std::max(0.0, val.real()));
}

cx discrete_iterated_integral(const Operator& x, std::size_t m, double h,
                              double t, const ExpVectorLabel& bra,
                              const ExpVectorLabel& ket,
                              std::size_t max_dim) {
  if (!(h > 0.0) || t < 0.0)
    throw dimension_error("discrete_iterated_integral: need h > 0, t >= 0");
  if (m == 0) {
    if (!x.square() || x.rows() != bra.u.size())
      throw dimension_error("discrete_iterated_integral: m = 0 needs X on h");
    return kern::zdotc(bra.u.data(), x.apply(ket.u).data(), bra.u.size());
  }
  if (x.row_factors().size() != m + 1)
    throw dimension_error(
        "discrete_iterated_integral: X must act on h (x) khat^m");
  if (x.rows() > max_dim)
    throw budget_error("discrete_iterated_integral: X exceeds budget");
  const std::size_t n = grid_step(t, h);  // tuples live in {0..n-1}
  if (n < m) return cx(0.0, 0.0);

  const Operator xs = scale_slots(x, m, 1.0 / h);
  KhatBasis kb{x.col_factors()[1] - 1};
  // cache the hatted cell data
  std::vector<std::vector<cx>> ghat(n), fhat(n);
  for (std::size_t c = 0; c < n; ++c) {
    ghat[c] = kb.hat(discretize(bra.f, h, c));
    fhat[c] = kb.hat(discretize(ket.f, h, c));
  }

  cx acc(0.0, 0.0);
  std::vector<std::size_t> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = i;
  // ascending lexicographic enumeration keeps the summation order fixed
  while (true) {
    std::vector<cx> wb = bra.u, wk = ket.u;
    for (std::size_t i = 0; i < m; ++i) {
      wb = kron_vec(wb, ghat[p[i]]);
      wk = kron_vec(wk, fhat[p[i]]);
    }
    const std::vector<cx> xv = xs.apply(wk);
    acc += kern::zdotc(wb.data(), xv.data(), wb.size());

    // advance to the next strictly increasing tuple in {0..n-1}
    std::size_t i = m;
    while (i > 0 && p[i - 1] == n - (m - (i - 1))) --i;
    if (i == 0) break;
    ++p[i - 1];
    for (std::size_t j = i; j < m; ++j) p[j] = p[j - 1] + 1;
  }
  return acc;
}

double decomposition_residual(const Generator& phi, double h, std::size_t n,
                              const Operator& a, const ExpVectorLabel& bra,
                              const ExpVectorLabel& ket,
                              std::size_t max_dim) {
  const double t = static_cast<double>(n) * h;
  const cx lhs = walk_element_vacuum(phi, h, t, a, bra, ket, max_dim);
  const Generator zeta = scale_gen(vacuum_deficit(phi), h);
  cx rhs(0.0, 0.0);
  for (std::size_t m = 0; m <= n; ++m) {
    const Operator xm = walk_power(zeta, m, a, max_dim);
    rhs += discrete_iterated_integral(xm, m, h, t, bra, ket, max_dim);
  }
  return std::abs(lhs - rhs);
}

double embedding_defect(const StepFunction& f, double h) {
  if (!(h > 0.0)) throw dimension_error("embedding_defect: h must be > 0");
  const double full = std::exp(f.norm_sq());
  const std::size_t last =
      static_cast<std::size_t>(std::ceil(f.support_end() / h)) + 1;
  double prod = 1.0;
  for (std::size_t m = 0; m < last; ++m) {
    const auto fm = discretize(f, h, m);
    const double nn = kern::znrm2(fm.data(), fm.size());
    prod *= 1.0 + nn * nn;
  }
  return full - prod;
}

}  // namespace qwalk
