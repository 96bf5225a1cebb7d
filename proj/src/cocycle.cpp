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

#include "qwalk/cocycle.hpp"

#include <algorithm>
#include <cmath>

#include "qwalk/kernels.hpp"

namespace qwalk {

double TailBound::term(std::size_t order) const {
  double r = 1.0;
  for (std::size_t j = 1; j <= order; ++j)
    r *= c_t * gen_norm * f_norm / std::sqrt(static_cast<double>(j));
  return r;
}

double TailBound::tail_sum() const {
  double acc = 0.0;
  double tm = term(m);
  std::size_t order = m;
  // terms x^m / sqrt(m!) eventually decay super-geometrically
  while (order < 100000) {
    acc += tm;
    ++order;
    tm *= c_t * gen_norm * f_norm / std::sqrt(static_cast<double>(order));
    if (tm < 1e-30 * (acc + 1.0)) break;
  }
  return acc + tm;
}

namespace {

// merged cell grid of [0, t) from the breakpoints of both functions
std::vector<double> merged_grid(const StepFunction& f, const StepFunction& g,
                                double t) {
  std::vector<double> grid{0.0, t};
  auto push = [&](double b) {
    if (b > 0.0 && b < t) grid.push_back(b);
  };
  for (double b : f.breakpoints()) push(b);
  push(f.support_end());
  for (double b : g.breakpoints()) push(b);
  push(g.support_end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

cx sandwich(std::span<const cx> v, const Operator& b, std::span<const cx> u) {
  const std::vector<cx> bu = b.apply(u);
  return kern::zdotc(v.data(), bu.data(), v.size());
}

}  // namespace

Operator semigroup_superop(const Generator& psi, double t,
                           const StepFunction& bra_f,
                           const StepFunction& ket_f, bool compose_reversed) {
  const std::size_t d_h = psi.d_h();
  KhatBasis kb{psi.d_k()};
  Operator acc = Operator::identity({d_h * d_h});
  if (t <= 0.0) return acc;
  const std::vector<double> grid = merged_grid(ket_f, bra_f, t);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double len = grid[i + 1] - grid[i];
    const auto gx = kb.hat(bra_f.eval(grid[i]));
    const auto fy = kb.hat(ket_f.eval(grid[i]));
    Operator cell = compress_gen(psi, gx, fy);
    cell *= cx(len, 0.0);
    const Operator e = expm(cell, 1e-13);
    // earliest cell outermost: later cells multiply on the right, so they
    // hit the vectorized operand first
    acc = compose_reversed ? e * acc : acc * e;
  }
  return acc;
}

cx semigroup_element_vacuum(const Generator& psi, double t, const Operator& a,
                            const ExpVectorLabel& bra,
                            const ExpVectorLabel& ket) {
  if (a.rows() != psi.d_h() || a.cols() != psi.d_h())
    throw dimension_error("semigroup element: operand is not d_h x d_h");
  const Operator s = semigroup_superop(psi, t, bra.f, ket.f);
  const std::vector<cx> res = s.apply(vec_cm(a));
  const Operator ja = unvec_cm(res, {psi.d_h()}, {psi.d_h()});
  return sandwich(bra.u, ja, ket.u);
}

cx qs_element(const Generator& theta, double t, const Operator& a,
              const ExpVectorLabel& bra, const ExpVectorLabel& ket) {
  const cx head =
      semigroup_element_vacuum(plus_delta(theta), t, a, bra, ket);
  return head * std::exp(l2_inner(bra.f, ket.f, t));
}

cx qs_integral_element(const Operator& x, std::size_t m, double t,
                       const ExpVectorLabel& bra, const ExpVectorLabel& ket) {
  if (m == 0) {
    if (!x.square() || x.rows() != bra.u.size())
      throw dimension_error("qs_integral_element: m = 0 needs X on h");
    return sandwich(bra.u, x, ket.u);
  }
  if (x.row_factors().size() != m + 1)
    throw dimension_error("qs_integral_element: X must act on h (x) khat^m");
  if (t <= 0.0) return cx(0.0, 0.0);
  KhatBasis kb{x.row_factors()[1] - 1};
  const std::vector<double> grid = merged_grid(ket.f, bra.f, t);
  const std::size_t cells = grid.size() - 1;
  std::vector<double> len(cells);
  std::vector<std::vector<cx>> ghat(cells), fhat(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    len[c] = grid[c + 1] - grid[c];
    ghat[c] = kb.hat(bra.f.eval(grid[c]));
    fhat[c] = kb.hat(ket.f.eval(grid[c]));
  }

  // weakly increasing cell tuples; a run of r equal cells contributes
  // len^r / r! to the region measure
  cx acc(0.0, 0.0);
  std::vector<std::size_t> cvec(m, 0);
  while (true) {
    double measure = 1.0;
    {
      std::size_t run = 1;
      for (std::size_t i = 0; i < m; ++i) {
        measure *= len[cvec[i]];
        if (i + 1 < m && cvec[i + 1] == cvec[i]) {
          ++run;
          measure /= static_cast<double>(run);
        } else {
          run = 1;
        }
      }
    }
    std::vector<cx> wb = bra.u, wk = ket.u;
    for (std::size_t i = 0; i < m; ++i) {
      wb = kron_vec(wb, ghat[cvec[i]]);
      wk = kron_vec(wk, fhat[cvec[i]]);
    }
    const std::vector<cx> xv = x.apply(wk);
    acc += cx(measure, 0.0) * kern::zdotc(wb.data(), xv.data(), wb.size());

    // next weakly increasing tuple over {0..cells-1}
    std::size_t i = m;
    while (i > 0 && cvec[i - 1] == cells - 1) --i;
    if (i == 0) break;
    ++cvec[i - 1];
    for (std::size_t j = i; j < m; ++j) cvec[j] = cvec[i - 1];
  }
  return acc;
}

cx modified_integral_element(const Operator& x, std::size_t m, double h,
                             double t, const ExpVectorLabel& bra,
                             const ExpVectorLabel& ket) {
  if (!(h > 0.0))
    throw dimension_error("modified_integral_element: h must be positive");
  if (m == 0) {
    if (!x.square() || x.rows() != bra.u.size())
      throw dimension_error("modified_integral_element: m = 0 needs X on h");
    return sandwich(bra.u, x, ket.u);
  }
  if (x.row_factors().size() != m + 1)
    throw dimension_error(
        "modified_integral_element: X must act on h (x) khat^m");
  const std::size_t n = grid_step(t, h);
  if (n < m) return cx(0.0, 0.0);
  KhatBasis kb{x.row_factors()[1] - 1};

  // On a full h-box the exact leg integrals reduce to the cell means of both
  // functions: one factor h per leg.
  std::vector<std::vector<cx>> ghat(n), fhat(n);
  for (std::size_t c = 0; c < n; ++c) {
    auto gm = bra.f.integrate(c * h, (c + 1) * h);
    auto fm = ket.f.integrate(c * h, (c + 1) * h);
    for (auto& e : gm) e *= cx(1.0 / h, 0.0);
    for (auto& e : fm) e *= cx(1.0 / h, 0.0);
    ghat[c] = kb.hat(gm);
    fhat[c] = kb.hat(fm);
  }
  const double box = std::pow(h, static_cast<double>(m));

  cx acc(0.0, 0.0);
  std::vector<std::size_t> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = i;
  while (true) {
    std::vector<cx> wb = bra.u, wk = ket.u;
    for (std::size_t i = 0; i < m; ++i) {
      wb = kron_vec(wb, ghat[p[i]]);
      wk = kron_vec(wk, fhat[p[i]]);
    }
    const std::vector<cx> xv = x.apply(wk);
    acc += cx(box, 0.0) * kern::zdotc(wb.data(), xv.data(), wb.size());

    std::size_t i = m;
    while (i > 0 && p[i - 1] == n - (m - (i - 1))) --i;
    if (i == 0) break;
    ++p[i - 1];
    for (std::size_t j = i; j < m; ++j) p[j] = p[j - 1] + 1;
  }
  return acc;
}

ChaosResult chaos_series_element(const Generator& psi, double t,
                                 const Operator& a, const ExpVectorLabel& bra,
                                 const ExpVectorLabel& ket,
                                 const ChaosOptions& opts) {
  const double c_t = std::sqrt(2.0 * std::max(t, 1.0));
  const double gen_norm = khat_norm(psi);
  const double f_norm = std::sqrt(t + ket.f.norm_sq(0.0, t));
  const double bra_factor =
      kern::znrm2(bra.u.data(), bra.u.size()) * std::exp(bra.f.norm_sq() / 2);
  const double ket_factor =
      kern::znrm2(ket.u.data(), ket.u.size()) * op_norm(a);

  auto element_tail = [&](std::size_t first_omitted) {
    const TailBound tb{first_omitted, t, c_t, gen_norm, f_norm};
    return tb.tail_sum() * bra_factor * ket_factor;
  };

  std::size_t order = 0;
  if (opts.order.has_value()) {
    order = *opts.order;
  } else {
    bool found = false;
    for (std::size_t cand = 0; cand <= opts.order_cap; ++cand) {
      if (element_tail(cand + 1) < opts.tolerance) {
        order = cand;
        found = true;
        break;
      }
    }
    if (!found)
      throw budget_error(
          "chaos series: no truncation order within the cap meets the "
          "tolerance");
  }

  cx value(0.0, 0.0);
  for (std::size_t m = 0; m <= order; ++m) {
    const Operator xm = walk_power(psi, m, a, opts.max_dim);
    value += qs_integral_element(xm, m, t, bra, ket);
  }
  return ChaosResult{value, TailBound{order + 1, t, c_t, gen_norm, f_norm},
                     order, element_tail(order + 1)};
}

Operator cpc_semigroup(const Generator& psi, double t, const Operator& a) {
  if (t < 0.0) throw dimension_error("cpc_semigroup: t must be nonnegative");
  KhatBasis kb{psi.d_k()};
  const auto w = kb.omega();
  Operator s = compress_gen(psi, w, w);
  s *= cx(t, 0.0);
  const Operator e = expm(s, 1e-13);
  return unvec_cm(e.apply(vec_cm(a)), {psi.d_h()}, {psi.d_h()});
}

}  // namespace qwalk
