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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qwalk/cocycle.hpp"
#include "qwalk/kernels.hpp"
#include "qwalk/lab.hpp"
#include "qwalk/random.hpp"

using namespace qwalk;

namespace {

cx braket(const std::vector<cx>& v, const Operator& b,
          const std::vector<cx>& u) {
  return kern::zdotc(v.data(), b.apply(u).data(), v.size());
}

const ExpVectorLabel kVac1{{cx(1.0, 0.0)}, StepFunction::zero(1)};

}  // namespace

TEST_CASE("semigroup elements: zero generator, GKSL vacuum, scalar example") {
  Prng rng(71);
  const Generator zero(2, 1);
  const Operator a = rng.matrix(2, 2);
  const ExpVectorLabel bra{rng.vector(2), rng.step_function(1, 3, 1.5)};
  const ExpVectorLabel ket{rng.vector(2), rng.step_function(1, 3, 1.5)};
  for (double t : {0.0, 0.4, 1.3})
    CHECK(std::abs(semigroup_element_vacuum(zero, t, a, bra, ket) -
                   braket(bra.u, a, ket.u)) < 1e-13);

  const GKSLData data = rng.gksl(2, 1, 0.8);
  const Generator psi = homgen(data);
  const ExpVectorLabel vb{rng.vector(2), StepFunction::zero(1)};
  const ExpVectorLabel vk{rng.vector(2), StepFunction::zero(1)};
  const double t = 0.7;
  Operator lt = gkls_superop(data);
  lt *= cx(t, 0.0);
  const Operator expa = unvec_cm(expm(lt, 1e-13).apply(vec_cm(a)), {2}, {2});
  CHECK(std::abs(semigroup_element_vacuum(psi, t, a, vb, vk) -
                 braket(vb.u, expa, vk.u)) < 1e-11);

  const Generator psi7 = plus_delta(example7_theta(0.0));
  const ExpVectorLabel bra7{{cx(1.0, 0.0)},
                            StepFunction::indicator(0.0, 1.0, cx(1.0, 0.0))};
  for (double tt : {0.3, 0.8, 1.0})
    CHECK(std::abs(semigroup_element_vacuum(psi7, tt, Operator::identity({1}),
                                            bra7, kVac1) -
                   cx(std::exp(tt), 0.0)) < 1e-12);
}

TEST_CASE("cell exponentials in reversed order disagree") {
  // non-commuting cells: guards the composition convention
  Prng rng(72);
  const GKSLData data = rng.gksl(2, 1, 1.0);
  const Generator psi = homgen(data);
  const StepFunction f01 = StepFunction::indicator(0.0, 0.5, cx(1.0, 0.0));
  const StepFunction f10 = StepFunction::indicator(0.5, 1.0, cx(-0.8, 0.3));
  const Operator fwd = semigroup_superop(psi, 1.0, f01, f10, false);
  const Operator rev = semigroup_superop(psi, 1.0, f01, f10, true);
  CHECK((fwd - rev).max_abs() > 1e-6);
}

TEST_CASE("vacuum adaptedness: data beyond t is invisible") {
  Prng rng(73);
  const GKSLData data = rng.gksl(2, 1, 0.9);
  const Generator psi = homgen(data);
  const Operator a = rng.matrix(2, 2);
  const double t = 0.6;
  const StepFunction f = rng.step_function(1, 2, 0.6);
  const StepFunction g = rng.step_function(1, 2, 0.6);
  // extend both with junk on [0.6, 2)
  auto extend = [](const StepFunction& s, cx tail_val) {
    std::vector<double> bp = s.breakpoints();
    std::vector<std::vector<cx>> vals = s.values();
    bp.push_back(0.6);
    vals.push_back({tail_val});
    return StepFunction(bp, vals, 2.0);
  };
  const ExpVectorLabel bra{rng.vector(2), f};
  const ExpVectorLabel ket{rng.vector(2), g};
  const ExpVectorLabel bra2{bra.u, extend(f, cx(2.0, -1.0))};
  const ExpVectorLabel ket2{ket.u, extend(g, cx(-3.0, 0.5))};
  CHECK(std::abs(semigroup_element_vacuum(psi, t, a, bra, ket) -
                 semigroup_element_vacuum(psi, t, a, bra2, ket2)) < 1e-13);
}

TEST_CASE("cocycle identity over a time split") {
  Prng rng(74);
  const GKSLData data = rng.gksl(2, 1, 0.8);
  const Generator psi = homgen(data);
  const StepFunction f = rng.step_function(1, 3, 1.6);
  const StepFunction g = rng.step_function(1, 3, 1.6);
  for (auto [s, t] : {std::pair<double, double>{0.4, 0.5}, {0.25, 1.0}}) {
    const Operator whole = semigroup_superop(psi, s + t, f, g);
    const Operator head = semigroup_superop(psi, s, f, g);
    const Operator tail =
        semigroup_superop(psi, t, f.shifted_left(s), g.shifted_left(s));
    CHECK((whole - head * tail).max_abs() < 1e-10);
  }
}

TEST_CASE("hermitian symmetry of the vacuum flow") {
  Prng rng(75);
  const Generator psi = rng.generator(2, 1);
  const Operator a = rng.matrix(2, 2);
  const ExpVectorLabel bra{rng.vector(2), rng.step_function(1, 3, 1.3)};
  const ExpVectorLabel ket{rng.vector(2), rng.step_function(1, 3, 1.3)};
  const double t = 0.9;
  const cx fwd = semigroup_element_vacuum(psi, t, a, bra, ket);
  const cx swp = semigroup_element_vacuum(adjoint_gen(psi), t, a.adjoint(),
                                          ket, bra);
  CHECK(std::abs(std::conj(fwd) - swp) < 1e-11);
}

TEST_CASE("QS elements via the adaptedness switch") {
  Prng rng(76);
  const Generator zero(2, 1);
  const Operator a = rng.matrix(2, 2);
  const ExpVectorLabel bra{rng.vector(2), rng.step_function(1, 3, 1.5)};
  const ExpVectorLabel ket{rng.vector(2), rng.step_function(1, 3, 1.5)};
  const double t = 0.45;
  const cx expect = braket(bra.u, a, ket.u) * exp_inner(bra.f, ket.f);
  CHECK(std::abs(qs_element(zero, t, a, bra, ket) - expect) < 1e-12);

  // scalar example against the stochastic exponential
  const Generator theta = example7_theta(1.1);
  const ExpVectorLabel bra7{{cx(1.0, 0.0)},
                            StepFunction::indicator(0.0, 1.0, cx(1.0, 0.0))};
  for (double tt : {0.35, 1.0}) {
    const cx got = qs_element(theta, tt, Operator::identity({1}), bra7,
                              kVac1);
    auto [pref, arg] = doleans_action(1.1, tt, StepFunction::zero(1));
    const cx expect7 = pref * exp_inner(bra7.f, arg);
    CHECK(std::abs(got - expect7) < 1e-12);
  }

  // vanishing vacuum data: theta^omega_omega(1) = 0
  for (double cc : {-2.0, 0.0, 1.4})
    CHECK(std::abs(qs_element(example7_theta(cc), 0.8,
                              Operator::identity({1}), kVac1, kVac1) -
                   cx(1.0, 0.0)) < 1e-13);

  // support inside [0, t): switch consistency with the vacuum element
  const StepFunction fin = StepFunction::indicator(0.0, 0.4, cx(0.7, 0.2));
  const ExpVectorLabel bin{rng.vector(2), fin};
  const ExpVectorLabel kin{rng.vector(2), fin};
  const Generator theta2 = rng.generator(2, 1);
  const cx lhs = qs_element(theta2, 0.4, a, bin, kin);
  const cx rhs = semigroup_element_vacuum(plus_delta(theta2), 0.4, a, bin,
                                          kin);
  CHECK(std::abs(lhs - rhs) < 1e-13);
}

TEST_CASE("simplex integrals: volumes and constant integrands") {
  Prng rng(77);
  const ExpVectorLabel vb{rng.vector(2), StepFunction::zero(1)};
  const ExpVectorLabel vk{rng.vector(2), StepFunction::zero(1)};
  const Operator id22 = Operator::identity({2, 2, 2});
  cx uv(0.0, 0.0);
  for (std::size_t i = 0; i < 2; ++i) uv += std::conj(vb.u[i]) * vk.u[i];
  CHECK(std::abs(qs_integral_element(id22, 2, 1.0, vb, vk) - 0.5 * uv) <
        1e-13);

  const GKSLData data = rng.gksl(2, 1, 0.8);
  const Generator psi = homgen(data);
  const Operator a = rng.matrix(2, 2);
  const double t = 0.8;
  const cx expect = cx(t, 0.0) * braket(vb.u, gkls_apply(data, a), vk.u);
  CHECK(std::abs(qs_integral_element(psi.apply(a), 1, t, vb, vk) - expect) <
        1e-12);
}

TEST_CASE("simplex integrals: hand-decomposed cells and Monte Carlo") {
  Prng rng(78);
  // one breakpoint at 0.5 splits the square into three ordered cells
  const StepFunction f({0.0, 0.5}, {{cx(0.8, 0.0)}, {cx(-0.3, 0.4)}}, 1.0);
  const StepFunction g({0.0, 0.5}, {{cx(0.2, -0.1)}, {cx(1.0, 0.0)}}, 1.0);
  const ExpVectorLabel bra{{cx(1.0, 0.0)}, g};
  const ExpVectorLabel ket{{cx(1.0, 0.0)}, f};
  const Operator x = rng.matrix(4, 4).with_factors({1, 2, 2}, {1, 2, 2});

  KhatBasis kb{1};
  auto leg = [&](double s) {
    return std::pair{kb.hat(g.eval(s)), kb.hat(f.eval(s))};
  };
  auto integrand = [&](double s1, double s2) {
    auto [g1, f1] = leg(s1);
    auto [g2, f2] = leg(s2);
    const auto wb = kron_vec(g1, g2);
    const auto wk = kron_vec(f1, f2);
    return kern::zdotc(wb.data(), x.apply(wk).data(), wb.size());
  };
  // cells of the increasing 2-simplex over the grid {0, 0.5, 1}
  const cx hand = cx(0.125, 0.0) * integrand(0.25, 0.3) +
                  cx(0.25, 0.0) * integrand(0.25, 0.75) +
                  cx(0.125, 0.0) * integrand(0.75, 0.8);
  const cx got = qs_integral_element(x, 2, 1.0, bra, ket);
  CHECK(std::abs(got - hand) < 1e-13);

  // Monte Carlo over the ordered square
  Prng mc(123);
  cx acc(0.0, 0.0);
  const std::size_t samples = 400000;
  for (std::size_t i = 0; i < samples; ++i) {
    double s1 = mc.uniform(), s2 = mc.uniform();
    if (s1 > s2) std::swap(s1, s2);
    acc += integrand(s1, s2);
  }
  acc *= cx(0.5 / static_cast<double>(samples), 0.0);
  CHECK(std::abs(got - acc) < 5e-3 * (1.0 + std::abs(got)));
}

TEST_CASE("modified integrals: emptiness, unit value, equality with the "
          "discrete route") {
  Prng rng(79);
  const ExpVectorLabel vac{{cx(1.0, 0.0)}, StepFunction::zero(1)};
  const Operator id2 = Operator::identity({1, 2});
  CHECK(modified_integral_element(id2, 1, 0.6, 0.5, vac, vac) ==
        cx(0.0, 0.0));
  CHECK(std::abs(modified_integral_element(id2, 1, 0.25, 1.0, vac, vac) -
                 cx(1.0, 0.0)) < 1e-14);

  // the discrete tuple sum realises the modified integral exactly
  for (int trial = 0; trial < 4; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(trial) % 2;
    std::vector<std::size_t> rf{2};
    for (std::size_t i = 0; i < m; ++i) rf.push_back(2);
    Operator x(rf, rf);
    for (auto& e : x.entries()) e = rng.complex_uniform();
    const ExpVectorLabel bra{rng.vector(2), rng.step_function(1, 3, 1.4)};
    const ExpVectorLabel ket{rng.vector(2), rng.step_function(1, 3, 1.4)};
    const double h = 0.3, t = 1.4;
    const cx a1 = modified_integral_element(x, m, h, t, bra, ket);
    const cx a2 = discrete_iterated_integral(x, m, h, t, bra, ket);
    CHECK(std::abs(a1 - a2) < 1e-12);
  }
}

TEST_CASE("modified integrals approach the plain ones as h -> 0") {
  Prng rng(80);
  const Operator x = rng.matrix(8, 8).with_factors({2, 2, 2}, {2, 2, 2});
  const ExpVectorLabel bra{rng.vector(2), rng.step_function(1, 2, 1.0)};
  const ExpVectorLabel ket{rng.vector(2), rng.step_function(1, 2, 1.0)};
  const cx plain = qs_integral_element(x, 2, 1.0, bra, ket);
  double prev = 1e300;
  for (int k = 1; k <= 7; ++k) {
    const double h = std::ldexp(1.0, -k);
    const double gap =
        std::abs(modified_integral_element(x, 2, h, 1.0, bra, ket) - plain);
    CHECK(gap < prev + 1e-12);
    prev = gap;
  }
  CHECK(prev < 0.02 * (1.0 + std::abs(plain)));
}

TEST_CASE("chaos series: zero generator and semigroup cross-checks") {
  Prng rng(81);
  const Generator zero(2, 1);
  const Operator a = rng.matrix(2, 2);
  const ExpVectorLabel bra{rng.vector(2), rng.step_function(1, 2, 1.0)};
  const ExpVectorLabel ket{rng.vector(2), rng.step_function(1, 2, 1.0)};
  const ChaosResult zr = chaos_series_element(zero, 0.8, a, bra, ket);
  CHECK(zr.order == 0);
  CHECK(std::abs(zr.value - braket(bra.u, a, ket.u)) < 1e-13);
  CHECK(zr.element_tail == 0.0);

  // vacuum data: series against the compressed semigroup, explicit order
  const GKSLData data = rng.gksl(2, 1, 0.7);
  const Generator psi = homgen(data);
  const ExpVectorLabel vb{rng.vector(2), StepFunction::zero(1)};
  const ExpVectorLabel vk{rng.vector(2), StepFunction::zero(1)};
  ChaosOptions opts;
  opts.order = 9;
  const ChaosResult cr = chaos_series_element(psi, 0.5, a, vb, vk, opts);
  const cx sg = semigroup_element_vacuum(psi, 0.5, a, vb, vk);
  CHECK(std::abs(cr.value - sg) <= cr.element_tail + 1e-10);
  CHECK(std::abs(cr.value - sg) < 1e-8);  // actual series accuracy

  // step-function data at an explicit order within the cap
  ChaosOptions opts2;
  opts2.order = 10;
  const StepFunction fstep =
      StepFunction::indicator(0.0, 0.5, cx(0.4, 0.1));
  const ExpVectorLabel sb{rng.vector(2), fstep};
  const ExpVectorLabel sk{rng.vector(2), fstep};
  const ChaosResult cr2 = chaos_series_element(psi, 0.5, a, sb, sk, opts2);
  const cx sg2 = semigroup_element_vacuum(psi, 0.5, a, sb, sk);
  CHECK(std::abs(cr2.value - sg2) <= cr2.element_tail + 1e-10);
  CHECK(std::abs(cr2.value - sg2) < 1e-6);
}

TEST_CASE("chaos series: bound-selected truncation on small data") {
  // the tail bound is loose, so automatic truncation needs a small generator
  Prng rng(82);
  const Generator psi = rng.generator(2, 1, 0.05);
  const Operator a = rng.matrix(2, 2);
  const ExpVectorLabel vb{rng.unit_vector(2), StepFunction::zero(1)};
  const ExpVectorLabel vk{rng.unit_vector(2), StepFunction::zero(1)};
  ChaosOptions opts;
  opts.tolerance = 1e-8;
  const ChaosResult cr = chaos_series_element(psi, 0.25, a, vb, vk, opts);
  CHECK(cr.element_tail < 1e-8);
  const cx sg = semigroup_element_vacuum(psi, 0.25, a, vb, vk);
  CHECK(std::abs(cr.value - sg) <= 1e-8);
}

TEST_CASE("chaos series: the cap is an explicit error, never a truncation") {
  Prng rng(83);
  const Generator psi = plus_delta(example7_theta(0.0));
  const ExpVectorLabel b7{{cx(1.0, 0.0)},
                          StepFunction::indicator(0.0, 1.0, cx(1.0, 0.0))};
  ChaosOptions opts;
  opts.tolerance = 1e-8;
  CHECK_THROWS_AS(chaos_series_element(psi, 1.0, Operator::identity({1}), b7,
                                       b7, opts),
                  budget_error);
}

TEST_CASE("series, semigroup and switch agree with two-dimensional noise") {
  Prng rng(86);
  const Generator psi = rng.generator(2, 2, 0.2);
  const Operator a = rng.matrix(2, 2);
  const ExpVectorLabel bra{rng.unit_vector(2), rng.step_function(2, 2, 0.8)};
  const ExpVectorLabel ket{rng.unit_vector(2), rng.step_function(2, 2, 0.8)};
  const double t = 0.6;
  ChaosOptions opts;
  opts.order = 6;  // 2 * 3^7 would breach the default budget
  const ChaosResult cr = chaos_series_element(psi, t, a, bra, ket, opts);
  const cx sg = semigroup_element_vacuum(psi, t, a, bra, ket);
  CHECK(std::abs(cr.value - sg) <= cr.element_tail + 1e-10);
  CHECK(std::abs(cr.value - sg) < 1e-5);

  // adaptedness switch at full support inside [0, t)
  const StepFunction fin = StepFunction::indicator(
      0.0, 0.5, std::vector<cx>{cx(0.3, 0.0), cx(0.0, -0.4)});
  const ExpVectorLabel bi{rng.vector(2), fin};
  const ExpVectorLabel ki{rng.vector(2), fin};
  const Generator theta = rng.generator(2, 2, 0.5);
  CHECK(std::abs(qs_element(theta, 0.5, a, bi, ki) -
                 semigroup_element_vacuum(plus_delta(theta), 0.5, a, bi,
                                          ki)) < 1e-12);
}

TEST_CASE("tail bound terms: unit head and convergent sums") {
  const TailBound tb{0, 1.0, std::sqrt(2.0), 3.5, 1.4};
  CHECK(tb.term(0) == 1.0);
  CHECK(tb.term(2) ==
        doctest::Approx(std::pow(std::sqrt(2.0) * 3.5 * 1.4, 2.0) /
                        std::sqrt(2.0))
            .epsilon(1e-12));
  // the sum converges even when early terms grow
  CHECK(std::isfinite(tb.tail_sum()));
  const TailBound tiny{3, 0.5, std::sqrt(2.0), 0.1, 0.2};
  CHECK(tiny.tail_sum() >= tiny.value());
  CHECK(tiny.tail_sum() < 2.0 * tiny.value());
}

TEST_CASE("compressed semigroup: identity at t = 0, dual route, scalar case") {
  Prng rng(84);
  const GKSLData data = rng.gksl(2, 1, 0.8);
  const Generator psi = homgen(data);
  const Operator a = rng.matrix(2, 2);
  CHECK((cpc_semigroup(psi, 0.0, a) - a).max_abs() < 1e-14);

  for (double t : {0.1, 1.0}) {
    Operator lt = gkls_superop(data);
    lt *= cx(t, 0.0);
    const Operator via_l = unvec_cm(expm(lt, 1e-13).apply(vec_cm(a)), {2},
                                    {2});
    CHECK((cpc_semigroup(psi, t, a) - via_l).max_abs() < 1e-10);
  }

  const Generator psi7 = plus_delta(example7_theta(-0.7));
  for (double t : {0.3, 2.0}) {
    const Operator one = cpc_semigroup(psi7, t, Operator::identity({1}));
    CHECK(std::abs(one.at(0, 0) - cx(1.0, 0.0)) < 1e-13);
  }
}

TEST_CASE("compressed semigroup is contractive for dilation data") {
  Prng rng(85);
  for (int trial = 0; trial < 3; ++trial) {
    const GKSLData data = rng.gksl(2, 1, 0.9);
    const Generator psi = homgen(data);
    const Operator a = rng.matrix(2, 2);
    const double na = op_norm(a);
    for (double t : {0.2, 0.7, 1.5})
      CHECK(op_norm(cpc_semigroup(psi, t, a)) <= na + 1e-10);
  }
}
