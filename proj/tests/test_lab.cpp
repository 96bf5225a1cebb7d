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

#include "qwalk/json_io.hpp"
#include "qwalk/lab.hpp"

using namespace qwalk;

namespace {

SweepConfig small_euler_config(std::uint64_t seed, std::size_t workers = 1) {
  Prng rng(seed);
  SweepConfig cfg;
  cfg.family = Family::euler;
  cfg.adaptedness = Adaptedness::vacuum;
  const GKSLData data = rng.gksl(2, 1, 0.6, true);
  cfg.limit = homgen(data);
  cfg.limit_is_homomorphic = true;
  cfg.h_grid = {0.5, 0.25, 0.125, 0.0625};
  cfg.t_grid = {0.5, 1.0};
  for (int i = 0; i < 2; ++i)
    cfg.test_vectors.emplace_back(
        ExpVectorLabel{rng.unit_vector(2), rng.step_function(1, 3, 1.0, 0.6)},
        ExpVectorLabel{rng.unit_vector(2), rng.step_function(1, 3, 1.0, 0.6)});
  cfg.a_list = {Operator::identity({2}), rng.matrix(2, 2)};
  cfg.seed = seed;
  cfg.workers = workers;
  return cfg;
}

}  // namespace

TEST_CASE("euler sweep of the zero limit is exact at every h") {
  SweepConfig cfg;
  cfg.family = Family::euler;
  cfg.adaptedness = Adaptedness::vacuum;
  cfg.limit = Generator(2, 1);
  Prng rng(91);
  cfg.h_grid = {0.5, 0.25};
  cfg.t_grid = {0.5, 1.0};
  cfg.test_vectors.emplace_back(
      ExpVectorLabel{rng.vector(2), rng.step_function(1, 2, 1.0)},
      ExpVectorLabel{rng.vector(2), rng.step_function(1, 2, 1.0)});
  cfg.a_list = {rng.matrix(2, 2)};
  const ConvergenceReport rep = convergence_sweep(cfg);
  for (const auto& row : rep.rows) CHECK(row.abs_err < 1e-13);
}

TEST_CASE("euler sweep errors shrink with h and norms obey the bound") {
  const ConvergenceReport rep = convergence_sweep(small_euler_config(92));
  CHECK(rep.sup_monotone);
  CHECK(rep.final_sup < 0.05);
  for (const auto& nr : rep.norm_rows) {
    CHECK(nr.walk_norm <= nr.bound + 1e-9);
    if (!std::isnan(nr.limit_norm))
      CHECK(std::abs(nr.walk_norm - nr.limit_norm) < 0.5);
  }
  // the finest h should pin walk and limit norms together
  for (const auto& nr : rep.norm_rows)
    if (nr.h == 0.0625 && !std::isnan(nr.limit_norm))
      CHECK(std::abs(nr.walk_norm - nr.limit_norm) < 0.05);
}

TEST_CASE("identity-adapted sweep of the scalar example") {
  SweepConfig cfg;
  cfg.family = Family::example7;
  cfg.adaptedness = Adaptedness::identity;
  cfg.c = 0.0;
  cfg.h_grid = {0.25, 0.125, 0.0625, 0.03125};
  cfg.t_grid = {0.5, 1.0};
  const StepFunction ind = StepFunction::indicator(0.0, 1.0, cx(1.0, 0.0));
  cfg.test_vectors.emplace_back(ExpVectorLabel{{cx(1.0, 0.0)}, ind},
                                ExpVectorLabel{{cx(1.0, 0.0)},
                                               StepFunction::zero(1)});
  cfg.a_list = {Operator::identity({1})};
  const ConvergenceReport rep = convergence_sweep(cfg);
  CHECK(rep.sup_monotone);
  // closed forms on this data: walk (1+h)^n at t = nh vs limit e^t
  for (const auto& row : rep.rows) {
    const double n = row.t / row.h;
    CHECK(std::abs(row.walk - cx(std::pow(1.0 + row.h, n), 0.0)) < 1e-12);
    CHECK(std::abs(row.limit - cx(std::exp(row.t), 0.0)) < 1e-12);
  }
}

TEST_CASE("identity walk element at a fine step matches the closed gap") {
  // c = 0, bra 1_{[0,1)}, ket vacuum, t = 1: element (1+h)^{1/h} vs e
  const double h = std::ldexp(1.0, -10);
  const Generator phi = example7_walk_generator(0.0, h);
  const ExpVectorLabel bra{{cx(1.0, 0.0)},
                           StepFunction::indicator(0.0, 1.0, cx(1.0, 0.0))};
  const ExpVectorLabel ket{{cx(1.0, 0.0)}, StepFunction::zero(1)};
  const cx walk =
      walk_element_identity(phi, h, 1.0, Operator::identity({1}), bra, ket);
  CHECK(std::abs(walk - cx(std::pow(1.0 + h, 1024.0), 0.0)) < 1e-11);
  const double err = std::abs(walk - cx(std::exp(1.0), 0.0));
  CHECK(err > 1e-3);
  CHECK(err < 2e-3);
}

TEST_CASE("sweep rejects a non-decreasing h grid") {
  SweepConfig cfg = small_euler_config(99);
  cfg.h_grid = {0.25, 0.5};
  CHECK_THROWS_AS(convergence_sweep(cfg), dimension_error);
}

TEST_CASE("reports are deterministic and worker-count invariant") {
  const ConvergenceReport a = convergence_sweep(small_euler_config(93, 1));
  const ConvergenceReport b = convergence_sweep(small_euler_config(93, 1));
  const ConvergenceReport c = convergence_sweep(small_euler_config(93, 3));
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.to_csv() == c.to_csv());
  CHECK(a.to_json() == c.to_json());
}

TEST_CASE("scalar example suite passes across parameter choices") {
  for (double c : {-2.0, 0.0, 1.0}) {
    for (double h : {0.25, 0.01}) {
      const CheckReport rep = example7_suite(c, h, 1.0);
      for (const auto& row : rep.rows) {
        INFO(row.name, " c=", c, " h=", h, " dev=", row.deviation);
        CHECK(row.pass);
      }
    }
  }
}

TEST_CASE("scalar example closed forms: spot values") {
  CHECK(example7_single_step_moment(0.0, 0.01, 2) ==
        doctest::Approx(1.01).epsilon(1e-12));
  CHECK(example7_limit_moment(0.0, 1.0, 2) ==
        doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  // c = -2: second walk moment (1+h)^n across n
  const double h = 0.2;
  for (std::size_t n = 1; n <= 4; ++n)
    CHECK(std::pow(example7_single_step_moment(-2.0, h, 2),
                   static_cast<double>(n)) ==
          doctest::Approx(std::pow(1.0 + h, static_cast<double>(n)))
              .epsilon(1e-12));
}

TEST_CASE("moment error decreases along the dyadic h grid") {
  double prev = 1e300;
  for (int k = 2; k <= 10; ++k) {
    const double h = std::ldexp(1.0, -k);
    const double steps = 1.0 / h;
    const double walk = std::pow(example7_single_step_moment(0.0, h, 2),
                                 steps);
    const double err = std::abs(walk - example7_limit_moment(0.0, 1.0, 2));
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 2e-3);
}

TEST_CASE("dilation check on seeded and structured data") {
  Prng rng(94);
  const GKSLData data = rng.gksl(2, 1, 0.8);
  const CheckReport rep = dilation_check(data, {0.1, 1.0});
  for (const auto& row : rep.rows) {
    INFO(row.name, " dev=", row.deviation);
    CHECK(row.pass);
  }

  // r = 0: the compressed semigroup is plain unitary conjugation
  const Operator g = rng.hermitian(2);
  const Operator q = rng.unitary(2).with_factors({2, 1}, {2, 1});
  const Operator r0 = Operator::matrix(2, 2, std::vector<cx>(4, cx(0.0, 0.0)))
                          .with_factors({2}, {2, 1});
  const GKSLData d0 = GKSLData::conjugation(2, 1, g, q, r0,
                                            Operator::identity({2, 1}));
  CHECK(dilation_check(d0, {0.3, 0.9}).all_pass);
  const Generator psi0 = homgen(d0);
  const Operator a = rng.matrix(2, 2);
  const double t = 0.6;
  const cx i1(0.0, 1.0);
  const Operator u = expm(i1 * cx(t, 0.0) * g, 1e-13);
  const Operator direct = u.adjoint() * a * u;
  CHECK((cpc_semigroup(psi0, t, a) - direct).max_abs() < 1e-10);

  // scalar commutative data: the semigroup is trivial
  const Operator q1 = Operator::identity({1, 1});
  const Operator rr =
      Operator::matrix(1, 1, {cx(0.9, 0.0)}).with_factors({1}, {1, 1});
  const GKSLData ds = GKSLData::conjugation(1, 1, Operator::zero(1), q1, rr,
                                            Operator::identity({1, 1}));
  const Generator psis = homgen(ds);
  const Operator as = Operator::matrix(1, 1, {cx(0.3, -0.8)});
  CHECK((cpc_semigroup(psis, 1.7, as) - as).max_abs() < 1e-12);
}

TEST_CASE("walk homomorphism deviations stay at rounding level") {
  Prng rng(95);
  const GKSLData data = rng.gksl(2, 1, 0.8);
  for (double h : {0.1, 0.01}) {
    const CheckReport rep = multiplicativity_check(data, h, 3);
    for (const auto& row : rep.rows) {
      INFO(row.name, " h=", h, " dev=", row.deviation);
      CHECK(row.pass);
    }
    // order zero is the identity map
    CHECK(rep.rows.front().name == "multiplicative_m0");
    CHECK(rep.rows.front().deviation == 0.0);
  }

  // scalar commutative data
  const Operator q1 = Operator::identity({1, 1});
  const Operator rr =
      Operator::matrix(1, 1, {cx(0.7, 0.0)}).with_factors({1}, {1, 1});
  const GKSLData ds = GKSLData::conjugation(1, 1, Operator::zero(1), q1, rr,
                                            Operator::identity({1, 1}));
  CHECK(multiplicativity_check(ds, 0.25, 4).all_pass);
}

TEST_CASE("projection remainder: grid-aligned emptiness and the bound") {
  const StepFunction one = StepFunction::indicator(0.0, 1.0, cx(1.0, 0.0));
  const auto res = appendix_a_check(one, 0.25, 1, 1.0);
  CHECK(std::abs(res.exact) < 1e-13);
  CHECK(res.bound > 0.0);

  // f = 0: only the hat components carry mass; compare with a direct count
  const StepFunction zero = StepFunction::zero(1);
  const auto rz = appendix_a_check(zero, 0.5, 2, 1.1);
  // cells of size h = 0.5 below t = 1.1: g = h per cell, partial 0.1
  const double full = std::pow(2.0 * 0.5 + 0.1, 2.0);
  const double distinct = 2.0 * 0.5 * 0.5;
  CHECK(rz.exact == doctest::Approx(full - distinct).epsilon(1e-12));
  CHECK(rz.exact <= rz.bound);
}

TEST_CASE("projection remainder equals the brute-force tuple sum") {
  Prng rng(96);
  for (int trial = 0; trial < 6; ++trial) {
    const StepFunction f = rng.step_function(1, 4, 2.0);
    const double h = rng.uniform(0.15, 0.5);
    const std::size_t m = 1 + static_cast<std::size_t>(trial) % 3;
    const double t = rng.uniform(0.3, 2.0);
    const auto res = appendix_a_check(f, h, m, t);

    // direct enumeration of {0..n-1}^m with repeats plus the partial cell
    const std::size_t n = grid_step(t, h);
    auto gval = [&](std::size_t p) {
      auto mean = f.integrate(p * h, (p + 1) * h);
      double s = 0.0;
      for (auto& e : mean) s += std::norm(e / h);
      return h * (1.0 + s);
    };
    double full = 0.0;
    {
      double mass = 0.0;
      for (std::size_t p = 0; p < n; ++p) mass += gval(p);
      auto meann = f.integrate(n * h, (n + 1) * h);
      double sn = 0.0;
      for (auto& e : meann) sn += std::norm(e / h);
      mass += std::max(0.0, t - static_cast<double>(n) * h) * (1.0 + sn);
      full = std::pow(mass, static_cast<double>(m));
    }
    double distinct = 0.0;
    std::vector<std::size_t> idx(m, 0);
    if (n >= 1) {
      while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i)
          for (std::size_t j = i + 1; j < m; ++j)
            if (idx[i] == idx[j]) {
              ok = false;
              break;
            }
        if (ok) {
          double prod = 1.0;
          for (std::size_t i = 0; i < m; ++i) prod *= gval(idx[i]);
          distinct += prod;
        }
        std::size_t i = m;
        while (i > 0 && idx[i - 1] == n - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < m; ++j) idx[j] = 0;
      }
    }
    const double brute = full - distinct;
    CHECK(res.exact == doctest::Approx(brute).epsilon(1e-10));
    CHECK(res.exact >= -1e-12);
    CHECK(res.exact <= res.bound + 1e-12);
  }
}

TEST_CASE("json round trips and config parsing") {
  Prng rng(97);
  const Operator m0 = rng.matrix(3, 2);
  const Operator m1 = matrix_from_json(to_json(m0));
  CHECK((m0 - m1).max_abs() == 0.0);

  const StepFunction f = rng.step_function(2, 3, 1.5);
  const StepFunction f2 = step_function_from_json(to_json(f));
  for (double t : {0.0, 0.3, 0.9, 1.4})
    for (std::size_t d = 0; d < 2; ++d)
      CHECK(std::abs(f.eval(t)[d] - f2.eval(t)[d]) < 1e-15);

  const json scalar_fn = {{"breakpoints", {0.0, 0.5}},
                          {"values", {1.0, 2.0}},
                          {"support_end", 2.0}};
  const StepFunction fs = step_function_from_json(scalar_fn);
  CHECK(fs.dim() == 1);
  CHECK(fs.eval(0.7)[0] == cx(2.0, 0.0));

  const json cfg_json = {
      {"family", "example7"},
      {"adaptedness", "identity"},
      {"c", 0.5},
      {"h_grid", {0.5, 0.25}},
      {"t_grid", {0.5, 1.0}},
      {"test_vectors",
       {{{"bra",
          {{"u", {{1.0, 0.0}}},
           {"f",
            {{"breakpoints", {0.0}}, {"values", {1.0}},
             {"support_end", 1.0}}}}},
         {"ket",
          {{"u", {{1.0, 0.0}}},
           {"f",
            {{"breakpoints", {0.0}}, {"values", {0.0}},
             {"support_end", 1.0}}}}}}}},
      {"a_list", {{{{1.0, 0.0}}}}}};
  const SweepConfig cfg = sweep_config_from_json(cfg_json);
  CHECK(cfg.family == Family::example7);
  CHECK(cfg.adaptedness == Adaptedness::identity);
  CHECK(cfg.c == 0.5);
  CHECK(cfg.test_vectors.size() == 1);
  const ConvergenceReport rep = convergence_sweep(cfg);
  CHECK(rep.sup_monotone);

  const json gj = {{"kind", "example7"}, {"c", 0.3}, {"h", 0.04}};
  const Generator g7 = generator_from_json(gj);
  const Operator img = g7.apply(Operator::identity({1}));
  CHECK(std::abs(img.at(0, 1) - cx(0.2, 0.0)) < 1e-15);
}

TEST_CASE("parallel_for covers every index exactly once") {
  std::vector<int> hits(101, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int hcount : hits) CHECK(hcount == 1);
}
