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

#include "qwalk/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

#include "qwalk/kernels.hpp"

namespace qwalk {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t w = std::min(workers, count);
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::size_t id = 0; id < w; ++id)
    pool.emplace_back([&, id] {
      for (std::size_t i = id; i < count; i += w) fn(i);
    });
  for (auto& th : pool) th.join();
}

namespace {

Generator family_walk_generator(const SweepConfig& cfg, double h) {
  switch (cfg.family) {
    case Family::euler:
      if (!cfg.limit.has_value())
        throw dimension_error("sweep: euler family needs a limit generator");
      return euler_family(*cfg.limit, h, cfg.adaptedness);
    case Family::repeated_interaction:
      if (!cfg.gksl.has_value())
        throw dimension_error(
            "sweep: repeated_interaction family needs GKSL data");
      return repeated_interaction(*cfg.gksl, h);
    case Family::example7:
      return example7_walk_generator(cfg.c, h);
  }
  throw dimension_error("sweep: unknown family");
}

// The limit generator in the form matching the adaptedness mode.
Generator family_limit(const SweepConfig& cfg) {
  if (cfg.limit.has_value()) return *cfg.limit;
  if (cfg.family == Family::repeated_interaction) {
    const Generator psi = homgen(*cfg.gksl);
    return cfg.adaptedness == Adaptedness::vacuum
               ? psi
               : Generator(psi.d_h(), psi.d_k(),
                           psi.action() -
                               tensor_embed_superop(psi.d_h(),
                                                    KhatBasis{psi.d_k()}
                                                        .delta()));
  }
  if (cfg.family == Family::example7) {
    const Generator theta = example7_theta(cfg.c);
    return cfg.adaptedness == Adaptedness::identity ? theta
                                                    : plus_delta(theta);
  }
  throw dimension_error("sweep: no limit generator available");
}

}  // namespace

ConvergenceReport convergence_sweep(const SweepConfig& cfg) {
  if (cfg.h_grid.empty() || cfg.t_grid.empty() || cfg.test_vectors.empty() ||
      cfg.a_list.empty())
    throw dimension_error("sweep: empty grid or test data");
  for (std::size_t i = 1; i < cfg.h_grid.size(); ++i)
    if (!(cfg.h_grid[i] < cfg.h_grid[i - 1]))
      throw dimension_error("sweep: h grid must be positive decreasing");

  const Generator limit = family_limit(cfg);
  const Generator limit_vacuum_form = cfg.adaptedness == Adaptedness::vacuum
                                          ? limit
                                          : plus_delta(limit);
  const bool vacuum = cfg.adaptedness == Adaptedness::vacuum;

  const std::size_t nt = cfg.t_grid.size();
  const std::size_t np = cfg.test_vectors.size();
  const std::size_t na = cfg.a_list.size();

  // limit elements do not depend on h
  std::vector<cx> limit_elem(nt * np * na);
  parallel_for(nt * np * na, cfg.workers, [&](std::size_t idx) {
    const std::size_t it = idx / (np * na);
    const std::size_t ip = (idx / na) % np;
    const std::size_t ia = idx % na;
    const auto& [bra, ket] = cfg.test_vectors[ip];
    limit_elem[idx] =
        vacuum ? semigroup_element_vacuum(limit, cfg.t_grid[it],
                                          cfg.a_list[ia], bra, ket)
               : qs_element(limit, cfg.t_grid[it], cfg.a_list[ia], bra, ket);
  });

  // limit-side vacuum norms, available when the limit cocycle multiplies
  std::vector<double> limit_norm(nt * np * na,
                                 std::numeric_limits<double>::quiet_NaN());
  if (cfg.limit_is_homomorphic) {
    parallel_for(nt * np * na, cfg.workers, [&](std::size_t idx) {
      const std::size_t it = idx / (np * na);
      const std::size_t ip = (idx / na) % np;
      const std::size_t ia = idx % na;
      const auto& ket = cfg.test_vectors[ip].second;
      const Operator aa = cfg.a_list[ia].adjoint() * cfg.a_list[ia];
      const cx nn = semigroup_element_vacuum(limit_vacuum_form,
                                             cfg.t_grid[it], aa, ket, ket);
      limit_norm[idx] = std::sqrt(std::max(0.0, nn.real()));
    });
  }

  const double gen_norm = khat_norm(limit_vacuum_form);

  ConvergenceReport rep;
  rep.seed = cfg.seed;
  rep.rows.resize(cfg.h_grid.size() * nt * np * na);
  rep.norm_rows.resize(cfg.h_grid.size() * nt * np * na);

  std::vector<Generator> walk_gens;
  walk_gens.reserve(cfg.h_grid.size());
  for (double h : cfg.h_grid) walk_gens.push_back(family_walk_generator(cfg, h));

  parallel_for(rep.rows.size(), cfg.workers, [&](std::size_t idx) {
    const std::size_t ih = idx / (nt * np * na);
    const std::size_t rest = idx % (nt * np * na);
    const std::size_t it = rest / (np * na);
    const std::size_t ip = (rest / na) % np;
    const std::size_t ia = rest % na;
    const double h = cfg.h_grid[ih];
    const double t = cfg.t_grid[it];
    const auto& [bra, ket] = cfg.test_vectors[ip];
    const Operator& a = cfg.a_list[ia];
    const Generator& phi_h = walk_gens[ih];
    const cx walk =
        vacuum ? walk_element_vacuum(phi_h, h, t, a, bra, ket, cfg.max_dim)
               : walk_element_identity(phi_h, h, t, a, bra, ket, cfg.max_dim);
    const cx lim = limit_elem[rest];
    rep.rows[idx] = ConvergenceRow{h,    t,   ip, ia, walk, lim,
                                   std::abs(walk - lim)};

    const double wn = walk_vector_norm(phi_h, h, t, a, ket, cfg.max_dim);
    const TailBound tb{0, t, std::sqrt(2.0 * std::max(t, 1.0)), gen_norm,
                       std::sqrt(t + ket.f.norm_sq(0.0, t))};
    const double bound = tb.tail_sum() * op_norm(a) *
                         kern::znrm2(ket.u.data(), ket.u.size());
    rep.norm_rows[idx] =
        NormRow{h, t, ip, ia, wn, limit_norm[rest], bound};
  });

  rep.sup_per_h.reserve(cfg.h_grid.size());
  for (std::size_t ih = 0; ih < cfg.h_grid.size(); ++ih) {
    double sup = 0.0;
    for (std::size_t r = 0; r < nt * np * na; ++r)
      sup = std::max(sup, rep.rows[ih * nt * np * na + r].abs_err);
    rep.sup_per_h.emplace_back(cfg.h_grid[ih], sup);
  }
  rep.sup_monotone = true;
  for (std::size_t i = 1; i < rep.sup_per_h.size(); ++i)
    if (!(rep.sup_per_h[i].second < rep.sup_per_h[i - 1].second))
      rep.sup_monotone = false;
  rep.final_sup = rep.sup_per_h.back().second;
  return rep;
}

std::string ConvergenceReport::to_csv() const {
  std::string out = "h,t,test_id,a_id,walk_re,walk_im,limit_re,limit_im,abs_err\n";
  for (const auto& r : rows) {
    out += format_double(r.h) + "," + format_double(r.t) + "," +
           std::to_string(r.test_id) + "," + std::to_string(r.a_id) + "," +
           format_double(r.walk.real()) + "," + format_double(r.walk.imag()) +
           "," + format_double(r.limit.real()) + "," +
           format_double(r.limit.imag()) + "," + format_double(r.abs_err) +
           "\n";
  }
  for (const auto& [h, sup] : sup_per_h)
    out += format_double(h) + ",,sup,,,,,," + format_double(sup) + "\n";
  return out;
}

void CheckReport::add(std::string name, double deviation, double tol) {
  const bool pass = deviation <= tol;
  rows.push_back(CheckRow{std::move(name), deviation, tol, pass});
  all_pass = all_pass && pass;
}

Generator example7_walk_generator(double c, double h) {
  if (!(h > 0.0))
    throw dimension_error("example7_walk_generator: h must be positive");
  const double sh = std::sqrt(h);
  Operator img({1, 2}, {1, 2});
  img.at(0, 0) = 1.0;
  img.at(0, 1) = sh;
  img.at(1, 0) = sh;
  img.at(1, 1) = 1.0 + c;
  return Generator::from_apply(
      1, 1, [&](const Operator& unit) { return unit.at(0, 0) * img; });
}

Generator example7_theta(double c) {
  Operator img({1, 2}, {1, 2});
  img.at(0, 1) = 1.0;
  img.at(1, 0) = 1.0;
  img.at(1, 1) = c;
  return Generator::from_apply(
      1, 1, [&](const Operator& unit) { return unit.at(0, 0) * img; });
}

double example7_single_step_moment(double c, double h, std::size_t m) {
  const double d = std::sqrt(c * c + 4.0 * h);
  const double mu_plus = 1.0 - 2.0 * h / (c + d);
  const double mu_minus = 1.0 - 2.0 * h / (c - d);
  return std::pow(mu_plus, static_cast<double>(m)) * (c + d) / (2.0 * d) +
         std::pow(mu_minus, static_cast<double>(m)) * (d - c) / (2.0 * d);
}

double example7_limit_moment(double c, double t, std::size_t m) {
  const double md = static_cast<double>(m);
  if (c == 0.0) return std::exp(md * (md - 1.0) * t / 2.0);
  return std::exp((std::pow(1.0 + c, md) - 1.0 - md * c) * t / (c * c));
}

std::pair<cx, StepFunction> doleans_action(double c, double t,
                                           const StepFunction& f) {
  if (f.dim() != 1)
    throw dimension_error("doleans_action: scalar step functions only");
  if (!(t > 0.0)) return {cx(1.0, 0.0), f};
  const cx pref = std::exp(f.integrate(0.0, t)[0]);
  // new argument: f + 1_{[0,t)} (1 + c f)
  const double send = std::max(f.support_end(), t);
  std::vector<double> grid{0.0, t};
  for (double b : f.breakpoints())
    if (b > 0.0 && b < send) grid.push_back(b);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<double> bp;
  std::vector<std::vector<cx>> vals;
  for (double b : grid) {
    if (b >= send) break;
    const cx fv = f.eval(b)[0];
    bp.push_back(b);
    vals.push_back({b < t ? fv + 1.0 + c * fv : fv});
  }
  return {pref, StepFunction(std::move(bp), std::move(vals), send)};
}

double example7_mixed_k_walk(double c, double h, double s, double t) {
  const std::size_t n = grid_step(s, h);
  const std::size_t p = grid_step(t, h);
  const double es = std::exp(s);
  if (p <= n)
    return es * std::pow(1.0 + (2.0 + c) * h, static_cast<double>(p));
  return es * std::pow(1.0 + (2.0 + c) * h, static_cast<double>(n)) *
         (1.0 + h + (1.0 + c) * (s - static_cast<double>(n) * h)) *
         std::pow(1.0 + h, static_cast<double>(p - n - 1));
}

double example7_mixed_walk_k(double c, double h, double s, double t) {
  const std::size_t n = grid_step(s, h);
  const std::size_t p = grid_step(t, h);
  if (p <= n)
    return std::pow(1.0 + (3.0 + c) * h, static_cast<double>(p)) *
           std::pow(1.0 + h, static_cast<double>(n - p)) *
           (1.0 + (s - static_cast<double>(n) * h));
  return std::pow(1.0 + (3.0 + c) * h, static_cast<double>(n)) *
         (1.0 + h + (2.0 + c) * (s - static_cast<double>(n) * h)) *
         std::pow(1.0 + h, static_cast<double>(p - n - 1));
}

CheckReport example7_suite(double c, double h, double t_max, double tol) {
  CheckReport rep;
  const Generator phi = example7_walk_generator(c, h);
  const Generator theta = example7_theta(c);
  const Operator one = Operator::identity({1});
  const Operator phi1 = phi.apply(one).with_factors({2}, {2});
  KhatBasis kb{1};
  const auto omega = kb.omega();

  // closed form for <omega, phi(1)^m omega> against direct powers
  {
    Operator pw = Operator::identity({2});
    double dev = 0.0;
    for (std::size_t m = 0; m <= 8; ++m) {
      const double direct = pw.at(0, 0).real();
      dev = std::max(dev,
                     std::abs(direct - example7_single_step_moment(c, h, m)));
      pw = pw * phi1;
    }
    rep.add("single_step_moment_closed_form", dev, tol);
  }

  // vacuum moments of the embedded walk against tensor contractions
  {
    double dev = 0.0;
    for (std::size_t n = 1; n <= 3; ++n) {
      Operator xn = walk_power(phi, n, one);
      std::vector<cx> w{cx(1.0, 0.0)};
      for (std::size_t j = 0; j < n; ++j) w = kron_vec(w, omega);
      Operator pw = Operator::identity(xn.row_factors());
      for (std::size_t m = 0; m <= 4; ++m) {
        const cx contracted =
            kern::zdotc(w.data(), pw.apply(w).data(), w.size());
        const double closed = std::pow(example7_single_step_moment(c, h, m),
                                       static_cast<double>(n));
        dev = std::max(dev, std::abs(contracted - cx(closed, 0.0)));
        pw = pw * xn;
      }
    }
    rep.add("walk_moment_tensor_contraction", dev, tol);
  }

  // limit moments against the stochastic-exponential iteration
  {
    double dev = 0.0;
    for (std::size_t m = 1; m <= 4; ++m) {
      cx pref(1.0, 0.0);
      StepFunction f = StepFunction::zero(1);
      for (std::size_t k = 0; k < m; ++k) {
        auto [p2, f2] = doleans_action(c, t_max, f);
        pref *= p2;
        f = f2;
      }
      dev = std::max(dev, std::abs(pref - cx(example7_limit_moment(
                                       c, t_max, m), 0.0)));
    }
    rep.add("limit_moment_stochastic_exponential", dev, tol);
  }

  // moment convergence gap at this h (no rate asserted, just recorded)
  {
    const std::size_t steps = grid_step(t_max, h);
    const double walk_m2 = std::pow(example7_single_step_moment(c, h, 2),
                                    static_cast<double>(steps));
    rep.add("moment_gap_m2_at_h",
            std::abs(walk_m2 - example7_limit_moment(c, t_max, 2)), 1.0);
  }

  // position lattice: the one-step distribution values are the eigenvalues
  {
    const double d = std::sqrt(c * c + 4.0 * h);
    const double mu_plus = 1.0 - 2.0 * h / (c + d);
    const double mu_minus = 1.0 - 2.0 * h / (c - d);
    const double lam_plus = 1.0 + (c + d) / 2.0;
    const double lam_minus = 1.0 + (c - d) / 2.0;
    double dev = std::min(std::abs(mu_plus - lam_plus),
                          std::abs(mu_plus - lam_minus));
    dev = std::max(dev, std::min(std::abs(mu_minus - lam_plus),
                                 std::abs(mu_minus - lam_minus)));
    rep.add("position_lattice_eigenvalues", dev, tol);
    if (c == -2.0) {
      const double root = std::sqrt(1.0 + h);
      const double dev2 = std::max(std::abs(std::abs(mu_plus) - root),
                                   std::abs(std::abs(mu_minus) - root));
      rep.add("collapsed_positions_pm_sqrt", dev2, tol);
      rep.add("second_moment_collapsed",
              std::abs(example7_single_step_moment(c, h, 2) - (1.0 + h)),
              tol);
    }
  }

  // the two mixed inner products, closed form vs computed
  {
    const std::size_t cells =
        std::max<std::size_t>(grid_step(t_max, h) + 3, 5);
    const double T = static_cast<double>(cells) * h;
    const StepFunction ind_T = StepFunction::indicator(0.0, T, cx(1.0, 0.0));
    double dev1 = 0.0, dev2 = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
      const double s =
          (static_cast<double>(i) + 0.35) * (T - 2.0 * h) / 11.0;
      const double t =
          (static_cast<double>(10 - i) + 0.15) * (T - 2.0 * h) / 11.0;
      // k-side through the stochastic-exponential action
      auto [pref, gs] = doleans_action(c, s, ind_T);
      const ExpVectorLabel bra1{{cx(1.0, 0.0)}, gs};
      const ExpVectorLabel ket0{{cx(1.0, 0.0)}, StepFunction::zero(1)};
      const cx lhs1 = std::conj(pref) *
                      walk_element_identity(phi, h, t, one, bra1, ket0);
      dev1 = std::max(dev1,
                      std::abs(lhs1 - cx(example7_mixed_k_walk(c, h, s, t),
                                         0.0)));
      // mirrored product; the embedded walk of the identity is self-adjoint
      const ExpVectorLabel braT{{cx(1.0, 0.0)}, ind_T};
      auto [pref2, fs] = doleans_action(c, s, StepFunction::zero(1));
      const ExpVectorLabel ket_fs{{cx(1.0, 0.0)}, fs};
      const cx lhs2 = pref2 * walk_element_identity(phi, h, t, one, braT,
                                                    ket_fs);
      dev2 = std::max(dev2,
                      std::abs(lhs2 - cx(example7_mixed_walk_k(c, h, s, t),
                                         0.0)));
    }
    rep.add("mixed_inner_product_k_walk", dev1, tol);
    rep.add("mixed_inner_product_walk_k", dev2, tol);
  }
  return rep;
}

CheckReport dilation_check(const GKSLData& data,
                           const std::vector<double>& t_grid, double tol) {
  CheckReport rep;
  rep.add("data_invariants", data.validate(), 1e-10);
  const Generator psi = homgen(data);
  const Operator lmat = gkls_superop(data);
  const std::size_t d_h = data.d_h;

  double dev = 0.0;
  for (double t : t_grid) {
    Operator et = lmat;
    et *= cx(t, 0.0);
    const Operator exp_t = expm(et, 1e-13);
    for (std::size_t jp = 0; jp < d_h; ++jp)
      for (std::size_t ip = 0; ip < d_h; ++ip) {
        Operator unit = Operator::zero(d_h);
        unit.at(ip, jp) = 1.0;
        const Operator via_cocycle = cpc_semigroup(psi, t, unit);
        const Operator via_exp =
            unvec_cm(exp_t.apply(vec_cm(unit)), {d_h}, {d_h});
        dev = std::max(dev, (via_cocycle - via_exp).frobenius_norm());
      }
  }
  rep.add("compressed_cocycle_vs_exponential", dev, tol);

  KhatBasis kb{data.d_k};
  const auto w = kb.omega();
  const Operator lc = compress_gen(psi, w, w);
  double dev_sg = 0.0;
  for (double s : t_grid)
    for (double t : t_grid) {
      Operator ls = lc, lt = lc, lst = lc;
      ls *= cx(s, 0.0);
      lt *= cx(t, 0.0);
      lst *= cx(s + t, 0.0);
      dev_sg = std::max(dev_sg, (expm(lst, 1e-13) -
                                 expm(ls, 1e-13) * expm(lt, 1e-13))
                                    .max_abs());
    }
  rep.add("semigroup_law", dev_sg, tol);
  return rep;
}

CheckReport multiplicativity_check(const GKSLData& data, double h,
                                   std::size_t m_max, double tol,
                                   std::uint64_t seed) {
  CheckReport rep;
  rep.seed = seed;
  Prng rng(seed);
  const Generator phi = repeated_interaction(data, h);
  const std::size_t d_h = data.d_h;
  const Operator idh = Operator::identity({d_h});
  const Operator a = rng.matrix(d_h, d_h);
  const Operator b = rng.matrix(d_h, d_h);

  for (std::size_t m = 0; m <= m_max; ++m) {
    const Operator wa = walk_power(phi, m, a);
    const Operator wb = walk_power(phi, m, b);
    const Operator wab = walk_power(phi, m, a * b);
    const Operator wasr = walk_power(phi, m, a.adjoint());
    const Operator wid = walk_power(phi, m, idh);
    rep.add("multiplicative_m" + std::to_string(m),
            (wab - wa * wb).max_abs(), tol);
    rep.add("star_preserving_m" + std::to_string(m),
            (wasr - wa.adjoint()).max_abs(), tol);
    rep.add("unital_m" + std::to_string(m),
            (wid - Operator::identity(wid.row_factors())).max_abs(), tol);
  }

  // walk elements respect the contraction bound
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const ExpVectorLabel bra{rng.vector(d_h),
                             rng.step_function(data.d_k, 3, 1.0, 0.7)};
    const ExpVectorLabel ket{rng.vector(d_h),
                             rng.step_function(data.d_k, 3, 1.0, 0.7)};
    const double t = static_cast<double>(m_max) * h;
    const cx elem = walk_element_vacuum(phi, h, t, a, bra, ket);
    const double cap = op_norm(a) *
                       kern::znrm2(bra.u.data(), d_h) *
                       std::exp(bra.f.norm_sq() / 2) *
                       kern::znrm2(ket.u.data(), d_h) *
                       std::exp(ket.f.norm_sq() / 2);
    worst = std::max(worst, std::abs(elem) - cap);
  }
  rep.add("element_contraction_bound", std::max(worst, 0.0), tol);
  return rep;
}

AppendixAResult appendix_a_check(const StepFunction& f, double h,
                                 std::size_t m, double t) {
  if (m < 1) throw dimension_error("appendix_a_check: need m >= 1");
  if (!(h > 0.0)) throw dimension_error("appendix_a_check: h must be > 0");
  const std::size_t n = grid_step(t, h);
  const double partial = std::max(0.0, t - static_cast<double>(n) * h);

  // cell data of the projected function, hat included
  auto cell_sq = [&](std::size_t p) {
    auto mean = f.integrate(p * h, (p + 1) * h);
    double s = 0.0;
    for (auto& e : mean) s += std::norm(e / h);
    return 1.0 + s;  // ||hat(mean)||^2
  };

  double full_mass = 0.0;  // int_0^t ||hat(P_h f)||^2
  std::vector<double> g_h(n);
  for (std::size_t p = 0; p < n; ++p) {
    g_h[p] = h * cell_sq(p);
    full_mass += g_h[p];
  }
  full_mass += partial * cell_sq(n);

  // sum over distinct tuples = m! e_m(g_h)
  std::vector<double> e(m + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t j = std::min(m, p + 1); j >= 1; --j)
      e[j] += e[j - 1] * g_h[p];
  const double exact =
      std::pow(full_mass, static_cast<double>(m)) - factorial(m) * e[m];

  const std::size_t cells = static_cast<std::size_t>(
      std::ceil(f.support_end() / h - 1e-12));
  double sup_cell = 0.0;
  for (std::size_t p = 0; p < std::max<std::size_t>(cells, 1); ++p)
    sup_cell = std::max(sup_cell, f.norm_sq(p * h, (p + 1) * h));
  const double bound = (static_cast<double>(m) + 1.0) * (h + sup_cell) *
                       std::pow(t + h + f.norm_sq(),
                                static_cast<double>(m) - 1.0);
  return AppendixAResult{exact, bound};
}

std::string CheckReport::to_json() const {
  std::string out = "{\n  \"seed\": " + std::to_string(seed) +
                    ",\n  \"all_pass\": " + (all_pass ? "true" : "false") +
                    ",\n  \"checks\": [\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += "    {\"name\": \"" + r.name +
           "\", \"deviation\": " + format_double(r.deviation) +
           ", \"tol\": " + format_double(r.tol) +
           ", \"pass\": " + (r.pass ? "true" : "false") + "}";
    out += (i + 1 < rows.size()) ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string ConvergenceReport::to_json() const {
  std::string out =
      "{\n  \"seed\": " + std::to_string(seed) +
      ",\n  \"convergence_certificate\": \"weak elements on the "
      "exponential-vector grid plus separate vacuum-side norms; the "
      "cross term of the strong distance is not finitely computable\"" +
      ",\n  \"sup_monotone\": " + (sup_monotone ? "true" : "false") +
      ",\n  \"final_sup\": " + format_double(final_sup) +
      ",\n  \"sup_per_h\": [\n";
  for (std::size_t i = 0; i < sup_per_h.size(); ++i) {
    out += "    {\"h\": " + format_double(sup_per_h[i].first) +
           ", \"sup\": " + format_double(sup_per_h[i].second) + "}";
    out += (i + 1 < sup_per_h.size()) ? ",\n" : "\n";
  }
  out += "  ],\n  \"norm_rows\": [\n";
  for (std::size_t i = 0; i < norm_rows.size(); ++i) {
    const auto& r = norm_rows[i];
    out += "    {\"h\": " + format_double(r.h) +
           ", \"t\": " + format_double(r.t) +
           ", \"test_id\": " + std::to_string(r.test_id) +
           ", \"a_id\": " + std::to_string(r.a_id) +
           ", \"walk_norm\": " + format_double(r.walk_norm) +
           ", \"limit_norm\": " +
           (std::isnan(r.limit_norm) ? std::string("null")
                                     : format_double(r.limit_norm)) +
           ", \"bound\": " + format_double(r.bound) + "}";
    out += (i + 1 < norm_rows.size()) ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

}  // namespace qwalk
