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

#include "qwalk/generator.hpp"

#include <cmath>
#include <string>

#include "qwalk/kernels.hpp"

namespace qwalk {

std::vector<cx> vec_cm(const Operator& a) {
  std::vector<cx> v(a.rows() * a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      v[i + j * a.rows()] = a.at(i, j);
  return v;
}

Operator unvec_cm(std::span<const cx> v, std::vector<std::size_t> row_factors,
                  std::vector<std::size_t> col_factors) {
  Operator a(std::move(row_factors), std::move(col_factors));
  if (v.size() != a.rows() * a.cols())
    throw dimension_error("unvec_cm: length mismatch");
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      a.at(i, j) = v[i + j * a.rows()];
  return a;
}

Generator::Generator(std::size_t d_h, std::size_t d_k)
    : d_h_(d_h),
      d_k_(d_k),
      action_(Operator::matrix(
          d_h * (d_k + 1) * d_h * (d_k + 1), d_h * d_h,
          std::vector<cx>(d_h * (d_k + 1) * d_h * (d_k + 1) * d_h * d_h,
                          cx(0.0, 0.0)))) {}

Generator::Generator(std::size_t d_h, std::size_t d_k, Operator action)
    : d_h_(d_h), d_k_(d_k), action_(std::move(action)) {
  const std::size_t big = d_h * (d_k + 1);
  if (action_.rows() != big * big || action_.cols() != d_h * d_h)
    throw dimension_error("Generator: action matrix is " +
                          std::to_string(action_.rows()) + "x" +
                          std::to_string(action_.cols()) + ", expected " +
                          std::to_string(big * big) + "x" +
                          std::to_string(d_h * d_h));
}

Generator Generator::from_apply(
    std::size_t d_h, std::size_t d_k,
    const std::function<Operator(const Operator&)>& fn) {
  const std::size_t big = d_h * (d_k + 1);
  Operator action = Operator::matrix(
      big * big, d_h * d_h, std::vector<cx>(big * big * d_h * d_h));
  for (std::size_t jp = 0; jp < d_h; ++jp)
    for (std::size_t ip = 0; ip < d_h; ++ip) {
      Operator unit = Operator::zero(d_h);
      unit.at(ip, jp) = 1.0;
      const Operator img = fn(unit);
      if (img.rows() != big || img.cols() != big)
        throw dimension_error("from_apply: image has wrong shape");
      const std::size_t col = ip + jp * d_h;
      for (std::size_t c = 0; c < big; ++c)
        for (std::size_t r = 0; r < big; ++r)
          action.at(r + c * big, col) = img.at(r, c);
    }
  return Generator(d_h, d_k, std::move(action));
}

Operator Generator::apply(const Operator& a) const {
  if (a.rows() != d_h_ || a.cols() != d_h_)
    throw dimension_error("Generator::apply: operand is not d_h x d_h");
  const std::vector<cx> va = vec_cm(a);
  std::vector<cx> out(action_.rows());
  kern::zgemv(action_.data(), va.data(), out.data(), action_.rows(),
              action_.cols());
  return unvec_cm(out, {d_h_, d_khat()}, {d_h_, d_khat()});
}

Generator Generator::operator+(const Generator& o) const {
  if (d_h_ != o.d_h_ || d_k_ != o.d_k_)
    throw dimension_error("Generator+: dimension mismatch");
  return Generator(d_h_, d_k_, action_ + o.action_);
}

Generator Generator::operator-(const Generator& o) const {
  if (d_h_ != o.d_h_ || d_k_ != o.d_k_)
    throw dimension_error("Generator-: dimension mismatch");
  return Generator(d_h_, d_k_, action_ - o.action_);
}

Generator Generator::operator*(cx s) const {
  Operator a = action_;
  a *= s;
  return Generator(d_h_, d_k_, std::move(a));
}

Operator tensor_embed_superop(std::size_t d_h, const Operator& p) {
  const std::size_t dk1 = p.rows();
  if (p.rows() != p.cols())
    throw dimension_error("tensor_embed_superop: p not square");
  const std::size_t big = d_h * dk1;
  Operator m = Operator::matrix(big * big, d_h * d_h,
                                std::vector<cx>(big * big * d_h * d_h));
  for (std::size_t jp = 0; jp < d_h; ++jp)
    for (std::size_t ip = 0; ip < d_h; ++ip) {
      const std::size_t col = ip + jp * d_h;
      for (std::size_t al = 0; al < dk1; ++al)
        for (std::size_t be = 0; be < dk1; ++be) {
          const std::size_t r = ip * dk1 + al;
          const std::size_t c = jp * dk1 + be;
          m.at(r + c * big, col) = p.at(al, be);
        }
    }
  return m;
}

Operator lift_apply(const Generator& phi, const Operator& t) {
  const std::size_t d_h = phi.d_h();
  const std::size_t dd = phi.d_khat();
  if (t.row_factors().empty() || t.row_factors().front() != d_h ||
      t.rows() != t.cols())
    throw dimension_error("lift_apply: operand must act on h (x) K");
  const std::size_t q = t.rows() / d_h;
  const std::size_t big = d_h * dd;

  // PhiMat[(i a)(j b), (i' j')] from the column-major action matrix.
  const Operator& act = phi.action();
  std::vector<cx> phimat(big * big * d_h * d_h);
  for (std::size_t rr = 0; rr < big; ++rr)
    for (std::size_t cc = 0; cc < big; ++cc)
      for (std::size_t ip = 0; ip < d_h; ++ip)
        for (std::size_t jp = 0; jp < d_h; ++jp)
          phimat[(rr * big + cc) * d_h * d_h + ip * d_h + jp] =
              act.at(rr + cc * big, ip + jp * d_h);

  // Gather T into T2[(i' j'), (kappa lambda)].
  std::vector<cx> t2(d_h * d_h * q * q);
  for (std::size_t ip = 0; ip < d_h; ++ip)
    for (std::size_t jp = 0; jp < d_h; ++jp)
      for (std::size_t ka = 0; ka < q; ++ka)
        for (std::size_t la = 0; la < q; ++la)
          t2[(ip * d_h + jp) * q * q + ka * q + la] =
              t.at(ip * q + ka, jp * q + la);

  std::vector<cx> m(big * big * q * q);
  kern::zgemm(phimat.data(), t2.data(), m.data(), big * big, d_h * d_h, q * q);

  std::vector<std::size_t> rf{d_h, dd};
  rf.insert(rf.end(), t.row_factors().begin() + 1, t.row_factors().end());
  Operator s(rf, rf);
  for (std::size_t ia = 0; ia < big; ++ia)
    for (std::size_t jb = 0; jb < big; ++jb)
      for (std::size_t ka = 0; ka < q; ++ka)
        for (std::size_t la = 0; la < q; ++la) {
          const std::size_t i = ia / dd, al = ia % dd;
          const std::size_t j = jb / dd, be = jb % dd;
          s.at((i * dd + al) * q + ka, (j * dd + be) * q + la) =
              m[(ia * big + jb) * q * q + ka * q + la];
        }
  return s;
}

namespace {

void check_budget(std::size_t d_h, std::size_t dd, std::size_t n,
                  std::size_t max_dim) {
  std::size_t dim = d_h;
  for (std::size_t m = 0; m < n; ++m) {
    dim *= dd;
    if (dim > max_dim)
      throw budget_error("walk dimension " + std::to_string(d_h) + "*" +
                         std::to_string(dd) + "^" + std::to_string(n) +
                         " exceeds budget " + std::to_string(max_dim));
  }
}

}  // namespace

Operator walk_power(const Generator& phi, std::size_t n, const Operator& a,
                    std::size_t max_dim) {
  if (a.rows() != phi.d_h() || a.cols() != phi.d_h())
    throw dimension_error("walk_power: operand is not d_h x d_h");
  check_budget(phi.d_h(), phi.d_khat(), n, max_dim);
  Operator t = a;
  for (std::size_t m = 0; m < n; ++m) t = lift_apply(phi, t);
  return t;
}

Generator scale_gen(const Generator& phi, double h) {
  if (!(h > 0.0)) throw dimension_error("scale_gen: h must be positive");
  const std::size_t d_h = phi.d_h();
  const std::size_t dd = phi.d_khat();
  const std::size_t big = d_h * dd;
  const double xi0 = 1.0 / std::sqrt(h);
  Operator act = phi.action();
  for (std::size_t r = 0; r < big; ++r)
    for (std::size_t c = 0; c < big; ++c) {
      const bool r0 = (r % dd) == 0, c0 = (c % dd) == 0;
      if (!r0 && !c0) continue;
      double f = (r0 ? xi0 : 1.0) * (c0 ? xi0 : 1.0);
      for (std::size_t col = 0; col < d_h * d_h; ++col)
        act.at(r + c * big, col) *= f;
    }
  return Generator(d_h, phi.d_k(), std::move(act));
}

Operator scale_slots(const Operator& x, std::size_t m, double h) {
  if (!(h > 0.0)) throw dimension_error("scale_slots: h must be positive");
  if (x.row_factors().size() != m + 1 || x.rows() != x.cols())
    throw dimension_error("scale_slots: operand must act on h (x) khat^m");
  if (m == 0) return x;
  const double xi0 = 1.0 / std::sqrt(h);
  const auto& rf = x.row_factors();
  const std::size_t dd = rf[1];
  const std::size_t tail = x.rows() / rf[0];
  auto omega_count = [&](std::size_t idx) {
    // number of khat slots sitting at the omega coordinate
    std::size_t cnt = 0;
    for (std::size_t s = 0; s < m; ++s) {
      if (idx % dd == 0) ++cnt;
      idx /= dd;
    }
    return cnt;
  };
  Operator r = x;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    const std::size_t oi = omega_count(i % tail);
    for (std::size_t j = 0; j < r.cols(); ++j) {
      const std::size_t oj = omega_count(j % tail);
      if (oi + oj > 0)
        r.at(i, j) *= std::pow(xi0, static_cast<double>(oi + oj));
    }
  }
  return r;
}

Generator vacuum_deficit(const Generator& phi) {
  KhatBasis kb{phi.d_k()};
  return Generator(phi.d_h(), phi.d_k(),
                   phi.action() -
                       tensor_embed_superop(phi.d_h(), kb.delta_perp()));
}

Generator identity_deficit(const Generator& phi) {
  KhatBasis kb{phi.d_k()};
  Operator id = Operator::identity({kb.d_khat()});
  return Generator(phi.d_h(), phi.d_k(),
                   phi.action() - tensor_embed_superop(phi.d_h(), id));
}

Generator plus_delta(const Generator& theta) {
  KhatBasis kb{theta.d_k()};
  return Generator(theta.d_h(), theta.d_k(),
                   theta.action() +
                       tensor_embed_superop(theta.d_h(), kb.delta()));
}

Operator compress_gen(const Generator& psi, std::span<const cx> x,
                      std::span<const cx> y) {
  const std::size_t d_h = psi.d_h();
  Operator m = Operator::matrix(d_h * d_h, d_h * d_h,
                                std::vector<cx>(d_h * d_h * d_h * d_h));
  for (std::size_t jp = 0; jp < d_h; ++jp)
    for (std::size_t ip = 0; ip < d_h; ++ip) {
      Operator unit = Operator::zero(d_h);
      unit.at(ip, jp) = 1.0;
      const Operator img = compress(psi.apply(unit), x, y);
      const std::size_t col = ip + jp * d_h;
      for (std::size_t c = 0; c < d_h; ++c)
        for (std::size_t r = 0; r < d_h; ++r)
          m.at(r + c * d_h, col) = img.at(r, c);
    }
  return m;
}

Generator adjoint_gen(const Generator& phi) {
  return Generator::from_apply(
      phi.d_h(), phi.d_k(), [&](const Operator& unit) {
        return phi.apply(unit.adjoint()).adjoint();
      });
}

Generator euler_family(const Generator& limit, double h, Adaptedness mode) {
  if (!(h > 0.0)) throw dimension_error("euler_family: h must be positive");
  KhatBasis kb{limit.d_k()};
  const Operator p = (mode == Adaptedness::vacuum)
                         ? kb.delta_perp()
                         : Operator::identity({kb.d_khat()});
  const Generator back = scale_gen(limit, 1.0 / h);
  return Generator(limit.d_h(), limit.d_k(),
                   back.action() + tensor_embed_superop(limit.d_h(), p));
}

Generator hp_generator(const Operator& f, HpSide side) {
  if (!f.square() || f.row_factors().size() != 2)
    throw dimension_error("hp_generator: F must be square on h (x) khat");
  const std::size_t d_h = f.row_factors()[0];
  const std::size_t dd = f.row_factors()[1];
  const Operator idk = Operator::identity({dd});
  return Generator::from_apply(d_h, dd - 1, [&](const Operator& unit) {
    const Operator amp = kron(unit, idk);
    return side == HpSide::left ? amp * f : f * amp;
  });
}

Operator GKSLData::pi_apply(const Operator& a) const {
  const std::vector<cx> va = vec_cm(a);
  std::vector<cx> out(pi_action.rows());
  kern::zgemv(pi_action.data(), va.data(), out.data(), pi_action.rows(),
              pi_action.cols());
  return unvec_cm(out, {d_h, d_k}, {d_h, d_k});
}

double GKSLData::validate() const {
  double dev = (g - g.adjoint()).max_abs();
  const Operator idh = Operator::identity({d_h});
  const Operator idhk = Operator::identity({d_h, d_k});
  dev = std::max(dev, (pi_apply(idh) - idhk).max_abs());
  dev = std::max(dev, (w * w.adjoint() - idhk).max_abs());
  // *-homomorphism on matrix units
  for (std::size_t i = 0; i < d_h; ++i)
    for (std::size_t j = 0; j < d_h; ++j) {
      Operator eij = Operator::zero(d_h);
      eij.at(i, j) = 1.0;
      dev = std::max(dev,
                     (pi_apply(eij.adjoint()) - pi_apply(eij).adjoint())
                         .max_abs());
      for (std::size_t k = 0; k < d_h; ++k)
        for (std::size_t l = 0; l < d_h; ++l) {
          Operator ekl = Operator::zero(d_h);
          ekl.at(k, l) = 1.0;
          dev = std::max(dev, (pi_apply(eij * ekl) -
                               pi_apply(eij) * pi_apply(ekl))
                                  .max_abs());
        }
    }
  return dev;
}

GKSLData GKSLData::conjugation(std::size_t d_h, std::size_t d_k,
                               const Operator& g, const Operator& q,
                               const Operator& r, const Operator& w) {
  const std::size_t hk = d_h * d_k;
  if (q.rows() != hk || q.cols() != hk)
    throw dimension_error("GKSLData::conjugation: q must act on h (x) k");
  const Operator idk = Operator::identity({d_k});
  Operator pi = Operator::matrix(hk * hk, d_h * d_h,
                                 std::vector<cx>(hk * hk * d_h * d_h));
  const Operator qa = q.adjoint();
  for (std::size_t jp = 0; jp < d_h; ++jp)
    for (std::size_t ip = 0; ip < d_h; ++ip) {
      Operator unit = Operator::zero(d_h);
      unit.at(ip, jp) = 1.0;
      const Operator img =
          (qa * kron(unit, idk) * q).with_factors({d_h, d_k}, {d_h, d_k});
      const std::size_t col = ip + jp * d_h;
      for (std::size_t c = 0; c < hk; ++c)
        for (std::size_t r2 = 0; r2 < hk; ++r2)
          pi.at(r2 + c * hk, col) = img.at(r2, c);
    }
  return GKSLData{d_h, d_k, g, std::move(pi), r, w};
}

namespace {

Operator pihat(const GKSLData& d, const Operator& a) {
  const std::size_t hk = d.d_h * d.d_k;
  const Operator z_q = Operator::matrix(d.d_h, hk,
                                        std::vector<cx>(d.d_h * hk));
  const Operator z_r = Operator::matrix(hk, d.d_h,
                                        std::vector<cx>(hk * d.d_h));
  return assemble_khat_blocks(a, z_q, z_r, d.pi_apply(a), d.d_h, d.d_k);
}

}  // namespace

Operator assemble_khat_blocks(const Operator& p, const Operator& q,
                              const Operator& r, const Operator& s,
                              std::size_t d_h, std::size_t d_k) {
  const std::size_t dd = d_k + 1;
  const std::size_t hk = d_h * d_k;
  if (p.rows() != d_h || p.cols() != d_h || q.rows() != d_h ||
      q.cols() != hk || r.rows() != hk || r.cols() != d_h || s.rows() != hk ||
      s.cols() != hk)
    throw dimension_error("assemble_khat_blocks: block shapes inconsistent");
  Operator t({d_h, dd}, {d_h, dd});
  for (std::size_t i = 0; i < d_h; ++i)
    for (std::size_t j = 0; j < d_h; ++j) {
      t.at(i * dd, j * dd) = p.at(i, j);
      for (std::size_t be = 0; be < d_k; ++be)
        t.at(i * dd, j * dd + be + 1) = q.at(i, j * d_k + be);
      for (std::size_t al = 0; al < d_k; ++al) {
        t.at(i * dd + al + 1, j * dd) = r.at(i * d_k + al, j);
        for (std::size_t be = 0; be < d_k; ++be)
          t.at(i * dd + al + 1, j * dd + be + 1) =
              s.at(i * d_k + al, j * d_k + be);
      }
    }
  return t;
}

Generator repeated_interaction(const GKSLData& data, double h) {
  if (!(h > 0.0))
    throw dimension_error("repeated_interaction: h must be positive");
  if (data.validate() > 1e-8)
    throw dimension_error(
        "repeated_interaction: data violates the structural invariants");
  const std::size_t d_h = data.d_h, d_k = data.d_k;
  const std::size_t hk = d_h * d_k;

  const Operator z_p = Operator::zero(d_h);
  const Operator z_s =
      Operator::matrix(hk, hk, std::vector<cx>(hk * hk));
  const Operator big_r = assemble_khat_blocks(
      z_p, -1.0 * data.r, data.r.adjoint(), z_s, d_h, d_k);
  const Operator u = expm(std::sqrt(h) * big_r, 1e-13);

  const cx ih(0.0, h);
  const Operator eg = expm(ih * data.g, 1e-13);
  const Operator egk =
      expm((ih * kron(data.g, Operator::identity({d_k})))
               .with_factors({hk}, {hk}),
           1e-13);
  const Operator z_q = Operator::matrix(d_h, hk, std::vector<cx>(d_h * hk));
  const Operator z_r = Operator::matrix(hk, d_h, std::vector<cx>(hk * d_h));
  const Operator v =
      assemble_khat_blocks(eg, z_q, z_r, data.w * egk, d_h, d_k);

  const Operator uv = u * v;
  const Operator uv_adj = uv.adjoint();
  return Generator::from_apply(d_h, d_k, [&](const Operator& unit) {
    return uv_adj * pihat(data, unit) * uv;
  });
}

Generator homgen(const GKSLData& data) {
  const std::size_t d_h = data.d_h, d_k = data.d_k;
  const cx i1(0.0, 1.0);
  const Operator rr = data.r * data.r.adjoint();
  return Generator::from_apply(d_h, d_k, [&](const Operator& a) {
    const Operator pa = data.pi_apply(a).with_factors({d_h * d_k},
                                                      {d_h * d_k});
    const Operator tl = i1 * (a * data.g - data.g * a) -
                        0.5 * (a * rr + rr * a) +
                        data.r * pa * data.r.adjoint();
    const Operator tr = data.r * pa * data.w - a * data.r * data.w;
    const Operator bl = data.w.adjoint() * pa * data.r.adjoint() -
                        data.w.adjoint() * data.r.adjoint() * a;
    const Operator br = data.w.adjoint() * pa * data.w;
    return assemble_khat_blocks(tl, tr, bl, br, d_h, d_k);
  });
}

Generator homgen_abc(const GKSLData& data) {
  const std::size_t d_h = data.d_h, d_k = data.d_k;
  const std::size_t hk = d_h * d_k;
  const cx i1(0.0, 1.0);
  const Operator z_q = Operator::matrix(d_h, hk, std::vector<cx>(d_h * hk));
  const Operator z_r = Operator::matrix(hk, d_h, std::vector<cx>(hk * d_h));
  const Operator z_s = Operator::matrix(hk, hk, std::vector<cx>(hk * hk));
  const Operator z_p = Operator::zero(d_h);

  const Operator a_op = assemble_khat_blocks(Operator::identity({d_h}), z_q,
                                             z_r, z_s, d_h, d_k);
  const Operator b_op =
      assemble_khat_blocks(z_p, z_q, data.r.adjoint(), data.w, d_h, d_k);
  const Operator c_top = i1 * data.g - 0.5 * (data.r * data.r.adjoint());
  const Operator c_op = assemble_khat_blocks(c_top, -1.0 * (data.r * data.w),
                                             z_r, z_s, d_h, d_k);
  return Generator::from_apply(d_h, d_k, [&](const Operator& unit) {
    const Operator ph = pihat(data, unit);
    return b_op.adjoint() * ph * b_op + a_op.adjoint() * ph * c_op +
           c_op.adjoint() * ph * a_op;
  });
}

Operator gkls_apply(const GKSLData& data, const Operator& a) {
  const cx i1(0.0, 1.0);
  const Operator rr = data.r * data.r.adjoint();
  const Operator pa =
      data.pi_apply(a).with_factors({data.d_h * data.d_k},
                                    {data.d_h * data.d_k});
  return i1 * (a * data.g - data.g * a) - 0.5 * (a * rr + rr * a) +
         data.r * pa * data.r.adjoint();
}

Operator gkls_superop(const GKSLData& data) {
  const std::size_t d_h = data.d_h;
  Operator m = Operator::matrix(d_h * d_h, d_h * d_h,
                                std::vector<cx>(d_h * d_h * d_h * d_h));
  for (std::size_t jp = 0; jp < d_h; ++jp)
    for (std::size_t ip = 0; ip < d_h; ++ip) {
      Operator unit = Operator::zero(d_h);
      unit.at(ip, jp) = 1.0;
      const Operator img = gkls_apply(data, unit);
      const std::size_t col = ip + jp * d_h;
      for (std::size_t c = 0; c < d_h; ++c)
        for (std::size_t r = 0; r < d_h; ++r)
          m.at(r + c * d_h, col) = img.at(r, c);
    }
  return m;
}

double khat_norm(const Generator& phi) {
  return static_cast<double>(phi.d_khat()) * op_norm(phi.action());
}

}  // namespace qwalk
