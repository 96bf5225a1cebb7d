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

#include "qwalk/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/kernels.hpp"

namespace qwalk {

namespace {

std::size_t product(const std::vector<std::size_t>& f) {
  std::size_t p = 1;
  for (auto d : f) p *= d;
  return p;
}

void check_same_shape(const Operator& a, const Operator& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error(std::string(what) + ": shape mismatch " +
                          std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " vs " +
                          std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()));
}

}  // namespace

Operator::Operator(std::vector<std::size_t> row_factors,
                   std::vector<std::size_t> col_factors)
    : rows_(product(row_factors)),
      cols_(product(col_factors)),
      row_factors_(std::move(row_factors)),
      col_factors_(std::move(col_factors)),
      entries_(rows_ * cols_, cx(0.0, 0.0)) {}

Operator::Operator(std::vector<std::size_t> row_factors,
                   std::vector<std::size_t> col_factors,
                   std::vector<cx> entries)
    : rows_(product(row_factors)),
      cols_(product(col_factors)),
      row_factors_(std::move(row_factors)),
      col_factors_(std::move(col_factors)),
      entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_)
    throw dimension_error("Operator: entry count " +
                          std::to_string(entries_.size()) +
                          " does not match " + std::to_string(rows_) + "x" +
                          std::to_string(cols_));
}

Operator Operator::identity(std::vector<std::size_t> factors) {
  Operator r(factors, factors);
  for (std::size_t i = 0; i < r.rows_; ++i) r.at(i, i) = 1.0;
  return r;
}

Operator Operator::matrix(std::size_t d_r, std::size_t d_c,
                          std::vector<cx> entries) {
  return Operator({d_r}, {d_c}, std::move(entries));
}

Operator& Operator::operator+=(const Operator& o) {
  check_same_shape(*this, o, "operator+");
  kern::zaxpy(cx(1.0, 0.0), o.data(), data(), entries_.size());
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  check_same_shape(*this, o, "operator-");
  kern::zaxpy(cx(-1.0, 0.0), o.data(), data(), entries_.size());
  return *this;
}

Operator& Operator::operator*=(cx s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

Operator Operator::operator+(const Operator& o) const {
  Operator r = *this;
  r += o;
  return r;
}

Operator Operator::operator-(const Operator& o) const {
  Operator r = *this;
  r -= o;
  return r;
}

Operator Operator::operator-() const {
  Operator r = *this;
  r *= cx(-1.0, 0.0);
  return r;
}

Operator Operator::operator*(const Operator& o) const {
  if (cols_ != o.rows_)
    throw dimension_error("operator*: inner dimensions " +
                          std::to_string(cols_) + " vs " +
                          std::to_string(o.rows_));
  Operator r(row_factors_, o.col_factors_);
  kern::zgemm(data(), o.data(), r.data(), rows_, cols_, o.cols_);
  return r;
}

Operator operator*(cx s, const Operator& o) {
  Operator r = o;
  r *= s;
  return r;
}

Operator operator*(double s, const Operator& o) { return cx(s, 0.0) * o; }

Operator Operator::adjoint() const {
  Operator r(col_factors_, row_factors_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      r.at(j, i) = std::conj(at(i, j));
  return r;
}

Operator Operator::transpose() const {
  Operator r(col_factors_, row_factors_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Operator Operator::conj() const {
  Operator r = *this;
  for (auto& e : r.entries_) e = std::conj(e);
  return r;
}

Operator Operator::with_factors(std::vector<std::size_t> row_factors,
                                std::vector<std::size_t> col_factors) const {
  if (product(row_factors) != rows_ || product(col_factors) != cols_)
    throw dimension_error("with_factors: factor products do not match shape");
  return Operator(std::move(row_factors), std::move(col_factors), entries_);
}

std::vector<cx> Operator::apply(std::span<const cx> v) const {
  if (v.size() != cols_)
    throw dimension_error("apply: vector length " + std::to_string(v.size()) +
                          " vs cols " + std::to_string(cols_));
  std::vector<cx> out(rows_);
  kern::zgemv(data(), v.data(), out.data(), rows_, cols_);
  return out;
}

double Operator::frobenius_norm() const {
  return kern::znrm2(data(), entries_.size());
}

double Operator::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

Operator kron(const Operator& a, const Operator& b) {
  std::vector<std::size_t> rf = a.row_factors();
  rf.insert(rf.end(), b.row_factors().begin(), b.row_factors().end());
  std::vector<std::size_t> cf = a.col_factors();
  cf.insert(cf.end(), b.col_factors().begin(), b.col_factors().end());
  Operator r(std::move(rf), std::move(cf));
  const std::size_t br = b.rows(), bc = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cx aij = a.at(i, j);
      if (aij == cx(0.0, 0.0)) continue;
      for (std::size_t p = 0; p < br; ++p)
        for (std::size_t q = 0; q < bc; ++q)
          r.at(i * br + p, j * bc + q) = aij * b.at(p, q);
    }
  return r;
}

Operator compress(const Operator& t, std::span<const cx> x,
                  std::span<const cx> y) {
  if (t.row_factors().size() < 2 || t.col_factors().size() < 2)
    throw dimension_error("compress: operator has no trailing tensor factor");
  const std::size_t dkx = t.row_factors().back();
  const std::size_t dky = t.col_factors().back();
  if (x.size() != dkx || y.size() != dky)
    throw dimension_error("compress: vector dims " + std::to_string(x.size()) +
                          "," + std::to_string(y.size()) +
                          " vs trailing factors " + std::to_string(dkx) + "," +
                          std::to_string(dky));
  std::vector<std::size_t> rf(t.row_factors().begin(),
                              t.row_factors().end() - 1);
  std::vector<std::size_t> cf(t.col_factors().begin(),
                              t.col_factors().end() - 1);
  Operator r(std::move(rf), std::move(cf));
  const std::size_t hr = r.rows(), hc = r.cols();
  for (std::size_t i = 0; i < hr; ++i)
    for (std::size_t j = 0; j < hc; ++j) {
      cx acc(0.0, 0.0);
      for (std::size_t p = 0; p < dkx; ++p) {
        const cx xp = std::conj(x[p]);
        if (xp == cx(0.0, 0.0)) continue;
        for (std::size_t q = 0; q < dky; ++q)
          acc += xp * t.at(i * dkx + p, j * dky + q) * y[q];
      }
      r.at(i, j) = acc;
    }
  return r;
}

Operator expm(const Operator& a, double tol) {
  if (!a.square()) throw dimension_error("expm: operator is not square");
  // Scale so the scaled matrix has norm below 1/2, exponentiate by Taylor,
  // then square back up.
  double nrm = a.frobenius_norm();
  int s = 0;
  if (nrm > 0.5) s = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  Operator b = a;
  b *= cx(std::ldexp(1.0, -s), 0.0);

  Operator r = Operator::identity(a.row_factors());
  Operator term = Operator::identity(a.row_factors());
  const double floor_tol = tol > 0 ? tol : 1e-16;
  for (int j = 1; j < 64; ++j) {
    term = term * b;
    term *= cx(1.0 / j, 0.0);
    r += term;
    if (term.frobenius_norm() <= floor_tol * 0.5) break;
  }
  for (int j = 0; j < s; ++j) r = r * r;
  return r;
}

double op_norm(const Operator& t, double rel_tol) {
  const std::size_t n = t.cols();
  if (n == 0 || t.rows() == 0) return 0.0;
  // Power iteration on T*T with a deterministic start vector.
  std::vector<cx> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = cx(1.0 + 0.37 * static_cast<double>(i % 7),
              0.11 * static_cast<double>(i % 5));
  double vn = kern::znrm2(v.data(), n);
  for (auto& e : v) e /= vn;

  const Operator ts = t.adjoint();
  double lambda = 0.0;
  std::vector<cx> tv(t.rows()), w(n);
  for (int it = 0; it < 20000; ++it) {
    kern::zgemv(t.data(), v.data(), tv.data(), t.rows(), n);
    kern::zgemv(ts.data(), tv.data(), w.data(), n, t.rows());
    const double nl = kern::znrm2(tv.data(), t.rows());
    const double next = nl * nl;
    const double wn = kern::znrm2(w.data(), n);
    if (wn == 0.0) return 0.0;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
    if (it > 0 && std::abs(next - lambda) <=
                      rel_tol * std::max(next, 1e-300)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

std::vector<cx> kron_vec(std::span<const cx> a, std::span<const cx> b) {
  std::vector<cx> r(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i * b.size() + j] = a[i] * b[j];
  return r;
}

std::vector<cx> KhatBasis::omega() const {
  std::vector<cx> w(d_khat(), cx(0.0, 0.0));
  w[0] = 1.0;
  return w;
}

std::vector<cx> KhatBasis::hat(std::span<const cx> x) const {
  if (x.size() != d_k)
    throw dimension_error("hat: vector dim " + std::to_string(x.size()) +
                          " vs d_k " + std::to_string(d_k));
  std::vector<cx> r(d_khat());
  r[0] = 1.0;
  for (std::size_t i = 0; i < d_k; ++i) r[i + 1] = x[i];
  return r;
}

Operator KhatBasis::delta() const {
  Operator p({d_khat()}, {d_khat()});
  for (std::size_t i = 1; i < d_khat(); ++i) p.at(i, i) = 1.0;
  return p;
}

Operator KhatBasis::delta_perp() const {
  Operator p({d_khat()}, {d_khat()});
  p.at(0, 0) = 1.0;
  return p;
}

}  // namespace qwalk
