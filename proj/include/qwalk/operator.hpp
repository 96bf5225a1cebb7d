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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qwalk {

using cx = std::complex<double>;

struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when a requested tensor dimension exceeds the configured budget.
// Never a silent truncation.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense complex matrix carrying the factor dimensions of the tensor-product
/// spaces it acts between. Entries are row-major; an Operator with
/// row_factors {p, q} acts on C^p (x) C^q with row index i*q + j.
class Operator {
 public:
  Operator() = default;
  Operator(std::vector<std::size_t> row_factors,
           std::vector<std::size_t> col_factors);
  Operator(std::vector<std::size_t> row_factors,
           std::vector<std::size_t> col_factors, std::vector<cx> entries);

  static Operator identity(std::vector<std::size_t> factors);
  // Plain d_r x d_c matrix (single factor each).
  static Operator matrix(std::size_t d_r, std::size_t d_c,
                         std::vector<cx> entries);
  static Operator zero(std::size_t d) { return Operator({d}, {d}); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<std::size_t>& row_factors() const { return row_factors_; }
  const std::vector<std::size_t>& col_factors() const { return col_factors_; }
  bool square() const { return rows_ == cols_; }

  cx& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const cx& at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  const std::vector<cx>& entries() const { return entries_; }
  std::vector<cx>& entries() { return entries_; }
  const cx* data() const { return entries_.data(); }
  cx* data() { return entries_.data(); }

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(cx s);
  Operator operator+(const Operator& o) const;
  Operator operator-(const Operator& o) const;
  Operator operator*(const Operator& o) const;  // matrix product
  Operator operator-() const;

  Operator adjoint() const;
  Operator transpose() const;
  Operator conj() const;

  // Replaces the factor lists without touching entries (products must match).
  Operator with_factors(std::vector<std::size_t> row_factors,
                        std::vector<std::size_t> col_factors) const;

  std::vector<cx> apply(std::span<const cx> v) const;  // matrix * vector

  double frobenius_norm() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::size_t> row_factors_{}, col_factors_{};
  std::vector<cx> entries_{};
};

Operator operator*(cx s, const Operator& o);
Operator operator*(double s, const Operator& o);

Operator kron(const Operator& a, const Operator& b);

// E^x T E_y on the trailing tensor factor: T acts on H (x) K, x and y are
// vectors in K, and the result acts on H with entries
// (E^x T E_y)_{ij} = sum_{p,q} conj(x_p) T_{(i,p),(j,q)} y_q.
Operator compress(const Operator& t, std::span<const cx> x,
                  std::span<const cx> y);

// Matrix exponential by scaling-and-squaring with a truncated Taylor series;
// the truncation keeps going until the term norm drops below tol.
Operator expm(const Operator& a, double tol = 1e-12);

// Largest singular value via power iteration on T*T.
double op_norm(const Operator& t, double rel_tol = 1e-10);

std::vector<cx> kron_vec(std::span<const cx> a, std::span<const cx> b);

/// Basis data for khat = C (+) k: omega = (1, 0, ..., 0) and the hat lift
/// x -> (1, x).
struct KhatBasis {
  std::size_t d_k;

  std::size_t d_khat() const { return d_k + 1; }
  std::vector<cx> omega() const;
  std::vector<cx> hat(std::span<const cx> x) const;
  Operator delta() const;       // projection onto the k block
  Operator delta_perp() const;  // projection onto C omega
};

}  // namespace qwalk
