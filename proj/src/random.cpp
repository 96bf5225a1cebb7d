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

#include "qwalk/random.hpp"

#include <algorithm>
#include <cmath>

#include "qwalk/kernels.hpp"

namespace qwalk {

double Prng::uniform() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Prng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

cx Prng::complex_uniform(double scale) {
  const double re = uniform(-scale, scale);
  const double im = uniform(-scale, scale);
  return cx(re, im);
}

std::vector<cx> Prng::vector(std::size_t n, double scale) {
  std::vector<cx> v(n);
  for (auto& e : v) e = complex_uniform(scale);
  return v;
}

std::vector<cx> Prng::unit_vector(std::size_t n) {
  std::vector<cx> v = vector(n);
  const double nn = kern::znrm2(v.data(), n);
  for (auto& e : v) e /= nn;
  return v;
}

Operator Prng::matrix(std::size_t rows, std::size_t cols, double scale) {
  return Operator::matrix(rows, cols, vector(rows * cols, scale));
}

Operator Prng::hermitian(std::size_t n, double scale) {
  Operator a = matrix(n, n, scale);
  Operator h = a + a.adjoint();
  h *= cx(0.5, 0.0);
  return h;
}

Operator Prng::unitary(std::size_t n) {
  // Gram-Schmidt on random columns
  Operator a = matrix(n, n);
  std::vector<std::vector<cx>> cols(n, std::vector<cx>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) cols[j][i] = a.at(i, j);
    for (std::size_t k = 0; k < j; ++k) {
      const cx proj = kern::zdotc(cols[k].data(), cols[j].data(), n);
      kern::zaxpy(-proj, cols[k].data(), cols[j].data(), n);
    }
    const double nn = kern::znrm2(cols[j].data(), n);
    for (auto& e : cols[j]) e /= nn;
  }
  Operator u({n}, {n});
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) u.at(i, j) = cols[j][i];
  return u;
}

Generator Prng::generator(std::size_t d_h, std::size_t d_k, double scale) {
  const std::size_t big = d_h * (d_k + 1);
  return Generator(d_h, d_k, matrix(big * big, d_h * d_h, scale));
}

GKSLData Prng::gksl(std::size_t d_h, std::size_t d_k, double scale,
                    bool identity_w) {
  const std::size_t hk = d_h * d_k;
  const Operator g = hermitian(d_h, scale);
  const Operator q = unitary(hk);
  const Operator r = matrix(d_h, hk, scale);
  const Operator w = identity_w ? Operator::identity({hk}) : unitary(hk);
  return GKSLData::conjugation(d_h, d_k, g,
                               q.with_factors({d_h, d_k}, {d_h, d_k}),
                               r.with_factors({d_h}, {d_h, d_k}),
                               w.with_factors({d_h, d_k}, {d_h, d_k}));
}

StepFunction Prng::step_function(std::size_t dim, std::size_t max_steps,
                                 double t_max, double scale) {
  const std::size_t steps =
      1 + static_cast<std::size_t>(uniform() * static_cast<double>(max_steps));
  std::vector<double> bp{0.0};
  for (std::size_t i = 1; i < steps; ++i) bp.push_back(uniform(0.05, t_max));
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  std::vector<std::vector<cx>> vals;
  vals.reserve(bp.size());
  for (std::size_t i = 0; i < bp.size(); ++i) vals.push_back(vector(dim, scale));
  return StepFunction(std::move(bp), std::move(vals), t_max);
}

}  // namespace qwalk
