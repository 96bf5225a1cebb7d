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

#include <random>

#include "qwalk/kernels.hpp"

using namespace qwalk::kern;

namespace {

std::vector<cx> random_vec(std::mt19937_64& eng, std::size_t n) {
  std::vector<cx> v(n);
  auto u = [&] {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  };
  for (auto& e : v) e = cx(u(), u());
  return v;
}

// textbook triple loop, kept independent of the library kernels
std::vector<cx> naive_gemm(const std::vector<cx>& a, const std::vector<cx>& b,
                           std::size_t m, std::size_t k, std::size_t n) {
  std::vector<cx> c(m * n, cx(0.0, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < k; ++l)
        c[i * n + j] += a[i * k + l] * b[l * n + j];
  return c;
}

double max_diff(const std::vector<cx>& x, const std::vector<cx>& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

}  // namespace

TEST_CASE("scalar gemm matches a naive triple loop") {
  std::mt19937_64 eng(7);
  for (auto [m, k, n] : {std::array<std::size_t, 3>{3, 4, 5},
                         {1, 7, 2},
                         {8, 8, 8},
                         {5, 1, 9}}) {
    const auto a = random_vec(eng, m * k);
    const auto b = random_vec(eng, k * n);
    std::vector<cx> c(m * n);
    detail::zgemm_scalar(a.data(), b.data(), c.data(), m, k, n);
    CHECK(max_diff(c, naive_gemm(a, b, m, k, n)) < 1e-13);
  }
}

TEST_CASE("scalar dotc and axpy match direct sums") {
  std::mt19937_64 eng(8);
  const auto x = random_vec(eng, 17);
  const auto y = random_vec(eng, 17);
  cx direct(0.0, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) direct += std::conj(x[i]) * y[i];
  CHECK(std::abs(detail::zdotc_scalar(x.data(), y.data(), 17) - direct) <
        1e-13);

  std::vector<cx> acc = y;
  const cx alpha(0.3, -0.7);
  detail::zaxpy_scalar(alpha, x.data(), acc.data(), 17);
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(std::abs(acc[i] - (y[i] + alpha * x[i])) < 1e-14);
}

TEST_CASE("simd backend agrees with the scalar reference") {
  if (!backend_available(Backend::avx2)) {
    MESSAGE("avx2 not available on this host; dispatch stays scalar");
    CHECK(active_backend() == Backend::scalar);
    return;
  }
  std::mt19937_64 eng(9);
  for (auto [m, k, n] : {std::array<std::size_t, 3>{6, 5, 4},
                         {3, 3, 3},
                         {2, 9, 7},
                         {16, 16, 16},
                         {64, 64, 64},
                         {33, 17, 129},
                         {5, 4, 1}}) {
    const auto a = random_vec(eng, m * k);
    const auto b = random_vec(eng, k * n);
    std::vector<cx> c_ref(m * n), c_simd(m * n);
    detail::zgemm_scalar(a.data(), b.data(), c_ref.data(), m, k, n);
    detail::zgemm_avx2(a.data(), b.data(), c_simd.data(), m, k, n);
    CHECK(max_diff(c_ref, c_simd) < 1e-13);
  }
  for (std::size_t n : {1u, 2u, 5u, 64u, 1001u}) {
    const auto x = random_vec(eng, n);
    const auto y = random_vec(eng, n);
    CHECK(std::abs(detail::zdotc_scalar(x.data(), y.data(), n) -
                   detail::zdotc_avx2(x.data(), y.data(), n)) <
          1e-12 * (1.0 + static_cast<double>(n)));
    std::vector<cx> y1 = y, y2 = y;
    const cx alpha(-1.2, 0.4);
    detail::zaxpy_scalar(alpha, x.data(), y1.data(), n);
    detail::zaxpy_avx2(alpha, x.data(), y2.data(), n);
    CHECK(max_diff(y1, y2) < 1e-13);
  }
}

TEST_CASE("runtime backend switching") {
  const Backend original = active_backend();
  set_backend(Backend::scalar);
  CHECK(active_backend() == Backend::scalar);
  if (backend_available(Backend::avx2)) {
    set_backend(Backend::avx2);
    CHECK(active_backend() == Backend::avx2);
  } else {
    CHECK_THROWS_AS(set_backend(Backend::avx2), std::invalid_argument);
  }
  set_backend(original);
}
