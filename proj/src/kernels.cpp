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

#include "qwalk/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define QWALK_X86 1
#else
#define QWALK_X86 0
#endif

namespace qwalk::kern {

namespace detail {

void zgemm_scalar(const cx* a, const cx* b, cx* c, std::size_t m,
                  std::size_t k, std::size_t n) {
  std::fill(c, c + m * n, cx(0.0, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      const cx ail = a[i * k + l];
      if (ail == cx(0.0, 0.0)) continue;
      const cx* brow = b + l * n;
      cx* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
    }
  }
}

cx zdotc_scalar(const cx* x, const cx* y, std::size_t n) {
  cx acc(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

void zaxpy_scalar(cx alpha, const cx* x, cx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

#if QWALK_X86

// Two complex doubles per __m256d, interleaved (re, im, re, im).
// a*b with a broadcast: re lanes ar*br - ai*bi, im lanes ar*bi + ai*br.
__attribute__((target("avx2,fma"))) static inline __m256d cmul_bcast(
    __m256d are, __m256d aim, __m256d b) {
  __m256d bswap = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bswap));
}

__attribute__((target("avx2,fma"))) void zgemm_avx2(const cx* a, const cx* b,
                                                    cx* c, std::size_t m,
                                                    std::size_t k,
                                                    std::size_t n) {
  std::fill(c, c + m * n, cx(0.0, 0.0));
  const std::size_t n2 = n & ~std::size_t(1);
  for (std::size_t i = 0; i < m; ++i) {
    cx* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const cx ail = a[i * k + l];
      if (ail == cx(0.0, 0.0)) continue;
      const __m256d are = _mm256_set1_pd(ail.real());
      const __m256d aim = _mm256_set1_pd(ail.imag());
      const double* brow = reinterpret_cast<const double*>(b + l * n);
      double* cd = reinterpret_cast<double*>(crow);
      std::size_t j = 0;
      for (; j < n2; j += 2) {
        __m256d bv = _mm256_loadu_pd(brow + 2 * j);
        __m256d cv = _mm256_loadu_pd(cd + 2 * j);
        cv = _mm256_add_pd(cv, cmul_bcast(are, aim, bv));
        _mm256_storeu_pd(cd + 2 * j, cv);
      }
      for (; j < n; ++j) crow[j] += ail * b[l * n + j];
    }
  }
}

__attribute__((target("avx2,fma"))) cx zdotc_avx2(const cx* x, const cx* y,
                                                  std::size_t n) {
  const std::size_t n2 = n & ~std::size_t(1);
  // accA lanes hold xr*yr, xi*yi pairs; accB lanes hold xr*yi, xi*yr pairs.
  __m256d accA = _mm256_setzero_pd();
  __m256d accB = _mm256_setzero_pd();
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    accA = _mm256_fmadd_pd(xv, yv, accA);
    accB = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), accB);
  }
  alignas(32) double ra[4], rb[4];
  _mm256_store_pd(ra, accA);
  _mm256_store_pd(rb, accB);
  double re = ra[0] + ra[1] + ra[2] + ra[3];
  double im = rb[0] - rb[1] + rb[2] - rb[3];
  cx acc(re, im);
  for (; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

__attribute__((target("avx2,fma"))) void zaxpy_avx2(cx alpha, const cx* x,
                                                    cx* y, std::size_t n) {
  const std::size_t n2 = n & ~std::size_t(1);
  const __m256d are = _mm256_set1_pd(alpha.real());
  const __m256d aim = _mm256_set1_pd(alpha.imag());
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    yv = _mm256_add_pd(yv, cmul_bcast(are, aim, xv));
    _mm256_storeu_pd(yd + 2 * i, yv);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

#endif  // QWALK_X86

}  // namespace detail

namespace {

bool cpu_has_avx2() {
#if QWALK_X86
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend g_backend = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;

}  // namespace

Backend active_backend() { return g_backend; }

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
  return cpu_has_avx2();
}

void set_backend(Backend b) {
  if (!backend_available(b))
    throw std::invalid_argument("kernel backend not available on this CPU: " +
                                backend_name(b));
  g_backend = b;
}

std::string backend_name(Backend b) {
  return b == Backend::scalar ? "scalar" : "avx2";
}

void zgemm(const cx* a, const cx* b, cx* c, std::size_t m, std::size_t k,
           std::size_t n) {
#if QWALK_X86
  if (g_backend == Backend::avx2) {
    detail::zgemm_avx2(a, b, c, m, k, n);
    return;
  }
#endif
  detail::zgemm_scalar(a, b, c, m, k, n);
}

void zgemv(const cx* a, const cx* x, cx* y, std::size_t m, std::size_t n) {
  zgemm(a, x, y, m, n, 1);
}

cx zdotc(const cx* x, const cx* y, std::size_t n) {
#if QWALK_X86
  if (g_backend == Backend::avx2) return detail::zdotc_avx2(x, y, n);
#endif
  return detail::zdotc_scalar(x, y, n);
}

void zaxpy(cx alpha, const cx* x, cx* y, std::size_t n) {
#if QWALK_X86
  if (g_backend == Backend::avx2) {
    detail::zaxpy_avx2(alpha, x, y, n);
    return;
  }
#endif
  detail::zaxpy_scalar(alpha, x, y, n);
}

double znrm2(const cx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
  return std::sqrt(acc);
}

}  // namespace qwalk::kern
