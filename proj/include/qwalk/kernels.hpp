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
#include <string>

namespace qwalk::kern {

using cx = std::complex<double>;

// Dense complex kernels, row-major storage throughout. Every kernel has a
// scalar reference implementation and, on x86-64, an AVX2+FMA variant; the
// active backend is chosen at load time from CPUID and can be overridden.

enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_available(Backend b);
void set_backend(Backend b);   // throws std::invalid_argument if unavailable
std::string backend_name(Backend b);

// C (m x n) = A (m x k) * B (k x n); C must not alias A or B.
void zgemm(const cx* a, const cx* b, cx* c, std::size_t m, std::size_t k,
           std::size_t n);

// y (m) = A (m x n) * x (n); y must not alias A or x.
void zgemv(const cx* a, const cx* x, cx* y, std::size_t m, std::size_t n);

// sum_i conj(x_i) * y_i
cx zdotc(const cx* x, const cx* y, std::size_t n);

// y += alpha * x
void zaxpy(cx alpha, const cx* x, cx* y, std::size_t n);

// sqrt(sum_i |x_i|^2)
double znrm2(const cx* x, std::size_t n);

namespace detail {
void zgemm_scalar(const cx* a, const cx* b, cx* c, std::size_t m,
                  std::size_t k, std::size_t n);
cx zdotc_scalar(const cx* x, const cx* y, std::size_t n);
void zaxpy_scalar(cx alpha, const cx* x, cx* y, std::size_t n);
#if defined(__x86_64__) || defined(_M_X64)
void zgemm_avx2(const cx* a, const cx* b, cx* c, std::size_t m, std::size_t k,
                std::size_t n);
cx zdotc_avx2(const cx* x, const cx* y, std::size_t n);
void zaxpy_avx2(cx alpha, const cx* x, cx* y, std::size_t n);
#endif
}  // namespace detail

}  // namespace qwalk::kern
