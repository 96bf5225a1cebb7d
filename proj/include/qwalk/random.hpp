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

#include <cstdint>
#include <random>

#include "qwalk/generator.hpp"
#include "qwalk/step_function.hpp"

namespace qwalk {

/// Seeded 64-bit generator for reproducible experiment data. Only the raw
/// mt19937_64 stream is consumed (no library distributions), so identical
/// seeds give identical data on every platform.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : eng_(seed) {}

  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  cx complex_uniform(double scale = 1.0);  // square [-s, s)^2

  std::vector<cx> vector(std::size_t n, double scale = 1.0);
  std::vector<cx> unit_vector(std::size_t n);
  Operator matrix(std::size_t rows, std::size_t cols, double scale = 1.0);
  Operator hermitian(std::size_t n, double scale = 1.0);
  Operator unitary(std::size_t n);

  Generator generator(std::size_t d_h, std::size_t d_k, double scale = 1.0);
  GKSLData gksl(std::size_t d_h, std::size_t d_k, double scale = 1.0,
                bool identity_w = false);

  // step function with at most max_steps pieces supported in [0, t_max)
  StepFunction step_function(std::size_t dim, std::size_t max_steps,
                             double t_max, double scale = 1.0);

 private:
  std::mt19937_64 eng_;
};

}  // namespace qwalk
