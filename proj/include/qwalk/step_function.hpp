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

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "qwalk/operator.hpp"

namespace qwalk {

/// Compactly supported, right-continuous step function on [0, infinity) with
/// values in C^{d_k}. Value i holds on [breakpoints[i], breakpoints[i+1]),
/// the last interval ending at support_end; the function is zero from
/// support_end on.
class StepFunction {
 public:
  StepFunction(std::vector<double> breakpoints,
               std::vector<std::vector<cx>> values, double support_end);

  static StepFunction zero(std::size_t dim);
  // value on [from, to), zero elsewhere
  static StepFunction indicator(double from, double to, std::vector<cx> value);
  static StepFunction indicator(double from, double to, cx value) {
    return indicator(from, to, std::vector<cx>{value});
  }

  std::size_t dim() const { return dim_; }
  double support_end() const { return support_end_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<std::vector<cx>>& values() const { return values_; }

  std::vector<cx> eval(double t) const;

  // Exact integral of f over [from, to).
  std::vector<cx> integrate(double from, double to) const;
  // Exact integral of ||f(s)||^2 over [from, to); to may be infinity.
  double norm_sq(double from = 0.0,
                 double to = std::numeric_limits<double>::infinity()) const;

  // f(. + s), the left shift used by the cocycle identity.
  StepFunction shifted_left(double s) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<std::vector<cx>> values_;
  double support_end_;
  std::size_t dim_;
};

// f(n;h) = h^{-1/2} * integral of f over [nh, (n+1)h)
std::vector<cx> discretize(const StepFunction& f, double h, std::size_t n);

// Orthogonal projection onto step functions subordinate to the grid
// {0, h, 2h, ...}: cell n carries the mean of f over [nh, (n+1)h).
StepFunction project(const StepFunction& f, double h);

// integral over [from, to) of <f(s), g(s)> ds, conjugate-linear in f.
cx l2_inner(const StepFunction& f, const StepFunction& g, double from = 0.0,
            double to = std::numeric_limits<double>::infinity());

// <eps(f), eps(g)> = exp(<f, g>)
cx exp_inner(const StepFunction& f, const StepFunction& g);

/// Region of increasing m-tuples below horizon t; with h present, the union
/// of full strictly increasing h-boxes instead.
struct SimplexRegion {
  std::size_t m;
  double t;
  std::optional<double> h;
};

double simplex_box_measure(const SimplexRegion& region);

// floor(t/h) with a snap guard: t within 1e-9*h of the next grid point is
// assigned to that grid point, so t = n*h lands in step n despite rounding.
std::size_t grid_step(double t, double h);

double binomial(std::size_t n, std::size_t k);
double factorial(std::size_t m);

}  // namespace qwalk
