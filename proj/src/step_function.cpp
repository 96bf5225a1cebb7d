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

#include "qwalk/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/kernels.hpp"

namespace qwalk {

StepFunction::StepFunction(std::vector<double> breakpoints,
                           std::vector<std::vector<cx>> values,
                           double support_end)
    : breakpoints_(std::move(breakpoints)),
      values_(std::move(values)),
      support_end_(support_end) {
  if (breakpoints_.empty() || breakpoints_.front() != 0.0)
    throw dimension_error("StepFunction: breakpoints must start at 0");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] > breakpoints_[i - 1]))
      throw dimension_error(
          "StepFunction: breakpoints must be strictly increasing");
  if (values_.size() != breakpoints_.size())
    throw dimension_error("StepFunction: need one value per breakpoint");
  if (!(support_end_ > breakpoints_.back()))
    throw dimension_error(
        "StepFunction: support_end must exceed the last breakpoint");
  dim_ = values_.front().size();
  if (dim_ == 0) throw dimension_error("StepFunction: zero-dimensional value");
  for (const auto& v : values_)
    if (v.size() != dim_)
      throw dimension_error("StepFunction: inconsistent value dimensions");
}

StepFunction StepFunction::zero(std::size_t dim) {
  return StepFunction({0.0}, {std::vector<cx>(dim, cx(0.0, 0.0))}, 1.0);
}

StepFunction StepFunction::indicator(double from, double to,
                                     std::vector<cx> value) {
  if (!(to > from) || from < 0.0)
    throw dimension_error("indicator: need 0 <= from < to");
  const std::size_t d = value.size();
  if (from == 0.0) return StepFunction({0.0}, {std::move(value)}, to);
  return StepFunction({0.0, from},
                      {std::vector<cx>(d, cx(0.0, 0.0)), std::move(value)},
                      to);
}

std::vector<cx> StepFunction::eval(double t) const {
  if (t < 0.0 || t >= support_end_) return std::vector<cx>(dim_, cx(0.0, 0.0));
  // right-continuous: the interval containing t from the right
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const std::size_t idx = static_cast<std::size_t>(it - breakpoints_.begin());
  if (idx == 0) return std::vector<cx>(dim_, cx(0.0, 0.0));
  return values_[idx - 1];
}

std::vector<cx> StepFunction::integrate(double from, double to) const {
  std::vector<cx> acc(dim_, cx(0.0, 0.0));
  from = std::max(from, 0.0);
  to = std::min(to, support_end_);
  if (!(to > from)) return acc;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double a = breakpoints_[i];
    const double b =
        (i + 1 < breakpoints_.size()) ? breakpoints_[i + 1] : support_end_;
    const double lo = std::max(a, from), hi = std::min(b, to);
    if (hi > lo)
      kern::zaxpy(cx(hi - lo, 0.0), values_[i].data(), acc.data(), dim_);
  }
  return acc;
}

double StepFunction::norm_sq(double from, double to) const {
  from = std::max(from, 0.0);
  to = std::min(to, support_end_);
  if (!(to > from)) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double a = breakpoints_[i];
    const double b =
        (i + 1 < breakpoints_.size()) ? breakpoints_[i + 1] : support_end_;
    const double lo = std::max(a, from), hi = std::min(b, to);
    if (hi > lo) {
      const double n = kern::znrm2(values_[i].data(), dim_);
      acc += (hi - lo) * n * n;
    }
  }
  return acc;
}

StepFunction StepFunction::shifted_left(double s) const {
  if (s <= 0.0) {
    if (s == 0.0) return *this;
    throw dimension_error("shifted_left: shift must be nonnegative");
  }
  if (s >= support_end_) return zero(dim_);
  std::vector<double> bp{0.0};
  std::vector<std::vector<cx>> vals{eval(s)};
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double b = breakpoints_[i] - s;
    if (b > 0.0) {
      bp.push_back(b);
      vals.push_back(values_[i]);
    }
  }
  return StepFunction(std::move(bp), std::move(vals), support_end_ - s);
}

std::vector<cx> discretize(const StepFunction& f, double h, std::size_t n) {
  if (!(h > 0.0)) throw dimension_error("discretize: h must be positive");
  std::vector<cx> v = f.integrate(static_cast<double>(n) * h,
                                  static_cast<double>(n + 1) * h);
  const cx s(1.0 / std::sqrt(h), 0.0);
  for (auto& e : v) e *= s;
  return v;
}

StepFunction project(const StepFunction& f, double h) {
  if (!(h > 0.0)) throw dimension_error("project: h must be positive");
  const std::size_t cells = static_cast<std::size_t>(
      std::ceil(f.support_end() / h - 1e-12));
  const std::size_t n_cells = std::max<std::size_t>(cells, 1);
  std::vector<double> bp(n_cells);
  std::vector<std::vector<cx>> vals(n_cells);
  for (std::size_t n = 0; n < n_cells; ++n) {
    bp[n] = static_cast<double>(n) * h;
    vals[n] = f.integrate(bp[n], bp[n] + h);
    for (auto& e : vals[n]) e *= cx(1.0 / h, 0.0);
  }
  return StepFunction(std::move(bp), std::move(vals),
                      static_cast<double>(n_cells) * h);
}

cx l2_inner(const StepFunction& f, const StepFunction& g, double from,
            double to) {
  if (f.dim() != g.dim())
    throw dimension_error("l2_inner: value dimensions differ");
  from = std::max(from, 0.0);
  to = std::min(to, std::max(f.support_end(), g.support_end()));
  if (!(to > from)) return cx(0.0, 0.0);
  // merged breakpoint grid on [from, to)
  std::vector<double> grid{from, to};
  for (double b : f.breakpoints())
    if (b > from && b < to) grid.push_back(b);
  if (f.support_end() > from && f.support_end() < to)
    grid.push_back(f.support_end());
  for (double b : g.breakpoints())
    if (b > from && b < to) grid.push_back(b);
  if (g.support_end() > from && g.support_end() < to)
    grid.push_back(g.support_end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  cx acc(0.0, 0.0);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double len = grid[i + 1] - grid[i];
    const auto fv = f.eval(grid[i]);
    const auto gv = g.eval(grid[i]);
    acc += cx(len, 0.0) * kern::zdotc(fv.data(), gv.data(), f.dim());
  }
  return acc;
}

cx exp_inner(const StepFunction& f, const StepFunction& g) {
  return std::exp(l2_inner(f, g));
}

double factorial(std::size_t m) {
  double r = 1.0;
  for (std::size_t j = 2; j <= m; ++j) r *= static_cast<double>(j);
  return r;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t j = 1; j <= k; ++j)
    r *= static_cast<double>(n - k + j) / static_cast<double>(j);
  return r;
}

std::size_t grid_step(double t, double h) {
  if (!(h > 0.0)) throw dimension_error("grid_step: h must be positive");
  if (t < 0.0) throw dimension_error("grid_step: t must be nonnegative");
  const double r = t / h;
  double n = std::floor(r);
  if (r - n > 1.0 - 1e-9) n += 1.0;
  return static_cast<std::size_t>(n);
}

double simplex_box_measure(const SimplexRegion& region) {
  if (region.m < 1) throw dimension_error("simplex_box_measure: need m >= 1");
  if (region.t < 0.0) throw dimension_error("simplex_box_measure: t < 0");
  if (!region.h.has_value())
    return std::pow(region.t, static_cast<double>(region.m)) /
           factorial(region.m);
  const double h = *region.h;
  if (!(h > 0.0)) throw dimension_error("simplex_box_measure: h <= 0");
  const std::size_t n = grid_step(region.t, region.h.value());
  return binomial(n, region.m) *
         std::pow(h, static_cast<double>(region.m));
}

}  // namespace qwalk
