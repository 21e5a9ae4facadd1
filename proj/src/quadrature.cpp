// Copyright 2026 The graddp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "graddp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graddp {

namespace {

constexpr int kMaxDepth = 48;

double simpson(double h, double fa, double fm, double fb) {
  return (fa + 4.0 * fm + fb) * (h / 6.0);
}

// Classic adaptive Simpson with Richardson correction: accept when the
// two-panel refinement moves the estimate by less than 15 * tol.
double adapt(const std::function<double(double)>& f, double a, double m,
             double b, double fa, double fm, double fb, double whole,
             double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double h = 0.5 * (b - a);
  const double left = simpson(h, fa, flm, fm);
  const double right = simpson(h, fm, frm, fb);
  const double err = (left + right - whole) / 15.0;
  if (std::abs(err) <= tol || depth >= kMaxDepth)
    return left + right + err;
  return adapt(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adapt(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw std::invalid_argument("integration bounds must be finite");
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, abs_tol);
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(b - a, fa, fm, fb);
  return adapt(f, a, m, b, fa, fm, fb, whole, abs_tol, 0);
}

double integrate_with_breakpoints(const std::function<double(double)>& f,
                                  double a, double b,
                                  std::vector<double> breakpoints,
                                  double abs_tol) {
  if (a > b) return -integrate_with_breakpoints(f, b, a, std::move(breakpoints),
                                                abs_tol);
  std::vector<double> cuts;
  cuts.push_back(a);
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double p : breakpoints)
    if (p > a && p < b && (cuts.empty() || p != cuts.back())) cuts.push_back(p);
  cuts.push_back(b);

  const double seg_tol = abs_tol / static_cast<double>(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate(f, cuts[i], cuts[i + 1], seg_tol);
  return total;
}

}  // namespace graddp
