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

#ifndef GRADDP_QUADRATURE_HPP_
#define GRADDP_QUADRATURE_HPP_

#include <functional>
#include <vector>

namespace graddp {

// Default absolute tolerance of the verification integrals.
inline constexpr double kQuadratureAbsTol = 1e-10;

// Adaptive Simpson rule on [a, b] to absolute tolerance `abs_tol`.
// The integrand must be continuous on the interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = kQuadratureAbsTol);

// Same, but the interval is first split at the given breakpoints (kinks of
// piecewise-smooth integrands, e.g. the |x - y| creases of the densities).
// Breakpoints outside (a, b) are ignored; the tolerance is divided among
// segments.
double integrate_with_breakpoints(const std::function<double(double)>& f,
                                  double a, double b,
                                  std::vector<double> breakpoints,
                                  double abs_tol = kQuadratureAbsTol);

}  // namespace graddp

#endif  // GRADDP_QUADRATURE_HPP_
