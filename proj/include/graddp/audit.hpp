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
//
// Statistical and numerical verification of the coupled-release laws:
// goodness of fit of every marginal, atom masses, correlations, optimal
// mean-squared error, Markov consistency of multi-hop relaxation, and the
// grid scan of the log-density gradient bound that the privacy guarantee
// reduces to.

#ifndef GRADDP_AUDIT_HPP_
#define GRADDP_AUDIT_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graddp/kernels.hpp"
#include "graddp/laws.hpp"

namespace graddp::audit {

// One audit outcome. `passed` always means statistic <= threshold; interval
// targets are encoded as statistic = |empirical - target| with the allowed
// half-width as the threshold. Details carry the raw numbers and the seed.
struct AuditReport {
  std::string test_name;
  double statistic = 0.0;
  double threshold = 0.0;
  std::int64_t n_samples = 0;
  bool passed = false;
  std::map<std::string, std::string> details;
};

// Critical coefficient of the Kolmogorov-Smirnov tests at significance
// 0.001, i.e. sqrt(-ln(0.0005)/2) rounded up; with ~20 audits per run the
// false-failure rate stays negligible.
inline constexpr double kKsCriticalCoefficient = 1.95;

// Minimum sample counts the audits accept.
inline constexpr std::size_t kKsSampleFloor = 1000;
inline constexpr std::size_t kMomentSampleFloor = 10000;

// Central-difference step of the gradient scans, in units of 1/eps2.
inline constexpr double kGradientStepScale = 1e-5;

// Slack added to the gradient bound to absorb finite differencing.
inline constexpr double kGradientSlack = 1e-6;

// --- single audits ----------------------------------------------------------

// One-sample KS against Laplace(1/eps); threshold 1.95/sqrt(N).
AuditReport ks_one_sample(std::span<const double> samples, PrivacyLevel eps);

// Two-sample KS; threshold 1.95 * sqrt((n+m)/(n m)).
AuditReport ks_two_sample(std::span<const double> a, std::span<const double> b);

// Fraction of bit-exact equal pairs vs (eps1/eps2)^2, within 0.01.
AuditReport atom_mass_audit(std::span<const double> xs,
                            std::span<const double> ys, const LevelPair& pair);

// Pearson correlation of the paired noises vs eps1/eps2, within 0.01.
AuditReport correlation_audit(std::span<const double> xs,
                              std::span<const double> ys,
                              const LevelPair& pair);

// Pearson correlation vs an arbitrary target (e.g. 0 for independence).
AuditReport correlation_target_audit(std::string_view name,
                                     std::span<const double> xs,
                                     std::span<const double> ys, double target,
                                     double tolerance);

// Mean of per-trial squared norms vs 2 n / eps^2, within 2% relative.
AuditReport mse_audit(std::span<const double> squared_norms, PrivacyLevel eps,
                      int n_dims);

// Maximum |d/du log density| of both joint-law components over the grid;
// bound eps2 plus slack. The grid must cover [-10/eps1, 10/eps1]^2 with
// step at most 0.01/eps2.
AuditReport lipschitz_grid_audit(const LevelPair& pair,
                                 const kernels::Grid2D& grid);

// Same scan for a single Laplace density (bound eps) and for the
// independent summed-budget pair (bound eps_a + eps_b).
AuditReport lipschitz_laplace_audit(PrivacyLevel eps,
                                    const kernels::Grid1D& grid);
AuditReport lipschitz_independent_pair_audit(PrivacyLevel eps_a,
                                             PrivacyLevel eps_b,
                                             const kernels::Grid2D& grid);

// Quadrature composition of the eps1->eps2 and eps2->eps3 transitions vs
// the direct eps1->eps3 transition, pointwise on the (x, z) grid; the
// composed atom is formed analytically and the four atom/continuous cross
// terms are accumulated. Bound 1e-6.
AuditReport chapman_kolmogorov_audit(PrivacyLevel eps1, PrivacyLevel eps2,
                                     PrivacyLevel eps3,
                                     const kernels::Grid2D& grid);

// Joint law integrated over either coordinate vs the Laplace marginals at
// the given number of grid points per axis. Bound 1e-8.
AuditReport marginal_consistency_audit(const LevelPair& pair,
                                       int points_per_axis);

// Atom mass plus the integrated continuous conditional vs 1. Bound 1e-8.
AuditReport normalization_audit(const LevelPair& pair,
                                const kernels::Grid1D& xs);

// Expected unchanged fraction of a relax step integrated by quadrature
// against the Laplace(1/eps1) marginal.
double laziness_quadrature_target(const LevelPair& pair);

// Default grids of the gradient scans (step exactly 0.01/eps2 over
// [-10/eps1, 10/eps1]).
kernels::Grid2D default_privacy_grid(const LevelPair& pair);
kernels::Grid1D default_privacy_grid_1d(const LevelPair& pair);

// Default (x, z) grid of the transition-composition audit.
kernels::Grid2D default_composition_grid(PrivacyLevel eps1);

// --- suites -----------------------------------------------------------------

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::size_t n_samples = 1000000;
};

// Suite names accepted by run_suite: marginals, atoms, correlation, mse,
// markov, privacy, tighten, all.
const std::vector<std::string>& suite_names();

// Smallest n_samples the suite accepts.
std::size_t suite_sample_floor(std::string_view suite);

// Runs a named suite; deterministic given (seed, n_samples). Throws
// std::invalid_argument for unknown names or n_samples below the floor.
std::vector<AuditReport> run_suite(std::string_view suite,
                                   const SuiteConfig& config);

std::string to_json_line(const AuditReport& report);
std::string format_table(const std::vector<AuditReport>& reports);

}  // namespace graddp::audit

#endif  // GRADDP_AUDIT_HPP_
