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

#include "graddp/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "graddp/quadrature.hpp"

namespace graddp::audit {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_pair(const LevelPair& pair) {
  return fmt(pair.eps1().value()) + "->" + fmt(pair.eps2().value());
}

AuditReport make_report(std::string name, double statistic, double threshold,
                        std::int64_t n_samples,
                        std::map<std::string, std::string> details) {
  AuditReport report;
  report.test_name = std::move(name);
  report.statistic = statistic;
  report.threshold = threshold;
  report.n_samples = n_samples;
  report.passed = statistic <= threshold;
  report.details = std::move(details);
  return report;
}

void require_samples(std::size_t have, std::size_t floor, const char* what) {
  if (have < floor)
    throw std::invalid_argument(std::string(what) + " needs at least " +
                                std::to_string(floor) + " samples, got " +
                                std::to_string(have));
}

double atom_fraction(std::span<const double> xs, std::span<const double> ys) {
  return static_cast<double>(kernels::count_bitwise_equal(xs, ys)) /
         static_cast<double>(xs.size());
}

// Integration half-width: continuous components decay at rate eps1 or
// faster, so 50/eps1 leaves tail mass far below every audit tolerance.
double integration_radius(double eps_min, double farthest_kink) {
  return 50.0 / eps_min + std::abs(farthest_kink);
}

}  // namespace

AuditReport ks_one_sample(std::span<const double> samples, PrivacyLevel eps) {
  require_samples(samples.size(), kKsSampleFloor, "one-sample ks");
  const double d = kernels::ks_statistic(
      std::vector<double>(samples.begin(), samples.end()),
      [eps](double x) { return laplace_cdf(x, eps); });
  const double n = static_cast<double>(samples.size());
  return make_report("ks_one_sample", d, kKsCriticalCoefficient / std::sqrt(n),
                     static_cast<std::int64_t>(samples.size()),
                     {{"eps", fmt(eps.value())}});
}

AuditReport ks_two_sample(std::span<const double> a,
                          std::span<const double> b) {
  require_samples(a.size(), kKsSampleFloor, "two-sample ks");
  require_samples(b.size(), kKsSampleFloor, "two-sample ks");
  const double d = kernels::ks_statistic_two_sample(
      std::vector<double>(a.begin(), a.end()),
      std::vector<double>(b.begin(), b.end()));
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double threshold =
      kKsCriticalCoefficient * std::sqrt((na + nb) / (na * nb));
  return make_report("ks_two_sample", d, threshold,
                     static_cast<std::int64_t>(a.size() + b.size()), {});
}

AuditReport atom_mass_audit(std::span<const double> xs,
                            std::span<const double> ys,
                            const LevelPair& pair) {
  require_samples(xs.size(), kMomentSampleFloor, "atom mass audit");
  const double ratio = pair.eps1().value() / pair.eps2().value();
  const double target = ratio * ratio;
  const double fraction = atom_fraction(xs, ys);
  return make_report("atom_mass", std::abs(fraction - target), 0.01,
                     static_cast<std::int64_t>(xs.size()),
                     {{"empirical", fmt(fraction)},
                      {"target", fmt(target)},
                      {"pair", fmt_pair(pair)}});
}

AuditReport correlation_audit(std::span<const double> xs,
                              std::span<const double> ys,
                              const LevelPair& pair) {
  require_samples(xs.size(), kMomentSampleFloor, "correlation audit");
  const double target = pair.eps1().value() / pair.eps2().value();
  const double rho = kernels::pearson(xs, ys);
  return make_report("correlation", std::abs(rho - target), 0.01,
                     static_cast<std::int64_t>(xs.size()),
                     {{"empirical", fmt(rho)},
                      {"target", fmt(target)},
                      {"pair", fmt_pair(pair)}});
}

AuditReport correlation_target_audit(std::string_view name,
                                     std::span<const double> xs,
                                     std::span<const double> ys, double target,
                                     double tolerance) {
  require_samples(xs.size(), kMomentSampleFloor, "correlation audit");
  const double rho = kernels::pearson(xs, ys);
  return make_report(std::string(name), std::abs(rho - target), tolerance,
                     static_cast<std::int64_t>(xs.size()),
                     {{"empirical", fmt(rho)}, {"target", fmt(target)}});
}

AuditReport mse_audit(std::span<const double> squared_norms, PrivacyLevel eps,
                      int n_dims) {
  require_samples(squared_norms.size(), kMomentSampleFloor, "mse audit");
  const double target =
      2.0 * static_cast<double>(n_dims) / (eps.value() * eps.value());
  const double mse = kernels::mean(squared_norms);
  return make_report("mse", std::abs(mse / target - 1.0), 0.02,
                     static_cast<std::int64_t>(squared_norms.size()),
                     {{"empirical", fmt(mse)},
                      {"target", fmt(target)},
                      {"eps", fmt(eps.value())},
                      {"n_dims", std::to_string(n_dims)}});
}

kernels::Grid2D default_privacy_grid(const LevelPair& pair) {
  const double half = 10.0 / pair.eps1().value();
  const double step = 0.01 / pair.eps2().value();
  kernels::Grid1D axis{-half, half, step};
  return {axis, axis};
}

kernels::Grid1D default_privacy_grid_1d(const LevelPair& pair) {
  const double half = 10.0 / pair.eps1().value();
  return {-half, half, 0.01 / pair.eps2().value()};
}

AuditReport lipschitz_grid_audit(const LevelPair& pair,
                                 const kernels::Grid2D& grid) {
  const double e1 = pair.eps1().value();
  const double e2 = pair.eps2().value();
  const double half = 10.0 / e1;
  const double max_step = 0.01 / e2 * (1.0 + 1e-12);
  if (grid.x.lo > -half || grid.x.hi < half || grid.y.lo > -half ||
      grid.y.hi < half || grid.x.step > max_step || grid.y.step > max_step)
    throw std::invalid_argument(
        "privacy grid too coarse: need [-10/eps1, 10/eps1]^2 with step <= "
        "0.01/eps2");

  const double h = kGradientStepScale / e2;
  const double continuous_max =
      kernels::max_log_slope_joint_continuous(pair, grid, h);
  const double diagonal_max =
      kernels::max_log_slope_joint_diagonal(pair, grid.x, h);
  return make_report("lipschitz_gradient_bound",
                     std::max(continuous_max, diagonal_max),
                     e2 + kGradientSlack, 0,
                     {{"continuous_max", fmt(continuous_max)},
                      {"diagonal_max", fmt(diagonal_max)},
                      {"fd_step", fmt(h)},
                      {"pair", fmt_pair(pair)}});
}

AuditReport lipschitz_laplace_audit(PrivacyLevel eps,
                                    const kernels::Grid1D& grid) {
  const double h = kGradientStepScale / eps.value();
  const double max_slope = kernels::max_log_slope_laplace(eps, grid, h);
  return make_report("lipschitz_gradient_bound_laplace", max_slope,
                     eps.value() + kGradientSlack, 0,
                     {{"eps", fmt(eps.value())}, {"fd_step", fmt(h)}});
}

AuditReport lipschitz_independent_pair_audit(PrivacyLevel eps_a,
                                             PrivacyLevel eps_b,
                                             const kernels::Grid2D& grid) {
  const double bound = eps_a.value() + eps_b.value();
  const double h = kGradientStepScale / bound;
  const double max_slope =
      kernels::max_log_slope_independent_pair(eps_a, eps_b, grid, h);
  return make_report("lipschitz_gradient_bound_independent_pair", max_slope,
                     bound + kGradientSlack, 0,
                     {{"eps_a", fmt(eps_a.value())},
                      {"eps_b", fmt(eps_b.value())},
                      {"fd_step", fmt(h)}});
}

kernels::Grid2D default_composition_grid(PrivacyLevel eps1) {
  const double half = 3.0 / eps1.value();
  kernels::Grid1D axis{-half, half, half / 4.0};  // 9 points
  return {axis, axis};
}

AuditReport chapman_kolmogorov_audit(PrivacyLevel eps1, PrivacyLevel eps2,
                                     PrivacyLevel eps3,
                                     const kernels::Grid2D& grid) {
  if (!(eps1.value() < eps2.value() && eps2.value() < eps3.value()))
    throw std::invalid_argument(
        "transition composition requires eps1 < eps2 < eps3");
  const LevelPair hop12(eps1, eps2);
  const LevelPair hop23(eps2, eps3);
  const LevelPair hop13(eps1, eps3);
  const double radius_base = 50.0 / eps1.value();

  const std::size_t nx = grid.x.size();
  const std::size_t nz = grid.y.size();
  double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(dynamic)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(nx); ++ii) {
    const double x = grid.x.at(static_cast<std::size_t>(ii));
    for (std::size_t jj = 0; jj < nz; ++jj) {
      const double z = grid.y.at(jj);
      // Atoms compose analytically: keeping through both hops multiplies
      // the keep masses.
      const double atom_dev =
          std::abs(forward_atom_mass(x, hop12) * forward_atom_mass(x, hop23) -
                   forward_atom_mass(x, hop13));
      const double radius = radius_base + std::max(std::abs(x), std::abs(z));
      const double cross = integrate_with_breakpoints(
          [&](double y) {
            return forward_conditional_continuous_pdf(y, x, hop12) *
                   forward_conditional_continuous_pdf(z, y, hop23);
          },
          -radius, radius, {0.0, x, z});
      const double composed =
          forward_atom_mass(x, hop12) *
              forward_conditional_continuous_pdf(z, x, hop23) +
          forward_conditional_continuous_pdf(z, x, hop12) *
              forward_atom_mass(z, hop23) +
          cross;
      const double direct = forward_conditional_continuous_pdf(z, x, hop13);
      worst = std::max({worst, atom_dev, std::abs(composed - direct)});
    }
  }
  return make_report(
      "transition_composition", worst, 1e-6, 0,
      {{"levels", fmt(eps1.value()) + "->" + fmt(eps2.value()) + "->" +
                      fmt(eps3.value())},
       {"grid_points", std::to_string(nx * nz)}});
}

AuditReport marginal_consistency_audit(const LevelPair& pair,
                                       int points_per_axis) {
  if (points_per_axis < 2)
    throw std::invalid_argument("marginal consistency needs >= 2 grid points");
  const double e1 = pair.eps1().value();
  const double e2 = pair.eps2().value();
  const double coeff_diag = e1 * e1 / (2.0 * e2);

  double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(points_per_axis);
       ++i) {
    const double t =
        static_cast<double>(i) / static_cast<double>(points_per_axis - 1);

    // First coordinate: integrate the joint law over y at fixed x; the
    // diagonal component contributes its coefficient at y = x.
    const double x = (2.0 * t - 1.0) * 10.0 / e1;
    const double rx = integration_radius(e1, x);
    const double over_y = integrate_with_breakpoints(
        [&](double y) { return joint_pdf(x, y, pair).continuous_density; },
        -rx, rx, {0.0, x});
    const double first =
        std::abs(coeff_diag * std::exp(-e2 * std::abs(x)) + over_y -
                 laplace_pdf(x, pair.eps1()));

    // Second coordinate: integrate over x at fixed y.
    const double y = (2.0 * t - 1.0) * 10.0 / e2;
    const double ry = integration_radius(e1, y);
    const double over_x = integrate_with_breakpoints(
        [&](double x2) { return joint_pdf(x2, y, pair).continuous_density; },
        -ry, ry, {y});
    const double second =
        std::abs(coeff_diag * std::exp(-e2 * std::abs(y)) + over_x -
                 laplace_pdf(y, pair.eps2()));

    worst = std::max({worst, first, second});
  }
  return make_report("marginal_consistency", worst, 1e-8, 0,
                     {{"pair", fmt_pair(pair)},
                      {"points_per_axis", std::to_string(points_per_axis)}});
}

AuditReport normalization_audit(const LevelPair& pair,
                                const kernels::Grid1D& xs) {
  const double e1 = pair.eps1().value();
  const std::size_t n = xs.size();
  double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    const double x = xs.at(static_cast<std::size_t>(i));
    const double radius = integration_radius(e1, x);
    const double continuous = integrate_with_breakpoints(
        [&](double y) {
          return forward_conditional_continuous_pdf(y, x, pair);
        },
        -radius, radius, {0.0, x});
    worst =
        std::max(worst, std::abs(forward_atom_mass(x, pair) + continuous - 1.0));
  }
  return make_report("conditional_normalization", worst, 1e-8, 0,
                     {{"pair", fmt_pair(pair)},
                      {"grid_points", std::to_string(n)}});
}

double laziness_quadrature_target(const LevelPair& pair) {
  const double radius = integration_radius(pair.eps1().value(), 0.0);
  return integrate_with_breakpoints(
      [&](double x) {
        return laplace_pdf(x, pair.eps1()) * forward_atom_mass(x, pair);
      },
      -radius, radius, {0.0});
}

// --- suites -----------------------------------------------------------------

namespace {

// Fixed stream salts, one per sampled audit, so every audit sees data that
// is independent of every other audit at the same seed.
enum Salt : std::uint64_t {
  kSaltLaplaceHalf = 1,
  kSaltLaplaceOne = 2,
  kSaltLaplaceTwo = 3,
  kSaltRelaxMarginal = 4,
  kSaltAtom12 = 10,
  kSaltAtom14 = 11,
  kSaltAtom23 = 12,
  kSaltLaziness = 13,
  kSaltChainPattern = 14,
  kSaltCorr12 = 20,
  kSaltCorr14 = 21,
  kSaltMseHalf = 30,
  kSaltMseOne = 31,
  kSaltMseTwo = 32,
  kSaltMseVector = 33,
  kSaltMseNaiveGap = 34,
  kSaltMseGradual = 35,
  kSaltMseMonotone = 36,
  kSaltTwoRoute = 40,
  kSaltTighten = 50,
};

void rename(AuditReport& report, std::string name) {
  report.test_name = std::move(name);
}

void add_seed(std::vector<AuditReport>& reports, std::size_t first,
              std::uint64_t seed) {
  for (std::size_t i = first; i < reports.size(); ++i)
    reports[i].details["seed"] = std::to_string(seed);
}

std::vector<double> squares(std::span<const double> v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * v[i];
  return out;
}

void suite_marginals(const SuiteConfig& cfg, std::vector<AuditReport>& out) {
  const std::size_t first = out.size();
  const struct {
    double eps;
    Salt salt;
    const char* name;
  } levels[] = {{0.5, kSaltLaplaceHalf, "laplace_marginal_eps0.5"},
                {1.0, kSaltLaplaceOne, "laplace_marginal_eps1"},
                {2.0, kSaltLaplaceTwo, "laplace_marginal_eps2"}};
  std::vector<double> buf(cfg.n_samples);
  for (const auto& lvl : levels) {
    kernels::fill_laplace(PrivacyLevel(lvl.eps), buf, cfg.seed, lvl.salt);
    out.push_back(ks_one_sample(buf, PrivacyLevel(lvl.eps)));
    rename(out.back(), lvl.name);
  }

  const LevelPair pair(PrivacyLevel(1.0), PrivacyLevel(2.0));
  std::vector<double> xs(cfg.n_samples), ys(cfg.n_samples);
  kernels::fill_relax_pairs(pair, xs, ys, cfg.seed, kSaltRelaxMarginal);
  out.push_back(ks_one_sample(ys, pair.eps2()));
  rename(out.back(), "relax_marginal_1to2");

  out.push_back(marginal_consistency_audit(pair, 100));
  out.push_back(normalization_audit(pair, kernels::Grid1D{-10.0, 10.0, 0.5}));
  add_seed(out, first, cfg.seed);
}

void suite_atoms(const SuiteConfig& cfg, std::vector<AuditReport>& out) {
  const std::size_t first = out.size();
  const struct {
    double e1, e2;
    Salt salt;
    const char* name;
  } pairs[] = {{1.0, 2.0, kSaltAtom12, "relax_atom_fraction_1to2"},
               {1.0, 4.0, kSaltAtom14, "relax_atom_fraction_1to4"},
               {2.0, 3.0, kSaltAtom23, "relax_atom_fraction_2to3"}};
  std::vector<double> xs(cfg.n_samples), ys(cfg.n_samples);
  for (const auto& p : pairs) {
    const LevelPair pair(PrivacyLevel(p.e1), PrivacyLevel(p.e2));
    kernels::fill_relax_pairs(pair, xs, ys, cfg.seed, p.salt);
    out.push_back(atom_mass_audit(xs, ys, pair));
    rename(out.back(), p.name);
  }

  // Unchanged fraction against the quadrature of the keep mass rather than
  // the closed form.
  {
    const LevelPair pair(PrivacyLevel(1.0), PrivacyLevel(2.0));
    kernels::fill_relax_pairs(pair, xs, ys, cfg.seed, kSaltLaziness);
    const double target = laziness_quadrature_target(pair);
    const double fraction = atom_fraction(xs, ys);
    out.push_back(make_report("laziness_vs_quadrature",
                              std::abs(fraction - target), 0.01,
                              static_cast<std::int64_t>(cfg.n_samples),
                              {{"empirical", fmt(fraction)},
                               {"target_quadrature", fmt(target)},
                               {"pair", fmt_pair(pair)}}));
  }

  // Three-level chains: both unchanged-step frequencies at once.
  {
    const double levels[] = {1.0, 2.0, 3.0};
    std::vector<double> chain(cfg.n_samples * 3);
    kernels::fill_chain_levels(levels, cfg.n_samples, chain, cfg.seed,
                               kSaltChainPattern);
    std::vector<double> v1(cfg.n_samples), v2(cfg.n_samples),
        v3(cfg.n_samples);
    for (std::size_t t = 0; t < cfg.n_samples; ++t) {
      v1[t] = chain[t * 3];
      v2[t] = chain[t * 3 + 1];
      v3[t] = chain[t * 3 + 2];
    }
    const LevelPair hop12(PrivacyLevel(1.0), PrivacyLevel(2.0));
    const LevelPair hop23(PrivacyLevel(2.0), PrivacyLevel(3.0));
    const double target12 = laziness_quadrature_target(hop12);
    const double target23 = laziness_quadrature_target(hop23);
    const double frac12 = atom_fraction(v1, v2);
    const double frac23 = atom_fraction(v2, v3);
    const double dev =
        std::max(std::abs(frac12 - target12), std::abs(frac23 - target23));
    out.push_back(make_report("chain_atom_pattern_1_2_3", dev, 0.01,
                              static_cast<std::int64_t>(cfg.n_samples),
                              {{"frac_12", fmt(frac12)},
                               {"target_12", fmt(target12)},
                               {"frac_23", fmt(frac23)},
                               {"target_23", fmt(target23)}}));
  }
  add_seed(out, first, cfg.seed);
}

void suite_correlation(const SuiteConfig& cfg, std::vector<AuditReport>& out) {
  const std::size_t first = out.size();
  const struct {
    double e1, e2;
    Salt salt;
    const char* name;
  } pairs[] = {{1.0, 2.0, kSaltCorr12, "relax_correlation_1to2"},
               {1.0, 4.0, kSaltCorr14, "relax_correlation_1to4"}};
  std::vector<double> xs(cfg.n_samples), ys(cfg.n_samples);
  for (const auto& p : pairs) {
    const LevelPair pair(PrivacyLevel(p.e1), PrivacyLevel(p.e2));
    kernels::fill_relax_pairs(pair, xs, ys, cfg.seed, p.salt);
    out.push_back(correlation_audit(xs, ys, pair));
    rename(out.back(), p.name);
  }
  add_seed(out, first, cfg.seed);
}

void suite_mse(const SuiteConfig& cfg, std::vector<AuditReport>& out) {
  const std::size_t first = out.size();
  const struct {
    double eps;
    Salt salt;
    const char* name;
  } levels[] = {{0.5, kSaltMseHalf, "laplace_mse_eps0.5"},
                {1.0, kSaltMseOne, "laplace_mse_eps1"},
                {2.0, kSaltMseTwo, "laplace_mse_eps2"}};
  std::vector<double> buf(cfg.n_samples);
  for (const auto& lvl : levels) {
    kernels::fill_laplace(PrivacyLevel(lvl.eps), buf, cfg.seed, lvl.salt);
    const std::vector<double> sq = squares(buf);
    out.push_back(mse_audit(sq, PrivacyLevel(lvl.eps), 1));
    rename(out.back(), lvl.name);
  }

  // n = 3 coordinates per trial.
  {
    std::vector<double> coords(cfg.n_samples * 3);
    kernels::fill_laplace(PrivacyLevel(1.0), coords, cfg.seed,
                          kSaltMseVector);
    std::vector<double> sq(cfg.n_samples);
    for (std::size_t t = 0; t < cfg.n_samples; ++t)
      sq[t] = coords[3 * t] * coords[3 * t] +
              coords[3 * t + 1] * coords[3 * t + 1] +
              coords[3 * t + 2] * coords[3 * t + 2];
    out.push_back(mse_audit(sq, PrivacyLevel(1.0), 3));
    rename(out.back(), "laplace_mse_n3_eps1");
  }

  // Summed-budget baseline: relaxing 1 -> 1.1 leaves only a 0.1 budget for
  // the second response, against the coupled release at the full 1.1.
  {
    kernels::fill_laplace(PrivacyLevel(0.1), buf, cfg.seed, kSaltMseNaiveGap);
    std::vector<double> sq = squares(buf);
    out.push_back(mse_audit(sq, PrivacyLevel(0.1), 1));
    rename(out.back(), "naive_second_response_mse_1to1.1");

    kernels::fill_laplace(PrivacyLevel(1.1), buf, cfg.seed, kSaltMseGradual);
    sq = squares(buf);
    out.push_back(mse_audit(sq, PrivacyLevel(1.1), 1));
    rename(out.back(), "gradual_release_mse_eps1.1");
  }

  // Accuracy is monotone along one chain's levels.
  {
    const double levels_up[] = {0.5, 1.0, 2.0, 4.0};
    std::vector<double> chain(cfg.n_samples * 4);
    kernels::fill_chain_levels(levels_up, cfg.n_samples, chain, cfg.seed,
                               kSaltMseMonotone);
    double mses[4];
    std::vector<double> column(cfg.n_samples);
    std::map<std::string, std::string> details;
    for (std::size_t k = 0; k < 4; ++k) {
      for (std::size_t t = 0; t < cfg.n_samples; ++t)
        column[t] = chain[t * 4 + k];
      mses[k] = kernels::mean_square(column);
      details["mse_eps" + fmt(levels_up[k])] = fmt(mses[k]);
    }
    double worst_increase = 0.0;
    for (std::size_t k = 0; k + 1 < 4; ++k)
      worst_increase = std::max(worst_increase, mses[k + 1] - mses[k]);
    out.push_back(make_report("mse_monotone_in_eps", worst_increase, 0.0,
                              static_cast<std::int64_t>(cfg.n_samples),
                              std::move(details)));
  }
  add_seed(out, first, cfg.seed);
}

void suite_markov(const SuiteConfig& cfg, std::vector<AuditReport>& out) {
  const std::size_t first = out.size();
  std::vector<double> direct(cfg.n_samples), stepped(cfg.n_samples);
  kernels::fill_two_route(PrivacyLevel(1.0), PrivacyLevel(2.0),
                          PrivacyLevel(3.0), direct, stepped, cfg.seed,
                          kSaltTwoRoute);
  out.push_back(ks_two_sample(direct, stepped));
  rename(out.back(), "two_route_marginal_eps3");

  out.push_back(chapman_kolmogorov_audit(
      PrivacyLevel(1.0), PrivacyLevel(2.0), PrivacyLevel(3.0),
      default_composition_grid(PrivacyLevel(1.0))));
  rename(out.back(), "transition_composition_1_2_3");

  out.push_back(chapman_kolmogorov_audit(
      PrivacyLevel(1.0), PrivacyLevel(1.0 + 1e-9), PrivacyLevel(3.0),
      default_composition_grid(PrivacyLevel(1.0))));
  rename(out.back(), "transition_composition_degenerate_middle");
  add_seed(out, first, cfg.seed);
}

void suite_privacy(const SuiteConfig& cfg, std::vector<AuditReport>& out) {
  (void)cfg;  // grid scans are sample-free
  const LevelPair pair(PrivacyLevel(1.0), PrivacyLevel(2.0));
  out.push_back(lipschitz_grid_audit(pair, default_privacy_grid(pair)));
  rename(out.back(), "gradient_bound_joint_1_2");

  out.push_back(lipschitz_laplace_audit(
      PrivacyLevel(1.0), kernels::Grid1D{-10.0, 10.0, 0.01}));
  rename(out.back(), "gradient_bound_laplace_eps1");

  // Budgets 1 and 2 - 1: the independent pair spends the same total.
  out.push_back(lipschitz_independent_pair_audit(
      PrivacyLevel(1.0), PrivacyLevel(1.0), default_privacy_grid(pair)));
  rename(out.back(), "gradient_bound_independent_pair");
}

void suite_tighten(const SuiteConfig& cfg, std::vector<AuditReport>& out) {
  const std::size_t first = out.size();
  const LevelPair pair(PrivacyLevel(1.0), PrivacyLevel(2.0));
  std::vector<double> ys(cfg.n_samples), xs(cfg.n_samples);
  kernels::fill_tighten_pairs(pair, ys, xs, cfg.seed, kSaltTighten);

  out.push_back(ks_one_sample(xs, pair.eps1()));
  rename(out.back(), "tighten_marginal_2to1");

  out.push_back(atom_mass_audit(ys, xs, pair));
  rename(out.back(), "tighten_atom_fraction_2to1");

  std::vector<double> increments(cfg.n_samples);
  for (std::size_t i = 0; i < cfg.n_samples; ++i)
    increments[i] = xs[i] - ys[i];
  out.push_back(correlation_target_audit("tighten_increment_independence",
                                         increments, ys, 0.0, 0.005));
  add_seed(out, first, cfg.seed);
}

struct SuiteEntry {
  const char* name;
  std::size_t floor;
  void (*run)(const SuiteConfig&, std::vector<AuditReport>&);
};

constexpr SuiteEntry kSuites[] = {
    {"marginals", kMomentSampleFloor, suite_marginals},
    {"atoms", kMomentSampleFloor, suite_atoms},
    {"correlation", kMomentSampleFloor, suite_correlation},
    {"mse", kMomentSampleFloor, suite_mse},
    {"markov", kKsSampleFloor, suite_markov},
    {"privacy", 0, suite_privacy},
    {"tighten", kMomentSampleFloor, suite_tighten},
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const SuiteEntry& s : kSuites) n.emplace_back(s.name);
    n.emplace_back("all");
    return n;
  }();
  return names;
}

std::size_t suite_sample_floor(std::string_view suite) {
  if (suite == "all") return kMomentSampleFloor;
  for (const SuiteEntry& s : kSuites)
    if (suite == s.name) return s.floor;
  throw std::invalid_argument("unknown audit suite: " + std::string(suite));
}

std::vector<AuditReport> run_suite(std::string_view suite,
                                   const SuiteConfig& config) {
  const std::size_t floor = suite_sample_floor(suite);
  if (config.n_samples < floor)
    throw std::invalid_argument("suite '" + std::string(suite) +
                                "' needs at least " + std::to_string(floor) +
                                " samples, got " +
                                std::to_string(config.n_samples));
  std::vector<AuditReport> reports;
  for (const SuiteEntry& s : kSuites)
    if (suite == "all" || suite == s.name) s.run(config, reports);
  return reports;
}

std::string to_json_line(const AuditReport& report) {
  nlohmann::ordered_json rec;
  rec["test"] = report.test_name;
  rec["statistic"] = report.statistic;
  rec["threshold"] = report.threshold;
  rec["n_samples"] = report.n_samples;
  rec["passed"] = report.passed;
  nlohmann::ordered_json details;
  for (const auto& [key, value] : report.details) details[key] = value;
  rec["details"] = std::move(details);
  return rec.dump();
}

std::string format_table(const std::vector<AuditReport>& reports) {
  std::size_t width = 4;
  for (const AuditReport& r : reports)
    width = std::max(width, r.test_name.size());
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof(line), "%-*s  %13s  %13s  %9s  %s\n",
                static_cast<int>(width), "test", "statistic", "threshold",
                "samples", "result");
  os << line;
  for (const AuditReport& r : reports) {
    std::snprintf(line, sizeof(line), "%-*s  %13.6g  %13.6g  %9lld  %s\n",
                  static_cast<int>(width), r.test_name.c_str(), r.statistic,
                  r.threshold, static_cast<long long>(r.n_samples),
                  r.passed ? "pass" : "FAIL");
    os << line;
  }
  return os.str();
}

}  // namespace graddp::audit
