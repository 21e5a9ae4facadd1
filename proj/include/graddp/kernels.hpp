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
// Data-parallel sampling and reduction kernels behind the audits. Work is
// split into fixed-size blocks; each sampling block owns a generator derived
// from (seed, salt, block index) and reductions combine block partials in
// block order, so results are bit-identical for any thread count. The
// `serial` namespace holds the single-threaded reference implementations the
// tests compare against and the benchmark times.

#ifndef GRADDP_KERNELS_HPP_
#define GRADDP_KERNELS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "graddp/laws.hpp"

namespace graddp::kernels {

// Trials per random-stream block. Part of the output contract: changing it
// changes every sampled sequence.
inline constexpr std::size_t kBlockSize = 1 << 14;

// Uniform grid lo, lo + step, ..., hi (inclusive within rounding).
struct Grid1D {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;

  std::size_t size() const;
  double at(std::size_t i) const { return lo + static_cast<double>(i) * step; }
};

struct Grid2D {
  Grid1D x;
  Grid1D y;
};

// --- sampling -------------------------------------------------------------

// Independent Laplace(1/eps) samples.
void fill_laplace(PrivacyLevel eps, std::span<double> out, std::uint64_t seed,
                  std::uint64_t salt);

// Paired experiment: xs[i] ~ Laplace(1/eps1), ys[i] the forward transition
// of xs[i] to eps2.
void fill_relax_pairs(const LevelPair& pair, std::span<double> xs,
                      std::span<double> ys, std::uint64_t seed,
                      std::uint64_t salt);

// Backward experiment: ys[i] ~ Laplace(1/eps2), xs[i] the backward
// transition of ys[i] to eps1.
void fill_tighten_pairs(const LevelPair& pair, std::span<double> ys,
                        std::span<double> xs, std::uint64_t seed,
                        std::uint64_t salt);

// Independent trials of the one-hop and two-hop routes to eps3: direct[i]
// relaxes eps1 -> eps3, stepped[i] relaxes eps1 -> eps2 -> eps3.
void fill_two_route(PrivacyLevel eps1, PrivacyLevel eps2, PrivacyLevel eps3,
                    std::span<double> direct, std::span<double> stepped,
                    std::uint64_t seed, std::uint64_t salt);

// Fresh chains queried at the given ascending levels; out is trial-major
// with out[t * levels.size() + k] the value at levels[k].
void fill_chain_levels(std::span<const double> levels_ascending,
                       std::size_t n_trials, std::span<double> out,
                       std::uint64_t seed, std::uint64_t salt);

// --- reductions -----------------------------------------------------------

double mean(std::span<const double> v);
double mean_square(std::span<const double> v);
double pearson(std::span<const double> xs, std::span<const double> ys);
std::size_t count_bitwise_equal(std::span<const double> xs,
                                std::span<const double> ys);

// One-sample Kolmogorov-Smirnov distance against a distribution function.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov distance.
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

// --- density-gradient grid scans -------------------------------------------

// Maximum |d/du log density| over a grid, by central finite differences of
// step fd_step in the shift u. Grid points within one grid step of a kink
// of the log density are skipped.

// Continuous component of the two-level joint law at (y1 - u, y2 - u).
double max_log_slope_joint_continuous(const LevelPair& pair, const Grid2D& g,
                                      double fd_step);

// Diagonal (point-mass) component at y - u.
double max_log_slope_joint_diagonal(const LevelPair& pair, const Grid1D& g,
                                    double fd_step);

// Single-level Laplace density at y - u.
double max_log_slope_laplace(PrivacyLevel eps, const Grid1D& g,
                             double fd_step);

// Product of two independent Laplace densities at (y1 - u, y2 - u), the
// summed-budget baseline pair.
double max_log_slope_independent_pair(PrivacyLevel eps_a, PrivacyLevel eps_b,
                                      const Grid2D& g, double fd_step);

// --- single-threaded reference versions ------------------------------------

namespace serial {

void fill_laplace(PrivacyLevel eps, std::span<double> out, std::uint64_t seed,
                  std::uint64_t salt);
void fill_relax_pairs(const LevelPair& pair, std::span<double> xs,
                      std::span<double> ys, std::uint64_t seed,
                      std::uint64_t salt);
void fill_tighten_pairs(const LevelPair& pair, std::span<double> ys,
                        std::span<double> xs, std::uint64_t seed,
                        std::uint64_t salt);
void fill_two_route(PrivacyLevel eps1, PrivacyLevel eps2, PrivacyLevel eps3,
                    std::span<double> direct, std::span<double> stepped,
                    std::uint64_t seed, std::uint64_t salt);
void fill_chain_levels(std::span<const double> levels_ascending,
                       std::size_t n_trials, std::span<double> out,
                       std::uint64_t seed, std::uint64_t salt);
double mean(std::span<const double> v);
double mean_square(std::span<const double> v);
double pearson(std::span<const double> xs, std::span<const double> ys);
std::size_t count_bitwise_equal(std::span<const double> xs,
                                std::span<const double> ys);
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);
double max_log_slope_joint_continuous(const LevelPair& pair, const Grid2D& g,
                                      double fd_step);

}  // namespace serial

}  // namespace graddp::kernels

#endif  // GRADDP_KERNELS_HPP_
