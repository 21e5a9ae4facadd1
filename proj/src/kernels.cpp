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

#include "graddp/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace graddp::kernels {

namespace {

// Stream id of a sampling block. Salts stay below 2^24 and block counts
// below 2^40, so ids never collide across kernels of one run.
std::uint64_t block_stream(std::uint64_t salt, std::uint64_t block) {
  return (salt << 40) + block;
}

std::size_t block_count(std::size_t n) {
  return (n + kBlockSize - 1) / kBlockSize;
}

template <typename BlockFn>
void run_blocks_serial(std::size_t n, BlockFn&& fn) {
  const std::size_t nb = block_count(n);
  for (std::size_t b = 0; b < nb; ++b)
    fn(b, b * kBlockSize, std::min(n, (b + 1) * kBlockSize));
}

template <typename BlockFn>
void run_blocks_parallel(std::size_t n, BlockFn&& fn) {
  const auto nb = static_cast<std::int64_t>(block_count(n));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t b = 0; b < nb; ++b) {
    const auto ub = static_cast<std::size_t>(b);
    fn(ub, ub * kBlockSize, std::min(n, (ub + 1) * kBlockSize));
  }
}

// --- per-block sampling bodies, shared by both drivers ----------------------

void laplace_block(PrivacyLevel eps, std::span<double> out, std::uint64_t seed,
                   std::uint64_t salt, std::size_t block, std::size_t begin,
                   std::size_t end) {
  RandomSource rng = RandomSource::from_stream(seed, block_stream(salt, block));
  for (std::size_t i = begin; i < end; ++i) out[i] = laplace_sample(eps, rng);
}

void relax_pairs_block(const LevelPair& pair, std::span<double> xs,
                       std::span<double> ys, std::uint64_t seed,
                       std::uint64_t salt, std::size_t block,
                       std::size_t begin, std::size_t end) {
  RandomSource rng = RandomSource::from_stream(seed, block_stream(salt, block));
  for (std::size_t i = begin; i < end; ++i) {
    xs[i] = laplace_sample(pair.eps1(), rng);
    ys[i] = relax_sample(xs[i], pair, rng);
  }
}

void tighten_pairs_block(const LevelPair& pair, std::span<double> ys,
                         std::span<double> xs, std::uint64_t seed,
                         std::uint64_t salt, std::size_t block,
                         std::size_t begin, std::size_t end) {
  RandomSource rng = RandomSource::from_stream(seed, block_stream(salt, block));
  for (std::size_t i = begin; i < end; ++i) {
    ys[i] = laplace_sample(pair.eps2(), rng);
    xs[i] = tighten_sample(ys[i], pair, rng);
  }
}

void two_route_block(PrivacyLevel eps1, PrivacyLevel eps2, PrivacyLevel eps3,
                     std::span<double> direct, std::span<double> stepped,
                     std::uint64_t seed, std::uint64_t salt, std::size_t block,
                     std::size_t begin, std::size_t end) {
  RandomSource rng = RandomSource::from_stream(seed, block_stream(salt, block));
  const LevelPair hop13(eps1, eps3);
  const LevelPair hop12(eps1, eps2);
  const LevelPair hop23(eps2, eps3);
  for (std::size_t i = begin; i < end; ++i) {
    direct[i] = relax_sample(laplace_sample(eps1, rng), hop13, rng);
    stepped[i] = relax_sample(
        relax_sample(laplace_sample(eps1, rng), hop12, rng), hop23, rng);
  }
}

void chain_levels_block(std::span<const double> levels, std::span<double> out,
                        std::uint64_t seed, std::uint64_t salt,
                        std::size_t block, std::size_t begin,
                        std::size_t end) {
  RandomSource rng = RandomSource::from_stream(seed, block_stream(salt, block));
  const std::size_t m = levels.size();
  for (std::size_t t = begin; t < end; ++t) {
    double v = laplace_sample(PrivacyLevel(levels[0]), rng);
    out[t * m] = v;
    for (std::size_t k = 1; k < m; ++k) {
      v = relax_sample(
          v, LevelPair(PrivacyLevel(levels[k - 1]), PrivacyLevel(levels[k])),
          rng);
      out[t * m + k] = v;
    }
  }
}

// --- reduction partials ------------------------------------------------------

// Partials are padded to a cache line: adjacent blocks are written by
// different threads.
struct alignas(64) MomentPartials {
  double sum = 0.0;
  double sum_sq = 0.0;
};

struct alignas(64) PearsonPartials {
  double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
};

struct alignas(64) CountPartial {
  std::size_t count = 0;
};

template <typename RunBlocks>
MomentPartials moments(std::span<const double> v, RunBlocks&& run) {
  std::vector<MomentPartials> parts(block_count(v.size()));
  run(v.size(), [&](std::size_t b, std::size_t begin, std::size_t end) {
    MomentPartials p;
    for (std::size_t i = begin; i < end; ++i) {
      p.sum += v[i];
      p.sum_sq += v[i] * v[i];
    }
    parts[b] = p;
  });
  MomentPartials total;
  for (const MomentPartials& p : parts) {  // fixed order: deterministic sum
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
  }
  return total;
}

template <typename RunBlocks>
double pearson_impl(std::span<const double> xs, std::span<const double> ys,
                    RunBlocks&& run) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::invalid_argument("pearson requires equal-length nonempty data");
  std::vector<PearsonPartials> parts(block_count(xs.size()));
  run(xs.size(), [&](std::size_t b, std::size_t begin, std::size_t end) {
    PearsonPartials p;
    for (std::size_t i = begin; i < end; ++i) {
      p.sx += xs[i];
      p.sy += ys[i];
      p.sxx += xs[i] * xs[i];
      p.syy += ys[i] * ys[i];
      p.sxy += xs[i] * ys[i];
    }
    parts[b] = p;
  });
  PearsonPartials t;
  for (const PearsonPartials& p : parts) {
    t.sx += p.sx;
    t.sy += p.sy;
    t.sxx += p.sxx;
    t.syy += p.syy;
    t.sxy += p.sxy;
  }
  const double n = static_cast<double>(xs.size());
  const double cov = t.sxy - t.sx * t.sy / n;
  const double vx = t.sxx - t.sx * t.sx / n;
  const double vy = t.syy - t.sy * t.sy / n;
  return cov / std::sqrt(vx * vy);
}

double ks_scan(const std::vector<double>& sorted,
               const std::function<double(double)>& cdf, bool parallel) {
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  if (parallel) {
    const auto size = static_cast<std::int64_t>(sorted.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (std::int64_t i = 0; i < size; ++i) {
      const double f = cdf(sorted[static_cast<std::size_t>(i)]);
      const double lo = f - static_cast<double>(i) / n;
      const double hi = static_cast<double>(i + 1) / n - f;
      worst = std::max({worst, lo, hi});
    }
  } else {
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const double f = cdf(sorted[i]);
      const double lo = f - static_cast<double>(i) / n;
      const double hi = static_cast<double>(i + 1) / n - f;
      worst = std::max({worst, lo, hi});
    }
  }
  return worst;
}

// Bands within one grid step of a log-density kink are excluded from the
// slope scans: the derivative bound applies off the non-differentiable loci.
bool near(double a, double b, double band) { return std::abs(a - b) <= band; }

double joint_continuous_slope(const LevelPair& pair, double y1, double y2,
                              double h) {
  const double up = joint_log_pdf(y1 - h, y2 - h, pair).log_continuous_density;
  const double dn = joint_log_pdf(y1 + h, y2 + h, pair).log_continuous_density;
  return std::abs(up - dn) / (2.0 * h);
}

template <typename RowFn>
double grid_row_max_parallel(std::size_t rows, RowFn&& fn) {
  double worst = 0.0;
  const auto n = static_cast<std::int64_t>(rows);
#pragma omp parallel for reduction(max : worst) schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i)
    worst = std::max(worst, fn(static_cast<std::size_t>(i)));
  return worst;
}

template <typename RowFn>
double grid_row_max_serial(std::size_t rows, RowFn&& fn) {
  double worst = 0.0;
  for (std::size_t i = 0; i < rows; ++i) worst = std::max(worst, fn(i));
  return worst;
}

double joint_continuous_row(const LevelPair& pair, const Grid2D& g,
                            double fd_step, std::size_t i) {
  const double y1 = g.x.at(i);
  const double band = std::max(g.x.step, g.y.step);
  double worst = 0.0;
  const std::size_t cols = g.y.size();
  for (std::size_t j = 0; j < cols; ++j) {
    const double y2 = g.y.at(j);
    if (near(y2, 0.0, g.y.step) || near(y1, y2, band)) continue;
    worst = std::max(worst, joint_continuous_slope(pair, y1, y2, fd_step));
  }
  return worst;
}

double independent_pair_row(PrivacyLevel eps_a, PrivacyLevel eps_b,
                            const Grid2D& g, double fd_step, std::size_t i) {
  const double y1 = g.x.at(i);
  if (near(y1, 0.0, g.x.step)) return 0.0;
  double worst = 0.0;
  const std::size_t cols = g.y.size();
  for (std::size_t j = 0; j < cols; ++j) {
    const double y2 = g.y.at(j);
    if (near(y2, 0.0, g.y.step)) continue;
    const double up = laplace_log_pdf(y1 - fd_step, eps_a) +
                      laplace_log_pdf(y2 - fd_step, eps_b);
    const double dn = laplace_log_pdf(y1 + fd_step, eps_a) +
                      laplace_log_pdf(y2 + fd_step, eps_b);
    worst = std::max(worst, std::abs(up - dn) / (2.0 * fd_step));
  }
  return worst;
}

}  // namespace

std::size_t Grid1D::size() const {
  if (!(step > 0.0) || hi < lo)
    throw std::invalid_argument("grid requires hi >= lo and step > 0");
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
}

void fill_laplace(PrivacyLevel eps, std::span<double> out, std::uint64_t seed,
                  std::uint64_t salt) {
  run_blocks_parallel(out.size(), [&](std::size_t b, std::size_t s,
                                      std::size_t e) {
    laplace_block(eps, out, seed, salt, b, s, e);
  });
}

void fill_relax_pairs(const LevelPair& pair, std::span<double> xs,
                      std::span<double> ys, std::uint64_t seed,
                      std::uint64_t salt) {
  run_blocks_parallel(xs.size(), [&](std::size_t b, std::size_t s,
                                     std::size_t e) {
    relax_pairs_block(pair, xs, ys, seed, salt, b, s, e);
  });
}

void fill_tighten_pairs(const LevelPair& pair, std::span<double> ys,
                        std::span<double> xs, std::uint64_t seed,
                        std::uint64_t salt) {
  run_blocks_parallel(ys.size(), [&](std::size_t b, std::size_t s,
                                     std::size_t e) {
    tighten_pairs_block(pair, ys, xs, seed, salt, b, s, e);
  });
}

// Level validation happens before the parallel regions; an exception
// thrown inside one would terminate instead of propagate.
static void check_route_levels(PrivacyLevel eps1, PrivacyLevel eps2,
                               PrivacyLevel eps3) {
  (void)LevelPair(eps1, eps2);
  (void)LevelPair(eps2, eps3);
}

static void check_chain_levels(std::span<const double> levels) {
  if (levels.empty())
    throw std::invalid_argument("chain levels must be nonempty");
  (void)PrivacyLevel(levels[0]);
  for (std::size_t k = 1; k < levels.size(); ++k)
    (void)LevelPair(PrivacyLevel(levels[k - 1]), PrivacyLevel(levels[k]));
}

void fill_two_route(PrivacyLevel eps1, PrivacyLevel eps2, PrivacyLevel eps3,
                    std::span<double> direct, std::span<double> stepped,
                    std::uint64_t seed, std::uint64_t salt) {
  check_route_levels(eps1, eps2, eps3);
  run_blocks_parallel(direct.size(), [&](std::size_t b, std::size_t s,
                                         std::size_t e) {
    two_route_block(eps1, eps2, eps3, direct, stepped, seed, salt, b, s, e);
  });
}

void fill_chain_levels(std::span<const double> levels_ascending,
                       std::size_t n_trials, std::span<double> out,
                       std::uint64_t seed, std::uint64_t salt) {
  check_chain_levels(levels_ascending);
  run_blocks_parallel(n_trials, [&](std::size_t b, std::size_t s,
                                    std::size_t e) {
    chain_levels_block(levels_ascending, out, seed, salt, b, s, e);
  });
}

double mean(std::span<const double> v) {
  return moments(v, [](auto n, auto&& fn) { run_blocks_parallel(n, fn); }).sum /
         static_cast<double>(v.size());
}

double mean_square(std::span<const double> v) {
  return moments(v, [](auto n, auto&& fn) { run_blocks_parallel(n, fn); })
             .sum_sq /
         static_cast<double>(v.size());
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  return pearson_impl(xs, ys,
                      [](auto n, auto&& fn) { run_blocks_parallel(n, fn); });
}

std::size_t count_bitwise_equal(std::span<const double> xs,
                                std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("count_bitwise_equal requires equal lengths");
  std::vector<CountPartial> parts(block_count(xs.size()));
  run_blocks_parallel(xs.size(), [&](std::size_t b, std::size_t begin,
                                     std::size_t end) {
    std::size_t c = 0;
    for (std::size_t i = begin; i < end; ++i)
      c += std::bit_cast<std::uint64_t>(xs[i]) ==
           std::bit_cast<std::uint64_t>(ys[i]);
    parts[b].count = c;
  });
  std::size_t total = 0;
  for (const CountPartial& c : parts) total += c.count;
  return total;
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty())
    throw std::invalid_argument("ks_statistic requires samples");
  std::sort(samples.begin(), samples.end());
  return ks_scan(samples, cdf, /*parallel=*/true);
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("two-sample ks requires nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < a.size() && j < b.size()) {
    // Advance both runs through a tied value before comparing the
    // empirical distribution functions.
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / na -
                                     static_cast<double>(j) / nb));
  }
  return worst;
}

double max_log_slope_joint_continuous(const LevelPair& pair, const Grid2D& g,
                                      double fd_step) {
  g.y.size();  // validate outside the parallel region
  return grid_row_max_parallel(g.x.size(), [&](std::size_t i) {
    return joint_continuous_row(pair, g, fd_step, i);
  });
}

double max_log_slope_joint_diagonal(const LevelPair& pair, const Grid1D& g,
                                    double fd_step) {
  const double log_coeff = std::log(pair.eps1().value() * pair.eps1().value() /
                                    (2.0 * pair.eps2().value()));
  const double e2 = pair.eps2().value();
  return grid_row_max_parallel(g.size(), [&](std::size_t i) {
    const double y = g.at(i);
    if (near(y, 0.0, g.step)) return 0.0;
    const double up = log_coeff - e2 * std::abs(y - fd_step);
    const double dn = log_coeff - e2 * std::abs(y + fd_step);
    return std::abs(up - dn) / (2.0 * fd_step);
  });
}

double max_log_slope_laplace(PrivacyLevel eps, const Grid1D& g,
                             double fd_step) {
  return grid_row_max_parallel(g.size(), [&](std::size_t i) {
    const double y = g.at(i);
    if (near(y, 0.0, g.step)) return 0.0;
    const double up = laplace_log_pdf(y - fd_step, eps);
    const double dn = laplace_log_pdf(y + fd_step, eps);
    return std::abs(up - dn) / (2.0 * fd_step);
  });
}

double max_log_slope_independent_pair(PrivacyLevel eps_a, PrivacyLevel eps_b,
                                      const Grid2D& g, double fd_step) {
  g.y.size();  // validate outside the parallel region
  return grid_row_max_parallel(g.x.size(), [&](std::size_t i) {
    return independent_pair_row(eps_a, eps_b, g, fd_step, i);
  });
}

namespace serial {

void fill_laplace(PrivacyLevel eps, std::span<double> out, std::uint64_t seed,
                  std::uint64_t salt) {
  run_blocks_serial(out.size(), [&](std::size_t b, std::size_t s,
                                    std::size_t e) {
    laplace_block(eps, out, seed, salt, b, s, e);
  });
}

void fill_relax_pairs(const LevelPair& pair, std::span<double> xs,
                      std::span<double> ys, std::uint64_t seed,
                      std::uint64_t salt) {
  run_blocks_serial(xs.size(), [&](std::size_t b, std::size_t s,
                                   std::size_t e) {
    relax_pairs_block(pair, xs, ys, seed, salt, b, s, e);
  });
}

void fill_tighten_pairs(const LevelPair& pair, std::span<double> ys,
                        std::span<double> xs, std::uint64_t seed,
                        std::uint64_t salt) {
  run_blocks_serial(ys.size(), [&](std::size_t b, std::size_t s,
                                   std::size_t e) {
    tighten_pairs_block(pair, ys, xs, seed, salt, b, s, e);
  });
}

void fill_two_route(PrivacyLevel eps1, PrivacyLevel eps2, PrivacyLevel eps3,
                    std::span<double> direct, std::span<double> stepped,
                    std::uint64_t seed, std::uint64_t salt) {
  check_route_levels(eps1, eps2, eps3);
  run_blocks_serial(direct.size(), [&](std::size_t b, std::size_t s,
                                       std::size_t e) {
    two_route_block(eps1, eps2, eps3, direct, stepped, seed, salt, b, s, e);
  });
}

void fill_chain_levels(std::span<const double> levels_ascending,
                       std::size_t n_trials, std::span<double> out,
                       std::uint64_t seed, std::uint64_t salt) {
  check_chain_levels(levels_ascending);
  run_blocks_serial(n_trials, [&](std::size_t b, std::size_t s,
                                  std::size_t e) {
    chain_levels_block(levels_ascending, out, seed, salt, b, s, e);
  });
}

double mean(std::span<const double> v) {
  return moments(v, [](auto n, auto&& fn) { run_blocks_serial(n, fn); }).sum /
         static_cast<double>(v.size());
}

double mean_square(std::span<const double> v) {
  return moments(v, [](auto n, auto&& fn) { run_blocks_serial(n, fn); })
             .sum_sq /
         static_cast<double>(v.size());
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  return pearson_impl(xs, ys,
                      [](auto n, auto&& fn) { run_blocks_serial(n, fn); });
}

std::size_t count_bitwise_equal(std::span<const double> xs,
                                std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("count_bitwise_equal requires equal lengths");
  std::size_t total = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    total += std::bit_cast<std::uint64_t>(xs[i]) ==
             std::bit_cast<std::uint64_t>(ys[i]);
  return total;
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty())
    throw std::invalid_argument("ks_statistic requires samples");
  std::sort(samples.begin(), samples.end());
  return ks_scan(samples, cdf, /*parallel=*/false);
}

double max_log_slope_joint_continuous(const LevelPair& pair, const Grid2D& g,
                                      double fd_step) {
  return grid_row_max_serial(g.x.size(), [&](std::size_t i) {
    return joint_continuous_row(pair, g, fd_step, i);
  });
}

}  // namespace serial

}  // namespace graddp::kernels
