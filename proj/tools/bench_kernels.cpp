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
// Times the OpenMP kernels against their serial reference implementations.
// Outputs are bit-identical across the two paths by construction; this tool
// reports the wall-clock ratio.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "graddp/kernels.hpp"
#include "graddp/laws.hpp"

namespace {

using graddp::LevelPair;
using graddp::PrivacyLevel;
namespace kernels = graddp::kernels;

double time_seconds(const std::function<void()>& fn, int repeats) {
  fn();  // warm up
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) fn();
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  return elapsed.count() / repeats;
}

void report(const char* name, double serial_s, double parallel_s) {
  std::printf("%-28s %10.4f s %10.4f s %8.2fx\n", name, serial_s, parallel_s,
              serial_s / parallel_s);
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 4000000;
  int repeats = 3;
  if (argc > 1) n = static_cast<std::size_t>(std::atoll(argv[1]));
  if (argc > 2) repeats = std::atoi(argv[2]);

#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp not enabled; both columns run serial code\n");
#endif
  std::printf("samples per kernel: %zu, repeats: %d\n\n", n, repeats);
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  const PrivacyLevel e1(1.0), e2(2.0), e3(3.0);
  const LevelPair pair(e1, e2);
  std::vector<double> a(n), b(n);

  report("fill_laplace",
         time_seconds([&] { kernels::serial::fill_laplace(e1, a, 7, 1); },
                      repeats),
         time_seconds([&] { kernels::fill_laplace(e1, a, 7, 1); }, repeats));

  report(
      "fill_relax_pairs",
      time_seconds([&] { kernels::serial::fill_relax_pairs(pair, a, b, 7, 2); },
                   repeats),
      time_seconds([&] { kernels::fill_relax_pairs(pair, a, b, 7, 2); },
                   repeats));

  report(
      "fill_tighten_pairs",
      time_seconds(
          [&] { kernels::serial::fill_tighten_pairs(pair, a, b, 7, 3); },
          repeats),
      time_seconds([&] { kernels::fill_tighten_pairs(pair, a, b, 7, 3); },
                   repeats));

  report("fill_two_route",
         time_seconds(
             [&] { kernels::serial::fill_two_route(e1, e2, e3, a, b, 7, 4); },
             repeats),
         time_seconds([&] { kernels::fill_two_route(e1, e2, e3, a, b, 7, 4); },
                      repeats));

  kernels::fill_relax_pairs(pair, a, b, 7, 5);
  report("mean_square",
         time_seconds([&] { (void)kernels::serial::mean_square(a); }, repeats),
         time_seconds([&] { (void)kernels::mean_square(a); }, repeats));

  report("pearson",
         time_seconds([&] { (void)kernels::serial::pearson(a, b); }, repeats),
         time_seconds([&] { (void)kernels::pearson(a, b); }, repeats));

  const auto cdf = [&](double x) { return graddp::laplace_cdf(x, e1); };
  report(
      "ks_statistic",
      time_seconds([&] { (void)kernels::serial::ks_statistic(a, cdf); },
                   repeats),
      time_seconds([&] { (void)kernels::ks_statistic(a, cdf); }, repeats));

  const kernels::Grid2D grid{{-10.0, 10.0, 0.02}, {-10.0, 10.0, 0.02}};
  report("max_log_slope_joint",
         time_seconds(
             [&] {
               (void)kernels::serial::max_log_slope_joint_continuous(pair, grid,
                                                                     1e-5);
             },
             repeats),
         time_seconds(
             [&] {
               (void)kernels::max_log_slope_joint_continuous(pair, grid, 1e-5);
             },
             repeats));

  return 0;
}
