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

#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include <json.hpp>

#include "graddp/quadrature.hpp"

using namespace graddp;
namespace au = graddp::audit;

TEST_CASE("one-sample ks accepts the true law and rejects a wrong scale") {
  const std::size_t n = 100000;
  std::vector<double> right(n), wrong(n);
  kernels::fill_laplace(PrivacyLevel(1.0), right, 1, 101);
  kernels::fill_laplace(PrivacyLevel(2.0), wrong, 1, 102);

  const au::AuditReport good = au::ks_one_sample(right, PrivacyLevel(1.0));
  CHECK(good.passed);
  CHECK(good.threshold ==
        doctest::Approx(1.95 / std::sqrt(static_cast<double>(n))));
  CHECK(good.n_samples == static_cast<std::int64_t>(n));

  const au::AuditReport bad = au::ks_one_sample(wrong, PrivacyLevel(1.0));
  CHECK_FALSE(bad.passed);

  std::vector<double> few(10, 0.0);
  CHECK_THROWS_AS(au::ks_one_sample(few, PrivacyLevel(1.0)),
                  std::invalid_argument);
}

TEST_CASE("atom mass audit targets the squared level ratio") {
  const std::size_t n = 200000;
  std::vector<double> xs(n), ys(n);

  SUBCASE("quarter mass for a doubling") {
    const LevelPair pair(PrivacyLevel(1.0), PrivacyLevel(2.0));
    kernels::fill_relax_pairs(pair, xs, ys, 2, 103);
    const au::AuditReport report = au::atom_mass_audit(xs, ys, pair);
    CHECK(report.passed);
    CHECK(report.details.at("target") == "0.25");
  }

  SUBCASE("equal levels keep everything") {
    const LevelPair same(PrivacyLevel(1.0), PrivacyLevel(1.0));
    kernels::fill_relax_pairs(same, xs, ys, 2, 104);
    const au::AuditReport report = au::atom_mass_audit(xs, ys, same);
    CHECK(report.passed);
    CHECK(report.statistic == 0.0);  // every pair equal, target 1
  }

  SUBCASE("one sixteenth for a quadrupling, cross-checked by quadrature") {
    const LevelPair pair(PrivacyLevel(1.0), PrivacyLevel(4.0));
    // Mass of the point-mass component of the joint law, integrated out.
    const double by_quadrature = integrate_with_breakpoints(
        [&](double y) {
          return 1.0 / 8.0 * std::exp(-4.0 * std::abs(y));
        },
        -50.0, 50.0, {0.0});
    CHECK(by_quadrature == doctest::Approx(0.0625).epsilon(1e-10));
    kernels::fill_relax_pairs(pair, xs, ys, 2, 105);
    const au::AuditReport report = au::atom_mass_audit(xs, ys, pair);
    CHECK(report.passed);
    CHECK(report.details.at("target") == "0.0625");
  }

  std::vector<double> few(100, 0.0);
  CHECK_THROWS_AS(au::atom_mass_audit(few, few,
                                      LevelPair(PrivacyLevel(1.0),
                                                PrivacyLevel(2.0))),
                  std::invalid_argument);
}

TEST_CASE("correlation and mse audits hit their closed-form targets") {
  const std::size_t n = 200000;
  std::vector<double> xs(n), ys(n);
  const LevelPair pair(PrivacyLevel(1.0), PrivacyLevel(2.0));
  kernels::fill_relax_pairs(pair, xs, ys, 3, 106);
  CHECK(au::correlation_audit(xs, ys, pair).passed);

  std::vector<double> sq(n);
  kernels::fill_laplace(PrivacyLevel(1.0), xs, 3, 107);
  for (std::size_t i = 0; i < n; ++i) sq[i] = xs[i] * xs[i];
  const au::AuditReport mse1 = au::mse_audit(sq, PrivacyLevel(1.0), 1);
  CHECK(mse1.passed);
  CHECK(mse1.details.at("target") == "2");

  // Three dimensions at eps 2: target 2*3/4 = 1.5.
  std::vector<double> coords(3 * n);
  kernels::fill_laplace(PrivacyLevel(2.0), coords, 3, 108);
  for (std::size_t i = 0; i < n; ++i)
    sq[i] = coords[3 * i] * coords[3 * i] +
            coords[3 * i + 1] * coords[3 * i + 1] +
            coords[3 * i + 2] * coords[3 * i + 2];
  const au::AuditReport mse3 = au::mse_audit(sq, PrivacyLevel(2.0), 3);
  CHECK(mse3.passed);
  CHECK(mse3.details.at("target") == "1.5");

  std::vector<double> few(100, 0.0);
  CHECK_THROWS_AS(au::correlation_audit(few, few, pair),
                  std::invalid_argument);
  CHECK_THROWS_AS(au::mse_audit(few, PrivacyLevel(1.0), 1),
                  std::invalid_argument);
}

TEST_CASE("gradient bound audit on the joint law") {
  const LevelPair pair(PrivacyLevel(1.0), PrivacyLevel(2.0));

  SUBCASE("passes on the default grid and stays at the bound") {
    const au::AuditReport report =
        au::lipschitz_grid_audit(pair, au::default_privacy_grid(pair));
    CHECK(report.passed);
    CHECK(report.statistic <= 2.0 + 1e-6);
    CHECK(report.statistic == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(report.details.count("continuous_max") == 1);
    CHECK(report.details.count("diagonal_max") == 1);
  }

  SUBCASE("coarse or short grids are rejected") {
    kernels::Grid2D coarse = au::default_privacy_grid(pair);
    coarse.x.step = 0.1;
    CHECK_THROWS_AS(au::lipschitz_grid_audit(pair, coarse),
                    std::invalid_argument);
    kernels::Grid2D narrow = au::default_privacy_grid(pair);
    narrow.y.hi = 5.0;
    CHECK_THROWS_AS(au::lipschitz_grid_audit(pair, narrow),
                    std::invalid_argument);
  }
}

TEST_CASE("gradient bound audits for the reference densities") {
  const au::AuditReport single = au::lipschitz_laplace_audit(
      PrivacyLevel(1.0), kernels::Grid1D{-10.0, 10.0, 0.01});
  CHECK(single.passed);
  CHECK(single.statistic == doctest::Approx(1.0).epsilon(1e-8));

  const LevelPair pair(PrivacyLevel(1.0), PrivacyLevel(2.0));
  const au::AuditReport naive = au::lipschitz_independent_pair_audit(
      PrivacyLevel(1.0), PrivacyLevel(1.0), au::default_privacy_grid(pair));
  CHECK(naive.passed);
  CHECK(naive.statistic == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("transition composition closes under quadrature") {
  const au::AuditReport report = au::chapman_kolmogorov_audit(
      PrivacyLevel(1.0), PrivacyLevel(2.0), PrivacyLevel(3.0),
      au::default_composition_grid(PrivacyLevel(1.0)));
  CHECK(report.passed);
  CHECK(report.statistic < 1e-6);

  // Composed atom equals the direct atom exactly.
  const LevelPair hop12(PrivacyLevel(1.0), PrivacyLevel(2.0));
  const LevelPair hop23(PrivacyLevel(2.0), PrivacyLevel(3.0));
  const LevelPair hop13(PrivacyLevel(1.0), PrivacyLevel(3.0));
  for (double x : {-2.0, 0.0, 0.7}) {
    CHECK(forward_atom_mass(x, hop12) * forward_atom_mass(x, hop23) ==
          doctest::Approx(forward_atom_mass(x, hop13)).epsilon(1e-14));
  }

  const au::AuditReport degenerate = au::chapman_kolmogorov_audit(
      PrivacyLevel(1.0), PrivacyLevel(1.0 + 1e-9), PrivacyLevel(3.0),
      au::default_composition_grid(PrivacyLevel(1.0)));
  CHECK(degenerate.passed);

  CHECK_THROWS_AS(au::chapman_kolmogorov_audit(
                      PrivacyLevel(2.0), PrivacyLevel(1.0), PrivacyLevel(3.0),
                      au::default_composition_grid(PrivacyLevel(1.0))),
                  std::invalid_argument);
}

TEST_CASE("joint law integrates back to its two Laplace marginals") {
  const au::AuditReport report = au::marginal_consistency_audit(
      LevelPair(PrivacyLevel(1.0), PrivacyLevel(2.0)), 100);
  CHECK(report.passed);
  CHECK(report.statistic < 1e-8);
}

TEST_CASE("conditional law is normalized on a level grid") {
  const au::AuditReport report = au::normalization_audit(
      LevelPair(PrivacyLevel(1.0), PrivacyLevel(2.0)),
      kernels::Grid1D{-10.0, 10.0, 0.5});
  CHECK(report.passed);
  CHECK(report.statistic < 1e-8);
}

TEST_CASE("laziness target by quadrature matches the closed form") {
  CHECK(au::laziness_quadrature_target(
            LevelPair(PrivacyLevel(1.0), PrivacyLevel(2.0))) ==
        doctest::Approx(0.25).epsilon(1e-9));
  CHECK(au::laziness_quadrature_target(
            LevelPair(PrivacyLevel(2.0), PrivacyLevel(3.0))) ==
        doctest::Approx(4.0 / 9.0).epsilon(1e-9));
}

TEST_CASE("suite runner: names, floors, and reports") {
  CHECK(au::suite_names().size() == 8);
  CHECK(au::suite_sample_floor("mse") == au::kMomentSampleFloor);
  CHECK(au::suite_sample_floor("privacy") == 0);
  CHECK_THROWS_AS(au::suite_sample_floor("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(au::run_suite("mse", {1, 100}), std::invalid_argument);
  CHECK_THROWS_AS(au::run_suite("nope", {1, 1000000}),
                  std::invalid_argument);

  const std::vector<au::AuditReport> reports =
      au::run_suite("correlation", {1, 200000});
  REQUIRE(reports.size() == 2);
  for (const au::AuditReport& r : reports) {
    CHECK(r.passed);
    CHECK(r.details.at("seed") == "1");
    const auto parsed = nlohmann::json::parse(au::to_json_line(r));
    CHECK(parsed.at("test") == r.test_name);
    CHECK(parsed.at("passed") == r.passed);
  }
  const std::string table = au::format_table(reports);
  CHECK(table.find("relax_correlation_1to2") != std::string::npos);
  CHECK(table.find("pass") != std::string::npos);
}

TEST_CASE("every suite passes end to end at a reduced sample count") {
  const au::SuiteConfig config{1, 200000};
  const std::vector<au::AuditReport> reports = au::run_suite("all", config);
  CHECK(reports.size() >= 15);
  for (const au::AuditReport& r : reports) {
    CAPTURE(r.test_name);
    CAPTURE(r.statistic);
    CAPTURE(r.threshold);
    CHECK(r.passed);
  }
}
