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
// End-to-end acceptance suite. Each numbered criterion prints exactly one
// pass/fail line; the process exits nonzero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "graddp/audit.hpp"
#include "graddp/kernels.hpp"
#include "graddp/laws.hpp"
#include "graddp/mechanism.hpp"

namespace fs = std::filesystem;
using namespace graddp;
namespace k = graddp::kernels;
namespace au = graddp::audit;

namespace {

constexpr std::uint64_t kSeed = 20260810;
constexpr std::size_t kN = 1000000;
constexpr double kKsCoeff = 1.95;

int g_failures = 0;

void report(int criterion, bool passed, const std::string& what,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", passed ? "PASS" : "FAIL",
              criterion, what.c_str(), detail.c_str());
  if (!passed) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

bool within_relative(double value, double target, double tolerance) {
  return std::abs(value / target - 1.0) <= tolerance;
}

// 1. Mean-squared error optimality at three scalar levels and one vector
//    case, all within 2%, in under ten seconds.
void criterion_mse() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  std::vector<double> buf(kN);
  int salt = 1;
  for (double eps : {0.5, 1.0, 2.0}) {
    k::fill_laplace(PrivacyLevel(eps), buf, kSeed, salt++);
    double sum = 0.0;
    for (double v : buf) sum += v * v;
    const double mse = sum / static_cast<double>(kN);
    const double target = 2.0 / (eps * eps);
    ok = ok && within_relative(mse, target, 0.02);
    detail += "eps=" + fmt(eps) + ": " + fmt(mse) + " vs " + fmt(target) + "; ";
  }

  std::vector<double> coords(3 * kN);
  k::fill_laplace(PrivacyLevel(1.0), coords, kSeed, salt++);
  double sum = 0.0;
  for (double v : coords) sum += v * v;
  const double vec_mse = sum / static_cast<double>(kN);
  ok = ok && within_relative(vec_mse, 6.0, 0.02);
  detail += "n=3: " + fmt(vec_mse) + " vs 6";

  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  ok = ok && elapsed.count() < 10.0;
  detail += "; " + fmt(elapsed.count()) + "s";
  report(1, ok, "noise attains the optimal mean-squared error 2n/eps^2",
         detail);
}

// 2. The relaxed response is Laplace at the new level.
void criterion_relax_marginal() {
  const LevelPair pair(PrivacyLevel(1.0), PrivacyLevel(2.0));
  std::vector<double> xs(kN), ys(kN);
  k::fill_relax_pairs(pair, xs, ys, kSeed, 10);
  const double d = k::ks_statistic(
      ys, [&](double y) { return laplace_cdf(y, pair.eps2()); });
  const double threshold = kKsCoeff / std::sqrt(static_cast<double>(kN));
  report(2, d < threshold, "relaxing 1->2 yields a Laplace(1/2) marginal",
         "ks=" + fmt(d) + " < " + fmt(threshold));
}

// 3. Unchanged-sample fraction equals (eps1/eps2)^2 at three level pairs.
void criterion_atom_fractions() {
  bool ok = true;
  std::string detail;
  int salt = 20;
  std::vector<double> xs(kN), ys(kN);
  for (const auto& [e1, e2] : std::vector<std::pair<double, double>>{
           {1.0, 2.0}, {1.0, 4.0}, {2.0, 3.0}}) {
    const LevelPair pair{PrivacyLevel(e1), PrivacyLevel(e2)};
    k::fill_relax_pairs(pair, xs, ys, kSeed, salt++);
    const double fraction =
        static_cast<double>(k::count_bitwise_equal(xs, ys)) /
        static_cast<double>(kN);
    const double target = (e1 / e2) * (e1 / e2);
    ok = ok && std::abs(fraction - target) < 0.01;
    detail += fmt(e1) + "->" + fmt(e2) + ": " + fmt(fraction) + " vs " +
              fmt(target) + "; ";
  }
  detail.resize(detail.size() - 2);
  report(3, ok, "lazy unchanged fraction equals (eps1/eps2)^2", detail);
}

// 4. Correlation of the coupled pair equals eps1/eps2.
void criterion_correlation() {
  bool ok = true;
  std::string detail;
  int salt = 30;
  std::vector<double> xs(kN), ys(kN);
  for (const auto& [e1, e2] :
       std::vector<std::pair<double, double>>{{1.0, 2.0}, {1.0, 4.0}}) {
    const LevelPair pair{PrivacyLevel(e1), PrivacyLevel(e2)};
    k::fill_relax_pairs(pair, xs, ys, kSeed, salt++);
    const double rho = k::pearson(xs, ys);
    ok = ok && std::abs(rho - e1 / e2) < 0.01;
    detail += fmt(e1) + "->" + fmt(e2) + ": " + fmt(rho) + " vs " +
              fmt(e1 / e2) + "; ";
  }
  detail.resize(detail.size() - 2);
  report(4, ok, "pair correlation equals eps1/eps2", detail);
}

// 5. One hop and two hops to the same level are indistinguishable, and the
//    transition kernels compose under quadrature.
void criterion_markov() {
  std::vector<double> direct(kN), stepped(kN);
  k::fill_two_route(PrivacyLevel(1.0), PrivacyLevel(2.0), PrivacyLevel(3.0),
                    direct, stepped, kSeed, 40);
  const double d = k::ks_statistic_two_sample(direct, stepped);
  const double threshold = kKsCoeff * std::sqrt(2.0 / static_cast<double>(kN));

  const au::AuditReport composition = au::chapman_kolmogorov_audit(
      PrivacyLevel(1.0), PrivacyLevel(2.0), PrivacyLevel(3.0),
      au::default_composition_grid(PrivacyLevel(1.0)));

  report(5, d < threshold && composition.passed,
         "1->3 and 1->2->3 agree in law; kernels compose to 1e-6",
         "ks=" + fmt(d) + " < " + fmt(threshold) +
             ", max quadrature deviation=" + fmt(composition.statistic));
}

// 6. Grid maximum of the log-density gradient stays at or below eps2.
void criterion_privacy_audit() {
  const LevelPair pair(PrivacyLevel(1.0), PrivacyLevel(2.0));
  const au::AuditReport report_audit =
      au::lipschitz_grid_audit(pair, au::default_privacy_grid(pair));
  report(6, report_audit.passed,
         "log-density gradient bounded by eps2 on the audit grid",
         "max=" + fmt(report_audit.statistic) +
             " <= " + fmt(report_audit.threshold));
}

// 7. Tightening 2 -> 1: Laplace(1) marginal, independent increment, and a
//    quarter of values kept.
void criterion_tighten() {
  const LevelPair pair(PrivacyLevel(1.0), PrivacyLevel(2.0));
  std::vector<double> ys(kN), xs(kN);
  k::fill_tighten_pairs(pair, ys, xs, kSeed, 50);

  const double d = k::ks_statistic(
      xs, [&](double x) { return laplace_cdf(x, pair.eps1()); });
  const double ks_threshold = kKsCoeff / std::sqrt(static_cast<double>(kN));

  std::vector<double> increments(kN);
  for (std::size_t i = 0; i < kN; ++i) increments[i] = xs[i] - ys[i];
  const double rho = k::pearson(increments, ys);

  const double fraction = static_cast<double>(k::count_bitwise_equal(xs, ys)) /
                          static_cast<double>(kN);

  const bool ok = d < ks_threshold && std::abs(rho) < 0.005 &&
                  std::abs(fraction - 0.25) < 0.01;
  report(7, ok, "tightening restores Laplace(1) with independent increment",
         "ks=" + fmt(d) + ", increment correlation=" + fmt(rho) +
             ", kept fraction=" + fmt(fraction));
}

// 8. The summed-budget baseline collapses at a small relaxation while the
//    coupled release keeps the optimal error.
void criterion_baseline_separation() {
  const std::size_t trials = 500000;
  const PrivateVector u({0.0});
  double naive_sq = 0.0, gradual_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto [first, second] = naive_composition_release(
        u, PrivacyLevel(1.0), PrivacyLevel(1.1), 1.0, kSeed + t);
    naive_sq += second.values[0] * second.values[0];

    MechanismState state(u, 1.0, kSeed + t);
    state.release(PrivacyLevel(1.0));
    const double g = state.release(PrivacyLevel(1.1)).values[0];
    gradual_sq += g * g;
  }
  const double naive_mse = naive_sq / static_cast<double>(trials);
  const double gradual_mse = gradual_sq / static_cast<double>(trials);
  const double gradual_target = 2.0 / (1.1 * 1.1);
  const bool ok = within_relative(naive_mse, 200.0, 0.02) &&
                  within_relative(gradual_mse, gradual_target, 0.02);
  report(8, ok, "budget-summing baseline 200 vs coupled release 1.653",
         "naive=" + fmt(naive_mse) + " vs 200, gradual=" + fmt(gradual_mse) +
             " vs " + fmt(gradual_target));
}

// 9. The joint law integrates back to both Laplace marginals.
void criterion_marginal_consistency() {
  const au::AuditReport audit = au::marginal_consistency_audit(
      LevelPair(PrivacyLevel(1.0), PrivacyLevel(2.0)), 100);
  report(9, audit.passed, "joint law integrates to the Laplace marginals",
         "max deviation=" + fmt(audit.statistic) + " <= 1e-08");
}

// 10. Replaying a CLI session with a fixed seed reproduces every file byte
//     for byte.
void criterion_cli_determinism() {
  const char* cli = std::getenv("GRADDP_CLI");
  if (cli == nullptr) {
    report(10, false, "CLI session replay is byte-identical",
           "GRADDP_CLI not set");
    return;
  }
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const auto session = [&](const fs::path& dir) {
    fs::create_directories(dir);
    const auto run = [&](const std::string& args) {
      const std::string command =
          std::string(cli) + " " + args + " >/dev/null 2>&1";
      return WEXITSTATUS(std::system(command.c_str())) == 0;
    };
    const std::string state = (dir / "state.json").string();
    bool ok = run("init --state " + state + " --data 1.25,-0.5 --alpha 2 "
                  "--seed 42");
    ok = ok && run("release --state " + state + " --eps 1 --out " +
                   (dir / "r1.jsonl").string());
    ok = ok && run("release --state " + state + " --eps 2 --out " +
                   (dir / "r2.jsonl").string());
    ok = ok && run("release --state " + state + " --eps 1 --out " +
                   (dir / "r1b.jsonl").string());
    ok = ok && run("tighten --in " + (dir / "r2.jsonl").string() +
                   " --eps 0.5 --alpha 2 --seed 11 --out " +
                   (dir / "t.jsonl").string());
    return ok;
  };

  const fs::path base =
      fs::temp_directory_path() /
      ("graddp_acceptance_" + std::to_string(::getpid()));
  const fs::path a = base / "a", b = base / "b";
  bool ok = session(a) && session(b);
  std::string detail = "replayed 5 commands";
  for (const char* name : {"state.json", "r1.jsonl", "r2.jsonl", "r1b.jsonl",
                           "t.jsonl"}) {
    const bool same = slurp(a / name) == slurp(b / name);
    ok = ok && same;
    if (!same) detail = std::string("mismatch in ") + name;
  }
  // Re-releasing a level reproduces the identical record.
  ok = ok && slurp(a / "r1.jsonl") == slurp(a / "r1b.jsonl");
  fs::remove_all(base);
  report(10, ok, "CLI session replay is byte-identical", detail);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion_mse();
  criterion_relax_marginal();
  criterion_atom_fractions();
  criterion_correlation();
  criterion_markov();
  criterion_privacy_audit();
  criterion_tighten();
  criterion_baseline_separation();
  criterion_marginal_consistency();
  criterion_cli_determinism();
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  std::printf("%d/10 criteria passed in %.1f s\n", 10 - g_failures,
              elapsed.count());
  return g_failures == 0 ? 0 : 1;
}
