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
// Command-line driver: create mechanisms, release and tighten responses
// with persistent state, run the audit suites, and run the social-network
// scenario. Exit codes: 0 success, 2 usage error, 3 bridge-unsupported,
// 4 audit failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graddp/audit.hpp"
#include "graddp/errors.hpp"
#include "graddp/hexfloat.hpp"
#include "graddp/mechanism.hpp"
#include "graddp/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBridge = 3;
constexpr int kExitAuditFailure = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

bool file_exists(const std::string& path) {
  return std::ifstream(path).good();
}

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      throw std::invalid_argument("empty entry in list: " + text);
    values.push_back(graddp::from_hex_float(item));
  }
  if (values.empty()) throw std::invalid_argument("empty value list");
  return values;
}

std::vector<std::size_t> parse_csv_indices(const std::string& text) {
  std::vector<std::size_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    const long long v = std::stoll(item, &pos);
    if (pos != item.size() || v < 0)
      throw std::invalid_argument("not a node id: " + item);
    values.push_back(static_cast<std::size_t>(v));
  }
  return values;
}

nlohmann::ordered_json response_record(const graddp::Response& response) {
  nlohmann::ordered_json rec;
  rec["kind"] = "response";
  rec["eps_dp"] = response.eps_dp;
  rec["eps_dp_hex"] = graddp::to_hex_float(response.eps_dp);
  rec["eps_lipschitz"] = response.eps_lipschitz;
  rec["eps_lipschitz_hex"] = graddp::to_hex_float(response.eps_lipschitz);
  auto values = nlohmann::ordered_json::array();
  auto values_hex = nlohmann::ordered_json::array();
  for (double v : response.values) {
    values.push_back(v);
    values_hex.push_back(graddp::to_hex_float(v));
  }
  rec["values"] = std::move(values);
  rec["values_hex"] = std::move(values_hex);
  return rec;
}

graddp::Response parse_response_record(const std::string& line) {
  nlohmann::json rec;
  try {
    rec = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw graddp::ParseError(std::string("response record is not JSON: ") +
                             e.what());
  }
  if (rec.value("kind", "") != "response")
    throw graddp::ParseError("record kind is not 'response'");
  graddp::Response response;
  response.eps_dp =
      graddp::from_hex_float(rec.at("eps_dp_hex").get<std::string>());
  response.eps_lipschitz =
      graddp::from_hex_float(rec.at("eps_lipschitz_hex").get<std::string>());
  for (const auto& v : rec.at("values_hex"))
    response.values.push_back(graddp::from_hex_float(v.get<std::string>()));
  return response;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

struct CommonFlags {
  std::string state_path;
  std::string out_path;
  double eps = 0.0;
  double alpha = 1.0;
  std::uint64_t seed = 0;
};

int cmd_init(const CommonFlags& flags, const std::string& data_csv) {
  if (file_exists(flags.state_path)) {
    std::cerr << "refusing to overwrite existing state file: "
              << flags.state_path << "\n";
    return kExitUsage;
  }
  graddp::MechanismState state(
      graddp::PrivateVector(parse_csv_doubles(data_csv)), flags.alpha,
      flags.seed);
  write_file(flags.state_path, state.serialize() + "\n");
  std::cout << "initialized state with n=" << state.size()
            << " alpha=" << state.alpha() << " seed=" << state.seed() << "\n";
  return kExitOk;
}

int cmd_release(const CommonFlags& flags, bool init, const std::string& data) {
  graddp::MechanismState state = [&] {
    if (!file_exists(flags.state_path)) {
      if (!init || data.empty())
        throw std::invalid_argument(
            "state file does not exist; pass --init with --data to create it");
      return graddp::MechanismState(
          graddp::PrivateVector(parse_csv_doubles(data)), flags.alpha,
          flags.seed);
    }
    return graddp::MechanismState::deserialize(read_file(flags.state_path));
  }();

  const graddp::Response response =
      state.release(graddp::PrivacyLevel(flags.eps));
  write_file(flags.state_path, state.serialize() + "\n");
  emit(response_record(response).dump() + "\n", flags.out_path);
  return kExitOk;
}

int cmd_tighten(const CommonFlags& flags, const std::string& in_path) {
  std::istringstream in(read_file(in_path));
  std::string line;
  if (!std::getline(in, line))
    throw graddp::ParseError("response file is empty: " + in_path);
  const graddp::Response response = parse_response_record(line);
  graddp::RandomSource rng(flags.seed);
  const graddp::Response tightened = graddp::tighten_for_third_party(
      response, graddp::PrivacyLevel(flags.eps), flags.alpha, rng);
  emit(response_record(tightened).dump() + "\n", flags.out_path);
  return kExitOk;
}

int cmd_audit(const std::string& suite, std::uint64_t seed, std::size_t n,
              const std::string& out_path) {
  graddp::audit::SuiteConfig config{seed, n};
  const std::vector<graddp::audit::AuditReport> reports =
      graddp::audit::run_suite(suite, config);
  std::string stream;
  bool all_passed = true;
  for (const auto& report : reports) {
    stream += graddp::audit::to_json_line(report) + "\n";
    all_passed = all_passed && report.passed;
  }
  if (!out_path.empty()) write_file(out_path, stream);
  std::cout << graddp::audit::format_table(reports);
  std::cout << (all_passed ? "all audits passed\n" : "AUDIT FAILURES\n");
  return all_passed ? kExitOk : kExitAuditFailure;
}

int cmd_scenario(const CommonFlags& flags, const std::string& graph_path,
                 std::size_t owner, const std::string& data_csv,
                 const std::string& subset_csv) {
  graddp::SocialGraph graph;
  graph.edges = graddp::parse_edge_list(read_file(graph_path));
  for (const auto& [u, v] : graph.edges)
    graph.node_count = std::max({graph.node_count, u + 1, v + 1});
  graph.node_count = std::max(graph.node_count, owner + 1);
  graph.owner = owner;
  graph.data = graddp::PrivateVector(parse_csv_doubles(data_csv));

  const std::vector<std::size_t> subset =
      subset_csv.empty() ? std::vector<std::size_t>{}
                         : parse_csv_indices(subset_csv);
  const graddp::ScenarioResult result =
      graddp::run_social_scenario(graph, flags.alpha, flags.seed, subset);

  std::string stream;
  for (const auto& node : result.per_node) {
    nlohmann::ordered_json rec;
    rec["kind"] = "node_release";
    rec["node"] = node.node;
    if (node.distance) {
      rec["distance"] = *node.distance;
      rec["eps"] = *node.eps;
      rec["eps_hex"] = graddp::to_hex_float(*node.eps);
      auto values = nlohmann::ordered_json::array();
      auto values_hex = nlohmann::ordered_json::array();
      for (double v : node.values) {
        values.push_back(v);
        values_hex.push_back(graddp::to_hex_float(v));
      }
      rec["values"] = std::move(values);
      rec["values_hex"] = std::move(values_hex);
    } else {
      rec["reachable"] = false;
    }
    stream += rec.dump() + "\n";
  }
  nlohmann::ordered_json summary;
  summary["kind"] = "scenario_summary";
  summary["owner"] = graph.owner;
  summary["collusion_bound"] = result.collusion_bound;
  summary["collusion_bound_hex"] =
      graddp::to_hex_float(result.collusion_bound);
  if (!subset.empty()) {
    summary["subset"] = subset;
    if (result.subset_bound) {
      summary["subset_bound"] = *result.subset_bound;
      summary["subset_bound_hex"] = graddp::to_hex_float(*result.subset_bound);
    }
  }
  stream += summary.dump() + "\n";
  emit(stream, flags.out_path);
  return kExitOk;
}

int cmd_inspect(const std::string& state_path) {
  const graddp::MechanismState state =
      graddp::MechanismState::deserialize(read_file(state_path));
  std::cout << "mechanism state: n=" << state.size()
            << " alpha=" << state.alpha() << " seed=" << state.seed() << "\n";
  if (state.released_levels().empty()) {
    std::cout << "no levels released yet\n";
    return kExitOk;
  }
  std::cout << "released levels (dp / lipschitz):\n";
  for (double e : state.released_levels())
    std::cout << "  " << e << " / " << e / state.alpha() << "  ("
              << graddp::to_hex_float(e) << ")\n";
  std::cout << "chain points per coordinate: "
            << state.chains().front().points().size() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradual release of differentially private data"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string data_csv, in_path, graph_path, subset_csv, suite;
  std::size_t owner = 0;
  std::uint64_t audit_seed = 1;
  std::size_t audit_n = 1000000;
  bool release_init = false;

  CLI::App* init = app.add_subcommand("init", "create a mechanism state file");
  init->add_option("--state", flags.state_path, "state file path")->required();
  init->add_option("--data", data_csv, "comma-separated private vector")
      ->required();
  init->add_option("--alpha", flags.alpha, "adjacency scale (default 1)");
  init->add_option("--seed", flags.seed, "generator seed");

  CLI::App* release =
      app.add_subcommand("release", "release a response at a privacy level");
  release->add_option("--state", flags.state_path, "state file path")
      ->required();
  release->add_option("--eps", flags.eps, "differential-privacy level")
      ->required();
  release->add_option("--out", flags.out_path,
                      "response file (stdout if omitted)");
  release->add_flag("--init", release_init,
                    "create the state file if missing (needs --data)");
  release->add_option("--data", data_csv, "private vector for --init");
  release->add_option("--alpha", flags.alpha, "adjacency scale for --init");
  release->add_option("--seed", flags.seed, "generator seed for --init");

  CLI::App* tighten = app.add_subcommand(
      "tighten", "derive a more private response from a response file");
  tighten->add_option("--in", in_path, "input response file")->required();
  tighten->add_option("--eps", flags.eps, "target dp level (lower)")
      ->required();
  tighten->add_option("--alpha", flags.alpha, "adjacency scale (default 1)");
  tighten->add_option("--seed", flags.seed, "generator seed");
  tighten->add_option("--out", flags.out_path,
                      "output response file (stdout if omitted)");

  CLI::App* audit = app.add_subcommand("audit", "run a verification suite");
  audit
      ->add_option("suite", suite,
                   "one of: marginals, atoms, correlation, mse, markov, "
                   "privacy, tighten, all")
      ->required();
  audit->add_option("--seed", audit_seed, "suite seed (default 1)");
  audit->add_option("--n", audit_n, "samples per audit (default 1000000)");
  audit->add_option("--out", flags.out_path, "report stream file (jsonl)");

  CLI::App* scenario = app.add_subcommand(
      "scenario-social",
      "coupled release across a social graph at eps = 1/distance");
  scenario->add_option("--graph", graph_path, "edge list file")->required();
  scenario->add_option("--owner", owner, "owner node id")->required();
  scenario->add_option("--data", data_csv, "owner's private vector")
      ->required();
  scenario->add_option("--alpha", flags.alpha, "adjacency scale (default 1)");
  scenario->add_option("--seed", flags.seed, "generator seed");
  scenario->add_option("--out", flags.out_path,
                       "output file (stdout if omitted)");
  scenario->add_option("--subset", subset_csv,
                       "comma-separated node ids for the collusion bound");

  CLI::App* inspect =
      app.add_subcommand("inspect", "summarize a mechanism state file");
  inspect->add_option("--state", flags.state_path, "state file path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (init->parsed()) return cmd_init(flags, data_csv);
    if (release->parsed()) return cmd_release(flags, release_init, data_csv);
    if (tighten->parsed()) return cmd_tighten(flags, in_path);
    if (audit->parsed())
      return cmd_audit(suite, audit_seed, audit_n, flags.out_path);
    if (scenario->parsed())
      return cmd_scenario(flags, graph_path, owner, data_csv, subset_csv);
    if (inspect->parsed()) return cmd_inspect(flags.state_path);
  } catch (const graddp::BridgeUnsupportedError& e) {
    std::cerr << "bridge-unsupported: " << e.what() << "\n";
    return kExitBridge;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
