// Copyright 2026 The cdnroute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end: solve one snapshot, replay a trace, run a
// synthetic sweep, generate scenarios or measure the gap to the exact search.
//
// Exit codes: 0 success, 2 input or format error, 3 solver failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdnroute/csv.h"
#include "cdnroute/errors.h"
#include "cdnroute/exact.h"
#include "cdnroute/harness.h"
#include "cdnroute/io.h"
#include "cdnroute/scenario.h"
#include "cdnroute/solver.h"

namespace cdnroute {
namespace {

constexpr int kInputError = 2;
constexpr int kSolverError = 3;

struct CommonOptions {
  std::string mode = "overlay";
  uint64_t seed = 1;
  bool oracle = false;
  bool throughput = false;
  bool no_timing = false;
  std::string out;
  std::string format = "csv";
  double exact_time_limit_s = 300;
  int64_t exact_max_nodes = 1'000'000;
};

void AddCommon(CLI::App* app, CommonOptions& o) {
  app->add_option("--mode", o.mode, "overlay, direct or both")
      ->check(CLI::IsMember({"overlay", "direct", "both"}));
  app->add_option("--seed", o.seed, "rounding seed");
  app->add_flag("--oracle", o.oracle, "also run the exact search and report gaps");
  app->add_flag("--throughput", o.throughput,
                "estimate per-demand TCP throughput");
  app->add_flag("--no-timing", o.no_timing,
                "write runtime_ms as 0 for byte-reproducible reports");
  app->add_option("--out", o.out, "report file (default: stdout)");
  app->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--exact-time-limit", o.exact_time_limit_s,
                  "seconds per exact search");
  app->add_option("--exact-max-nodes", o.exact_max_nodes,
                  "branch-and-bound node limit");
}

HarnessConfig MakeConfig(const CommonOptions& o) {
  HarnessConfig config;
  config.solver.seed = o.seed;
  if (o.mode == "both") {
    config.modes = {RoutingMode::kOverlay, RoutingMode::kDirect};
  } else {
    config.modes = {ParseRoutingMode(o.mode)};
  }
  config.oracle = o.oracle;
  config.throughput = o.throughput;
  config.record_runtime = !o.no_timing;
  config.exact_limits.time_limit_s = o.exact_time_limit_s;
  config.exact_limits.max_nodes = o.exact_max_nodes;
  return config;
}

std::vector<NodeLimit> LoadLimits(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in = OpenInput(path);
  return ReadNodeLimits(in);
}

std::vector<Demand> LoadDemands(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return ReadDemands(in);
}

OverlayGraph LoadGraph(const std::string& graph, const std::string& limits) {
  std::ifstream in = OpenInput(graph);
  return ReadGraph(in, LoadLimits(limits));
}

// Writes to --out or stdout.
template <typename Fn>
void Emit(const std::string& out, Fn&& write) {
  if (out.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file = OpenOutput(out);
  write(file);
  if (!file) throw FormatError("write failed for " + out);
}

int EmitReports(const std::vector<EpochReport>& reports,
                const CommonOptions& o) {
  Emit(o.out, [&](std::ostream& s) {
    if (o.format == "json") {
      WriteReportsJson(reports, s);
    } else {
      WriteReportsCsv(reports, s);
    }
  });
  int status = 0;
  for (const EpochReport& r : reports) {
    if (!r.error.empty()) {
      std::cerr << "epoch " << r.timestamp << " (" << RoutingModeName(r.mode)
                << "): " << r.error << '\n';
      status = kSolverError;
    }
  }
  return status;
}

std::filesystem::path LpPathFor(const std::string& base, RoutingMode mode,
                                bool several) {
  std::filesystem::path path(base);
  if (!several) return path;
  return path.parent_path() / (path.stem().string() + "." +
                               RoutingModeName(mode) + path.extension().string());
}

void DumpLp(const OverlayGraph& graph, std::span<const Demand> demands,
            const HarnessConfig& config, const std::string& base) {
  if (demands.empty()) return;
  const OverlayGraph augmented = AugmentClique(graph, demands);
  for (RoutingMode mode : config.modes) {
    SolverConfig solver = config.solver;
    solver.mode = mode;
    const ColumnGenerationResult cg = ColumnGeneration(augmented, demands, solver);
    std::ofstream out = OpenOutput(LpPathFor(base, mode, config.modes.size() > 1));
    cg.rmp.WriteLp(out);
  }
}

struct Files {
  std::string graph;
  std::string node_limits;
  std::string demands;
  std::string trace;
  std::string dump_lp;
  std::string series_dir;
  std::string params;
  std::string out_dir;
  std::string counts = "90,110,130,150,170,190,210";
  std::string kind;
  int epochs = 20;
};

std::vector<int> ParseCounts(const std::string& text) {
  std::vector<int> counts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      size_t used = 0;
      const int value = std::stoi(item, &used);
      if (used != item.size() || value <= 0) throw std::invalid_argument(item);
      counts.push_back(value);
    } catch (const std::exception&) {
      throw InvalidInputError("bad demand count '" + item + "'");
    }
  }
  if (counts.empty()) throw InvalidInputError("no demand counts given");
  return counts;
}

SyntheticParams LoadParams(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in = OpenInput(path);
  return LoadSyntheticParams(in);
}

int RunSolve(const Files& f, const CommonOptions& o) {
  const OverlayGraph graph = LoadGraph(f.graph, f.node_limits);
  const std::vector<Demand> demands = LoadDemands(f.demands);
  for (const Demand& d : demands) d.Validate(graph.num_nodes());
  const HarnessConfig config = MakeConfig(o);
  std::vector<EpochReport> reports;
  for (RoutingMode mode : config.modes) {
    reports.push_back(SolveEpoch(graph, demands, 0, mode, config));
  }
  if (!f.dump_lp.empty()) DumpLp(graph, demands, config, f.dump_lp);
  return EmitReports(reports, o);
}

int RunReplay(const Files& f, const CommonOptions& o) {
  std::ifstream metrics = OpenInput(f.trace);
  std::istringstream no_limits;
  std::ifstream limits_file;
  if (!f.node_limits.empty()) limits_file = OpenInput(f.node_limits);
  const Trace trace = f.node_limits.empty() ? LoadTrace(metrics, no_limits)
                                            : LoadTrace(metrics, limits_file);
  const std::vector<Demand> demands = LoadDemands(f.demands);
  for (const Demand& d : demands) d.Validate(trace.num_nodes);
  const HarnessConfig config = MakeConfig(o);
  const std::vector<EpochReport> reports = RunTimeseries(trace, demands, config);
  if (!f.series_dir.empty()) WriteTimeSeries(reports, f.series_dir);
  return EmitReports(reports, o);
}

int RunSweepCommand(const Files& f, const CommonOptions& o) {
  SyntheticParams params = LoadParams(f.params);
  params.seed = o.seed;
  const std::vector<int> counts = ParseCounts(f.counts);
  const HarnessConfig config = MakeConfig(o);
  const std::vector<SweepPoint> points = RunSweep(params, counts, config);
  Emit(o.out, [&](std::ostream& s) {
    s << "num_demands,mode,acceptance_pct,runtime_ms,gap_pct\n";
    for (const SweepPoint& p : points) {
      s << p.num_demands << ',' << RoutingModeName(p.mode) << ','
        << csv::FormatDouble(p.acceptance_pct) << ','
        << csv::FormatDouble(p.runtime_ms) << ','
        << (p.gap_pct ? csv::FormatDouble(*p.gap_pct) : "") << '\n';
    }
  });
  if (!f.series_dir.empty()) WriteSweepSeries(points, f.series_dir);
  return 0;
}

int RunGenerate(const Files& f, uint64_t seed) {
  const std::filesystem::path dir(f.out_dir);
  std::filesystem::create_directories(dir);
  if (f.kind == "telco") {
    const TelcoProfile profile;
    const Trace trace = GenerateTelcoTrace(profile, f.epochs, seed);
    std::ofstream metrics = OpenOutput(dir / "metrics.csv");
    SaveTrace(trace, metrics);
    std::ofstream limits = OpenOutput(dir / "node_limits.csv");
    SaveTraceNodeLimits(trace, limits);
    std::ofstream demands = OpenOutput(dir / "demands.csv");
    WriteDemands(GenerateTelcoDemands(profile, seed), demands);
    return 0;
  }
  SyntheticParams params = LoadParams(f.params);
  params.seed = seed;
  const OverlayGraph graph = GenerateTopology(params);
  std::ofstream edges = OpenOutput(dir / "graph.csv");
  WriteGraph(graph, edges);
  std::ofstream limits = OpenOutput(dir / "node_limits.csv");
  WriteNodeLimits(graph, limits);
  std::ofstream demands = OpenOutput(dir / "demands.csv");
  WriteDemands(GenerateDemands(params, graph), demands);
  std::ofstream saved = OpenOutput(dir / "params.conf");
  SaveSyntheticParams(params, saved);
  return 0;
}

int RunExactGap(const Files& f, const CommonOptions& o) {
  const OverlayGraph graph = LoadGraph(f.graph, f.node_limits);
  const std::vector<Demand> demands = LoadDemands(f.demands);
  for (const Demand& d : demands) d.Validate(graph.num_nodes());
  CommonOptions with_oracle = o;
  with_oracle.oracle = true;
  const HarnessConfig config = MakeConfig(with_oracle);
  std::vector<EpochReport> reports;
  for (RoutingMode mode : config.modes) {
    reports.push_back(SolveEpoch(graph, demands, 0, mode, config));
  }
  Emit(o.out, [&](std::ostream& s) {
    s << "mode,n_demands,cg_accepted,cg_objective,exact_objective,gap_pct\n";
    for (const EpochReport& r : reports) {
      s << RoutingModeName(r.mode) << ',' << r.n_demands << ',' << r.n_accepted
        << ',' << csv::FormatDouble(r.objective) << ','
        << (r.exact_objective ? csv::FormatDouble(*r.exact_objective) : "")
        << ',' << (r.gap_pct ? csv::FormatDouble(*r.gap_pct) : "") << '\n';
    }
  });
  int status = 0;
  for (const EpochReport& r : reports) {
    if (!r.error.empty()) {
      std::cerr << RoutingModeName(r.mode) << ": " << r.error << '\n';
      status = kSolverError;
    }
  }
  return status;
}

int Main(int argc, char** argv) {
  CLI::App app{"QoS-constrained overlay routing for CDN demands"};
  app.require_subcommand(1);
  Files files;
  CommonOptions solve_opts, replay_opts, sweep_opts, gap_opts;
  uint64_t generate_seed = 1;

  CLI::App* solve = app.add_subcommand("solve", "route demands on one graph");
  solve->add_option("--graph", files.graph, "edge CSV")->required();
  solve->add_option("--node-limits", files.node_limits, "node limit CSV");
  solve->add_option("--demands", files.demands, "demand CSV")->required();
  solve->add_option("--dump-lp", files.dump_lp,
                    "write the final master LP in CPLEX LP format");
  AddCommon(solve, solve_opts);

  CLI::App* replay = app.add_subcommand("replay", "solve every epoch of a trace");
  replay->add_option("--trace", files.trace, "link metric trace CSV")->required();
  replay->add_option("--node-limits", files.node_limits, "node limit CSV");
  replay->add_option("--demands", files.demands, "demand CSV")->required();
  replay->add_option("--series-dir", files.series_dir,
                     "also write per-figure series CSVs here");
  AddCommon(replay, replay_opts);

  CLI::App* sweep =
      app.add_subcommand("sweep", "synthetic topology over several demand counts");
  sweep->add_option("--params", files.params, "key = value parameter file");
  sweep->add_option("--counts", files.counts, "comma-separated demand counts");
  sweep->add_option("--series-dir", files.series_dir,
                    "also write per-figure series CSVs here");
  AddCommon(sweep, sweep_opts);

  CLI::App* generate = app.add_subcommand("generate", "write a scenario");
  generate->add_option("kind", files.kind, "telco or synthetic")
      ->required()
      ->check(CLI::IsMember({"telco", "synthetic"}));
  generate->add_option("--out-dir", files.out_dir, "output directory")->required();
  generate->add_option("--epochs", files.epochs, "telco epochs")
      ->check(CLI::PositiveNumber);
  generate->add_option("--params", files.params, "synthetic parameter file");
  generate->add_option("--seed", generate_seed, "generator seed");

  CLI::App* gap = app.add_subcommand(
      "exact-gap", "compare the heuristic with the exact search on one graph");
  gap->add_option("--graph", files.graph, "edge CSV")->required();
  gap->add_option("--node-limits", files.node_limits, "node limit CSV");
  gap->add_option("--demands", files.demands, "demand CSV")->required();
  AddCommon(gap, gap_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*solve) return RunSolve(files, solve_opts);
    if (*replay) return RunReplay(files, replay_opts);
    if (*sweep) return RunSweepCommand(files, sweep_opts);
    if (*generate) return RunGenerate(files, generate_seed);
    if (*gap) return RunExactGap(files, gap_opts);
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvalidInputError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInputError;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolverError;
  } catch (const ContractViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kSolverError;
  }
  return 0;
}

}  // namespace
}  // namespace cdnroute

int main(int argc, char** argv) { return cdnroute::Main(argc, argv); }
