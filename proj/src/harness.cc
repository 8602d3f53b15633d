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

#include "cdnroute/harness.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "cdnroute/csv.h"
#include "cdnroute/errors.h"
#include "cdnroute/io.h"
#include "cdnroute/pricing.h"
#include "json.hpp"

namespace cdnroute {
namespace {

using nlohmann::json;

constexpr const char* kMeanDelayNote =
    "mean_delay_ms averages accepted demands only; modes or solvers that "
    "accept different demand sets are not directly comparable";

std::string OptionalField(const std::optional<double>& v) {
  return v ? csv::FormatDouble(*v) : std::string();
}

json OptionalJson(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> OptionalFromJson(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json ToJson(const EpochReport& r) {
  json outcomes = json::array();
  for (const DemandReport& d : r.outcomes) {
    outcomes.push_back({{"demand_id", d.demand_id},
                        {"accepted", d.accepted},
                        {"nodes", d.nodes},
                        {"delay_ms", d.delay_ms},
                        {"jitter_ms", d.jitter_ms},
                        {"success_prob", d.success_prob},
                        {"throughput_mbps", OptionalJson(d.throughput_mbps)},
                        {"loss_free", d.loss_free}});
  }
  return json{{"epoch_ts", r.timestamp},
              {"mode", RoutingModeName(r.mode)},
              {"n_demands", r.n_demands},
              {"n_accepted", r.n_accepted},
              {"acceptance_pct", r.acceptance_pct},
              {"runtime_ms", r.runtime_ms},
              {"mean_delay_ms", OptionalJson(r.mean_delay_ms)},
              {"objective", r.objective},
              {"gap_pct", OptionalJson(r.gap_pct)},
              {"exact_objective", OptionalJson(r.exact_objective)},
              {"certified", r.certified},
              {"error", r.error},
              {"outcomes", std::move(outcomes)}};
}

EpochReport FromJson(const json& j) {
  EpochReport r;
  r.timestamp = j.at("epoch_ts").get<int64_t>();
  r.mode = ParseRoutingMode(j.at("mode").get<std::string>());
  r.n_demands = j.at("n_demands").get<int>();
  r.n_accepted = j.at("n_accepted").get<int>();
  r.acceptance_pct = j.at("acceptance_pct").get<double>();
  r.runtime_ms = j.at("runtime_ms").get<double>();
  r.mean_delay_ms = OptionalFromJson(j.at("mean_delay_ms"));
  r.objective = j.at("objective").get<double>();
  r.gap_pct = OptionalFromJson(j.at("gap_pct"));
  r.exact_objective = OptionalFromJson(j.at("exact_objective"));
  r.certified = j.at("certified").get<bool>();
  r.error = j.at("error").get<std::string>();
  for (const json& o : j.at("outcomes")) {
    DemandReport d;
    d.demand_id = o.at("demand_id").get<int>();
    d.accepted = o.at("accepted").get<bool>();
    d.nodes = o.at("nodes").get<std::vector<NodeId>>();
    d.delay_ms = o.at("delay_ms").get<double>();
    d.jitter_ms = o.at("jitter_ms").get<double>();
    d.success_prob = o.at("success_prob").get<double>();
    d.throughput_mbps = OptionalFromJson(o.at("throughput_mbps"));
    d.loss_free = o.at("loss_free").get<bool>();
    r.outcomes.push_back(std::move(d));
  }
  return r;
}

// Rows keyed by `key`, one column per mode in first-seen order.
template <typename Key>
void WriteSeries(const std::filesystem::path& file, const char* key_name,
                 const std::vector<RoutingMode>& modes,
                 const std::map<Key, std::map<RoutingMode, std::string>>& rows) {
  std::ofstream out = OpenOutput(file);
  out << key_name;
  for (RoutingMode m : modes) out << ',' << RoutingModeName(m);
  out << '\n';
  for (const auto& [key, values] : rows) {
    out << key;
    for (RoutingMode m : modes) {
      auto it = values.find(m);
      out << ',' << (it == values.end() ? std::string() : it->second);
    }
    out << '\n';
  }
  if (!out) throw FormatError("write failed for " + file.string());
}

}  // namespace

ThroughputEstimate EstimateThroughput(const Path& path,
                                      const ThroughputModel& model) {
  const double loss = 1.0 - path.success_prob();
  const double rtt_s = model.rtt_factor * path.total_delay() / 1000.0;
  if (loss <= 0 || rtt_s <= 0) return {model.loss_free_cap_mbps, true};
  const double bits_per_s =
      model.mss_bytes * 8.0 * model.constant / (rtt_s * std::sqrt(loss));
  return {bits_per_s / 1e6, false};
}

std::vector<Path> DirectModeCandidates(const OverlayGraph& graph,
                                       const Demand& demand) {
  return DirectCandidates(graph, demand);
}

EpochReport MakeEpochReport(int64_t timestamp, RoutingMode mode,
                            std::span<const Demand> demands,
                            const RoutingSolution& solution,
                            const HarnessConfig& config) {
  EpochReport report;
  report.timestamp = timestamp;
  report.mode = mode;
  report.n_demands = static_cast<int>(demands.size());
  report.objective = solution.objective;
  report.certified = solution.certified;
  report.runtime_ms = config.record_runtime ? solution.runtime_ms : 0.0;
  double delay_sum = 0;
  for (size_t k = 0; k < demands.size(); ++k) {
    DemandReport d;
    d.demand_id = demands[k].id;
    if (const auto& route = solution.routes[k]) {
      d.accepted = true;
      d.nodes.assign(route->nodes().begin(), route->nodes().end());
      d.delay_ms = route->total_delay();
      d.jitter_ms = route->total_jitter();
      d.success_prob = route->success_prob();
      if (config.throughput) {
        ThroughputEstimate t = EstimateThroughput(*route, config.throughput_model);
        d.throughput_mbps = t.mbps;
        d.loss_free = t.loss_free;
      }
      ++report.n_accepted;
      delay_sum += d.delay_ms;
    }
    report.outcomes.push_back(std::move(d));
  }
  report.acceptance_pct =
      demands.empty() ? 0.0 : 100.0 * report.n_accepted / report.n_demands;
  if (report.n_accepted > 0) report.mean_delay_ms = delay_sum / report.n_accepted;
  return report;
}

EpochReport SolveEpoch(const OverlayGraph& graph,
                       std::span<const Demand> demands, int64_t timestamp,
                       RoutingMode mode, const HarnessConfig& config) {
  SolverConfig solver_config = config.solver;
  solver_config.mode = mode;
  try {
    if (demands.empty()) {
      return MakeEpochReport(timestamp, mode, demands,
                             Solve(graph, demands, solver_config), config);
    }
    const OverlayGraph augmented =
        graph.augmented() ? graph : AugmentClique(graph, demands);
    EpochReport report = MakeEpochReport(
        timestamp, mode, demands, Solve(augmented, demands, solver_config),
        config);
    if (config.oracle) {
      ExactSolution exact = SolveExact(
          augmented, demands, BuildCandidates(augmented, demands, mode),
          config.exact_limits);
      report.exact_objective = exact.routing.objective;
      const double best = exact.routing.objective;
      if (best > 0) {
        report.gap_pct = 100.0 * (report.objective - best) / best;
      } else if (report.objective == best) {
        report.gap_pct = 0.0;
      }
    }
    return report;
  } catch (const SolverError& e) {
    EpochReport report;
    report.timestamp = timestamp;
    report.mode = mode;
    report.n_demands = static_cast<int>(demands.size());
    report.error = e.what();
    return report;
  }
}

std::vector<EpochReport> RunTimeseries(const Trace& trace,
                                       std::span<const Demand> demands,
                                       const HarnessConfig& config) {
  for (const Demand& d : demands) d.Validate(trace.num_nodes);
  std::vector<EpochReport> reports;
  for (size_t e = 0; e < trace.epochs.size(); ++e) {
    const OverlayGraph graph = GraphForEpoch(trace, e);
    for (RoutingMode mode : config.modes) {
      reports.push_back(
          SolveEpoch(graph, demands, trace.epochs[e].timestamp, mode, config));
    }
  }
  return reports;
}

std::vector<SweepPoint> RunSweep(const SyntheticParams& base,
                                 std::span<const int> demand_counts,
                                 const HarnessConfig& config) {
  std::vector<SweepPoint> points;
  for (int count : demand_counts) {
    SyntheticParams params = base;
    params.num_demands = count;
    const OverlayGraph graph = GenerateTopology(params);
    const std::vector<Demand> demands = GenerateDemands(params, graph);
    for (RoutingMode mode : config.modes) {
      EpochReport r = SolveEpoch(graph, demands, 0, mode, config);
      if (!r.error.empty()) throw SolverError(r.error);
      points.push_back(
          SweepPoint{count, mode, r.acceptance_pct, r.runtime_ms, r.gap_pct});
    }
  }
  return points;
}

void WriteReportsCsv(std::span<const EpochReport> reports, std::ostream& out) {
  out << "epoch_ts,mode,n_demands,n_accepted,acceptance_pct,runtime_ms,"
         "mean_delay_ms,objective,gap_pct\n";
  for (const EpochReport& r : reports) {
    out << r.timestamp << ',' << RoutingModeName(r.mode) << ',' << r.n_demands
        << ',' << r.n_accepted << ',' << csv::FormatDouble(r.acceptance_pct)
        << ',' << csv::FormatDouble(r.runtime_ms) << ','
        << OptionalField(r.mean_delay_ms) << ','
        << csv::FormatDouble(r.objective) << ',' << OptionalField(r.gap_pct)
        << '\n';
  }
}

void WriteReportsJson(std::span<const EpochReport> reports, std::ostream& out) {
  json doc;
  doc["metadata"] = {{"mean_delay_scope", kMeanDelayNote}};
  doc["reports"] = json::array();
  for (const EpochReport& r : reports) doc["reports"].push_back(ToJson(r));
  out << doc.dump(2) << '\n';
}

std::vector<EpochReport> ReadReportsJson(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
    std::vector<EpochReport> reports;
    for (const json& r : doc.at("reports")) reports.push_back(FromJson(r));
    return reports;
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad report JSON: ") + e.what());
  } catch (const InvalidInputError& e) {
    throw FormatError(std::string("bad report JSON: ") + e.what());
  }
}

void WriteTimeSeries(std::span<const EpochReport> reports,
                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<RoutingMode> modes;
  std::map<int64_t, std::map<RoutingMode, std::string>> acceptance, runtime, delay;
  for (const EpochReport& r : reports) {
    if (std::find(modes.begin(), modes.end(), r.mode) == modes.end()) {
      modes.push_back(r.mode);
    }
    acceptance[r.timestamp][r.mode] = csv::FormatDouble(r.acceptance_pct);
    runtime[r.timestamp][r.mode] = csv::FormatDouble(r.runtime_ms);
    delay[r.timestamp][r.mode] = OptionalField(r.mean_delay_ms);
  }
  WriteSeries(dir / "acceptance_vs_time.csv", "epoch_ts", modes, acceptance);
  WriteSeries(dir / "runtime_vs_time.csv", "epoch_ts", modes, runtime);
  WriteSeries(dir / "delay_vs_time.csv", "epoch_ts", modes, delay);
}

void WriteSweepSeries(std::span<const SweepPoint> points,
                      const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<RoutingMode> modes;
  std::map<int, std::map<RoutingMode, std::string>> acceptance, runtime;
  for (const SweepPoint& p : points) {
    if (std::find(modes.begin(), modes.end(), p.mode) == modes.end()) {
      modes.push_back(p.mode);
    }
    acceptance[p.num_demands][p.mode] = csv::FormatDouble(p.acceptance_pct);
    runtime[p.num_demands][p.mode] = csv::FormatDouble(p.runtime_ms);
  }
  WriteSeries(dir / "acceptance_vs_demands.csv", "num_demands", modes, acceptance);
  WriteSeries(dir / "runtime_vs_demands.csv", "num_demands", modes, runtime);
}

}  // namespace cdnroute
