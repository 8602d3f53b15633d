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

// Experiment runner: solves epochs of a trace (or one static graph) in
// overlay and/or direct mode and reports acceptance, runtime, delay,
// optimality gap and estimated TCP throughput.

#ifndef CDNROUTE_HARNESS_H_
#define CDNROUTE_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cdnroute/exact.h"
#include "cdnroute/model.h"
#include "cdnroute/scenario.h"
#include "cdnroute/solver.h"

namespace cdnroute {

// Mathis et al. steady-state TCP model: MSS * C / (RTT * sqrt(p)).
struct ThroughputModel {
  double mss_bytes = 1460;
  double constant = 1.0;
  // RTT = rtt_factor * one-way path delay.
  double rtt_factor = 2.0;
  // Reported when the path loses nothing and the model diverges.
  double loss_free_cap_mbps = 10'000;
};

struct ThroughputEstimate {
  double mbps = 0;
  bool loss_free = false;
};

ThroughputEstimate EstimateThroughput(const Path& path,
                                      const ThroughputModel& model = {});

// Candidates restricted to the direct edge; an alias of DirectCandidates.
std::vector<Path> DirectModeCandidates(const OverlayGraph& graph,
                                       const Demand& demand);

struct DemandReport {
  int demand_id = 0;
  bool accepted = false;
  // Source, optional relay, destination of the accepted route.
  std::vector<NodeId> nodes;
  double delay_ms = 0;
  double jitter_ms = 0;
  double success_prob = 0;
  std::optional<double> throughput_mbps;
  bool loss_free = false;

  bool operator==(const DemandReport&) const = default;
};

struct EpochReport {
  int64_t timestamp = 0;
  RoutingMode mode = RoutingMode::kOverlay;
  int n_demands = 0;
  int n_accepted = 0;
  // 100 * n_accepted / n_demands.
  double acceptance_pct = 0;
  double runtime_ms = 0;
  // Mean delay over accepted demands only; empty when none is accepted.
  std::optional<double> mean_delay_ms;
  double objective = 0;
  // 100 * (objective - exact) / exact, when the exact oracle ran.
  std::optional<double> gap_pct;
  std::optional<double> exact_objective;
  bool certified = false;
  // Set when the solve failed; the counts are then zero.
  std::string error;
  std::vector<DemandReport> outcomes;

  bool operator==(const EpochReport&) const = default;
};

struct HarnessConfig {
  SolverConfig solver;
  std::vector<RoutingMode> modes = {RoutingMode::kOverlay};
  // Also run the exact oracle and fill gap_pct.
  bool oracle = false;
  ExactLimits exact_limits;
  bool throughput = false;
  ThroughputModel throughput_model;
  // When false runtime_ms is written as 0 so reports are byte-reproducible.
  bool record_runtime = true;
};

// Builds the report from a routing solution.
EpochReport MakeEpochReport(int64_t timestamp, RoutingMode mode,
                            std::span<const Demand> demands,
                            const RoutingSolution& solution,
                            const HarnessConfig& config);

// Solves one snapshot in `mode`. Solver failures are caught and recorded in
// EpochReport::error.
EpochReport SolveEpoch(const OverlayGraph& graph,
                       std::span<const Demand> demands, int64_t timestamp,
                       RoutingMode mode, const HarnessConfig& config);

// Every epoch x every configured mode, epoch-major. Demands are re-allocated
// from scratch in every epoch.
std::vector<EpochReport> RunTimeseries(const Trace& trace,
                                       std::span<const Demand> demands,
                                       const HarnessConfig& config);

// One acceptance/runtime point of a synthetic sweep over demand counts.
struct SweepPoint {
  int num_demands = 0;
  RoutingMode mode = RoutingMode::kOverlay;
  double acceptance_pct = 0;
  double runtime_ms = 0;
  std::optional<double> gap_pct;
};

// For each count: generate a topology from `base` and that many demands,
// then solve in every configured mode.
std::vector<SweepPoint> RunSweep(const SyntheticParams& base,
                                 std::span<const int> demand_counts,
                                 const HarnessConfig& config);

// CSV header:
// epoch_ts,mode,n_demands,n_accepted,acceptance_pct,runtime_ms,mean_delay_ms,
// objective,gap_pct
void WriteReportsCsv(std::span<const EpochReport> reports, std::ostream& out);
void WriteReportsJson(std::span<const EpochReport> reports, std::ostream& out);
std::vector<EpochReport> ReadReportsJson(std::istream& in);

// acceptance_vs_time.csv, runtime_vs_time.csv and delay_vs_time.csv, one
// column per mode.
void WriteTimeSeries(std::span<const EpochReport> reports,
                     const std::filesystem::path& dir);
// acceptance_vs_demands.csv and runtime_vs_demands.csv, one column per mode.
void WriteSweepSeries(std::span<const SweepPoint> points,
                      const std::filesystem::path& dir);

}  // namespace cdnroute

#endif  // CDNROUTE_HARNESS_H_
