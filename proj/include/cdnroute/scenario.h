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

// Solver inputs: link-metric traces replayed epoch by epoch, synthetic
// preferential-attachment topologies and random demand sets.

#ifndef CDNROUTE_SCENARIO_H_
#define CDNROUTE_SCENARIO_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "cdnroute/model.h"

namespace cdnroute {

// One snapshot of every monitored link.
struct TraceEpoch {
  int64_t timestamp = 0;
  std::vector<Edge> edges;

  bool operator==(const TraceEpoch&) const = default;
};

struct Trace {
  int num_nodes = 0;
  std::vector<TraceEpoch> epochs;
  // Per node; kInfinity when the node has no limit.
  std::vector<double> node_limits;

  bool operator==(const Trace&) const = default;
};

// Metrics rows: epoch_ts,src,dst,delay_ms,jitter_ms,capacity_mbps,success_prob
// with the rows of an epoch contiguous and timestamps strictly increasing.
// Every epoch must list the same directed edge set. `node_limits` uses the
// node,processing_mbps format. Throws FormatError with the line number.
Trace LoadTrace(std::istream& metrics, std::istream& node_limits);
// Writes the metrics file; doubles round-trip exactly.
void SaveTrace(const Trace& trace, std::ostream& metrics);
void SaveTraceNodeLimits(const Trace& trace, std::ostream& out);

OverlayGraph GraphForEpoch(const Trace& trace, size_t epoch);

// Ranges are closed intervals [min, max]. Loss values are probabilities of
// losing a packet; they are turned into success probabilities (1 - loss).
struct SyntheticParams {
  int num_nodes = 50;
  // Directed edges; each attachment yields two.
  int num_links = 450;
  double capacity_min_mbps = 300;
  double capacity_max_mbps = 500;
  double delay_min_ms = 1;
  double delay_max_ms = 500;
  double jitter_min_ms = 0;
  double jitter_max_ms = 50;
  double loss_min = 0;
  double loss_max = 0.2;
  double node_limit_mbps = 400;
  int num_demands = 90;
  double rate_mean_mbps = 50;
  double max_jitter_min_ms = 25;
  double max_jitter_max_ms = 200;
  double max_loss_min = 0.1;
  double max_loss_max = 0.8;
  uint64_t seed = 1;

  // Throws InvalidInputError for empty ranges or nonpositive counts.
  void Validate() const;
  bool operator==(const SyntheticParams&) const = default;
};

// Flat "key = value" lines named after the fields above; '#' starts a
// comment. Missing keys keep their defaults, unknown keys are a FormatError.
SyntheticParams LoadSyntheticParams(std::istream& in);
void SaveSyntheticParams(const SyntheticParams& params, std::ostream& out);

// Barabasi-Albert style growth: a seed clique, then every new node attaches
// to distinct existing nodes chosen with probability proportional to degree.
// Attachment counts are spread so the graph has exactly num_links directed
// edges, each direction with independently drawn metrics. Throws
// InvalidInputError when num_links is odd, too small to connect the nodes or
// larger than the complete graph.
OverlayGraph GenerateTopology(const SyntheticParams& params);

// num_demands demands with ids 0..n-1, endpoints uniform over ordered pairs
// of distinct nodes, exponential rates, uniform jitter bounds and
// min_success_prob = 1 - uniform loss bound. Uses a stream derived from
// params.seed distinct from the topology's.
std::vector<Demand> GenerateDemands(const SyntheticParams& params,
                                    const OverlayGraph& graph);

// Telco-like CDN overlay: a fixed subset of directed pairs is monitored and
// every demand has the same rate and QoS bounds.
struct TelcoProfile {
  int num_nodes = 11;
  int num_links = 82;
  double link_capacity_mbps = 50'000;
  double node_limit_mbps = 150;
  int num_demands = 82;
  double rate_mbps = 50;
  double min_success_prob = 0.99;
  double max_jitter_ms = 2000;
  int64_t epoch_period_s = 300;

  // Link metric shapes. Delays mostly in [5, 80] ms with a small tail;
  // jitter exponential with 90% of samples below jitter_p90_ms; loss small
  // except on links hit by a perturbation in that epoch.
  double delay_min_ms = 5;
  double delay_max_ms = 80;
  double delay_tail_prob = 0.05;
  double delay_tail_max_ms = 200;
  double jitter_p90_ms = 330;
  double loss_max = 0.003;
  double heavy_loss_prob = 0.06;
  double heavy_loss = 0.03;
};

Trace GenerateTelcoTrace(const TelcoProfile& profile, int num_epochs,
                         uint64_t seed);
std::vector<Demand> GenerateTelcoDemands(const TelcoProfile& profile,
                                         uint64_t seed);

}  // namespace cdnroute

#endif  // CDNROUTE_SCENARIO_H_
