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

#include "cdnroute/pricing.h"

#include "cdnroute/errors.h"

namespace cdnroute {

DualPoint DualPoint::Zero(const OverlayGraph& graph, int num_demands) {
  return DualPoint{std::vector<double>(graph.num_edges(), 0.0),
                   std::vector<double>(graph.num_nodes(), 0.0),
                   std::vector<double>(num_demands, 0.0)};
}

std::vector<Path> EnumerateCandidates(const OverlayGraph& graph,
                                      const Demand& demand) {
  std::vector<Path> out = DirectCandidates(graph, demand);
  for (NodeId relay = 0; relay < graph.num_nodes(); ++relay) {
    if (relay == demand.source || relay == demand.destination) continue;
    auto first = graph.FindEdge(demand.source, relay);
    if (!first || graph.edge(*first).artificial) continue;
    auto second = graph.FindEdge(relay, demand.destination);
    if (!second || graph.edge(*second).artificial) continue;
    Path path = Path::Relay(graph, demand, *first, *second);
    if (QosFeasible(path, demand)) out.push_back(std::move(path));
  }
  return out;
}

std::vector<Path> DirectCandidates(const OverlayGraph& graph,
                                   const Demand& demand) {
  std::vector<Path> out;
  auto direct = graph.FindEdge(demand.source, demand.destination);
  if (direct && !graph.edge(*direct).artificial) {
    Path path = Path::Direct(graph, demand, *direct);
    if (QosFeasible(path, demand)) out.push_back(std::move(path));
  }
  return out;
}

double PricedLength(const Path& path, double rate, const DualPoint& duals) {
  double capacity_price = 0;
  for (EdgeId e : path.edges()) capacity_price += duals.edge[e];
  if (!path.is_dummy()) {
    for (NodeId n : path.nodes()) capacity_price += duals.node[n];
  }
  return path.total_delay() + rate * capacity_price;
}

std::optional<PricedPath> PriceDemand(const Demand& demand,
                                      std::span<const Path> candidates,
                                      const DualPoint& duals,
                                      double convexity_dual, double tolerance) {
  std::optional<size_t> best;
  double best_length = kInfinity;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const Path& path = candidates[i];
    for (EdgeId e : path.edges()) {
      if (duals.edge[e] < 0) {
        throw ContractViolation("negative edge capacity dual");
      }
    }
    for (NodeId n : path.nodes()) {
      if (duals.node[n] < 0) {
        throw ContractViolation("negative node capacity dual");
      }
    }
    double length = PricedLength(path, demand.rate_mbps, duals);
    if (length < best_length) {
      best_length = length;
      best = i;
    }
  }
  if (!best) return std::nullopt;
  double reduced_cost = best_length - convexity_dual;
  if (reduced_cost >= -tolerance) return std::nullopt;
  return PricedPath{candidates[*best], reduced_cost, *best};
}

}  // namespace cdnroute
