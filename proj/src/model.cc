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

#include "cdnroute/model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "cdnroute/errors.h"

namespace cdnroute {

void LinkMetrics::Validate() const {
  if (!std::isfinite(delay_ms) || delay_ms < 0) {
    throw InvalidInputError("link delay must be finite and >= 0, got " +
                            std::to_string(delay_ms));
  }
  if (!std::isfinite(jitter_ms) || jitter_ms < 0) {
    throw InvalidInputError("link jitter must be finite and >= 0, got " +
                            std::to_string(jitter_ms));
  }
  if (std::isnan(capacity_mbps) || capacity_mbps <= 0) {
    throw InvalidInputError("link capacity must be > 0, got " +
                            std::to_string(capacity_mbps));
  }
  if (!(success_prob > 0 && success_prob <= 1)) {
    throw InvalidInputError("link success probability must be in (0, 1], got " +
                            std::to_string(success_prob));
  }
}

OverlayGraph::OverlayGraph(int num_nodes)
    : num_nodes_(num_nodes),
      pair_index_(static_cast<size_t>(num_nodes) * num_nodes, -1),
      node_limits_(num_nodes, kInfinity) {
  if (num_nodes < 0) throw InvalidInputError("negative node count");
}

int OverlayGraph::num_real_edges() const {
  return static_cast<int>(std::count_if(
      edges_.begin(), edges_.end(), [](const Edge& e) { return !e.artificial; }));
}

EdgeId OverlayGraph::AddEdge(NodeId src, NodeId dst,
                             const LinkMetrics& metrics) {
  if (src < 0 || src >= num_nodes_ || dst < 0 || dst >= num_nodes_) {
    throw InvalidInputError("edge (" + std::to_string(src) + "," +
                            std::to_string(dst) + ") out of node range");
  }
  if (src == dst) {
    throw InvalidInputError("self-loop on node " + std::to_string(src));
  }
  if (FindEdge(src, dst)) {
    throw InvalidInputError("duplicate edge (" + std::to_string(src) + "," +
                            std::to_string(dst) + ")");
  }
  metrics.Validate();
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back(Edge{src, dst, metrics, false});
  pair_index_[static_cast<size_t>(src) * num_nodes_ + dst] = id;
  return id;
}

std::optional<EdgeId> OverlayGraph::FindEdge(NodeId src, NodeId dst) const {
  if (src < 0 || src >= num_nodes_ || dst < 0 || dst >= num_nodes_) {
    return std::nullopt;
  }
  EdgeId id = pair_index_[static_cast<size_t>(src) * num_nodes_ + dst];
  if (id < 0) return std::nullopt;
  return id;
}

void OverlayGraph::SetNodeLimit(NodeId node, double limit_mbps) {
  if (node < 0 || node >= num_nodes_) {
    throw InvalidInputError("node " + std::to_string(node) + " out of range");
  }
  if (std::isnan(limit_mbps) || limit_mbps < 0) {
    throw InvalidInputError("node processing limit must be >= 0");
  }
  node_limits_[node] = limit_mbps;
}

double OverlayGraph::MaxRealDelay() const {
  double max_delay = 0;
  for (const Edge& e : edges_) {
    if (!e.artificial) max_delay = std::max(max_delay, e.metrics.delay_ms);
  }
  return max_delay;
}

OverlayGraph AugmentClique(const OverlayGraph& graph, int num_demands) {
  if (graph.num_nodes() < 2) {
    throw InvalidInputError("clique augmentation needs at least 2 nodes");
  }
  if (num_demands <= 0) {
    throw InvalidInputError("clique augmentation needs at least one demand");
  }
  OverlayGraph out = graph;
  out.big_m_ = 2.0 * num_demands * graph.MaxRealDelay() + 1.0;
  for (Edge& e : out.edges_) {
    if (e.artificial) e.metrics.delay_ms = out.big_m_;
  }
  const LinkMetrics artificial{out.big_m_, 0.0, kInfinity, 1.0};
  for (NodeId i = 0; i < out.num_nodes_; ++i) {
    for (NodeId j = 0; j < out.num_nodes_; ++j) {
      if (i == j || out.FindEdge(i, j)) continue;
      const auto id = static_cast<EdgeId>(out.edges_.size());
      out.edges_.push_back(Edge{i, j, artificial, true});
      out.pair_index_[static_cast<size_t>(i) * out.num_nodes_ + j] = id;
    }
  }
  return out;
}

OverlayGraph AugmentClique(const OverlayGraph& graph,
                           std::span<const Demand> demands) {
  return AugmentClique(graph, static_cast<int>(demands.size()));
}

void Demand::Validate(int num_nodes) const {
  const std::string tag = "demand " + std::to_string(id) + ": ";
  if (source < 0 || source >= num_nodes || destination < 0 ||
      destination >= num_nodes) {
    throw InvalidInputError(tag + "endpoint out of node range");
  }
  if (source == destination) {
    throw InvalidInputError(tag + "source equals destination");
  }
  if (!std::isfinite(rate_mbps) || rate_mbps <= 0) {
    throw InvalidInputError(tag + "rate must be > 0");
  }
  if (std::isnan(max_jitter_ms) || max_jitter_ms < 0) {
    throw InvalidInputError(tag + "max jitter must be >= 0");
  }
  if (!(min_success_prob >= 0 && min_success_prob <= 1)) {
    throw InvalidInputError(tag + "min success probability must be in [0, 1]");
  }
}

Path Path::Over(const OverlayGraph& graph, const Demand& demand,
                std::span<const EdgeId> edge_ids) {
  if (edge_ids.empty() || edge_ids.size() > 2) {
    throw ContractViolation("a path has one or two edges");
  }
  Path path;
  path.demand_id_ = demand.id;
  path.edges_.assign(edge_ids.begin(), edge_ids.end());
  path.nodes_.push_back(demand.source);
  for (EdgeId id : edge_ids) {
    if (id < 0 || id >= graph.num_edges()) {
      throw ContractViolation("edge id out of range");
    }
    const Edge& e = graph.edge(id);
    if (e.src != path.nodes_.back()) {
      throw ContractViolation("path edges are not consecutive");
    }
    path.nodes_.push_back(e.dst);
    path.total_delay_ += e.metrics.delay_ms;
    path.total_jitter_ += e.metrics.jitter_ms;
    path.success_prob_ *= e.metrics.success_prob;
    path.uses_artificial_ = path.uses_artificial_ || e.artificial;
  }
  if (path.nodes_.back() != demand.destination) {
    throw ContractViolation("path does not end at the demand destination");
  }
  if (path.nodes_.size() == 3 && path.nodes_[2] == path.nodes_[0]) {
    throw ContractViolation("relay path returns to its source");
  }
  return path;
}

Path Path::Direct(const OverlayGraph& graph, const Demand& demand,
                  EdgeId edge) {
  const EdgeId ids[] = {edge};
  return Over(graph, demand, ids);
}

Path Path::Relay(const OverlayGraph& graph, const Demand& demand, EdgeId first,
                 EdgeId second) {
  const EdgeId ids[] = {first, second};
  return Over(graph, demand, ids);
}

Path Path::Dummy(const Demand& demand, double dummy_penalty) {
  Path path;
  path.demand_id_ = demand.id;
  path.nodes_ = {demand.source, demand.destination};
  path.total_delay_ = dummy_penalty;
  path.is_dummy_ = true;
  return path;
}

std::optional<NodeId> Path::relay() const {
  if (nodes_.size() == 3) return nodes_[1];
  return std::nullopt;
}

bool QosFeasible(const Path& path, const Demand& demand) {
  if (path.demand_id() != demand.id || path.source() != demand.source ||
      path.destination() != demand.destination) {
    throw ContractViolation("path endpoints do not match demand " +
                            std::to_string(demand.id));
  }
  if (path.is_dummy()) return true;
  return path.hop_count() <= 2 && !path.uses_artificial() &&
         path.total_jitter() <= demand.max_jitter_ms &&
         path.success_prob() >= demand.min_success_prob;
}

ResidualCapacity::ResidualCapacity(const OverlayGraph& graph)
    : node_(graph.node_limits().begin(), graph.node_limits().end()) {
  edge_.reserve(graph.num_edges());
  for (const Edge& e : graph.edges()) edge_.push_back(e.metrics.capacity_mbps);
}

bool ResidualCapacity::Fits(const Path& path, double rate,
                            double tolerance) const {
  if (path.is_dummy()) return true;
  for (EdgeId e : path.edges()) {
    if (edge_[e] - rate < -tolerance) return false;
  }
  for (NodeId n : path.nodes()) {
    if (node_[n] - rate < -tolerance) return false;
  }
  return true;
}

void ResidualCapacity::Commit(const Path& path, double rate) {
  if (path.is_dummy()) return;
  for (EdgeId e : path.edges()) edge_[e] -= rate;
  for (NodeId n : path.nodes()) node_[n] -= rate;
}

}  // namespace cdnroute
