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

// Domain types for the overlay network: the directed graph with per-link QoS
// metrics, the transfer demands, and at-most-two-hop overlay paths.

#ifndef CDNROUTE_MODEL_H_
#define CDNROUTE_MODEL_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace cdnroute {

// Dense node index in [0, num_nodes).
using NodeId = int32_t;
// Index into OverlayGraph::edges().
using EdgeId = int32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct LinkMetrics {
  double delay_ms = 0;
  double jitter_ms = 0;
  double capacity_mbps = kInfinity;
  // Probability that a packet crosses the link (1 - loss).
  double success_prob = 1;

  // Throws InvalidInputError unless delay, jitter >= 0, capacity > 0 and
  // success_prob in (0, 1]. Infinite capacity is allowed.
  void Validate() const;

  bool operator==(const LinkMetrics&) const = default;
};

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  LinkMetrics metrics;
  // Added by AugmentClique; carries the big-M delay and no capacity limit.
  bool artificial = false;

  bool operator==(const Edge&) const = default;
};

// Directed overlay graph. At most one edge per ordered node pair, no
// self-loops. Node processing limits default to unlimited.
class OverlayGraph {
 public:
  OverlayGraph() = default;
  explicit OverlayGraph(int num_nodes);

  int num_nodes() const { return num_nodes_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_real_edges() const;
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[id]; }

  // Adds a real edge. Throws InvalidInputError on self-loops, out-of-range
  // endpoints, duplicate pairs or invalid metrics.
  EdgeId AddEdge(NodeId src, NodeId dst, const LinkMetrics& metrics);
  std::optional<EdgeId> FindEdge(NodeId src, NodeId dst) const;

  double node_limit(NodeId node) const { return node_limits_[node]; }
  std::span<const double> node_limits() const { return node_limits_; }
  void SetNodeLimit(NodeId node, double limit_mbps);

  // Largest delay over real edges, 0 if there are none.
  double MaxRealDelay() const;

  // Zero until AugmentClique runs.
  double big_m() const { return big_m_; }
  // Cost of leaving a demand on its dummy column. Always 10 * big_m, which
  // dominates every path over artificial edges.
  double dummy_penalty() const { return 10.0 * big_m_; }
  bool augmented() const { return big_m_ > 0; }

  bool operator==(const OverlayGraph&) const = default;

 private:
  friend OverlayGraph AugmentClique(const OverlayGraph&, int);

  int num_nodes_ = 0;
  std::vector<Edge> edges_;
  // num_nodes_ x num_nodes_, row-major, -1 for a missing pair.
  std::vector<EdgeId> pair_index_;
  std::vector<double> node_limits_;
  double big_m_ = 0;
};

struct Demand {
  int id = 0;
  NodeId source = 0;
  NodeId destination = 0;
  double rate_mbps = 0;
  double max_jitter_ms = kInfinity;
  double min_success_prob = 0;

  // Throws InvalidInputError unless source != destination, both endpoints are
  // in range, rate > 0 and min_success_prob <= 1.
  void Validate(int num_nodes) const;

  bool operator==(const Demand&) const = default;
};

// A route for one demand over one or two edges, or the demand's dummy
// placeholder. Aggregates are computed once at construction.
class Path {
 public:
  // Builds the path over `edge_ids` (1 or 2 consecutive edges from the
  // demand's source to its destination). Throws ContractViolation otherwise.
  static Path Over(const OverlayGraph& graph, const Demand& demand,
                   std::span<const EdgeId> edge_ids);
  static Path Direct(const OverlayGraph& graph, const Demand& demand,
                     EdgeId edge);
  static Path Relay(const OverlayGraph& graph, const Demand& demand,
                    EdgeId first, EdgeId second);
  static Path Dummy(const Demand& demand, double dummy_penalty);

  int demand_id() const { return demand_id_; }
  std::span<const EdgeId> edges() const { return edges_; }
  // Source, optional relay, destination.
  std::span<const NodeId> nodes() const { return nodes_; }
  NodeId source() const { return nodes_.front(); }
  NodeId destination() const { return nodes_.back(); }
  std::optional<NodeId> relay() const;
  int hop_count() const { return static_cast<int>(edges_.size()); }

  double total_delay() const { return total_delay_; }
  double total_jitter() const { return total_jitter_; }
  double success_prob() const { return success_prob_; }
  bool uses_artificial() const { return uses_artificial_; }
  bool is_dummy() const { return is_dummy_; }

  bool operator==(const Path&) const = default;

 private:
  Path() = default;

  int demand_id_ = 0;
  std::vector<EdgeId> edges_;
  std::vector<NodeId> nodes_;
  double total_delay_ = 0;
  double total_jitter_ = 0;
  double success_prob_ = 1;
  bool uses_artificial_ = false;
  bool is_dummy_ = false;
};

// Fills every missing ordered pair with an artificial edge (delay big_M,
// jitter 0, success 1, unlimited capacity), where
// big_M = 2 * num_demands * MaxRealDelay() + 1. Idempotent.
OverlayGraph AugmentClique(const OverlayGraph& graph, int num_demands);
OverlayGraph AugmentClique(const OverlayGraph& graph,
                           std::span<const Demand> demands);

// Hop, jitter and success-probability constraints. Paths over artificial
// edges are never feasible; dummy paths always are. Throws ContractViolation
// if the path does not belong to the demand.
bool QosFeasible(const Path& path, const Demand& demand);

inline double PathDelay(const Path& path) { return path.total_delay(); }

// Remaining edge capacities and node processing budgets while routes are
// being committed.
class ResidualCapacity {
 public:
  ResidualCapacity() = default;
  explicit ResidualCapacity(const OverlayGraph& graph);

  std::span<const double> edges() const { return edge_; }
  std::span<const double> nodes() const { return node_; }
  double edge(EdgeId id) const { return edge_[id]; }
  double node(NodeId id) const { return node_[id]; }

  // True when `rate` fits on every edge and visited node of `path`, with an
  // absolute slack of `tolerance`. Dummy paths always fit.
  bool Fits(const Path& path, double rate, double tolerance = 1e-9) const;
  void Commit(const Path& path, double rate);

  bool operator==(const ResidualCapacity&) const = default;

 private:
  std::vector<double> edge_;
  std::vector<double> node_;
};

}  // namespace cdnroute

#endif  // CDNROUTE_MODEL_H_
