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

#include "cdnroute/scenario.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>

#include "cdnroute/csv.h"
#include "cdnroute/errors.h"
#include "cdnroute/io.h"
#include "cdnroute/random.h"

namespace cdnroute {
namespace {

// Seed offsets so topology, demands and traces never share a stream.
constexpr uint64_t kDemandStream = 0x9e3779b97f4a7c15ULL;
constexpr uint64_t kTelcoDemandStream = 0xbf58476d1ce4e5b9ULL;

using PairSet = std::set<std::pair<NodeId, NodeId>>;

}  // namespace

Trace LoadTrace(std::istream& metrics, std::istream& node_limits) {
  Trace trace;
  std::set<int64_t> seen_ts;
  PairSet reference;
  PairSet current;
  NodeId max_node = -1;
  auto close_epoch = [&](int line) {
    if (trace.epochs.empty()) return;
    if (trace.epochs.size() == 1) {
      reference = current;
    } else if (current != reference) {
      throw FormatError("epoch " + std::to_string(trace.epochs.back().timestamp) +
                            " has a different edge set than the first epoch",
                        line);
    }
  };
  int last_line = 0;
  for (const csv::Row& row : csv::ReadRows(metrics, 7)) {
    last_line = row.line;
    const int64_t ts = csv::ParseInt(row, 0, "epoch_ts");
    const int64_t src = csv::ParseInt(row, 1, "src");
    const int64_t dst = csv::ParseInt(row, 2, "dst");
    if (src < 0 || dst < 0 || src > 1'000'000 || dst > 1'000'000) {
      throw FormatError("node id out of range", row.line);
    }
    Edge edge{static_cast<NodeId>(src), static_cast<NodeId>(dst),
              LinkMetrics{csv::ParseDouble(row, 3, "delay_ms"),
                          csv::ParseDouble(row, 4, "jitter_ms"),
                          csv::ParseDouble(row, 5, "capacity_mbps"),
                          csv::ParseDouble(row, 6, "success_prob")},
              false};
    try {
      edge.metrics.Validate();
    } catch (const InvalidInputError& e) {
      throw FormatError(e.what(), row.line);
    }
    if (edge.src == edge.dst) throw FormatError("self-loop", row.line);
    if (trace.epochs.empty() || trace.epochs.back().timestamp != ts) {
      close_epoch(row.line);
      if (!seen_ts.insert(ts).second || (!trace.epochs.empty() &&
                                         ts < trace.epochs.back().timestamp)) {
        throw FormatError("epoch timestamps must be strictly increasing",
                          row.line);
      }
      trace.epochs.push_back(TraceEpoch{ts, {}});
      current.clear();
    }
    if (!current.emplace(edge.src, edge.dst).second) {
      throw FormatError("duplicate edge within an epoch", row.line);
    }
    max_node = std::max({max_node, edge.src, edge.dst});
    trace.epochs.back().edges.push_back(edge);
  }
  close_epoch(last_line);

  const std::vector<NodeLimit> limits = ReadNodeLimits(node_limits);
  for (const NodeLimit& l : limits) max_node = std::max(max_node, l.node);
  trace.num_nodes = max_node + 1;
  trace.node_limits.assign(trace.num_nodes, kInfinity);
  for (const NodeLimit& l : limits) trace.node_limits[l.node] = l.processing_mbps;
  return trace;
}

void SaveTrace(const Trace& trace, std::ostream& metrics) {
  metrics << "epoch_ts,src,dst,delay_ms,jitter_ms,capacity_mbps,success_prob\n";
  for (const TraceEpoch& epoch : trace.epochs) {
    for (const Edge& e : epoch.edges) {
      metrics << epoch.timestamp << ',' << e.src << ',' << e.dst << ','
              << csv::FormatDouble(e.metrics.delay_ms) << ','
              << csv::FormatDouble(e.metrics.jitter_ms) << ','
              << csv::FormatDouble(e.metrics.capacity_mbps) << ','
              << csv::FormatDouble(e.metrics.success_prob) << '\n';
    }
  }
}

void SaveTraceNodeLimits(const Trace& trace, std::ostream& out) {
  out << "node,processing_mbps\n";
  for (size_t n = 0; n < trace.node_limits.size(); ++n) {
    if (std::isinf(trace.node_limits[n])) continue;
    out << n << ',' << csv::FormatDouble(trace.node_limits[n]) << '\n';
  }
}

OverlayGraph GraphForEpoch(const Trace& trace, size_t epoch) {
  if (epoch >= trace.epochs.size()) {
    throw InvalidInputError("epoch index out of range");
  }
  OverlayGraph graph(trace.num_nodes);
  for (const Edge& e : trace.epochs[epoch].edges) {
    graph.AddEdge(e.src, e.dst, e.metrics);
  }
  for (NodeId n = 0; n < trace.num_nodes; ++n) {
    if (static_cast<size_t>(n) < trace.node_limits.size() &&
        !std::isinf(trace.node_limits[n])) {
      graph.SetNodeLimit(n, trace.node_limits[n]);
    }
  }
  return graph;
}

void SyntheticParams::Validate() const {
  auto range = [](double lo, double hi, const char* name) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi)) {
      throw InvalidInputError(std::string("empty range for ") + name);
    }
  };
  if (num_nodes < 2) throw InvalidInputError("num_nodes must be >= 2");
  if (num_links <= 0) throw InvalidInputError("num_links must be positive");
  if (num_demands <= 0) throw InvalidInputError("num_demands must be positive");
  range(capacity_min_mbps, capacity_max_mbps, "capacity");
  range(delay_min_ms, delay_max_ms, "delay");
  range(jitter_min_ms, jitter_max_ms, "jitter");
  range(loss_min, loss_max, "loss");
  range(max_jitter_min_ms, max_jitter_max_ms, "max_jitter");
  range(max_loss_min, max_loss_max, "max_loss");
  if (capacity_min_mbps <= 0) throw InvalidInputError("capacity must be > 0");
  if (delay_min_ms < 0 || jitter_min_ms < 0 || max_jitter_min_ms < 0) {
    throw InvalidInputError("delay and jitter ranges must be >= 0");
  }
  if (loss_min < 0 || loss_max >= 1 || max_loss_min < 0 || max_loss_max > 1) {
    throw InvalidInputError("loss ranges must lie in [0, 1)");
  }
  if (!(rate_mean_mbps > 0)) throw InvalidInputError("rate_mean must be > 0");
  if (!(node_limit_mbps >= 0)) throw InvalidInputError("node limit must be >= 0");
}

namespace {

using ParamField = std::variant<int SyntheticParams::*, double SyntheticParams::*,
                                uint64_t SyntheticParams::*>;

const std::vector<std::pair<std::string, ParamField>>& ParamFields() {
  static const std::vector<std::pair<std::string, ParamField>> fields = {
      {"num_nodes", &SyntheticParams::num_nodes},
      {"num_links", &SyntheticParams::num_links},
      {"capacity_min_mbps", &SyntheticParams::capacity_min_mbps},
      {"capacity_max_mbps", &SyntheticParams::capacity_max_mbps},
      {"delay_min_ms", &SyntheticParams::delay_min_ms},
      {"delay_max_ms", &SyntheticParams::delay_max_ms},
      {"jitter_min_ms", &SyntheticParams::jitter_min_ms},
      {"jitter_max_ms", &SyntheticParams::jitter_max_ms},
      {"loss_min", &SyntheticParams::loss_min},
      {"loss_max", &SyntheticParams::loss_max},
      {"node_limit_mbps", &SyntheticParams::node_limit_mbps},
      {"num_demands", &SyntheticParams::num_demands},
      {"rate_mean_mbps", &SyntheticParams::rate_mean_mbps},
      {"max_jitter_min_ms", &SyntheticParams::max_jitter_min_ms},
      {"max_jitter_max_ms", &SyntheticParams::max_jitter_max_ms},
      {"max_loss_min", &SyntheticParams::max_loss_min},
      {"max_loss_max", &SyntheticParams::max_loss_max},
      {"seed", &SyntheticParams::seed},
  };
  return fields;
}

std::string TrimCopy(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

SyntheticParams LoadSyntheticParams(std::istream& in) {
  SyntheticParams params;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    line = TrimCopy(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("expected key = value", line_no);
    const std::string key = TrimCopy(line.substr(0, eq));
    const csv::Row row{line_no, {TrimCopy(line.substr(eq + 1))}};
    const auto& fields = ParamFields();
    auto it = std::find_if(fields.begin(), fields.end(),
                           [&](const auto& f) { return f.first == key; });
    if (it == fields.end()) throw FormatError("unknown key '" + key + "'", line_no);
    std::visit(
        [&](auto member) {
          using T = std::remove_reference_t<decltype(params.*member)>;
          if constexpr (std::is_same_v<T, double>) {
            params.*member = csv::ParseDouble(row, 0, key);
          } else {
            const int64_t v = csv::ParseInt(row, 0, key);
            if (v < 0) throw FormatError(key + " must be >= 0", line_no);
            params.*member = static_cast<T>(v);
          }
        },
        it->second);
  }
  return params;
}

void SaveSyntheticParams(const SyntheticParams& params, std::ostream& out) {
  for (const auto& [key, field] : ParamFields()) {
    out << key << " = ";
    std::visit(
        [&](auto member) {
          using T = std::remove_reference_t<decltype(params.*member)>;
          if constexpr (std::is_same_v<T, double>) {
            out << csv::FormatDouble(params.*member);
          } else {
            out << params.*member;
          }
        },
        field);
    out << '\n';
  }
}

OverlayGraph GenerateTopology(const SyntheticParams& params) {
  params.Validate();
  const int64_t n = params.num_nodes;
  if (params.num_links % 2 != 0) {
    throw InvalidInputError("num_links must be even: every attachment is "
                            "realized in both directions");
  }
  const int64_t undirected = params.num_links / 2;
  if (undirected < n - 1) {
    throw InvalidInputError("num_links too small to connect every node");
  }
  if (undirected > n * (n - 1) / 2) {
    throw InvalidInputError("num_links exceeds the complete graph");
  }

  // Smallest seed clique from which the remaining nodes can absorb the rest
  // of the edges, node i attaching to between 1 and i existing nodes.
  int64_t clique = std::max<int64_t>(2, undirected / n + 1);
  bool found = false;
  for (; clique <= n; ++clique) {
    const int64_t rest = undirected - clique * (clique - 1) / 2;
    if (rest < 0) break;
    const int64_t growing = n - clique;
    const int64_t max_rest = (clique + n - 1) * growing / 2;
    if (rest >= growing && rest <= max_rest) {
      found = true;
      break;
    }
  }
  if (!found) throw InvalidInputError("num_links not achievable for num_nodes");
  std::vector<int64_t> attach(n, 0);
  int64_t remaining = undirected - clique * (clique - 1) / 2;
  // Even spread in growth order; a node capped at i pushes its excess to the
  // later, less constrained nodes.
  for (int64_t i = clique; i < n; ++i) {
    const int64_t nodes_left = n - i;
    attach[i] = std::clamp<int64_t>(remaining / nodes_left, 1, i);
    remaining -= attach[i];
  }
  if (remaining != 0) {
    throw InvalidInputError("num_links not achievable for num_nodes");
  }

  Rng rng(params.seed);
  std::vector<std::pair<NodeId, NodeId>> links;
  std::vector<NodeId> degree_pool;
  for (NodeId i = 0; i < clique; ++i) {
    for (NodeId j = i + 1; j < clique; ++j) {
      links.emplace_back(i, j);
      degree_pool.push_back(i);
      degree_pool.push_back(j);
    }
  }
  for (NodeId i = static_cast<NodeId>(clique); i < n; ++i) {
    std::set<NodeId> targets;
    if (attach[i] == i) {
      for (NodeId j = 0; j < i; ++j) targets.insert(j);
    } else {
      while (static_cast<int64_t>(targets.size()) < attach[i]) {
        targets.insert(degree_pool[rng.Index(degree_pool.size())]);
      }
    }
    for (NodeId t : targets) {
      links.emplace_back(t, i);
      degree_pool.push_back(t);
      degree_pool.push_back(i);
    }
  }

  auto sample = [&]() {
    return LinkMetrics{
        rng.Uniform(params.delay_min_ms, params.delay_max_ms),
        rng.Uniform(params.jitter_min_ms, params.jitter_max_ms),
        rng.Uniform(params.capacity_min_mbps, params.capacity_max_mbps),
        1.0 - rng.Uniform(params.loss_min, params.loss_max)};
  };
  OverlayGraph graph(static_cast<int>(n));
  for (const auto& [a, b] : links) {
    graph.AddEdge(a, b, sample());
    graph.AddEdge(b, a, sample());
  }
  for (NodeId i = 0; i < n; ++i) graph.SetNodeLimit(i, params.node_limit_mbps);
  return graph;
}

std::vector<Demand> GenerateDemands(const SyntheticParams& params,
                                    const OverlayGraph& graph) {
  params.Validate();
  const int n = graph.num_nodes();
  if (n < 2) throw InvalidInputError("demands need at least 2 nodes");
  Rng rng(params.seed ^ kDemandStream);
  std::vector<Demand> demands;
  demands.reserve(params.num_demands);
  for (int k = 0; k < params.num_demands; ++k) {
    Demand d;
    d.id = k;
    d.source = static_cast<NodeId>(rng.Index(n));
    d.destination = static_cast<NodeId>(rng.Index(n - 1));
    if (d.destination >= d.source) ++d.destination;
    d.rate_mbps = rng.Exponential(params.rate_mean_mbps);
    // Exponential draws can underflow to exactly 0; rates must stay positive.
    if (d.rate_mbps <= 0) d.rate_mbps = std::numeric_limits<double>::min();
    d.max_jitter_ms = rng.Uniform(params.max_jitter_min_ms, params.max_jitter_max_ms);
    d.min_success_prob = 1.0 - rng.Uniform(params.max_loss_min, params.max_loss_max);
    demands.push_back(d);
  }
  return demands;
}

Trace GenerateTelcoTrace(const TelcoProfile& profile, int num_epochs,
                         uint64_t seed) {
  const int n = profile.num_nodes;
  if (n < 2) throw InvalidInputError("telco profile needs at least 2 nodes");
  if (profile.num_links < 0 || profile.num_links > n * (n - 1)) {
    throw InvalidInputError("telco link count exceeds the node pairs");
  }
  if (num_epochs <= 0) throw InvalidInputError("num_epochs must be positive");
  Rng rng(seed);

  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i != j) pairs.emplace_back(i, j);
    }
  }
  // Fisher-Yates prefix: the monitored subset of pairs.
  for (int i = 0; i < profile.num_links; ++i) {
    const size_t j = i + rng.Index(pairs.size() - i);
    std::swap(pairs[i], pairs[j]);
  }
  pairs.resize(profile.num_links);
  std::sort(pairs.begin(), pairs.end());

  // Exponential jitter with P(J < p90) = 0.9.
  const double jitter_mean = profile.jitter_p90_ms / std::log(10.0);
  struct Base {
    double delay;
    double jitter;
  };
  std::vector<Base> base;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const double delay =
        rng.Bernoulli(profile.delay_tail_prob)
            ? rng.Uniform(profile.delay_max_ms, profile.delay_tail_max_ms)
            : rng.Uniform(profile.delay_min_ms, profile.delay_max_ms);
    base.push_back(Base{delay, rng.Exponential(jitter_mean)});
  }

  Trace trace;
  trace.num_nodes = n;
  trace.node_limits.assign(n, profile.node_limit_mbps);
  for (int e = 0; e < num_epochs; ++e) {
    TraceEpoch epoch{profile.epoch_period_s * e, {}};
    for (size_t i = 0; i < pairs.size(); ++i) {
      const double loss = rng.Bernoulli(profile.heavy_loss_prob)
                              ? profile.heavy_loss
                              : rng.Uniform(0.0, profile.loss_max);
      LinkMetrics m{base[i].delay * rng.Uniform(0.9, 1.1),
                    base[i].jitter * rng.Uniform(0.8, 1.2),
                    profile.link_capacity_mbps, 1.0 - loss};
      epoch.edges.push_back(Edge{pairs[i].first, pairs[i].second, m, false});
    }
    trace.epochs.push_back(std::move(epoch));
  }
  return trace;
}

std::vector<Demand> GenerateTelcoDemands(const TelcoProfile& profile,
                                         uint64_t seed) {
  const int n = profile.num_nodes;
  if (n < 2) throw InvalidInputError("telco profile needs at least 2 nodes");
  Rng rng(seed ^ kTelcoDemandStream);
  std::vector<Demand> demands;
  for (int k = 0; k < profile.num_demands; ++k) {
    Demand d;
    d.id = k;
    d.source = static_cast<NodeId>(rng.Index(n));
    d.destination = static_cast<NodeId>(rng.Index(n - 1));
    if (d.destination >= d.source) ++d.destination;
    d.rate_mbps = profile.rate_mbps;
    d.max_jitter_ms = profile.max_jitter_ms;
    d.min_success_prob = profile.min_success_prob;
    demands.push_back(d);
  }
  return demands;
}

}  // namespace cdnroute
