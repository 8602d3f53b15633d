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

#include "cdnroute/io.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "cdnroute/csv.h"
#include "cdnroute/errors.h"

namespace cdnroute {
namespace {

NodeId ParseNode(const csv::Row& row, size_t field, std::string_view name) {
  int64_t v = csv::ParseInt(row, field, name);
  if (v < 0 || v > 1'000'000) {
    throw FormatError(std::string(name) + " out of range", row.line);
  }
  return static_cast<NodeId>(v);
}

}  // namespace

std::vector<NodeLimit> ReadNodeLimits(std::istream& in) {
  std::vector<NodeLimit> limits;
  std::set<NodeId> seen;
  for (const csv::Row& row : csv::ReadRows(in, 2)) {
    NodeLimit limit{ParseNode(row, 0, "node"),
                    csv::ParseDouble(row, 1, "processing_mbps")};
    if (limit.processing_mbps < 0) {
      throw FormatError("negative processing limit", row.line);
    }
    if (!seen.insert(limit.node).second) {
      throw FormatError("duplicate node limit", row.line);
    }
    limits.push_back(limit);
  }
  return limits;
}

OverlayGraph ReadGraph(std::istream& edges,
                       const std::vector<NodeLimit>& limits) {
  struct Parsed {
    int line;
    NodeId src, dst;
    LinkMetrics metrics;
  };
  std::vector<Parsed> parsed;
  NodeId max_node = -1;
  for (const csv::Row& row : csv::ReadRows(edges, 6)) {
    Parsed p{row.line, ParseNode(row, 0, "src"), ParseNode(row, 1, "dst"),
             LinkMetrics{csv::ParseDouble(row, 2, "delay_ms"),
                         csv::ParseDouble(row, 3, "jitter_ms"),
                         csv::ParseDouble(row, 4, "capacity_mbps"),
                         csv::ParseDouble(row, 5, "success_prob")}};
    max_node = std::max({max_node, p.src, p.dst});
    parsed.push_back(p);
  }
  for (const NodeLimit& l : limits) max_node = std::max(max_node, l.node);
  OverlayGraph graph(max_node + 1);
  for (const Parsed& p : parsed) {
    try {
      graph.AddEdge(p.src, p.dst, p.metrics);
    } catch (const InvalidInputError& e) {
      throw FormatError(e.what(), p.line);
    }
  }
  for (const NodeLimit& l : limits) graph.SetNodeLimit(l.node, l.processing_mbps);
  return graph;
}

std::vector<Demand> ReadDemands(std::istream& in) {
  std::vector<Demand> demands;
  std::set<int> ids;
  for (const csv::Row& row : csv::ReadRows(in, 6)) {
    Demand d;
    d.id = static_cast<int>(csv::ParseInt(row, 0, "id"));
    d.source = ParseNode(row, 1, "src");
    d.destination = ParseNode(row, 2, "dst");
    d.rate_mbps = csv::ParseDouble(row, 3, "rate_mbps");
    d.max_jitter_ms = csv::ParseDouble(row, 4, "max_jitter_ms");
    d.min_success_prob = csv::ParseDouble(row, 5, "min_success_prob");
    if (!ids.insert(d.id).second) {
      throw FormatError("duplicate demand id " + std::to_string(d.id),
                        row.line);
    }
    try {
      d.Validate(1'000'001);
    } catch (const InvalidInputError& e) {
      throw FormatError(e.what(), row.line);
    }
    demands.push_back(d);
  }
  return demands;
}

void WriteGraph(const OverlayGraph& graph, std::ostream& out) {
  out << "src,dst,delay_ms,jitter_ms,capacity_mbps,success_prob\n";
  for (const Edge& e : graph.edges()) {
    if (e.artificial) continue;
    out << e.src << ',' << e.dst << ',' << csv::FormatDouble(e.metrics.delay_ms)
        << ',' << csv::FormatDouble(e.metrics.jitter_ms) << ','
        << csv::FormatDouble(e.metrics.capacity_mbps) << ','
        << csv::FormatDouble(e.metrics.success_prob) << '\n';
  }
}

void WriteNodeLimits(const OverlayGraph& graph, std::ostream& out) {
  out << "node,processing_mbps\n";
  for (NodeId n = 0; n < graph.num_nodes(); ++n) {
    out << n << ',' << csv::FormatDouble(graph.node_limit(n)) << '\n';
  }
}

void WriteDemands(std::span<const Demand> demands, std::ostream& out) {
  out << "id,src,dst,rate_mbps,max_jitter_ms,min_success_prob\n";
  for (const Demand& d : demands) {
    out << d.id << ',' << d.source << ',' << d.destination << ','
        << csv::FormatDouble(d.rate_mbps) << ','
        << csv::FormatDouble(d.max_jitter_ms) << ','
        << csv::FormatDouble(d.min_success_prob) << '\n';
  }
}

std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return in;
}

std::ofstream OpenOutput(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  return out;
}

}  // namespace cdnroute
