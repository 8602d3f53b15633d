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

// CSV readers and writers for graphs, node limits and demands.
//
//   graph:       src,dst,delay_ms,jitter_ms,capacity_mbps,success_prob
//   node limits: node,processing_mbps
//   demands:     id,src,dst,rate_mbps,max_jitter_ms,min_success_prob
//
// A header line is optional on input and always written on output. All
// readers throw FormatError with the offending line number.

#ifndef CDNROUTE_IO_H_
#define CDNROUTE_IO_H_

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "cdnroute/model.h"

namespace cdnroute {

struct NodeLimit {
  NodeId node = 0;
  double processing_mbps = 0;
};

std::vector<NodeLimit> ReadNodeLimits(std::istream& in);

// The node count is one past the largest node id seen in either input.
OverlayGraph ReadGraph(std::istream& edges,
                       const std::vector<NodeLimit>& limits = {});
std::vector<Demand> ReadDemands(std::istream& in);

void WriteGraph(const OverlayGraph& graph, std::ostream& out);
void WriteNodeLimits(const OverlayGraph& graph, std::ostream& out);
void WriteDemands(std::span<const Demand> demands, std::ostream& out);

// Opens `path` for reading, throwing FormatError if it cannot be opened.
std::ifstream OpenInput(const std::filesystem::path& path);
std::ofstream OpenOutput(const std::filesystem::path& path);

}  // namespace cdnroute

#endif  // CDNROUTE_IO_H_
