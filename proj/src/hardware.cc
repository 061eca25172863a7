/* Copyright 2026 The ptdp Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "ptdp/hardware.h"

#include <algorithm>
#include <map>
#include <string>

#include "ptdp/errors.h"

namespace ptdp {

void HardwareSpec::Validate() const {
  if (gpus_per_node < 1) {
    throw InvalidArgumentError("hardware: gpus_per_node must be >= 1");
  }
  if (links_per_node < 1) {
    throw InvalidArgumentError("hardware: links_per_node must be >= 1");
  }
  if (!(peak_flops > 0)) {
    throw InvalidArgumentError("hardware: peak_flops must be > 0");
  }
  if (!(intra_node_bw > 0) || !(inter_node_bw > 0)) {
    throw InvalidArgumentError("hardware: bandwidths must be > 0");
  }
  if (!(efficiency > 0) || efficiency > 1) {
    throw InvalidArgumentError("hardware: efficiency must be in (0, 1]");
  }
  if (intra_node_latency < 0 || inter_node_latency < 0) {
    throw InvalidArgumentError("hardware: latencies must be >= 0");
  }
  if (!(memory_capacity > 0)) {
    throw InvalidArgumentError("hardware: memory_capacity must be > 0");
  }
}

HardwareSpec SelenePreset() { return HardwareSpec{}; }

HardwareSpec HardwarePreset(std::string_view name) {
  if (name == "selene") return SelenePreset();
  throw InvalidArgumentError("unknown hardware preset '" + std::string(name) +
                             "' (known: selene)");
}

std::string_view LinkClassName(LinkClass c) {
  return c == LinkClass::kIntraNode ? "intra_node" : "inter_node";
}

RankMapping::RankMapping(std::int64_t p, std::int64_t t, std::int64_t d,
                         std::int64_t gpus_per_node, bool cross_node_tensor)
    : p_(p), t_(t), d_(d), g_(gpus_per_node), dense_(false) {
  if (p < 1 || t < 1 || d < 1 || gpus_per_node < 1) {
    throw MappingError("mapping: p, t, d and g must all be >= 1");
  }
  if (t > gpus_per_node) {
    if (!cross_node_tensor) {
      throw MappingError("mapping: tensor-parallel size " + std::to_string(t) +
                         " exceeds gpus_per_node " +
                         std::to_string(gpus_per_node) +
                         "; cross-node tensor parallelism is disabled");
    }
    dense_ = true;
  }
}

std::int64_t RankMapping::node_count() const {
  if (dense_) return (device_count() + g_ - 1) / g_;
  const std::int64_t groups_per_node = g_ / t_;
  return (p_ * d_ + groups_per_node - 1) / groups_per_node;
}

bool RankMapping::IsValid(const RankCoord& r) const {
  return r.pipeline >= 0 && r.pipeline < p_ && r.tensor >= 0 &&
         r.tensor < t_ && r.data >= 0 && r.data < d_;
}

DeviceLocation RankMapping::Locate(const RankCoord& r) const {
  if (!IsValid(r)) throw MappingError("mapping: rank out of range");
  const std::int64_t group = r.data + d_ * r.pipeline;
  if (dense_) {
    const std::int64_t device = r.tensor + t_ * group;
    return {device / g_, device % g_};
  }
  const std::int64_t groups_per_node = g_ / t_;
  return {group / groups_per_node, (group % groups_per_node) * t_ + r.tensor};
}

RankMapping DefaultMapping(std::int64_t p, std::int64_t t, std::int64_t d,
                           const HardwareSpec& hw,
                           bool allow_cross_node_tensor) {
  return RankMapping(p, t, d, hw.gpus_per_node, allow_cross_node_tensor);
}

LinkClass ClassifyLink(const RankMapping& mapping, const RankCoord& a,
                       const RankCoord& b) {
  return mapping.Locate(a).node == mapping.Locate(b).node
             ? LinkClass::kIntraNode
             : LinkClass::kInterNode;
}

double LinkBandwidth(LinkClass link, const HardwareSpec& hw) {
  if (link == LinkClass::kIntraNode) return hw.intra_node_bw;
  // Each device owns links_per_node / g of the node's network links.
  const double share = std::min(
      1.0, static_cast<double>(hw.links_per_node) /
               static_cast<double>(hw.gpus_per_node));
  return hw.inter_node_bw * share;
}

double LinkLatency(LinkClass link, const HardwareSpec& hw) {
  return link == LinkClass::kIntraNode ? hw.intra_node_latency
                                       : hw.inter_node_latency;
}

double TransferTime(double bytes, LinkClass link, const HardwareSpec& hw) {
  return LinkLatency(link, hw) + bytes / LinkBandwidth(link, hw);
}

namespace {

std::map<std::int64_t, std::int64_t> DataGroupMembersPerNode(
    const RankMapping& mapping) {
  std::map<std::int64_t, std::int64_t> per_node;
  for (std::int64_t dr = 0; dr < mapping.data_size(); ++dr) {
    ++per_node[mapping.Locate({0, 0, dr}).node];
  }
  return per_node;
}

}  // namespace

LinkClass DataParallelLinkClass(const RankMapping& mapping) {
  return DataGroupMembersPerNode(mapping).size() > 1 ? LinkClass::kInterNode
                                                     : LinkClass::kIntraNode;
}

double DataParallelBandwidth(const RankMapping& mapping,
                             const HardwareSpec& hw) {
  const auto per_node = DataGroupMembersPerNode(mapping);
  if (per_node.size() <= 1) return hw.intra_node_bw;
  std::int64_t members = mapping.data_size();
  for (const auto& [node, count] : per_node) {
    members = std::min(members, count);
  }
  // One ring per co-located member, each leaving the node on its own link.
  return std::min(hw.intra_node_bw,
                  static_cast<double>(members) *
                      LinkBandwidth(LinkClass::kInterNode, hw));
}

}  // namespace ptdp
