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

#ifndef PTDP_HARDWARE_H_
#define PTDP_HARDWARE_H_

#include <cstdint>
#include <string_view>
#include <vector>

namespace ptdp {

// Cluster description. Bandwidths are bytes/s in one direction; latencies are
// the alpha term of the alpha-beta communication model.
struct HardwareSpec {
  std::int64_t gpus_per_node = 8;
  double peak_flops = 312e12;
  double intra_node_bw = 300e9;
  double inter_node_bw = 25e9;  // 200 Gb/s per link
  std::int64_t links_per_node = 8;
  double efficiency = 0.5;
  double intra_node_latency = 3e-6;
  double inter_node_latency = 10e-6;
  double memory_capacity = 80e9;

  void Validate() const;
  double SustainedFlops() const { return peak_flops * efficiency; }

  bool operator==(const HardwareSpec&) const = default;
};

// DGX A100 nodes as deployed in Selene.
HardwareSpec SelenePreset();

// Returns the preset registered under `name`; throws InvalidArgumentError for
// unknown names.
HardwareSpec HardwarePreset(std::string_view name);

enum class LinkClass { kIntraNode, kInterNode };

std::string_view LinkClassName(LinkClass c);

struct RankCoord {
  std::int64_t pipeline = 0;
  std::int64_t tensor = 0;
  std::int64_t data = 0;

  bool operator==(const RankCoord&) const = default;
};

struct DeviceLocation {
  std::int64_t node = 0;
  std::int64_t local = 0;

  bool operator==(const DeviceLocation&) const = default;
  auto operator<=>(const DeviceLocation&) const = default;
};

// Placement of (pipeline, tensor, data) ranks onto physical devices.
//
// Tensor ranks vary fastest and stay inside one node, data ranks come next
// and pipeline ranks vary slowest, so a data-parallel group is packed onto as
// few nodes as possible and consecutive stages land on different nodes once
// t d >= g. Tensor groups are packed g/t per node. When t does not divide g the
// remaining g mod t devices of each node stay empty, so a tensor group never
// straddles a node. With cross-node tensor parallelism enabled (t > g) the
// ranks are packed densely and a tensor group spans t/g nodes.
class RankMapping {
 public:
  RankMapping(std::int64_t p, std::int64_t t, std::int64_t d,
              std::int64_t gpus_per_node, bool cross_node_tensor);

  std::int64_t pipeline_size() const { return p_; }
  std::int64_t tensor_size() const { return t_; }
  std::int64_t data_size() const { return d_; }
  std::int64_t gpus_per_node() const { return g_; }
  std::int64_t device_count() const { return p_ * t_ * d_; }
  std::int64_t node_count() const;

  DeviceLocation Locate(const RankCoord& rank) const;
  bool IsValid(const RankCoord& rank) const;

 private:
  std::int64_t p_;
  std::int64_t t_;
  std::int64_t d_;
  std::int64_t g_;
  bool dense_;
};

// Default placement. Throws MappingError when t > g unless
// cross-node tensor parallelism is explicitly allowed.
RankMapping DefaultMapping(std::int64_t p, std::int64_t t, std::int64_t d,
                           const HardwareSpec& hw,
                           bool allow_cross_node_tensor = false);

LinkClass ClassifyLink(const RankMapping& mapping, const RankCoord& a,
                       const RankCoord& b);

// Alpha-beta transfer time of `bytes` over one link of the given class.
double TransferTime(double bytes, LinkClass link, const HardwareSpec& hw);

double LinkBandwidth(LinkClass link, const HardwareSpec& hw);
double LinkLatency(LinkClass link, const HardwareSpec& hw);

// Ring bandwidth available to one data-parallel group (all data ranks that
// share a pipeline and tensor rank). A group confined to one node gets
// NVLink bandwidth; a group spanning nodes gets the share of the node's
// network links proportional to how many of its members sit on each node.
double DataParallelBandwidth(const RankMapping& mapping,
                             const HardwareSpec& hw);

// Link class seen by the gradient all-reduce of a data-parallel group.
LinkClass DataParallelLinkClass(const RankMapping& mapping);

}  // namespace ptdp

#endif  // PTDP_HARDWARE_H_
