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

#ifndef PTDP_COSTS_H_
#define PTDP_COSTS_H_

#include <cstdint>
#include <optional>

#include "ptdp/hardware.h"
#include "ptdp/model.h"
#include "ptdp/parallel.h"

namespace ptdp {

// Tunable constants of the analytical cost models.
struct CostKnobs {
  double bytes_per_element = 2.0;  // mixed precision activations and grads
  // fp32 master weights, two fp32 Adam moments and a gradient copy.
  double optimizer_bytes_per_param = 16.0;
  // A_intermediate / A_input for one transformer layer.
  double intermediate_to_input_ratio = 17.0;
  // Fixed cost of launching one chunk's forward or backward pass.
  double per_pass_overhead = 0.0;
  double backward_to_forward_ratio = 2.0;

  void Validate() const;
};

// Tensor-parallel all-reduce traffic per device for one microbatch:
// l_stage * 8 b s h (t-1)/t elements.
double TensorParallelAllReduceVolume(std::int64_t b, std::int64_t s,
                                     std::int64_t h, std::int64_t t,
                                     std::int64_t layers_per_stage,
                                     double bytes_per_element = 2.0);

// Bytes crossing one stage boundary in one direction for one microbatch;
// b s h elements, or b s h / t with the scatter/gather optimization.
double PipelineP2PVolume(std::int64_t b, std::int64_t s, std::int64_t h,
                         std::int64_t t, bool scatter_gather,
                         double bytes_per_element = 2.0);

// Ring all-reduce time of the gradients: 2 bytes (d-1)/d / bandwidth.
double DataParallelAllReduceCost(double param_bytes_per_device, std::int64_t d,
                                 double bandwidth);

// Parameters held by one device (P / (t p)).
double ParamsPerDevice(const ModelSpec& model, const ParallelConfig& config);

struct CommVolumes {
  double pp_p2p_per_microbatch = 0;  // per boundary per direction, per link
  double tp_allreduce_per_microbatch_per_device = 0;
  double dp_allreduce_per_batch = 0;  // ring traffic per device
  LinkClass pp_link = LinkClass::kInterNode;
  LinkClass tp_link = LinkClass::kIntraNode;
  LinkClass dp_link = LinkClass::kInterNode;
  bool scatter_gather = false;
  std::int64_t tensor_size = 1;
  // Bytes of one unsplit boundary tensor; the scatter/gather all-gather
  // rebuilds it over NVLink on the receiving node.
  double pp_full_tensor_bytes = 0;
};

CommVolumes ComputeCommVolumes(const ModelSpec& model,
                               const ParallelConfig& config,
                               const RankMapping& mapping,
                               const CostKnobs& knobs = {});

// Time of one pipeline boundary transfer for one microbatch, including the
// intra-node all-gather when scatter/gather splits the tensor.
double PipelineTransferTime(const CommVolumes& comm, LinkClass link,
                            const HardwareSpec& hw);

// Forward and backward time of one microbatch on one device, summed over all
// of its chunks. The simulator runs each chunk in forward/v and backward/v.
struct TaskDurations {
  double forward = 0;
  double backward = 0;

  double total() const { return forward + backward; }
};

// FLOP-derived durations: the forward FLOPs of the device's l/p layers for a
// microbatch of b sequences, split over t ranks, at peak * efficiency, plus
// per_pass_overhead per chunk. Backward is backward_to_forward_ratio times
// the forward, plus one more forward under activation recomputation.
TaskDurations ComputeTaskDurations(const ModelSpec& model,
                                   const ParallelConfig& config,
                                   const HardwareSpec& hw,
                                   const CostKnobs& knobs = {});

// Integer checkpoint count c in [1, layers] minimizing
// c * input_bytes + (layers / c) * intermediate_bytes. Ties go to the smaller
// c. Returns 1 when intermediate_bytes is zero.
std::int64_t OptimalCheckpoints(std::int64_t layers, double input_bytes,
                                double intermediate_bytes);

// Input activation bytes of one layer for a microbatch: b s h elements.
double LayerInputActivationBytes(const ModelSpec& model, std::int64_t b,
                                 const CostKnobs& knobs = {});

// Stashed activation bytes of one microbatch in one chunk of `layers` layers.
double ActivationBytesPerMicrobatch(const ModelSpec& model, std::int64_t b,
                                    std::int64_t layers, bool recompute,
                                    const CostKnobs& knobs = {});

struct MemoryFootprint {
  double weight_bytes = 0;
  double optimizer_bytes = 0;
  double activation_bytes = 0;
  double total_bytes = 0;
  double activation_bytes_per_microbatch = 0;
  std::int64_t peak_inflight = 0;  // microbatch-chunks with stashed state
  std::int64_t checkpoints = 0;    // 0 when recompute is off
  double capacity = 0;
  bool out_of_memory = false;
};

// Peak in-flight microbatch-chunks over the devices of one pipeline:
// m for GPipe, min(m, p) for 1F1B, and the maximum over devices of the
// interleaved static order.
std::int64_t PeakInflightForSchedule(ScheduleKind kind, std::int64_t p,
                                     std::int64_t m, std::int64_t v);

MemoryFootprint ComputeMemoryFootprint(
    const ModelSpec& model, const ParallelConfig& config,
    const TrainingJob& job, const CostKnobs& knobs, double capacity,
    std::optional<std::int64_t> inflight_override = std::nullopt);

}  // namespace ptdp

#endif  // PTDP_COSTS_H_
