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

#include "ptdp/costs.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptdp/errors.h"
#include "ptdp/schedule.h"

namespace ptdp {

void CostKnobs::Validate() const {
  if (!(bytes_per_element > 0)) {
    throw InvalidArgumentError("costs: bytes_per_element must be > 0");
  }
  if (optimizer_bytes_per_param < 0) {
    throw InvalidArgumentError("costs: optimizer_bytes_per_param must be >= 0");
  }
  if (intermediate_to_input_ratio < 0) {
    throw InvalidArgumentError(
        "costs: intermediate_to_input_ratio must be >= 0");
  }
  if (per_pass_overhead < 0) {
    throw InvalidArgumentError("costs: per_pass_overhead must be >= 0");
  }
  if (!(backward_to_forward_ratio > 0)) {
    throw InvalidArgumentError("costs: backward_to_forward_ratio must be > 0");
  }
}

double TensorParallelAllReduceVolume(std::int64_t b, std::int64_t s,
                                     std::int64_t h, std::int64_t t,
                                     std::int64_t layers_per_stage,
                                     double bytes_per_element) {
  if (t < 1) throw InvalidArgumentError("tp volume: t must be >= 1");
  const double per_layer = 8.0 * static_cast<double>(b) *
                           static_cast<double>(s) * static_cast<double>(h) *
                           static_cast<double>(t - 1) / static_cast<double>(t);
  return static_cast<double>(layers_per_stage) * per_layer * bytes_per_element;
}

double PipelineP2PVolume(std::int64_t b, std::int64_t s, std::int64_t h,
                         std::int64_t t, bool scatter_gather,
                         double bytes_per_element) {
  if (t < 1) throw InvalidArgumentError("p2p volume: t must be >= 1");
  const double full = static_cast<double>(b) * static_cast<double>(s) *
                      static_cast<double>(h) * bytes_per_element;
  return scatter_gather ? full / static_cast<double>(t) : full;
}

double DataParallelAllReduceCost(double param_bytes_per_device, std::int64_t d,
                                 double bandwidth) {
  if (d < 1) throw InvalidArgumentError("dp cost: d must be >= 1");
  if (!(bandwidth > 0)) {
    throw InvalidArgumentError("dp cost: bandwidth must be > 0");
  }
  const double dd = static_cast<double>(d);
  return 2.0 * param_bytes_per_device * (dd - 1.0) / dd / bandwidth;
}

double ParamsPerDevice(const ModelSpec& model, const ParallelConfig& config) {
  return static_cast<double>(ParamCount(model)) /
         static_cast<double>(config.model_parallel_size());
}

CommVolumes ComputeCommVolumes(const ModelSpec& model,
                               const ParallelConfig& config,
                               const RankMapping& mapping,
                               const CostKnobs& knobs) {
  const std::int64_t p = config.pipeline_size;
  const std::int64_t t = config.tensor_size;
  const std::int64_t d = config.data_size;
  const std::int64_t b = config.microbatch_size;
  const std::int64_t s = model.sequence_length;
  const std::int64_t h = model.hidden_size;
  CommVolumes out;
  out.scatter_gather = config.scatter_gather && t > 1;
  out.tensor_size = t;
  out.pp_full_tensor_bytes =
      PipelineP2PVolume(b, s, h, t, false, knobs.bytes_per_element);
  out.pp_p2p_per_microbatch =
      PipelineP2PVolume(b, s, h, t, out.scatter_gather, knobs.bytes_per_element);
  out.tp_allreduce_per_microbatch_per_device = TensorParallelAllReduceVolume(
      b, s, h, t, model.layers / p, knobs.bytes_per_element);
  const double grad_bytes =
      knobs.bytes_per_element * ParamsPerDevice(model, config);
  out.dp_allreduce_per_batch = 2.0 * grad_bytes *
                               static_cast<double>(d - 1) /
                               static_cast<double>(d);
  out.pp_link = p > 1 ? ClassifyLink(mapping, {0, 0, 0}, {1, 0, 0})
                      : LinkClass::kIntraNode;
  out.tp_link = t > 1 ? ClassifyLink(mapping, {0, 0, 0}, {0, t - 1, 0})
                      : LinkClass::kIntraNode;
  out.dp_link = DataParallelLinkClass(mapping);
  return out;
}

double PipelineTransferTime(const CommVolumes& comm, LinkClass link,
                            const HardwareSpec& hw) {
  double time = TransferTime(comm.pp_p2p_per_microbatch, link, hw);
  if (comm.scatter_gather && link == LinkClass::kInterNode) {
    // All-gather of the t slices over NVLink on the receiving node.
    const double t = static_cast<double>(comm.tensor_size);
    time += TransferTime(comm.pp_full_tensor_bytes * (t - 1.0) / t,
                         LinkClass::kIntraNode, hw);
  }
  return time;
}

TaskDurations ComputeTaskDurations(const ModelSpec& model,
                                   const ParallelConfig& config,
                                   const HardwareSpec& hw,
                                   const CostKnobs& knobs) {
  const std::int64_t p = config.pipeline_size;
  const std::int64_t v = config.chunks_per_device;
  if (p < 1 || v < 1 || model.layers % (p * v) != 0) {
    throw InvalidArgumentError("durations: l must be divisible by p*v");
  }
  const double layers_on_device = static_cast<double>(model.layers / p);
  const double flops = LayerForwardFlops(model, config.microbatch_size) *
                       layers_on_device /
                       static_cast<double>(config.tensor_size);
  TaskDurations out;
  out.forward = flops / hw.SustainedFlops() +
                static_cast<double>(v) * knobs.per_pass_overhead;
  out.backward = knobs.backward_to_forward_ratio * out.forward;
  if (config.activation_recompute) out.backward += out.forward;
  return out;
}

std::int64_t OptimalCheckpoints(std::int64_t layers, double input_bytes,
                                double intermediate_bytes) {
  if (layers < 1) throw InvalidArgumentError("checkpoints: layers must be >= 1");
  if (!(input_bytes > 0) || intermediate_bytes < 0) {
    throw InvalidArgumentError(
        "checkpoints: input bytes must be > 0 and intermediate bytes >= 0");
  }
  if (intermediate_bytes == 0) return 1;
  const double l = static_cast<double>(layers);
  const double real_opt = std::sqrt(l * intermediate_bytes / input_bytes);
  // cost(c) * c = c^2 A_in + l A_int; compare cross-multiplied so that exact
  // ties resolve toward the smaller count.
  auto less = [&](std::int64_t a, std::int64_t b) {
    const double ca = static_cast<double>(a);
    const double cb = static_cast<double>(b);
    return (ca * ca * input_bytes + l * intermediate_bytes) * cb <
           (cb * cb * input_bytes + l * intermediate_bytes) * ca;
  };
  const auto lo = static_cast<std::int64_t>(std::floor(real_opt)) - 1;
  std::int64_t best = std::clamp<std::int64_t>(lo, 1, layers);
  for (std::int64_t c = lo + 1; c <= lo + 3; ++c) {
    const std::int64_t cand = std::clamp<std::int64_t>(c, 1, layers);
    if (less(cand, best) || (!less(best, cand) && cand < best)) best = cand;
  }
  return best;
}

double LayerInputActivationBytes(const ModelSpec& model, std::int64_t b,
                                 const CostKnobs& knobs) {
  return knobs.bytes_per_element * static_cast<double>(b) *
         static_cast<double>(model.sequence_length) *
         static_cast<double>(model.hidden_size);
}

double ActivationBytesPerMicrobatch(const ModelSpec& model, std::int64_t b,
                                    std::int64_t layers, bool recompute,
                                    const CostKnobs& knobs) {
  const double input = LayerInputActivationBytes(model, b, knobs);
  const double intermediate = knobs.intermediate_to_input_ratio * input;
  const double l = static_cast<double>(layers);
  if (!recompute) return l * intermediate;
  const auto c = OptimalCheckpoints(layers, input, intermediate);
  const double cd = static_cast<double>(c);
  return cd * input + l / cd * intermediate;
}

std::int64_t PeakInflightForSchedule(ScheduleKind kind, std::int64_t p,
                                     std::int64_t m, std::int64_t v) {
  switch (kind) {
    case ScheduleKind::kGPipe:
      return m * v;
    case ScheduleKind::kOneFOneB:
      return std::min(m, p);
    case ScheduleKind::kInterleaved: {
      // Each device holds its warm-up forwards plus the one forward of the
      // first steady-state pair; device 0 has the longest warm-up.
      const std::int64_t total = m * v;
      const std::int64_t warmup = WarmupForwards(kind, p, m, v, 0);
      return warmup < total ? warmup + 1 : total;
    }
  }
  return m * v;
}

MemoryFootprint ComputeMemoryFootprint(
    const ModelSpec& model, const ParallelConfig& config,
    const TrainingJob& job, const CostKnobs& knobs, double capacity,
    std::optional<std::int64_t> inflight_override) {
  const DerivedQuantities q = ValidateOrThrow(config, model, job, std::nullopt);
  const double params = ParamsPerDevice(model, config);
  MemoryFootprint out;
  out.weight_bytes = knobs.bytes_per_element * params;
  out.optimizer_bytes = knobs.optimizer_bytes_per_param * params;
  out.peak_inflight =
      inflight_override.value_or(PeakInflightForSchedule(
          config.schedule, config.pipeline_size, q.microbatches,
          config.chunks_per_device));
  out.activation_bytes_per_microbatch = ActivationBytesPerMicrobatch(
      model, config.microbatch_size, q.layers_per_stage,
      config.activation_recompute, knobs);
  if (config.activation_recompute) {
    const double input =
        LayerInputActivationBytes(model, config.microbatch_size, knobs);
    out.checkpoints = OptimalCheckpoints(
        q.layers_per_stage, input, knobs.intermediate_to_input_ratio * input);
  }
  out.activation_bytes = static_cast<double>(out.peak_inflight) *
                         out.activation_bytes_per_microbatch;
  out.total_bytes =
      out.weight_bytes + out.optimizer_bytes + out.activation_bytes;
  out.capacity = capacity;
  out.out_of_memory = out.total_bytes > capacity;
  return out;
}

}  // namespace ptdp
