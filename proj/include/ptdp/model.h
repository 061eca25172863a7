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

#ifndef PTDP_MODEL_H_
#define PTDP_MODEL_H_

#include <cstdint>
#include <optional>

namespace ptdp {

// GPT-style decoder-only transformer. All cost formulas derive from these
// five numbers.
struct ModelSpec {
  std::int64_t layers = 1;
  std::int64_t hidden_size = 1;
  std::int64_t attention_heads = 1;
  std::int64_t sequence_length = 1;
  std::int64_t vocab_size = 1;

  // Throws InvalidArgumentError when a field is < 1 or the hidden size is not
  // a multiple of the head count.
  void Validate() const;

  bool operator==(const ModelSpec&) const = default;
};

struct TrainingJob {
  std::int64_t global_batch = 1;  // sequences per iteration
  double total_tokens = 0;
  // Achieved FLOP/s per device; only needed for training-time estimates.
  std::optional<double> achieved_flops;

  void Validate() const;
};

// Per-iteration FLOPs of the GEMMs in the transformer and logit layers.
// The per-layer fields are forward-pass counts for a single layer; the
// totals apply the pass multiplier and the layer count.
struct FlopBreakdown {
  double qkv_transform = 0;              // 6 B s h^2
  double attention_matrix = 0;           // 2 B s^2 h
  double attention_over_values = 0;      // 2 B s^2 h
  double post_attention_projection = 0;  // 2 B s h^2
  double feed_forward = 0;               // 16 B s h^2
  double logit_layer = 0;                // 6 B s h V (forward + backward)
  std::int64_t layers = 0;
  // 4 with activation recomputation (fwd + 2x bwd + recomputed fwd), else 3.
  int pass_factor = 4;
  // Inputs the terms were evaluated for. The sums below are computed in
  // exact integer arithmetic from these and rounded once.
  std::int64_t batch = 0;
  std::int64_t sequence_length = 0;
  std::int64_t hidden_size = 0;
  std::int64_t vocab_size = 0;

  double LayerForward() const;
  double TransformerTotal() const;
  double Total() const;
};

// Parameter count of the model, 12 l h^2 (1 + 13/(12h) + (V+s)/(12 l h)).
// The expression is an integer polynomial, so it is evaluated exactly.
std::int64_t ParamCount(const ModelSpec& spec);

// FLOPs per training iteration for a global batch of `global_batch`
// sequences. With recompute on this is 96 B s l h^2 (1 + s/(6h) + V/(16 l h));
// with recompute off the transformer term is scaled by 3/4.
double FlopsPerIteration(const ModelSpec& spec, std::int64_t global_batch,
                         bool activation_recompute = true);

FlopBreakdown ComputeFlopBreakdown(const ModelSpec& spec,
                                   std::int64_t global_batch,
                                   bool activation_recompute = true);

// Forward-pass FLOPs of one transformer layer for `batch` sequences.
double LayerForwardFlops(const ModelSpec& spec, std::int64_t batch);

// End-to-end training time in seconds, 8 T P / (n X).
double TrainingTimeEstimate(double params, double tokens, double devices,
                            double flops_per_device);

inline constexpr double kSecondsPerDay = 86400.0;

}  // namespace ptdp

#endif  // PTDP_MODEL_H_
