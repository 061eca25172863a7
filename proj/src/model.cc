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

#include "ptdp/model.h"

#include <string>

#include "ptdp/errors.h"

namespace ptdp {

void ModelSpec::Validate() const {
  auto require_positive = [](std::int64_t v, const char* name) {
    if (v < 1) {
      throw InvalidArgumentError(std::string("model: ") + name +
                                 " must be >= 1, got " + std::to_string(v));
    }
  };
  require_positive(layers, "layers");
  require_positive(hidden_size, "hidden_size");
  require_positive(attention_heads, "attention_heads");
  require_positive(sequence_length, "sequence_length");
  require_positive(vocab_size, "vocab_size");
  if (hidden_size % attention_heads != 0) {
    throw InvalidArgumentError(
        "model: hidden_size " + std::to_string(hidden_size) +
        " is not divisible by attention_heads " +
        std::to_string(attention_heads));
  }
}

void TrainingJob::Validate() const {
  if (global_batch < 1) {
    throw InvalidArgumentError("job: global_batch must be >= 1");
  }
  if (total_tokens < 0) {
    throw InvalidArgumentError("job: total_tokens must be >= 0");
  }
  if (achieved_flops && *achieved_flops <= 0) {
    throw InvalidArgumentError("job: achieved_flops must be > 0");
  }
}

namespace {

using Wide = __int128;

Wide LayerForwardExact(const FlopBreakdown& f) {
  const Wide b = f.batch, s = f.sequence_length, h = f.hidden_size;
  return 6 * b * s * h * h + 2 * b * s * s * h + 2 * b * s * s * h +
         2 * b * s * h * h + 16 * b * s * h * h;
}

Wide TransformerExact(const FlopBreakdown& f) {
  return static_cast<Wide>(f.pass_factor) * f.layers * LayerForwardExact(f);
}

Wide LogitExact(const FlopBreakdown& f) {
  return static_cast<Wide>(6) * f.batch * f.sequence_length * f.hidden_size *
         f.vocab_size;
}

}  // namespace

double FlopBreakdown::LayerForward() const {
  return static_cast<double>(LayerForwardExact(*this));
}

double FlopBreakdown::TransformerTotal() const {
  return static_cast<double>(TransformerExact(*this));
}

double FlopBreakdown::Total() const {
  return static_cast<double>(TransformerExact(*this) + LogitExact(*this));
}

std::int64_t ParamCount(const ModelSpec& spec) {
  spec.Validate();
  const std::int64_t l = spec.layers;
  const std::int64_t h = spec.hidden_size;
  // 12 l h^2 (1 + 13/(12h) + (V+s)/(12lh)) = 12 l h^2 + 13 l h + (V+s) h
  return 12 * l * h * h + 13 * l * h +
         (spec.vocab_size + spec.sequence_length) * h;
}

double FlopsPerIteration(const ModelSpec& spec, std::int64_t global_batch,
                         bool activation_recompute) {
  spec.Validate();
  if (global_batch < 1) {
    throw InvalidArgumentError("flops: global batch must be >= 1");
  }
  // Extended precision keeps the result within rounding of the exact value
  // at scales where B s l h^2 exceeds 2^53.
  using Real = long double;
  const Real B = static_cast<Real>(global_batch);
  const Real s = static_cast<Real>(spec.sequence_length);
  const Real l = static_cast<Real>(spec.layers);
  const Real h = static_cast<Real>(spec.hidden_size);
  const Real V = static_cast<Real>(spec.vocab_size);
  if (activation_recompute) {
    return static_cast<double>(96.0L * B * s * l * h * h *
                               (1.0L + s / (6.0L * h) + V / (16.0L * l * h)));
  }
  // Without recomputation only the transformer term loses its extra forward.
  return static_cast<double>(72.0L * B * s * l * h * h *
                                 (1.0L + s / (6.0L * h)) +
                             6.0L * B * s * h * V);
}

double LayerForwardFlops(const ModelSpec& spec, std::int64_t batch) {
  const double b = static_cast<double>(batch);
  const double s = static_cast<double>(spec.sequence_length);
  const double h = static_cast<double>(spec.hidden_size);
  return 24.0 * b * s * h * h + 4.0 * b * s * s * h;
}

FlopBreakdown ComputeFlopBreakdown(const ModelSpec& spec,
                                   std::int64_t global_batch,
                                   bool activation_recompute) {
  spec.Validate();
  if (global_batch < 1) {
    throw InvalidArgumentError("flops: global batch must be >= 1");
  }
  const double B = static_cast<double>(global_batch);
  const double s = static_cast<double>(spec.sequence_length);
  const double h = static_cast<double>(spec.hidden_size);
  const double V = static_cast<double>(spec.vocab_size);
  FlopBreakdown out;
  out.qkv_transform = 6.0 * B * s * h * h;
  out.attention_matrix = 2.0 * B * s * s * h;
  out.attention_over_values = 2.0 * B * s * s * h;
  out.post_attention_projection = 2.0 * B * s * h * h;
  out.feed_forward = 16.0 * B * s * h * h;
  out.logit_layer = 6.0 * B * s * h * V;
  out.layers = spec.layers;
  out.pass_factor = activation_recompute ? 4 : 3;
  out.batch = global_batch;
  out.sequence_length = spec.sequence_length;
  out.hidden_size = spec.hidden_size;
  out.vocab_size = spec.vocab_size;
  return out;
}

double TrainingTimeEstimate(double params, double tokens, double devices,
                            double flops_per_device) {
  if (params <= 0 || tokens <= 0 || devices <= 0 || flops_per_device <= 0) {
    throw InvalidArgumentError(
        "training time: params, tokens, devices and throughput must be > 0");
  }
  return 8.0 * tokens * params / (devices * flops_per_device);
}

}  // namespace ptdp
