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

#ifndef PTDP_PARALLEL_H_
#define PTDP_PARALLEL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptdp/model.h"

namespace ptdp {

enum class ScheduleKind { kGPipe, kOneFOneB, kInterleaved };

// Canonical names: "gpipe", "1f1b", "interleaved".
std::string_view ScheduleKindName(ScheduleKind kind);
// Accepts the canonical names plus "one_f_one_b".
std::optional<ScheduleKind> ParseScheduleKind(std::string_view name);

struct ParallelConfig {
  std::int64_t pipeline_size = 1;    // p
  std::int64_t tensor_size = 1;      // t
  std::int64_t data_size = 1;        // d
  std::int64_t microbatch_size = 1;  // b
  std::int64_t chunks_per_device = 1;  // v
  ScheduleKind schedule = ScheduleKind::kOneFOneB;
  bool scatter_gather = false;
  bool activation_recompute = true;

  std::int64_t devices() const {
    return pipeline_size * tensor_size * data_size;
  }
  std::int64_t model_parallel_size() const {
    return tensor_size * pipeline_size;
  }

  bool operator==(const ParallelConfig&) const = default;
};

std::string Describe(const ParallelConfig& config);

struct DerivedQuantities {
  std::int64_t devices = 0;               // n = p t d
  std::int64_t microbatches = 0;          // m = B / (d b), per pipeline
  std::int64_t microbatch_ratio = 0;      // b' = B / b
  std::int64_t microbatch_ratio_per_pipeline = 0;  // b' / d
  std::int64_t layers_per_stage = 0;      // l / (p v), per chunk
  std::int64_t layers_per_device = 0;     // l / p
  std::int64_t model_parallel_size = 0;   // M = t p
};

enum class ConfigErrorKind { kInvalidValue, kDivisibility, kBudget };

std::string_view ConfigErrorKindName(ConfigErrorKind kind);

struct ConfigError {
  ConfigErrorKind kind;
  std::string message;
};

// Either the derived quantities or a nonempty list of violated constraints.
struct ValidationResult {
  std::optional<DerivedQuantities> quantities;
  std::vector<ConfigError> errors;

  bool ok() const { return quantities.has_value(); }
  std::string ErrorSummary() const;
};

// Checks a configuration against the model, batch and device budget. Every
// violated constraint is reported, not only the first.
ValidationResult Validate(const ParallelConfig& config, const ModelSpec& model,
                          const TrainingJob& job,
                          std::optional<std::int64_t> device_budget);

// Throws InvalidArgumentError with the joined error list on failure.
DerivedQuantities ValidateOrThrow(const ParallelConfig& config,
                                  const ModelSpec& model,
                                  const TrainingJob& job,
                                  std::optional<std::int64_t> device_budget);

}  // namespace ptdp

#endif  // PTDP_PARALLEL_H_
