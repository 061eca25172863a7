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

#include "ptdp/parallel.h"

#include <sstream>

#include "ptdp/errors.h"

namespace ptdp {

std::string_view ScheduleKindName(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::kGPipe:
      return "gpipe";
    case ScheduleKind::kOneFOneB:
      return "1f1b";
    case ScheduleKind::kInterleaved:
      return "interleaved";
  }
  return "unknown";
}

std::optional<ScheduleKind> ParseScheduleKind(std::string_view name) {
  if (name == "gpipe") return ScheduleKind::kGPipe;
  if (name == "1f1b" || name == "one_f_one_b") return ScheduleKind::kOneFOneB;
  if (name == "interleaved") return ScheduleKind::kInterleaved;
  return std::nullopt;
}

std::string Describe(const ParallelConfig& c) {
  std::ostringstream os;
  os << "p=" << c.pipeline_size << " t=" << c.tensor_size
     << " d=" << c.data_size << " b=" << c.microbatch_size
     << " v=" << c.chunks_per_device << " " << ScheduleKindName(c.schedule);
  if (c.scatter_gather) os << " +sg";
  os << (c.activation_recompute ? " +recompute" : " -recompute");
  return os.str();
}

std::string_view ConfigErrorKindName(ConfigErrorKind kind) {
  switch (kind) {
    case ConfigErrorKind::kInvalidValue:
      return "InvalidValue";
    case ConfigErrorKind::kDivisibility:
      return "DivisibilityError";
    case ConfigErrorKind::kBudget:
      return "BudgetError";
  }
  return "Unknown";
}

std::string ValidationResult::ErrorSummary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i) os << "; ";
    os << ConfigErrorKindName(errors[i].kind) << ": " << errors[i].message;
  }
  return os.str();
}

ValidationResult Validate(const ParallelConfig& c, const ModelSpec& model,
                          const TrainingJob& job,
                          std::optional<std::int64_t> device_budget) {
  ValidationResult result;
  auto fail = [&](ConfigErrorKind kind, std::string msg) {
    result.errors.push_back({kind, std::move(msg)});
  };
  auto positive = [&](std::int64_t v, const char* name) {
    if (v < 1) {
      fail(ConfigErrorKind::kInvalidValue,
           std::string(name) + " must be >= 1, got " + std::to_string(v));
      return false;
    }
    return true;
  };
  bool values_ok = positive(c.pipeline_size, "p");
  values_ok &= positive(c.tensor_size, "t");
  values_ok &= positive(c.data_size, "d");
  values_ok &= positive(c.microbatch_size, "b");
  values_ok &= positive(c.chunks_per_device, "v");
  values_ok &= positive(job.global_batch, "B");
  try {
    model.Validate();
  } catch (const InvalidArgumentError& e) {
    fail(ConfigErrorKind::kInvalidValue, e.what());
    values_ok = false;
  }
  if (c.chunks_per_device > 1 && c.schedule != ScheduleKind::kInterleaved) {
    fail(ConfigErrorKind::kInvalidValue,
         "v=" + std::to_string(c.chunks_per_device) +
             " requires the interleaved schedule");
  }
  if (!values_ok) return result;

  const std::int64_t p = c.pipeline_size;
  const std::int64_t t = c.tensor_size;
  const std::int64_t d = c.data_size;
  const std::int64_t b = c.microbatch_size;
  const std::int64_t v = c.chunks_per_device;
  const std::int64_t B = job.global_batch;
  const std::int64_t l = model.layers;

  if (device_budget && p * t * d != *device_budget) {
    fail(ConfigErrorKind::kBudget,
         "p*t*d=" + std::to_string(p * t * d) + " does not equal the budget " +
             std::to_string(*device_budget));
  }
  const bool batch_divides = B % (d * b) == 0;
  if (!batch_divides) {
    fail(ConfigErrorKind::kDivisibility,
         "B=" + std::to_string(B) + " is not divisible by d*b=" +
             std::to_string(d * b));
  }
  if (l % (p * v) != 0) {
    fail(ConfigErrorKind::kDivisibility,
         "l=" + std::to_string(l) + " is not divisible by p*v=" +
             std::to_string(p * v));
  }
  if (batch_divides && c.schedule == ScheduleKind::kInterleaved) {
    const std::int64_t m = B / (d * b);
    if (m % p != 0) {
      fail(ConfigErrorKind::kDivisibility,
           "m=" + std::to_string(m) + " is not a multiple of p=" +
               std::to_string(p) + " (interleaved schedule)");
    }
  }
  if (!result.errors.empty()) return result;

  DerivedQuantities q;
  q.devices = p * t * d;
  q.microbatches = B / (d * b);
  q.microbatch_ratio = B / b;
  q.microbatch_ratio_per_pipeline = q.microbatch_ratio / d;
  q.layers_per_stage = l / (p * v);
  q.layers_per_device = l / p;
  q.model_parallel_size = t * p;
  result.quantities = q;
  return result;
}

DerivedQuantities ValidateOrThrow(const ParallelConfig& config,
                                  const ModelSpec& model,
                                  const TrainingJob& job,
                                  std::optional<std::int64_t> device_budget) {
  ValidationResult r = Validate(config, model, job, device_budget);
  if (!r.ok()) throw InvalidArgumentError(r.ErrorSummary());
  return *r.quantities;
}

}  // namespace ptdp
