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

#ifndef PTDP_JSON_IO_H_
#define PTDP_JSON_IO_H_

#include <string>

#include "json.hpp"
#include "ptdp/hardware.h"
#include "ptdp/model.h"
#include "ptdp/parallel.h"
#include "ptdp/planner.h"
#include "ptdp/schedule.h"

namespace ptdp {

using json = nlohmann::json;

// Reads and parses a JSON document; ParseError messages name the path.
json LoadJsonFile(const std::string& path);

// Keys: layers, hidden_size, attention_heads, sequence_length, vocab_size.
ModelSpec ModelFromJson(const json& j);
json ToJson(const ModelSpec& model);

// Missing keys keep the Selene defaults; {"preset": "selene"} selects a
// preset explicitly.
HardwareSpec HardwareFromJson(const json& j);
json ToJson(const HardwareSpec& hw);

// Keys: pipeline_size, tensor_size, data_size, microbatch_size,
// chunks_per_device, schedule, scatter_gather, activation_recompute.
ParallelConfig ParallelConfigFromJson(const json& j);
json ToJson(const ParallelConfig& config);

CostKnobs KnobsFromJson(const json& j, CostKnobs defaults);
json ToJson(const CostKnobs& knobs);

// Query document. "model" may be an inline object or a path string resolved
// relative to `base_dir`; likewise "hardware". A "preset" key names a
// hardware preset.
PlanQuery PlanQueryFromJson(const json& j, const std::string& base_dir = "");

json ToJson(const PlanResult& result);
json ToJson(const MemoryFootprint& memory);
json ToJson(const IterationEstimate& estimate);

// Event log: header (schedule, p, m, v, batches, durations, span) plus one
// record per task {device, microbatch, chunk, stage, kind, start, end} and per
// transfer.
json ToJson(const Timeline& timeline);
Timeline TimelineFromJson(const json& j);

}  // namespace ptdp

#endif  // PTDP_JSON_IO_H_
