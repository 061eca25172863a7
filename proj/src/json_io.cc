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

#include "ptdp/json_io.h"

#include <filesystem>
#include <fstream>

#include "ptdp/errors.h"

namespace ptdp {

namespace {

template <typename T>
T Get(const json& j, const char* key, const char* what) {
  if (!j.contains(key)) {
    throw ParseError(std::string(what) + ": missing key '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": bad value for '" + key +
                     "': " + e.what());
  }
}

template <typename T>
T GetOr(const json& j, const char* key, T fallback, const char* what) {
  if (!j.contains(key)) return fallback;
  return Get<T>(j, key, what);
}

void RequireObject(const json& j, const char* what) {
  if (!j.is_object()) {
    throw ParseError(std::string(what) + ": expected a JSON object");
  }
}

ScheduleKind ScheduleFromString(const std::string& s) {
  const auto kind = ParseScheduleKind(s);
  if (!kind) {
    throw ParseError("unknown schedule '" + s +
                     "' (expected gpipe, 1f1b or interleaved)");
  }
  return *kind;
}

json ResolveDocument(const json& value, const std::string& base_dir) {
  if (!value.is_string()) return value;
  std::filesystem::path path = value.get<std::string>();
  if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
  return LoadJsonFile(path.string());
}

}  // namespace

json LoadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

ModelSpec ModelFromJson(const json& j) {
  RequireObject(j, "model");
  ModelSpec m;
  m.layers = Get<std::int64_t>(j, "layers", "model");
  m.hidden_size = Get<std::int64_t>(j, "hidden_size", "model");
  m.attention_heads = Get<std::int64_t>(j, "attention_heads", "model");
  m.sequence_length = Get<std::int64_t>(j, "sequence_length", "model");
  m.vocab_size = Get<std::int64_t>(j, "vocab_size", "model");
  m.Validate();
  return m;
}

json ToJson(const ModelSpec& m) {
  return {{"layers", m.layers},
          {"hidden_size", m.hidden_size},
          {"attention_heads", m.attention_heads},
          {"sequence_length", m.sequence_length},
          {"vocab_size", m.vocab_size}};
}

HardwareSpec HardwareFromJson(const json& j) {
  RequireObject(j, "hardware");
  HardwareSpec hw = HardwarePreset(GetOr<std::string>(j, "preset", "selene",
                                                      "hardware"));
  hw.gpus_per_node =
      GetOr<std::int64_t>(j, "gpus_per_node", hw.gpus_per_node, "hardware");
  hw.peak_flops = GetOr<double>(j, "peak_flops", hw.peak_flops, "hardware");
  hw.intra_node_bw =
      GetOr<double>(j, "intra_node_bw", hw.intra_node_bw, "hardware");
  hw.inter_node_bw =
      GetOr<double>(j, "inter_node_bw", hw.inter_node_bw, "hardware");
  hw.links_per_node =
      GetOr<std::int64_t>(j, "links_per_node", hw.links_per_node, "hardware");
  hw.efficiency = GetOr<double>(j, "efficiency", hw.efficiency, "hardware");
  hw.intra_node_latency =
      GetOr<double>(j, "intra_node_latency", hw.intra_node_latency, "hardware");
  hw.inter_node_latency =
      GetOr<double>(j, "inter_node_latency", hw.inter_node_latency, "hardware");
  hw.memory_capacity =
      GetOr<double>(j, "memory_capacity", hw.memory_capacity, "hardware");
  hw.Validate();
  return hw;
}

json ToJson(const HardwareSpec& hw) {
  return {{"gpus_per_node", hw.gpus_per_node},
          {"peak_flops", hw.peak_flops},
          {"intra_node_bw", hw.intra_node_bw},
          {"inter_node_bw", hw.inter_node_bw},
          {"links_per_node", hw.links_per_node},
          {"efficiency", hw.efficiency},
          {"intra_node_latency", hw.intra_node_latency},
          {"inter_node_latency", hw.inter_node_latency},
          {"memory_capacity", hw.memory_capacity}};
}

ParallelConfig ParallelConfigFromJson(const json& j) {
  RequireObject(j, "parallel");
  ParallelConfig c;
  const char* w = "parallel";
  c.pipeline_size = GetOr<std::int64_t>(j, "pipeline_size", 1, w);
  c.tensor_size = GetOr<std::int64_t>(j, "tensor_size", 1, w);
  c.data_size = GetOr<std::int64_t>(j, "data_size", 1, w);
  c.microbatch_size = GetOr<std::int64_t>(j, "microbatch_size", 1, w);
  c.chunks_per_device = GetOr<std::int64_t>(j, "chunks_per_device", 1, w);
  c.schedule = ScheduleFromString(GetOr<std::string>(j, "schedule", "1f1b", w));
  c.scatter_gather = GetOr<bool>(j, "scatter_gather", false, w);
  c.activation_recompute = GetOr<bool>(j, "activation_recompute", true, w);
  return c;
}

json ToJson(const ParallelConfig& c) {
  return {{"pipeline_size", c.pipeline_size},
          {"tensor_size", c.tensor_size},
          {"data_size", c.data_size},
          {"microbatch_size", c.microbatch_size},
          {"chunks_per_device", c.chunks_per_device},
          {"schedule", std::string(ScheduleKindName(c.schedule))},
          {"scatter_gather", c.scatter_gather},
          {"activation_recompute", c.activation_recompute}};
}

CostKnobs KnobsFromJson(const json& j, CostKnobs k) {
  RequireObject(j, "knobs");
  const char* w = "knobs";
  k.bytes_per_element =
      GetOr<double>(j, "bytes_per_element", k.bytes_per_element, w);
  k.optimizer_bytes_per_param = GetOr<double>(
      j, "optimizer_bytes_per_param", k.optimizer_bytes_per_param, w);
  k.intermediate_to_input_ratio = GetOr<double>(
      j, "intermediate_to_input_ratio", k.intermediate_to_input_ratio, w);
  k.per_pass_overhead =
      GetOr<double>(j, "per_pass_overhead", k.per_pass_overhead, w);
  k.backward_to_forward_ratio = GetOr<double>(
      j, "backward_to_forward_ratio", k.backward_to_forward_ratio, w);
  k.Validate();
  return k;
}

json ToJson(const CostKnobs& k) {
  return {{"bytes_per_element", k.bytes_per_element},
          {"optimizer_bytes_per_param", k.optimizer_bytes_per_param},
          {"intermediate_to_input_ratio", k.intermediate_to_input_ratio},
          {"per_pass_overhead", k.per_pass_overhead},
          {"backward_to_forward_ratio", k.backward_to_forward_ratio}};
}

PlanQuery PlanQueryFromJson(const json& j, const std::string& base_dir) {
  RequireObject(j, "plan query");
  const char* w = "plan query";
  PlanQuery q;
  q.devices = Get<std::int64_t>(j, "devices", w);
  q.global_batch = Get<std::int64_t>(j, "global_batch", w);
  if (!j.contains("model")) throw ParseError("plan query: missing key 'model'");
  q.model = ModelFromJson(ResolveDocument(j.at("model"), base_dir));
  if (j.contains("hardware")) {
    q.hardware = HardwareFromJson(ResolveDocument(j.at("hardware"), base_dir));
  } else if (j.contains("preset")) {
    q.hardware = HardwarePreset(Get<std::string>(j, "preset", w));
  }
  if (j.contains("schedules")) {
    q.schedules.clear();
    for (const auto& s : Get<std::vector<std::string>>(j, "schedules", w)) {
      q.schedules.push_back(ScheduleFromString(s));
    }
  }
  q.microbatch_sizes =
      GetOr<std::vector<std::int64_t>>(j, "microbatch_sizes",
                                       q.microbatch_sizes, w);
  if (j.contains("recompute_modes")) {
    q.recompute_modes.clear();
    for (bool b : Get<std::vector<bool>>(j, "recompute_modes", w)) {
      q.recompute_modes.push_back(b);
    }
  }
  q.scatter_gather = GetOr<bool>(j, "scatter_gather", q.scatter_gather, w);
  q.allow_cross_node_tensor = GetOr<bool>(j, "allow_cross_node_tensor",
                                          q.allow_cross_node_tensor, w);
  if (j.contains("knobs")) q.knobs = KnobsFromJson(j.at("knobs"), q.knobs);
  q.use_simulator = GetOr<bool>(j, "simulate", q.use_simulator, w);
  q.simulate_top_k =
      GetOr<std::int64_t>(j, "simulate_top_k", q.simulate_top_k, w);
  q.Validate();
  return q;
}

json ToJson(const MemoryFootprint& m) {
  return {{"weight_bytes", m.weight_bytes},
          {"optimizer_bytes", m.optimizer_bytes},
          {"activation_bytes", m.activation_bytes},
          {"total_bytes", m.total_bytes},
          {"activation_bytes_per_microbatch", m.activation_bytes_per_microbatch},
          {"peak_inflight", m.peak_inflight},
          {"checkpoints", m.checkpoints},
          {"capacity", m.capacity},
          {"out_of_memory", m.out_of_memory}};
}

json ToJson(const IterationEstimate& e) {
  return {{"compute_seconds", e.compute_seconds},
          {"tp_comm_seconds", e.tp_comm_seconds},
          {"pp_comm_seconds", e.pp_comm_seconds},
          {"dp_comm_seconds", e.dp_comm_seconds},
          {"total_seconds", e.total_seconds},
          {"bubble_fraction", e.bubble.value()},
          {"bubble_num", e.bubble.num},
          {"bubble_den", e.bubble.den},
          {"forward_seconds", e.durations.forward},
          {"backward_seconds", e.durations.backward},
          {"simulated", e.simulated}};
}

json ToJson(const PlanResult& r) {
  json j = {{"config", ToJson(r.config)},
            {"feasible", r.feasible},
            {"reasons", r.reasons}};
  if (r.feasible || r.estimate.total_seconds > 0) {
    j["estimate"] = ToJson(r.estimate);
    j["flops_per_device"] = r.flops_per_device;
    j["sequences_per_second"] = r.sequences_per_second;
    j["memory"] = ToJson(r.memory);
    j["comm"] = {{"intra_node_bytes", r.comm.intra_node_bytes},
                 {"inter_node_bytes", r.comm.inter_node_bytes}};
  }
  return j;
}

json ToJson(const Timeline& tl) {
  json events = json::array();
  for (const auto& lane : tl.devices) {
    for (const auto& t : lane) {
      events.push_back({{"device", t.device},
                        {"microbatch", t.task.microbatch},
                        {"chunk", t.task.chunk},
                        {"stage", t.stage},
                        {"kind", std::string(DirectionName(t.task.direction))},
                        {"start", t.start},
                        {"end", t.end}});
    }
  }
  json comm = json::array();
  for (const auto& e : tl.comm) {
    comm.push_back({{"microbatch", e.microbatch},
                    {"kind", std::string(DirectionName(e.direction))},
                    {"from_stage", e.from_stage},
                    {"to_stage", e.to_stage},
                    {"from_device", e.from_device},
                    {"to_device", e.to_device},
                    {"volume", e.volume},
                    {"start", e.start},
                    {"end", e.end},
                    {"link", std::string(LinkClassName(e.link))}});
  }
  return {{"schedule", std::string(ScheduleKindName(tl.kind))},
          {"p", tl.p},
          {"m", tl.m},
          {"v", tl.v},
          {"batches", tl.batches},
          {"forward_seconds", tl.durations.forward},
          {"backward_seconds", tl.durations.backward},
          {"span", tl.span},
          {"events", events},
          {"comm", comm}};
}

namespace {

Direction DirectionFromString(const std::string& s) {
  if (s == "forward") return Direction::kForward;
  if (s == "backward") return Direction::kBackward;
  throw ParseError("timeline: unknown task kind '" + s + "'");
}

}  // namespace

Timeline TimelineFromJson(const json& j) {
  RequireObject(j, "timeline");
  const char* w = "timeline";
  Timeline tl;
  tl.kind = ScheduleFromString(Get<std::string>(j, "schedule", w));
  tl.p = Get<std::int64_t>(j, "p", w);
  tl.m = Get<std::int64_t>(j, "m", w);
  tl.v = Get<std::int64_t>(j, "v", w);
  tl.batches = GetOr<std::int64_t>(j, "batches", 1, w);
  tl.durations.forward = Get<double>(j, "forward_seconds", w);
  tl.durations.backward = Get<double>(j, "backward_seconds", w);
  tl.span = Get<double>(j, "span", w);
  if (tl.p < 1) throw ParseError("timeline: p must be >= 1");
  tl.devices.resize(static_cast<std::size_t>(tl.p));
  for (const auto& e : Get<json>(j, "events", w)) {
    TimedTask t;
    t.device = Get<std::int64_t>(e, "device", w);
    t.task.microbatch = Get<std::int64_t>(e, "microbatch", w);
    t.task.chunk = Get<std::int64_t>(e, "chunk", w);
    t.stage = Get<std::int64_t>(e, "stage", w);
    t.task.direction = DirectionFromString(Get<std::string>(e, "kind", w));
    t.start = Get<double>(e, "start", w);
    t.end = Get<double>(e, "end", w);
    if (t.device < 0 || t.device >= tl.p) {
      throw ParseError("timeline: event device out of range");
    }
    tl.devices[static_cast<std::size_t>(t.device)].push_back(t);
  }
  for (const auto& e : GetOr<json>(j, "comm", json::array(), w)) {
    CommEvent c;
    c.microbatch = Get<std::int64_t>(e, "microbatch", w);
    c.direction = DirectionFromString(Get<std::string>(e, "kind", w));
    c.from_stage = Get<std::int64_t>(e, "from_stage", w);
    c.to_stage = Get<std::int64_t>(e, "to_stage", w);
    c.from_device = Get<std::int64_t>(e, "from_device", w);
    c.to_device = Get<std::int64_t>(e, "to_device", w);
    c.volume = Get<double>(e, "volume", w);
    c.start = Get<double>(e, "start", w);
    c.end = Get<double>(e, "end", w);
    c.link = Get<std::string>(e, "link", w) == "intra_node"
                 ? LinkClass::kIntraNode
                 : LinkClass::kInterNode;
    tl.comm.push_back(c);
  }
  return tl;
}

}  // namespace ptdp
