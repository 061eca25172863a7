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

#ifndef PTDP_PLANNER_H_
#define PTDP_PLANNER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ptdp/costs.h"
#include "ptdp/hardware.h"
#include "ptdp/model.h"
#include "ptdp/parallel.h"

namespace ptdp {

// Exact non-negative rational, always reduced.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction Make(std::int64_t num, std::int64_t den);
  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  bool operator==(const Fraction&) const = default;
};

// Analytical bubble fraction (p-1) / (v m).
Fraction PipelineBubbleFraction(std::int64_t p, std::int64_t m,
                                std::int64_t v = 1);

// Bubble of a t=1 configuration with n devices, data-parallel size d and
// b' = B/b: (n - d) / b'.
Fraction DataParallelBubbleFraction(std::int64_t n, std::int64_t d,
                                    std::int64_t b_prime);

// Per-device forward/backward times as a function of the microbatch size.
using DurationModel = std::function<TaskDurations(std::int64_t b)>;

struct EstimateOptions {
  bool zero_comm = false;
  bool use_simulator = false;
  bool allow_cross_node_tensor = false;
  // Replaces the FLOP-derived durations when set.
  DurationModel durations;
};

struct IterationEstimate {
  double compute_seconds = 0;  // (m + (p-1)/v) (tf + tb)
  double tp_comm_seconds = 0;  // tensor all-reduces inside every pass
  double pp_comm_seconds = 0;  // exposed pipeline transfers
  double dp_comm_seconds = 0;  // gradient all-reduce, once per batch
  double total_seconds = 0;
  Fraction bubble;
  TaskDurations durations;
  bool simulated = false;
};

// Modeled time of one training iteration.
//
// The compute term is (B/(d b) + (p-1)/v) (tf(b) + tb(b)), which for v=1 is
// (b'/b + p - 1)(tf + tb) with b' = B/d. Tensor all-reduce time is added to
// every pass, the pipeline fill and drain each expose p v - 1 boundary
// transfers, and the gradient all-reduce runs once per batch without overlap.
// With use_simulator the compute and pipeline terms come from the event
// simulator instead.
IterationEstimate EstimateIterationTime(const ParallelConfig& config,
                                        const ModelSpec& model,
                                        const TrainingJob& job,
                                        const HardwareSpec& hw,
                                        const CostKnobs& knobs,
                                        const EstimateOptions& options = {});

struct PlanQuery {
  std::int64_t devices = 1;
  std::int64_t global_batch = 1;
  ModelSpec model;
  HardwareSpec hardware;
  std::vector<ScheduleKind> schedules = {ScheduleKind::kGPipe,
                                         ScheduleKind::kOneFOneB,
                                         ScheduleKind::kInterleaved};
  std::vector<std::int64_t> microbatch_sizes = {1, 2, 4, 8, 16};
  std::vector<bool> recompute_modes = {true, false};
  bool scatter_gather = true;
  bool allow_cross_node_tensor = false;
  CostKnobs knobs = DefaultPlannerKnobs();
  bool use_simulator = false;
  std::int64_t simulate_top_k = 10;
  unsigned threads = 0;  // 0 picks hardware concurrency

  static CostKnobs DefaultPlannerKnobs() {
    CostKnobs k;
    k.per_pass_overhead = 20e-6;
    return k;
  }
  void Validate() const;
};

struct CommTotals {
  double intra_node_bytes = 0;
  double inter_node_bytes = 0;
};

struct PlanResult {
  ParallelConfig config;
  IterationEstimate estimate;
  double flops_per_device = 0;  // modeled achieved FLOP/s
  double sequences_per_second = 0;
  MemoryFootprint memory;
  CommTotals comm;  // per device per iteration
  bool feasible = true;
  std::vector<std::string> reasons;  // why infeasible
};

struct PlanOutput {
  std::vector<PlanResult> ranked;      // feasible, best first
  std::vector<PlanResult> infeasible;  // with reasons, candidate order
};

// All feasible configurations for the query: p t d = n, t <= g unless
// cross-node tensor parallelism is allowed, the divisibility rules of
// Validate, and a memory footprint within capacity. Interleaved candidates
// use every v >= 2 that divides l/p.
std::vector<ParallelConfig> EnumerateConfigs(const PlanQuery& query);

// Enumerate, estimate, and sort by modeled iteration time; ties prefer
// smaller t p, then larger d, then smaller b. Throws EmptyPlanError listing
// the binding constraints when nothing is feasible.
PlanOutput Plan(const PlanQuery& query);

// Evaluates one configuration the way Plan does (memory, estimate, totals).
PlanResult EvaluateConfig(const ParallelConfig& config, const PlanQuery& query);

struct SweepPoint {
  std::int64_t x = 0;  // microbatch size or global batch
  bool ok = false;
  std::string reason;
  double iteration_seconds = 0;
  double sequences_per_second = 0;
  double flops_per_device = 0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::optional<std::size_t> best;  // index of max throughput
};

// Microbatch-size sweep at a fixed (p, t, d); the config's b is
// replaced by each candidate. Candidates that do not divide B/d are kept as
// skipped points.
SweepResult MicrobatchSweep(const ParallelConfig& config, const ModelSpec& model,
                            const TrainingJob& job, const HardwareSpec& hw,
                            const CostKnobs& knobs,
                            const std::vector<std::int64_t>& candidates,
                            const EstimateOptions& options = {});

// Global-batch sweep at a fixed configuration.
SweepResult BatchSweep(const ParallelConfig& config, const ModelSpec& model,
                       const HardwareSpec& hw, const CostKnobs& knobs,
                       const std::vector<std::int64_t>& batches,
                       const EstimateOptions& options = {});

}  // namespace ptdp

#endif  // PTDP_PLANNER_H_
