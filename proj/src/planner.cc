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

#include "ptdp/planner.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

#include "ptdp/errors.h"
#include "ptdp/schedule.h"

namespace ptdp {

Fraction Fraction::Make(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw InvalidArgumentError("fraction: denominator must be > 0");
  const std::int64_t g = std::gcd(num, den);
  if (g == 0) return {0, 1};
  return {num / g, den / g};
}

Fraction PipelineBubbleFraction(std::int64_t p, std::int64_t m,
                                std::int64_t v) {
  return Fraction::Make(p - 1, v * m);
}

Fraction DataParallelBubbleFraction(std::int64_t n, std::int64_t d,
                                    std::int64_t b_prime) {
  return Fraction::Make(n - d, b_prime);
}

IterationEstimate EstimateIterationTime(const ParallelConfig& config,
                                        const ModelSpec& model,
                                        const TrainingJob& job,
                                        const HardwareSpec& hw,
                                        const CostKnobs& knobs,
                                        const EstimateOptions& options) {
  const DerivedQuantities q = ValidateOrThrow(config, model, job, std::nullopt);
  const std::int64_t p = config.pipeline_size;
  const std::int64_t t = config.tensor_size;
  const std::int64_t d = config.data_size;
  const std::int64_t v = config.chunks_per_device;
  const RankMapping mapping = DefaultMapping(p, t, d, hw,
                                             options.allow_cross_node_tensor);

  IterationEstimate est;
  est.durations = options.durations
                      ? options.durations(config.microbatch_size)
                      : ComputeTaskDurations(model, config, hw, knobs);
  est.bubble = PipelineBubbleFraction(p, q.microbatches, v);
  const double passes = static_cast<double>(q.microbatches) +
                        static_cast<double>(p - 1) / static_cast<double>(v);

  const CommVolumes volumes = ComputeCommVolumes(model, config, mapping, knobs);
  double tp_per_microbatch = 0;
  if (!options.zero_comm && t > 1) {
    // Two all-reduces in the forward and two in the backward of every layer.
    tp_per_microbatch =
        volumes.tp_allreduce_per_microbatch_per_device /
            LinkBandwidth(volumes.tp_link, hw) +
        4.0 * static_cast<double>(q.layers_per_device) *
            LinkLatency(volumes.tp_link, hw);
  }
  if (!options.zero_comm && d > 1) {
    est.dp_comm_seconds = DataParallelAllReduceCost(
        knobs.bytes_per_element * ParamsPerDevice(model, config), d,
        DataParallelBandwidth(mapping, hw));
  }
  est.compute_seconds = passes * est.durations.total();
  est.tp_comm_seconds = passes * tp_per_microbatch;

  if (options.use_simulator) {
    TaskDurations sim = est.durations;
    sim.forward += 0.5 * tp_per_microbatch;
    sim.backward += 0.5 * tp_per_microbatch;
    const StaticSchedule schedule =
        BuildSchedule(config.schedule, p, q.microbatches, v);
    const Timeline tl = Simulate(schedule, sim,
                                 CommModel{volumes, hw, mapping,
                                           options.zero_comm});
    est.pp_comm_seconds =
        std::max(0.0, tl.span - est.compute_seconds - est.tp_comm_seconds);
    est.total_seconds = tl.span + est.dp_comm_seconds;
    est.simulated = true;
    return est;
  }

  if (!options.zero_comm && p > 1) {
    est.pp_comm_seconds = 2.0 * static_cast<double>(p * v - 1) *
                          PipelineTransferTime(volumes, volumes.pp_link, hw);
  }
  est.total_seconds = est.compute_seconds + est.tp_comm_seconds +
                      est.pp_comm_seconds + est.dp_comm_seconds;
  return est;
}

void PlanQuery::Validate() const {
  if (devices < 1) throw InvalidArgumentError("plan: devices must be >= 1");
  if (global_batch < 1) {
    throw InvalidArgumentError("plan: global_batch must be >= 1");
  }
  model.Validate();
  hardware.Validate();
  knobs.Validate();
  if (schedules.empty()) {
    throw InvalidArgumentError("plan: no schedule kinds allowed");
  }
  if (microbatch_sizes.empty()) {
    throw InvalidArgumentError("plan: no microbatch candidates");
  }
  for (auto b : microbatch_sizes) {
    if (b < 1) throw InvalidArgumentError("plan: microbatch sizes must be >= 1");
  }
  if (recompute_modes.empty()) {
    throw InvalidArgumentError("plan: no activation recompute mode allowed");
  }
}

namespace {

std::vector<std::int64_t> Divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t k = 1; k <= n; ++k) {
    if (n % k == 0) out.push_back(k);
  }
  return out;
}

// Every candidate the planner considers, feasible or not.
std::vector<ParallelConfig> Candidates(const PlanQuery& query) {
  std::vector<ParallelConfig> out;
  const std::int64_t n = query.devices;
  const std::int64_t l = query.model.layers;
  for (std::int64_t t : Divisors(n)) {
    for (std::int64_t p : Divisors(n / t)) {
      const std::int64_t d = n / (t * p);
      for (ScheduleKind kind : query.schedules) {
        std::vector<std::int64_t> chunk_counts = {1};
        if (kind == ScheduleKind::kInterleaved) {
          if (p == 1) continue;
          chunk_counts.clear();
          if (l % p != 0) {
            chunk_counts.push_back(2);
          } else {
            for (std::int64_t v : Divisors(l / p)) {
              if (v >= 2) chunk_counts.push_back(v);
            }
          }
        }
        for (std::int64_t v : chunk_counts) {
          for (std::int64_t b : query.microbatch_sizes) {
            for (bool recompute : query.recompute_modes) {
              ParallelConfig c;
              c.pipeline_size = p;
              c.tensor_size = t;
              c.data_size = d;
              c.microbatch_size = b;
              c.chunks_per_device = v;
              c.schedule = kind;
              c.scatter_gather = query.scatter_gather && t > 1;
              c.activation_recompute = recompute;
              out.push_back(c);
            }
          }
        }
      }
    }
  }
  return out;
}

// Short category used to summarize binding constraints.
std::string ReasonCategory(const std::string& reason) {
  const auto colon = reason.find(':');
  return colon == std::string::npos ? reason : reason.substr(0, colon);
}

bool RankBefore(const PlanResult& a, const PlanResult& b) {
  const auto& ca = a.config;
  const auto& cb = b.config;
  return std::make_tuple(a.estimate.total_seconds, ca.model_parallel_size(),
                         -ca.data_size, ca.microbatch_size,
                         static_cast<int>(ca.schedule), ca.chunks_per_device,
                         !ca.activation_recompute, ca.pipeline_size) <
         std::make_tuple(b.estimate.total_seconds, cb.model_parallel_size(),
                         -cb.data_size, cb.microbatch_size,
                         static_cast<int>(cb.schedule), cb.chunks_per_device,
                         !cb.activation_recompute, cb.pipeline_size);
}

template <typename Fn>
void ParallelFor(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

PlanResult EvaluateConfig(const ParallelConfig& config, const PlanQuery& query) {
  PlanResult r;
  r.config = config;
  const TrainingJob job{query.global_batch, 0, std::nullopt};
  const HardwareSpec& hw = query.hardware;
  const std::int64_t t = config.tensor_size;

  if (t > hw.gpus_per_node && !query.allow_cross_node_tensor) {
    r.reasons.push_back("MappingError: t=" + std::to_string(t) +
                        " exceeds gpus_per_node=" +
                        std::to_string(hw.gpus_per_node) +
                        " (cross-node tensor parallelism disabled)");
  }
  const ValidationResult v =
      Validate(config, query.model, job, query.devices);
  for (const auto& e : v.errors) {
    r.reasons.push_back(std::string(ConfigErrorKindName(e.kind)) + ": " +
                        e.message);
  }
  if (!r.reasons.empty()) {
    r.feasible = false;
    return r;
  }

  r.memory = ComputeMemoryFootprint(query.model, config, job, query.knobs,
                                    hw.memory_capacity);
  if (r.memory.out_of_memory) {
    std::ostringstream os;
    os << "OutOfMemory: " << r.memory.total_bytes / 1e9 << " GB exceeds "
       << r.memory.capacity / 1e9 << " GB";
    r.reasons.push_back(os.str());
    r.feasible = false;
  }

  EstimateOptions opts;
  opts.allow_cross_node_tensor = query.allow_cross_node_tensor;
  r.estimate = EstimateIterationTime(config, query.model, job, hw, query.knobs,
                                     opts);
  const double flops = FlopsPerIteration(query.model, query.global_batch,
                                         config.activation_recompute);
  r.flops_per_device = flops / (static_cast<double>(config.devices()) *
                                r.estimate.total_seconds);
  r.sequences_per_second =
      static_cast<double>(query.global_batch) / r.estimate.total_seconds;

  const RankMapping mapping =
      DefaultMapping(config.pipeline_size, t, config.data_size, hw,
                     query.allow_cross_node_tensor);
  const CommVolumes vol =
      ComputeCommVolumes(query.model, config, mapping, query.knobs);
  auto add = [&](LinkClass link, double bytes) {
    (link == LinkClass::kIntraNode ? r.comm.intra_node_bytes
                                   : r.comm.inter_node_bytes) += bytes;
  };
  const double m = static_cast<double>(v.quantities->microbatches);
  if (config.pipeline_size > 1) {
    // One send per chunk per microbatch in each direction.
    add(vol.pp_link, 2.0 * m * static_cast<double>(config.chunks_per_device) *
                         vol.pp_p2p_per_microbatch);
  }
  add(vol.tp_link, m * vol.tp_allreduce_per_microbatch_per_device);
  add(vol.dp_link, vol.dp_allreduce_per_batch);
  return r;
}

std::vector<ParallelConfig> EnumerateConfigs(const PlanQuery& query) {
  std::vector<ParallelConfig> out;
  for (const auto& r : Plan(query).ranked) out.push_back(r.config);
  return out;
}

PlanOutput Plan(const PlanQuery& query) {
  query.Validate();
  const std::vector<ParallelConfig> candidates = Candidates(query);
  std::vector<PlanResult> results(candidates.size());
  ParallelFor(candidates.size(), query.threads, [&](std::size_t i) {
    results[i] = EvaluateConfig(candidates[i], query);
  });

  PlanOutput out;
  for (auto& r : results) {
    (r.feasible ? out.ranked : out.infeasible).push_back(std::move(r));
  }
  std::sort(out.ranked.begin(), out.ranked.end(), RankBefore);

  if (query.use_simulator && !out.ranked.empty()) {
    const std::size_t k = std::min<std::size_t>(
        out.ranked.size(),
        static_cast<std::size_t>(std::max<std::int64_t>(query.simulate_top_k, 0)));
    const TrainingJob job{query.global_batch, 0, std::nullopt};
    ParallelFor(k, query.threads, [&](std::size_t i) {
      PlanResult& r = out.ranked[i];
      EstimateOptions opts;
      opts.use_simulator = true;
      opts.allow_cross_node_tensor = query.allow_cross_node_tensor;
      r.estimate = EstimateIterationTime(r.config, query.model, job,
                                         query.hardware, query.knobs, opts);
      const double flops = FlopsPerIteration(query.model, query.global_batch,
                                             r.config.activation_recompute);
      r.flops_per_device = flops / (static_cast<double>(r.config.devices()) *
                                    r.estimate.total_seconds);
      r.sequences_per_second =
          static_cast<double>(query.global_batch) / r.estimate.total_seconds;
    });
    std::sort(out.ranked.begin(),
              out.ranked.begin() + static_cast<std::ptrdiff_t>(k), RankBefore);
  }

  if (out.ranked.empty()) {
    std::map<std::string, std::int64_t> counts;
    for (const auto& r : out.infeasible) {
      for (const auto& reason : r.reasons) ++counts[ReasonCategory(reason)];
    }
    std::ostringstream os;
    os << "no feasible configuration for n=" << query.devices
       << " B=" << query.global_batch << " among " << candidates.size()
       << " candidates; binding constraints:";
    for (const auto& [category, count] : counts) {
      os << " " << category << " x" << count << ";";
    }
    throw EmptyPlanError(os.str());
  }
  return out;
}

namespace {

SweepPoint EvaluatePoint(std::int64_t x, const ParallelConfig& config,
                         const ModelSpec& model, const TrainingJob& job,
                         const HardwareSpec& hw, const CostKnobs& knobs,
                         const EstimateOptions& options) {
  SweepPoint pt;
  pt.x = x;
  const ValidationResult v = Validate(config, model, job, std::nullopt);
  if (!v.ok()) {
    pt.reason = v.ErrorSummary();
    return pt;
  }
  try {
    const IterationEstimate est =
        EstimateIterationTime(config, model, job, hw, knobs, options);
    pt.ok = true;
    pt.iteration_seconds = est.total_seconds;
    pt.sequences_per_second =
        static_cast<double>(job.global_batch) / est.total_seconds;
    pt.flops_per_device =
        FlopsPerIteration(model, job.global_batch,
                          config.activation_recompute) /
        (static_cast<double>(config.devices()) * est.total_seconds);
  } catch (const Error& e) {
    pt.reason = e.what();
  }
  return pt;
}

void PickBest(SweepResult& result, bool by_flops) {
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& pt = result.points[i];
    if (!pt.ok) continue;
    const double value = by_flops ? pt.flops_per_device : pt.sequences_per_second;
    if (!result.best) {
      result.best = i;
      continue;
    }
    const auto& cur = result.points[*result.best];
    const double best =
        by_flops ? cur.flops_per_device : cur.sequences_per_second;
    if (value > best) result.best = i;
  }
}

}  // namespace

SweepResult MicrobatchSweep(const ParallelConfig& config, const ModelSpec& model,
                            const TrainingJob& job, const HardwareSpec& hw,
                            const CostKnobs& knobs,
                            const std::vector<std::int64_t>& candidates,
                            const EstimateOptions& options) {
  if (candidates.empty()) {
    throw InvalidArgumentError("sweep: empty microbatch candidate list");
  }
  SweepResult result;
  for (std::int64_t b : candidates) {
    ParallelConfig c = config;
    c.microbatch_size = b;
    result.points.push_back(EvaluatePoint(b, c, model, job, hw, knobs, options));
  }
  PickBest(result, /*by_flops=*/false);
  return result;
}

SweepResult BatchSweep(const ParallelConfig& config, const ModelSpec& model,
                       const HardwareSpec& hw, const CostKnobs& knobs,
                       const std::vector<std::int64_t>& batches,
                       const EstimateOptions& options) {
  if (batches.empty()) {
    throw InvalidArgumentError("sweep: empty batch-size list");
  }
  SweepResult result;
  for (std::int64_t B : batches) {
    const TrainingJob job{B, 0, std::nullopt};
    result.points.push_back(
        EvaluatePoint(B, config, model, job, hw, knobs, options));
  }
  PickBest(result, /*by_flops=*/true);
  return result;
}

}  // namespace ptdp
