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

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "ptdp/schedule.h"

namespace ptdp {

std::string_view ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kForwardDependency:
      return "forward_dependency";
    case ViolationKind::kBackwardDependency:
      return "backward_dependency";
    case ViolationKind::kDeviceOverlap:
      return "device_overlap";
    case ViolationKind::kFlushBarrier:
      return "flush_barrier";
    case ViolationKind::kMissingTask:
      return "missing_task";
    case ViolationKind::kDuplicateTask:
      return "duplicate_task";
    case ViolationKind::kWrongDevice:
      return "wrong_device";
    case ViolationKind::kBadInterval:
      return "bad_interval";
    case ViolationKind::kCommOrder:
      return "comm_order";
  }
  return "unknown";
}

namespace {

using Key = std::tuple<std::int64_t, std::int64_t, int>;  // mb, stage, dir

Key MakeKey(std::int64_t mb, std::int64_t stage, Direction dir) {
  return {mb, stage, dir == Direction::kForward ? 0 : 1};
}

std::string Label(std::int64_t mb, std::int64_t stage, Direction dir) {
  std::ostringstream os;
  os << (dir == Direction::kForward ? "F" : "B") << mb << "@stage" << stage;
  return os.str();
}

}  // namespace

std::vector<Violation> ValidateTimeline(const Timeline& tl,
                                        const StaticSchedule& schedule) {
  std::vector<Violation> out;
  auto report = [&](ViolationKind kind, std::string msg) {
    out.push_back({kind, std::move(msg)});
  };
  const std::int64_t p = schedule.p;
  const std::int64_t m = schedule.m;
  const std::int64_t stages = schedule.p * schedule.v;
  const std::int64_t batches = std::max<std::int64_t>(tl.batches, 1);

  // Index every executed task.
  std::map<Key, const TimedTask*> executed;
  for (std::size_t r = 0; r < tl.devices.size(); ++r) {
    for (const TimedTask& t : tl.devices[r]) {
      const std::int64_t expected_stage = t.task.chunk * p + t.device;
      if (t.device != static_cast<std::int64_t>(r) ||
          t.stage != expected_stage || t.task.chunk < 0 ||
          t.task.chunk >= schedule.v) {
        report(ViolationKind::kWrongDevice,
               Label(t.task.microbatch, t.stage, t.task.direction) +
                   " recorded on device lane " + std::to_string(r));
      }
      if (!std::isfinite(t.start) || !std::isfinite(t.end) ||
          t.end < t.start) {
        report(ViolationKind::kBadInterval,
               Label(t.task.microbatch, t.stage, t.task.direction) +
                   " has an invalid interval");
      }
      const Key key = MakeKey(t.task.microbatch, t.stage, t.task.direction);
      if (!executed.emplace(key, &t).second) {
        report(ViolationKind::kDuplicateTask,
               Label(t.task.microbatch, t.stage, t.task.direction) +
                   " executed more than once");
      }
    }
  }

  // Every task of the static order must appear, on its own device.
  for (std::int64_t k = 0; k < batches; ++k) {
    for (std::int64_t r = 0; r < p; ++r) {
      for (const Task& task : schedule.devices[static_cast<std::size_t>(r)]) {
        const std::int64_t mb = task.microbatch + k * m;
        const std::int64_t stage = task.chunk * p + r;
        const auto it = executed.find(MakeKey(mb, stage, task.direction));
        if (it == executed.end()) {
          report(ViolationKind::kMissingTask,
                 Label(mb, stage, task.direction) + " never executed");
        } else if (it->second->device != r) {
          report(ViolationKind::kWrongDevice,
                 Label(mb, stage, task.direction) + " ran on device " +
                     std::to_string(it->second->device));
        }
      }
    }
  }
  if (static_cast<std::int64_t>(executed.size()) != batches * 2 * m * stages) {
    report(ViolationKind::kMissingTask,
           "timeline holds " + std::to_string(executed.size()) +
               " tasks, expected " + std::to_string(batches * 2 * m * stages));
  }

  // Transfers feeding each dependency edge.
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t, int>,
           const CommEvent*>
      transfers;
  for (const CommEvent& e : tl.comm) {
    if (!(e.end >= e.start)) {
      report(ViolationKind::kCommOrder,
             "transfer of mb " + std::to_string(e.microbatch) +
                 " ends before it starts");
    }
    transfers[{e.microbatch, e.from_stage, e.to_stage,
               e.direction == Direction::kForward ? 0 : 1}] = &e;
  }
  auto check_edge = [&](const TimedTask& consumer, std::int64_t from_stage,
                        Direction from_dir, ViolationKind kind) {
    const auto it =
        executed.find(MakeKey(consumer.task.microbatch, from_stage, from_dir));
    if (it == executed.end()) return;  // already reported as missing
    const TimedTask& producer = *it->second;
    double ready = producer.end;
    const auto tr =
        transfers.find({consumer.task.microbatch, from_stage, consumer.stage,
                        consumer.task.direction == Direction::kForward ? 0 : 1});
    if (tr != transfers.end()) {
      if (tr->second->start < producer.end) {
        report(ViolationKind::kCommOrder,
               "transfer into " +
                   Label(consumer.task.microbatch, consumer.stage,
                         consumer.task.direction) +
                   " starts before its producer ends");
      }
      ready = std::max(ready, tr->second->end);
    }
    if (consumer.start < ready) {
      report(kind, Label(consumer.task.microbatch, consumer.stage,
                         consumer.task.direction) +
                       " starts at " + std::to_string(consumer.start) +
                       " before its input " +
                       Label(consumer.task.microbatch, from_stage, from_dir) +
                       " is available at " + std::to_string(ready));
    }
  };

  for (const auto& [key, task] : executed) {
    const std::int64_t stage = task->stage;
    if (task->task.direction == Direction::kForward) {
      // Forward of (i, j) after forward of (i, j-1) plus transfer.
      if (stage > 0) {
        check_edge(*task, stage - 1, Direction::kForward,
                   ViolationKind::kForwardDependency);
      }
    } else {
      // Backward of (i, j) after backward of (i, j+1), or after the
      // forward of the last stage; never before its own forward.
      if (stage == stages - 1) {
        check_edge(*task, stage, Direction::kForward,
                   ViolationKind::kBackwardDependency);
      } else {
        check_edge(*task, stage + 1, Direction::kBackward,
                   ViolationKind::kBackwardDependency);
        check_edge(*task, stage, Direction::kForward,
                   ViolationKind::kBackwardDependency);
      }
    }
  }

  // Device exclusivity.
  for (std::size_t r = 0; r < tl.devices.size(); ++r) {
    std::vector<const TimedTask*> lane;
    for (const auto& t : tl.devices[r]) lane.push_back(&t);
    std::sort(lane.begin(), lane.end(), [](const auto* a, const auto* b) {
      return std::tie(a->start, a->end) < std::tie(b->start, b->end);
    });
    for (std::size_t i = 1; i < lane.size(); ++i) {
      if (lane[i]->start < lane[i - 1]->end) {
        report(ViolationKind::kDeviceOverlap,
               "device " + std::to_string(r) + ": " +
                   Label(lane[i]->task.microbatch, lane[i]->stage,
                         lane[i]->task.direction) +
                   " overlaps " +
                   Label(lane[i - 1]->task.microbatch, lane[i - 1]->stage,
                         lane[i - 1]->task.direction));
      }
    }
  }

  // Optimizer-step barrier between consecutive batches.
  if (m > 0) {
    std::vector<double> batch_end(static_cast<std::size_t>(batches), 0.0);
    std::vector<double> batch_start(static_cast<std::size_t>(batches),
                                    INFINITY);
    for (const auto& [key, t] : executed) {
      const std::int64_t k = (t->task.microbatch - 1) / m;
      if (k < 0 || k >= batches) continue;
      const auto uk = static_cast<std::size_t>(k);
      batch_end[uk] = std::max(batch_end[uk], t->end);
      batch_start[uk] = std::min(batch_start[uk], t->start);
    }
    for (std::int64_t k = 1; k < batches; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      if (batch_start[uk] < batch_end[uk - 1]) {
        report(ViolationKind::kFlushBarrier,
               "batch " + std::to_string(k) + " starts at " +
                   std::to_string(batch_start[uk]) + " before batch " +
                   std::to_string(k - 1) + " flushes at " +
                   std::to_string(batch_end[uk - 1]));
      }
    }
  }
  return out;
}

}  // namespace ptdp
