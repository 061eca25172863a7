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

#ifndef PTDP_SCHEDULE_H_
#define PTDP_SCHEDULE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptdp/costs.h"
#include "ptdp/hardware.h"
#include "ptdp/parallel.h"

namespace ptdp {

enum class Direction { kForward, kBackward };

std::string_view DirectionName(Direction d);

struct Task {
  std::int64_t microbatch = 1;  // 1-based; batch k holds k*m+1 .. (k+1)*m
  std::int64_t chunk = 0;
  Direction direction = Direction::kForward;

  bool operator==(const Task&) const = default;
};

// Per-device static execution order of one batch.
struct StaticSchedule {
  ScheduleKind kind = ScheduleKind::kOneFOneB;
  std::int64_t p = 1;
  std::int64_t m = 1;
  std::int64_t v = 1;
  std::vector<std::vector<Task>> devices;

  std::int64_t stage_count() const { return p * v; }
  // Pipeline stage of `chunk` on `device`: chunk * p + device.
  std::int64_t StageOf(std::int64_t device, std::int64_t chunk) const {
    return chunk * p + device;
  }
  std::int64_t DeviceOfStage(std::int64_t stage) const { return stage % p; }
  std::int64_t ChunkOfStage(std::int64_t stage) const { return stage / p; }
};

// Number of forward chunk-passes device `rank` runs before its first
// backward.
std::int64_t WarmupForwards(ScheduleKind kind, std::int64_t p, std::int64_t m,
                            std::int64_t v, std::int64_t rank);

// Builds the static order:
//  gpipe       all m forwards, then all m backwards.
//  1f1b        p-r-1 warm-up forwards, alternating 1F1B, then the drain.
//  interleaved forwards walk chunks round-robin in groups of p microbatches
//              with min(2(p-r-1) + (v-1)p, m v) warm-up forwards; backwards
//              walk the chunks in reverse.
// Throws ScheduleError on invalid (p, m, v).
StaticSchedule BuildSchedule(ScheduleKind kind, std::int64_t p, std::int64_t m,
                             std::int64_t v = 1);

// Peak count of microbatch-chunks whose forward ran and whose backward has
// not, per device, read off the static order.
std::vector<std::int64_t> StaticPeakInflight(const StaticSchedule& schedule);

struct TimedTask {
  Task task;
  std::int64_t device = 0;
  std::int64_t stage = 0;
  double start = 0;
  double end = 0;
};

struct CommEvent {
  std::int64_t microbatch = 0;
  Direction direction = Direction::kForward;
  std::int64_t from_stage = 0;
  std::int64_t to_stage = 0;
  std::int64_t from_device = 0;
  std::int64_t to_device = 0;
  double volume = 0;  // bytes per link
  double start = 0;
  double end = 0;
  LinkClass link = LinkClass::kInterNode;
};

struct Timeline {
  ScheduleKind kind = ScheduleKind::kOneFOneB;
  std::int64_t p = 1;
  std::int64_t m = 1;
  std::int64_t v = 1;
  std::int64_t batches = 1;
  TaskDurations durations;
  std::vector<std::vector<TimedTask>> devices;
  std::vector<CommEvent> comm;
  double span = 0;

  double BusyTime(std::int64_t device) const;
  double IdleTime(std::int64_t device) const { return span - BusyTime(device); }
  double TotalCommVolume() const;
};

// Communication attached to a simulation. With zero_time set, transfers are
// still recorded (volumes, link classes) but take no time.
struct CommModel {
  CommVolumes volumes;
  HardwareSpec hardware;
  RankMapping mapping;
  bool zero_time = false;
};

// Earliest-start execution of the static order. A task starts at the later of
// its device becoming free and the arrival of its cross-stage input. Chunk
// tasks take forward/v and backward/v. Transfers overlap with compute and do
// not contend with each other. Throws DeadlockError when the order cannot
// make progress.
Timeline Simulate(const StaticSchedule& schedule, const TaskDurations& durations,
                  const std::optional<CommModel>& comm = std::nullopt);

// Repeats a single-batch timeline `batches` times back to back, separated by
// the flush barrier, renumbering microbatches per batch.
Timeline Concatenate(const Timeline& one_batch, std::int64_t batches);

struct BubbleStats {
  double bubble_fraction = 0;  // (span - ideal) / ideal, ideal = m (tf + tb)
  double idle_fraction = 0;    // idle device-time / (p * span)
};

BubbleStats ComputeBubble(const Timeline& timeline);

// Per-device peak of microbatch-chunks whose forward has completed and whose
// backward has not.
std::vector<std::int64_t> PeakInflight(const Timeline& timeline);

enum class ViolationKind {
  kForwardDependency,   // forward ran before its input arrived
  kBackwardDependency,  // backward ran before its gradient or forward
  kDeviceOverlap,       // two tasks overlap on one device
  kFlushBarrier,        // next batch started before the flush
  kMissingTask,
  kDuplicateTask,
  kWrongDevice,
  kBadInterval,
  kCommOrder,
};

std::string_view ViolationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
};

// Exhaustive dependency check of a timeline against the schedule it claims to
// execute. Never throws on malformed timelines; every problem is reported.
std::vector<Violation> ValidateTimeline(const Timeline& timeline,
                                        const StaticSchedule& schedule);

}  // namespace ptdp

#endif  // PTDP_SCHEDULE_H_
