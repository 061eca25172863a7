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
#include <string>
#include <tuple>

#include "ptdp/errors.h"
#include "ptdp/schedule.h"

namespace ptdp {

namespace {

// Dense index over (microbatch, stage, direction) of one batch.
class CompletionTable {
 public:
  CompletionTable(std::int64_t m, std::int64_t stages)
      : m_(m),
        stages_(stages),
        end_(static_cast<std::size_t>(2 * m * stages), 0.0),
        done_(static_cast<std::size_t>(2 * m * stages), false) {}

  bool done(std::int64_t mb, std::int64_t stage, Direction dir) const {
    return done_[Index(mb, stage, dir)];
  }
  double end(std::int64_t mb, std::int64_t stage, Direction dir) const {
    return end_[Index(mb, stage, dir)];
  }
  void Mark(std::int64_t mb, std::int64_t stage, Direction dir, double end) {
    const auto i = Index(mb, stage, dir);
    done_[i] = true;
    end_[i] = end;
  }

 private:
  std::size_t Index(std::int64_t mb, std::int64_t stage, Direction dir) const {
    const std::int64_t d = dir == Direction::kForward ? 0 : 1;
    return static_cast<std::size_t>((d * stages_ + stage) * m_ + (mb - 1));
  }

  std::int64_t m_;
  std::int64_t stages_;
  std::vector<double> end_;
  std::vector<bool> done_;
};

struct Producer {
  std::int64_t stage;
  Direction direction;
};

// Cross-stage input of a task; nullopt for the first forward stage.
std::optional<Producer> InputOf(std::int64_t stage, Direction dir,
                                std::int64_t stages) {
  if (dir == Direction::kForward) {
    if (stage == 0) return std::nullopt;
    return Producer{stage - 1, Direction::kForward};
  }
  if (stage == stages - 1) return Producer{stage, Direction::kForward};
  return Producer{stage + 1, Direction::kBackward};
}

}  // namespace

double Timeline::BusyTime(std::int64_t device) const {
  double busy = 0;
  for (const auto& t : devices[static_cast<std::size_t>(device)]) {
    busy += t.end - t.start;
  }
  return busy;
}

double Timeline::TotalCommVolume() const {
  double total = 0;
  for (const auto& e : comm) total += e.volume;
  return total;
}

Timeline Simulate(const StaticSchedule& schedule, const TaskDurations& durations,
                  const std::optional<CommModel>& comm) {
  const std::int64_t p = schedule.p;
  const std::int64_t m = schedule.m;
  const std::int64_t v = schedule.v;
  const std::int64_t stages = schedule.stage_count();
  if (static_cast<std::int64_t>(schedule.devices.size()) != p) {
    throw InvalidArgumentError("simulate: schedule has " +
                               std::to_string(schedule.devices.size()) +
                               " device lists, expected p=" +
                               std::to_string(p));
  }
  if (!(durations.forward > 0) || !(durations.backward > 0)) {
    throw InvalidArgumentError("simulate: durations must be > 0");
  }
  if (comm && comm->mapping.pipeline_size() != p) {
    throw InvalidArgumentError(
        "simulate: rank mapping pipeline size does not match the schedule");
  }
  const double chunk_forward = durations.forward / static_cast<double>(v);
  const double chunk_backward = durations.backward / static_cast<double>(v);

  Timeline tl;
  tl.kind = schedule.kind;
  tl.p = p;
  tl.m = m;
  tl.v = v;
  tl.durations = durations;
  tl.devices.resize(static_cast<std::size_t>(p));

  CompletionTable table(m, stages);
  std::vector<std::size_t> next(static_cast<std::size_t>(p), 0);
  std::vector<double> device_free(static_cast<std::size_t>(p), 0.0);
  std::size_t remaining = 0;
  for (const auto& order : schedule.devices) remaining += order.size();

  while (remaining > 0) {
    bool progress = false;
    for (std::int64_t r = 0; r < p; ++r) {
      const auto ur = static_cast<std::size_t>(r);
      const auto& order = schedule.devices[ur];
      while (next[ur] < order.size()) {
        const Task& task = order[next[ur]];
        const std::int64_t stage = schedule.StageOf(r, task.chunk);
        if (task.direction == Direction::kBackward &&
            !table.done(task.microbatch, stage, Direction::kForward)) {
          break;
        }
        const auto input = InputOf(stage, task.direction, stages);
        double ready = 0;
        if (input) {
          if (!table.done(task.microbatch, input->stage, input->direction)) {
            break;
          }
          ready = table.end(task.microbatch, input->stage, input->direction);
          const std::int64_t src = schedule.DeviceOfStage(input->stage);
          if (src != r && comm) {
            CommEvent ev;
            ev.microbatch = task.microbatch;
            ev.direction = task.direction;
            ev.from_stage = input->stage;
            ev.to_stage = stage;
            ev.from_device = src;
            ev.to_device = r;
            ev.volume = comm->volumes.pp_p2p_per_microbatch;
            ev.link = ClassifyLink(comm->mapping, {src, 0, 0}, {r, 0, 0});
            ev.start = ready;
            ev.end = comm->zero_time
                         ? ready
                         : ready + PipelineTransferTime(comm->volumes, ev.link,
                                                        comm->hardware);
            ready = ev.end;
            tl.comm.push_back(ev);
          }
        }
        TimedTask timed;
        timed.task = task;
        timed.device = r;
        timed.stage = stage;
        timed.start = std::max(device_free[ur], ready);
        timed.end = timed.start + (task.direction == Direction::kForward
                                       ? chunk_forward
                                       : chunk_backward);
        device_free[ur] = timed.end;
        table.Mark(task.microbatch, stage, task.direction, timed.end);
        tl.devices[ur].push_back(timed);
        tl.span = std::max(tl.span, timed.end);
        ++next[ur];
        --remaining;
        progress = true;
      }
    }
    if (!progress) {
      std::string stuck;
      for (std::int64_t r = 0; r < p; ++r) {
        const auto ur = static_cast<std::size_t>(r);
        if (next[ur] < schedule.devices[ur].size()) {
          const Task& t = schedule.devices[ur][next[ur]];
          stuck += " device " + std::to_string(r) + " waits on " +
                   std::string(DirectionName(t.direction)) + " mb " +
                   std::to_string(t.microbatch) + " chunk " +
                   std::to_string(t.chunk) + ";";
        }
      }
      throw DeadlockError("simulate: static order deadlocks:" + stuck);
    }
  }
  std::stable_sort(tl.comm.begin(), tl.comm.end(),
                   [](const CommEvent& a, const CommEvent& b) {
                     return std::tie(a.start, a.from_stage, a.to_stage,
                                     a.microbatch) <
                            std::tie(b.start, b.from_stage, b.to_stage,
                                     b.microbatch);
                   });
  return tl;
}

Timeline Concatenate(const Timeline& one_batch, std::int64_t batches) {
  if (batches < 1) {
    throw InvalidArgumentError("concatenate: batches must be >= 1");
  }
  if (one_batch.batches != 1) {
    throw InvalidArgumentError("concatenate: input must hold a single batch");
  }
  Timeline out = one_batch;
  out.batches = batches;
  for (auto& lane : out.devices) lane.clear();
  out.comm.clear();
  for (std::int64_t k = 0; k < batches; ++k) {
    const double offset = static_cast<double>(k) * one_batch.span;
    const std::int64_t mb_offset = k * one_batch.m;
    for (std::size_t r = 0; r < one_batch.devices.size(); ++r) {
      for (TimedTask t : one_batch.devices[r]) {
        t.task.microbatch += mb_offset;
        t.start += offset;
        t.end += offset;
        out.devices[r].push_back(t);
      }
    }
    for (CommEvent e : one_batch.comm) {
      e.microbatch += mb_offset;
      e.start += offset;
      e.end += offset;
      out.comm.push_back(e);
    }
  }
  out.span = static_cast<double>(batches) * one_batch.span;
  return out;
}

BubbleStats ComputeBubble(const Timeline& tl) {
  BubbleStats out;
  const double ideal = static_cast<double>(tl.batches) *
                       static_cast<double>(tl.m) * tl.durations.total();
  out.bubble_fraction = (tl.span - ideal) / ideal;
  double idle = 0;
  for (std::int64_t r = 0; r < tl.p; ++r) idle += tl.IdleTime(r);
  out.idle_fraction = idle / (static_cast<double>(tl.p) * tl.span);
  return out;
}

std::vector<std::int64_t> PeakInflight(const Timeline& tl) {
  std::vector<std::int64_t> peaks;
  peaks.reserve(tl.devices.size());
  for (const auto& lane : tl.devices) {
    // +1 when a forward completes, -1 when its backward completes; at equal
    // times releases are applied first.
    std::vector<std::pair<double, int>> events;
    events.reserve(lane.size());
    for (const auto& t : lane) {
      events.emplace_back(t.end,
                          t.task.direction == Direction::kForward ? 1 : -1);
    }
    std::sort(events.begin(), events.end());
    std::int64_t live = 0;
    std::int64_t peak = 0;
    for (const auto& [time, delta] : events) {
      live += delta;
      peak = std::max(peak, live);
    }
    peaks.push_back(peak);
  }
  return peaks;
}

}  // namespace ptdp
