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

#include "ptdp/errors.h"
#include "ptdp/schedule.h"

namespace ptdp {

std::string_view DirectionName(Direction d) {
  return d == Direction::kForward ? "forward" : "backward";
}

namespace {

void CheckDims(ScheduleKind kind, std::int64_t p, std::int64_t m,
               std::int64_t v) {
  if (p < 1 || m < 1 || v < 1) {
    throw ScheduleError("schedule: p, m and v must be >= 1 (got p=" +
                        std::to_string(p) + " m=" + std::to_string(m) +
                        " v=" + std::to_string(v) + ")");
  }
  if (kind != ScheduleKind::kInterleaved && v != 1) {
    throw ScheduleError("schedule: " + std::string(ScheduleKindName(kind)) +
                        " requires v=1");
  }
  if (kind == ScheduleKind::kInterleaved && m % p != 0) {
    throw ScheduleError("schedule: interleaved requires m (" +
                        std::to_string(m) + ") to be a multiple of p (" +
                        std::to_string(p) + ")");
  }
}

// k-th forward (or backward) chunk-pass of a device under interleaving.
// Microbatches advance in groups of p; within a group every chunk is
// visited in turn, in reverse order for backwards.
Task InterleavedTask(std::int64_t k, std::int64_t p, std::int64_t v,
                     Direction dir) {
  const std::int64_t in_group = k % (p * v);
  std::int64_t chunk = in_group / p;
  if (dir == Direction::kBackward) chunk = v - 1 - chunk;
  const std::int64_t microbatch = (k / (p * v)) * p + k % p + 1;
  return {microbatch, chunk, dir};
}

}  // namespace

std::int64_t WarmupForwards(ScheduleKind kind, std::int64_t p, std::int64_t m,
                            std::int64_t v, std::int64_t rank) {
  switch (kind) {
    case ScheduleKind::kGPipe:
      return m;
    case ScheduleKind::kOneFOneB:
      return std::min(p - rank - 1, m);
    case ScheduleKind::kInterleaved:
      return std::min(2 * (p - rank - 1) + (v - 1) * p, m * v);
  }
  return m;
}

StaticSchedule BuildSchedule(ScheduleKind kind, std::int64_t p, std::int64_t m,
                             std::int64_t v) {
  CheckDims(kind, p, m, v);
  StaticSchedule s;
  s.kind = kind;
  s.p = p;
  s.m = m;
  s.v = v;
  s.devices.resize(static_cast<std::size_t>(p));
  for (std::int64_t r = 0; r < p; ++r) {
    auto& order = s.devices[static_cast<std::size_t>(r)];
    order.reserve(static_cast<std::size_t>(2 * m * v));
    switch (kind) {
      case ScheduleKind::kGPipe:
        for (std::int64_t i = 1; i <= m; ++i) {
          order.push_back({i, 0, Direction::kForward});
        }
        for (std::int64_t i = 1; i <= m; ++i) {
          order.push_back({i, 0, Direction::kBackward});
        }
        break;
      case ScheduleKind::kOneFOneB: {
        const std::int64_t warmup = WarmupForwards(kind, p, m, v, r);
        std::int64_t next_f = 1;
        std::int64_t next_b = 1;
        for (; next_f <= warmup; ++next_f) {
          order.push_back({next_f, 0, Direction::kForward});
        }
        while (next_f <= m) {
          order.push_back({next_f++, 0, Direction::kForward});
          order.push_back({next_b++, 0, Direction::kBackward});
        }
        while (next_b <= m) order.push_back({next_b++, 0, Direction::kBackward});
        break;
      }
      case ScheduleKind::kInterleaved: {
        const std::int64_t total = m * v;
        const std::int64_t warmup = WarmupForwards(kind, p, m, v, r);
        std::int64_t next_f = 0;
        std::int64_t next_b = 0;
        for (; next_f < warmup; ++next_f) {
          order.push_back(InterleavedTask(next_f, p, v, Direction::kForward));
        }
        while (next_f < total) {
          order.push_back(InterleavedTask(next_f++, p, v, Direction::kForward));
          order.push_back(
              InterleavedTask(next_b++, p, v, Direction::kBackward));
        }
        while (next_b < total) {
          order.push_back(
              InterleavedTask(next_b++, p, v, Direction::kBackward));
        }
        break;
      }
    }
  }
  return s;
}

std::vector<std::int64_t> StaticPeakInflight(const StaticSchedule& schedule) {
  std::vector<std::int64_t> peaks;
  peaks.reserve(schedule.devices.size());
  for (const auto& order : schedule.devices) {
    std::int64_t live = 0;
    std::int64_t peak = 0;
    for (const Task& task : order) {
      live += task.direction == Direction::kForward ? 1 : -1;
      peak = std::max(peak, live);
    }
    peaks.push_back(peak);
  }
  return peaks;
}

}  // namespace ptdp
