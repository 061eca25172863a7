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
#include <cstdio>
#include <sstream>

#include "ptdp/render.h"

namespace ptdp {

namespace {

constexpr double kWidth = 1200.0;
constexpr double kLeft = 80.0;
constexpr double kTop = 30.0;
constexpr double kLane = 28.0;
constexpr double kGap = 6.0;

struct Rgb {
  int r, g, b;
};

// Dark base colour mixed toward white as the chunk index grows.
std::string Shade(Rgb base, std::int64_t chunk, std::int64_t chunks) {
  const double mix =
      chunks <= 1 ? 0.0
                  : 0.6 * static_cast<double>(chunk) /
                        static_cast<double>(chunks - 1);
  auto channel = [&](int c) {
    return static_cast<int>(c + (255 - c) * mix + 0.5);
  };
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", channel(base.r),
                channel(base.g), channel(base.b));
  return buf;
}

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

std::string RenderTimelineSvg(const Timeline& tl) {
  const Rgb blue{31, 90, 180};
  const Rgb green{40, 150, 60};
  const double scale = tl.span > 0 ? (kWidth - kLeft - 20.0) / tl.span : 0.0;
  const double height =
      kTop + static_cast<double>(tl.p) * (kLane + kGap) + 30.0;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Num(kWidth)
     << "\" height=\"" << Num(height) << "\" font-family=\"sans-serif\""
     << " font-size=\"11\">\n";
  os << "<title>" << ScheduleKindName(tl.kind) << " p=" << tl.p
     << " m=" << tl.m << " v=" << tl.v << " span=" << Num(tl.span)
     << "s</title>\n";
  for (std::int64_t r = 0; r < tl.p; ++r) {
    const double y = kTop + static_cast<double>(r) * (kLane + kGap);
    os << "<text x=\"4\" y=\"" << Num(y + kLane * 0.65) << "\">device " << r
       << "</text>\n";
    os << "<line class=\"lane\" x1=\"" << Num(kLeft) << "\" y1=\""
       << Num(y + kLane) << "\" x2=\"" << Num(kWidth - 20.0) << "\" y2=\""
       << Num(y + kLane) << "\" stroke=\"#cccccc\"/>\n";
    for (const auto& t : tl.devices[static_cast<std::size_t>(r)]) {
      const bool fwd = t.task.direction == Direction::kForward;
      const double x = kLeft + t.start * scale;
      const double w = std::max(0.5, (t.end - t.start) * scale);
      os << "<rect class=\"task " << (fwd ? "forward" : "backward")
         << " chunk" << t.task.chunk << "\" x=\"" << Num(x) << "\" y=\""
         << Num(y) << "\" width=\"" << Num(w) << "\" height=\"" << Num(kLane)
         << "\" fill=\"" << Shade(fwd ? blue : green, t.task.chunk, tl.v)
         << "\" stroke=\"#ffffff\" stroke-width=\"0.5\"><title>"
         << (fwd ? "F" : "B") << t.task.microbatch << " chunk "
         << t.task.chunk << " [" << Num(t.start) << ", " << Num(t.end)
         << "]</title></rect>\n";
      if (w >= 14.0) {
        os << "<text x=\"" << Num(x + w / 2.0) << "\" y=\""
           << Num(y + kLane * 0.65)
           << "\" text-anchor=\"middle\" fill=\"#ffffff\">"
           << t.task.microbatch << "</text>\n";
      }
    }
  }
  const double axis_y = kTop + static_cast<double>(tl.p) * (kLane + kGap) + 14;
  os << "<text x=\"" << Num(kLeft) << "\" y=\"" << Num(axis_y)
     << "\">0</text>\n";
  os << "<text x=\"" << Num(kWidth - 20.0) << "\" y=\"" << Num(axis_y)
     << "\" text-anchor=\"end\">" << Num(tl.span) << " s</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace ptdp
