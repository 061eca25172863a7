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

#ifndef PTDP_RENDER_H_
#define PTDP_RENDER_H_

#include <string>

#include "ptdp/schedule.h"

namespace ptdp {

// Gantt chart of a timeline: one lane per device, time on the x axis, one
// <rect class="task ..."> per task. Forwards are blue and backwards green;
// chunk 0 is dark and later chunks progressively lighter.
std::string RenderTimelineSvg(const Timeline& timeline);

}  // namespace ptdp

#endif  // PTDP_RENDER_H_
