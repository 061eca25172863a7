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

#ifndef PTDP_CLI_H_
#define PTDP_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace ptdp {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitNoPlan = 3,
};

// Entry point of the `ptdp` tool: estimate | simulate | plan | sweep.
// `args` excludes the program name. ANSI color is used only when
// `color` is set and PTDP_NO_COLOR is absent from the environment.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, bool color = false);

}  // namespace ptdp

#endif  // PTDP_CLI_H_
