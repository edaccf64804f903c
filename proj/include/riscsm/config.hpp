// SPDX-License-Identifier: Apache-2.0
//
// riscsm - link-level simulation toolkit for RIS channel signature modulation
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <string>
#include <string_view>

#include "riscsm/harness.hpp"

namespace riscsm {

// JSON experiment document with optional sections "system", "channel",
// "estimation", "baseline" and "sweep". Unknown keys are rejected. Missing
// keys keep SweepSpec defaults. Errors are ConfigError with a dotted path
// such as "sweep.snr.step".
SweepSpec parse_config(std::string_view text);
SweepSpec load_config(const std::string& path);

}  // namespace riscsm
