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

#include <iosfwd>
#include <string>
#include <string_view>

#include "riscsm/harness.hpp"

namespace riscsm {

enum class OutputFormat { csv, json };

inline constexpr std::string_view kCsvHeader =
    "scheme,N,N_Q,K,n_R,M,snr_db,metric,value,trials,errors,std_err,seed";

// Shortest decimal text that reads back to the same double; '.' radix
// regardless of locale.
std::string format_double(double value);

void write_csv(const SweepResult& result, std::ostream& out);
void write_json(const SweepResult& result, std::ostream& out);
// Inverse of write_csv. Throws IoError on malformed input.
SweepResult parse_csv(std::istream& in);

// Writes to `path`, or to stdout when path is empty or "-". Throws IoError.
void emit(const SweepResult& result, OutputFormat format, const std::string& path);

}  // namespace riscsm
