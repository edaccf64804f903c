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

#include <stdexcept>
#include <string>
#include <utility>

namespace riscsm {

// Every error raised by the library derives from Error, so callers that do not
// care about the kind can catch a single type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define RISCSM_DEFINE_ERROR(Name) \
  struct Name : Error {           \
    using Error::Error;           \
  }

RISCSM_DEFINE_ERROR(NotHermitian);
RISCSM_DEFINE_ERROR(IndefiniteMatrix);
RISCSM_DEFINE_ERROR(NotPowerOfTwo);
RISCSM_DEFINE_ERROR(InvalidDimensions);
RISCSM_DEFINE_ERROR(IndexOutOfRange);
RISCSM_DEFINE_ERROR(DimensionMismatch);
RISCSM_DEFINE_ERROR(LengthMismatch);
RISCSM_DEFINE_ERROR(TooFewSignatures);
RISCSM_DEFINE_ERROR(EmptyPilots);
RISCSM_DEFINE_ERROR(OutOfSupport);
RISCSM_DEFINE_ERROR(CandidateSetTooLarge);
RISCSM_DEFINE_ERROR(InvalidParameters);
RISCSM_DEFINE_ERROR(InsufficientPoints);
RISCSM_DEFINE_ERROR(IoError);

#undef RISCSM_DEFINE_ERROR

// Configuration problems carry the dotted path of the offending field.
struct ConfigError : Error {
  ConfigError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_path(std::move(field)) {}
  std::string field_path;
};

}  // namespace riscsm
