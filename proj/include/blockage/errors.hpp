// SPDX-License-Identifier: Apache-2.0
//
// blockage-kit: human-blockage attenuation modeling for mmWave/sub-THz links
// Copyright (C) 2026 blockage-kit contributors
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

#ifndef BLOCKAGE_ERRORS_HPP
#define BLOCKAGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace blockage {

// Every rejected input maps to a distinct code so callers (and the CLI exit
// path) can tell validation failures apart without parsing messages.
enum class ErrorCode {
    NonPositiveFrequency,
    NegativeDistance,
    NonFiniteGain,
    UnknownOrientation,
    EmptyDataset,
    NonFiniteParameter,
    NegativeSigma,
    BlockerBeyondMidpoint,
    ZeroDistance,
    RankDeficient,
    CifDegenerate,
    BlockerTouchesAntenna,
    NegativeExcessWhileShadowed,
    WindowTooLong,
    WindowExceedsTrace,
    NoBlockageDetected,
    InsufficientGroups,
    ParseError,
    UsageError,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace blockage

#endif
