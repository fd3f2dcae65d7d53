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

#ifndef BLOCKAGE_UNITS_HPP
#define BLOCKAGE_UNITS_HPP

#include <cmath>
#include <string>

#include "blockage/errors.hpp"

namespace blockage {

constexpr double kSpeedOfLight = 299792458.0; // m/s

/// Carrier frequency in GHz. All logarithmic frequency terms in the gain
/// models are referenced to 1 GHz, so storing GHz keeps log10(f / 1 GHz)
/// equal to log10(value) with no conversion factor.
class Frequency {
  public:
    explicit Frequency(double ghz) : ghz_(ghz) {
        if (!(ghz > 0.0) || !std::isfinite(ghz))
            throw Error(ErrorCode::NonPositiveFrequency,
                        "frequency must be a positive, finite number of GHz (got " +
                            std::to_string(ghz) + ")");
    }

    double ghz() const noexcept { return ghz_; }
    double hz() const noexcept { return ghz_ * 1e9; }
    double wavelength_m() const noexcept { return kSpeedOfLight / hz(); }

  private:
    double ghz_;
};

/// Distance in meters, non-negative.
class Distance {
  public:
    explicit Distance(double m) : m_(m) {
        if (!(m >= 0.0) || !std::isfinite(m))
            throw Error(ErrorCode::NegativeDistance,
                        "distance must be a non-negative, finite number of meters (got " +
                            std::to_string(m) + ")");
    }

    double m() const noexcept { return m_; }

  private:
    double m_;
};

/// Channel gain in dB relative to the unobstructed LoS level. Blockage gains
/// are typically negative; attenuation is the negated value.
class GainDb {
  public:
    explicit GainDb(double db) : db_(db) {
        if (!std::isfinite(db))
            throw Error(ErrorCode::NonFiniteGain, "gain must be finite dB");
    }

    double db() const noexcept { return db_; }

  private:
    double db_;
};

inline bool operator==(GainDb a, GainDb b) noexcept { return a.db() == b.db(); }

} // namespace blockage

#endif
