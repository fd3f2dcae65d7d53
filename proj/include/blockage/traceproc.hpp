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
//
// Time-trace post-processing: LoS normalization, fast-fading removal by
// local-mean power averaging, blockage-gain extraction, and synthetic
// trace/dataset generation for closed-loop verification.
//
// Averaging happens in linear power, never in dB: the local mean of the
// received power is what separates slow fading from fast fading, and
// averaging log values would bias the blockage floor downward.

#ifndef BLOCKAGE_TRACEPROC_HPP
#define BLOCKAGE_TRACEPROC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "blockage/dataset.hpp"
#include "blockage/errors.hpp"
#include "blockage/models.hpp"
#include "blockage/rng.hpp"
#include "blockage/units.hpp"

namespace blockage {

inline constexpr std::size_t kDefaultSmoothingWindow = 16;
inline constexpr double kDefaultEventThresholdDb = -6.0;
inline constexpr double kDefaultSamplingHz = 100.0;
inline constexpr double kDefaultCrossingSpeedMps = 0.45;

/// Measurement context a trace may carry; not part of the CSV format.
struct TraceMeta {
    std::optional<double> f_ghz;
    std::optional<double> d_m;
    double v_mps = kDefaultCrossingSpeedMps;
};

/// Uniformly sampled channel-gain series in dB relative to the LoS level.
struct TimeTrace {
    double fs_hz = kDefaultSamplingHz;
    std::vector<double> gain_db;
    TraceMeta meta;

    std::size_t size() const noexcept { return gain_db.size(); }
};

struct SmoothedTrace {
    TimeTrace trace;
    std::size_t window;
};

struct BlockageEvent {
    std::size_t start; // first sample of the below-threshold region
    std::size_t end;   // last sample of the below-threshold region (inclusive)
    GainDb bg{0.0};    // minimum smoothed gain inside the event
};

namespace detail {

inline void check_trace(const TimeTrace &trace) {
    if (!(trace.fs_hz > 0.0))
        throw Error(ErrorCode::ParseError, "sampling rate must be positive");
    if (trace.size() < 2)
        throw Error(ErrorCode::ParseError, "a trace needs at least two samples");
}

inline double db_to_power(double db) { return std::pow(10.0, db / 10.0); }
inline double power_to_db(double p) { return 10.0 * std::log10(p); }

} // namespace detail

/// Shifts the trace so that the mean linear power over the leading and
/// trailing reference windows becomes 0 dB.
inline TimeTrace normalize_to_los(const TimeTrace &raw, std::size_t reference_window) {
    detail::check_trace(raw);
    if (reference_window == 0 || 2 * reference_window >= raw.size())
        throw Error(ErrorCode::WindowTooLong,
                    "reference window must be shorter than half the trace");
    double power = 0.0;
    for (std::size_t i = 0; i < reference_window; ++i)
        power += detail::db_to_power(raw.gain_db[i]) +
                 detail::db_to_power(raw.gain_db[raw.size() - 1 - i]);
    const double reference_db = detail::power_to_db(power / (2.0 * reference_window));
    TimeTrace out = raw;
    for (double &g : out.gain_db)
        g -= reference_db;
    return out;
}

/// Centered moving average of the linear power, converted back to dB. The
/// window is truncated at the trace edges so the output length matches the
/// input. Even windows extend one sample further to the right.
inline SmoothedTrace remove_fast_fading(const TimeTrace &trace,
                                        std::size_t window = kDefaultSmoothingWindow) {
    detail::check_trace(trace);
    const std::size_t n = trace.size();
    if (window < 1 || window > n)
        throw Error(ErrorCode::WindowExceedsTrace,
                    "smoothing window must lie in [1, trace length]");
    std::vector<double> power(n);
    for (std::size_t i = 0; i < n; ++i)
        power[i] = detail::db_to_power(trace.gain_db[i]);
    const std::size_t half_left = (window - 1) / 2;
    const std::size_t half_right = window - 1 - half_left;
    SmoothedTrace out{trace, window};
    // Summed per window rather than via a running prefix: a deep blockage
    // floor sits 8+ orders of magnitude below the LoS level, and prefix
    // differences would wipe out its precision.
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half_left ? i - half_left : 0;
        const std::size_t hi = std::min(n - 1, i + half_right);
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j)
            sum += power[j];
        out.trace.gain_db[i] = detail::power_to_db(sum / static_cast<double>(hi - lo + 1));
    }
    return out;
}

/// Spatial extent of a smoothing window in carrier wavelengths:
/// (window - 1) / fs * v * f / c0. The (n - 1) convention counts the span
/// between the first and last sample of the window.
inline double window_extent_lambda(std::size_t window, double fs_hz, double v_mps, Frequency f) {
    if (window < 1 || !(fs_hz > 0.0) || !(v_mps > 0.0))
        throw Error(ErrorCode::UsageError,
                    "window extent needs window >= 1 and positive fs and speed");
    const double extent_m = static_cast<double>(window - 1) / fs_hz * v_mps;
    return extent_m / f.wavelength_m();
}

/// Extracts the blockage event: the maximal contiguous region of the
/// smoothed trace below the threshold that contains the global minimum. The
/// blockage gain is that minimum.
inline BlockageEvent extract_bg(const TimeTrace &trace,
                                std::size_t window = kDefaultSmoothingWindow,
                                double threshold_db = kDefaultEventThresholdDb) {
    const SmoothedTrace smoothed = remove_fast_fading(trace, window);
    const auto &g = smoothed.trace.gain_db;
    const std::size_t min_index = static_cast<std::size_t>(
        std::distance(g.begin(), std::min_element(g.begin(), g.end())));
    if (!(g[min_index] < threshold_db))
        throw Error(ErrorCode::NoBlockageDetected,
                    "no smoothed sample falls below the event threshold");
    std::size_t start = min_index;
    while (start > 0 && g[start - 1] < threshold_db)
        --start;
    std::size_t end = min_index;
    while (end + 1 < g.size() && g[end + 1] < threshold_db)
        ++end;
    return BlockageEvent{start, end, GainDb(g[min_index])};
}

// --- synthetic data ---------------------------------------------------------

/// Piecewise-linear gain envelope in dB, defined by (time, gain) breakpoints
/// and clamped to the first/last value outside of them.
struct Envelope {
    struct Point {
        double t_s;
        double gain_db;
    };
    std::vector<Point> points;

    double at(double t_s) const {
        if (points.empty())
            return 0.0;
        if (t_s <= points.front().t_s)
            return points.front().gain_db;
        if (t_s >= points.back().t_s)
            return points.back().gain_db;
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (t_s <= points[i].t_s) {
                const auto &a = points[i - 1];
                const auto &b = points[i];
                const double w = (t_s - a.t_s) / (b.t_s - a.t_s);
                return a.gain_db + w * (b.gain_db - a.gain_db);
            }
        }
        return points.back().gain_db;
    }
};

/// Trapezoidal blockage envelope: 0 dB, ramp down over `ramp_s`, flat bottom
/// at `depth_db` for `plateau_s`, ramp back up.
inline Envelope blockage_envelope(double start_s, double ramp_s, double plateau_s,
                                  double depth_db) {
    return Envelope{{{start_s, 0.0},
                     {start_s + ramp_s, depth_db},
                     {start_s + ramp_s + plateau_s, depth_db},
                     {start_s + 2.0 * ramp_s + plateau_s, 0.0}}};
}

/// Rician fast-fading specification. Disabled means the trace equals the
/// envelope exactly.
struct FadingSpec {
    std::optional<double> k_factor_db;
};

/// Builds a trace as envelope(t) plus, when enabled, the magnitude of a
/// unit-power Rician gain (deterministic LoS component plus complex Gaussian
/// diffuse component with the requested K-factor), drawn per sample.
inline TimeTrace synth_trace(const Envelope &envelope, const FadingSpec &fading, Rng &rng,
                             std::size_t samples = 2048, double fs_hz = kDefaultSamplingHz) {
    if (samples < 2 || !(fs_hz > 0.0))
        throw Error(ErrorCode::UsageError, "need at least two samples and a positive rate");
    TimeTrace trace;
    trace.fs_hz = fs_hz;
    trace.gain_db.resize(samples);
    double los_amplitude = 1.0;
    double diffuse_sigma = 0.0;
    if (fading.k_factor_db) {
        if (!std::isfinite(*fading.k_factor_db))
            throw Error(ErrorCode::UsageError, "K-factor must be finite dB");
        const double k = std::pow(10.0, *fading.k_factor_db / 10.0);
        los_amplitude = std::sqrt(k / (k + 1.0));
        diffuse_sigma = std::sqrt(1.0 / (2.0 * (k + 1.0)));
    }
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / fs_hz;
        double db = envelope.at(t);
        if (fading.k_factor_db) {
            const double re = los_amplitude + diffuse_sigma * rng.gaussian();
            const double im = diffuse_sigma * rng.gaussian();
            db += detail::power_to_db(re * re + im * im);
        }
        trace.gain_db[i] = db;
    }
    return trace;
}

/// Frequency/distance/crossing grid for synthetic datasets. The defaults
/// mirror the measurement design: nine tones over 75-215 GHz, three
/// distances, eight crossings (two subjects, two orientations, two repeats).
struct SynthGrid {
    std::vector<double> f_ghz = paper_tones_ghz();
    std::vector<double> d_m = {1.0, 1.75, 2.5};
    int crossings = 8;
};

/// Constant per-group shifts applied on top of the model value, used to
/// inject known orientation/subject effects.
struct GroupOffsets {
    double sideways_db = 0.0;
    double subject2_db = 0.0;
};

/// Draws a dataset from a ground-truth model: deterministic value plus the
/// categorical offsets plus one chi draw per sample (sigma taken from the
/// model, 0 when absent). Sample order is f-major, then distance, then
/// crossing, so a fixed seed yields a bit-identical dataset.
inline Dataset synth_dataset(const BgModelParams &truth, const SynthGrid &grid,
                             const GroupOffsets &offsets, Rng &rng) {
    if (grid.f_ghz.empty() || grid.d_m.empty() || grid.crossings < 1)
        throw Error(ErrorCode::UsageError, "synthesis grid must be non-empty");
    const double sigma = truth.sigma_db.value_or(0.0);
    if (!(sigma >= 0.0))
        throw Error(ErrorCode::NegativeSigma, "sigma must be >= 0");
    Dataset data;
    data.provenance = "synthetic";
    for (double f_ghz : grid.f_ghz) {
        const Frequency f(f_ghz);
        for (double d_m : grid.d_m) {
            const Distance d(d_m);
            for (int c = 0; c < grid.crossings; ++c) {
                const bool second_subject = 2 * c >= grid.crossings;
                const Orientation orientation =
                    (c % 2 == 0) ? Orientation::HeadOn : Orientation::Sideways;
                double bg = eval(truth, d, f).db();
                if (orientation == Orientation::Sideways)
                    bg += offsets.sideways_db;
                if (second_subject)
                    bg += offsets.subject2_db;
                bg += sample_chi(sigma, rng);
                data.samples.push_back(BlockageSample{f, d, second_subject ? "s2" : "s1",
                                                      orientation, GainDb(bg)});
            }
        }
    }
    return data;
}

// --- trace I/O --------------------------------------------------------------

inline constexpr const char *kTraceCsvHeader = "t_s,gain_db";
/// Tolerated deviation from uniform sampling when reading a trace.
inline constexpr double kSamplingJitterS = 1e-9;

inline TimeTrace parse_trace_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::ParseError, "empty trace file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kTraceCsvHeader)
        throw Error(ErrorCode::ParseError,
                    std::string("expected header '") + kTraceCsvHeader + "', got '" + line + "'");
    std::vector<double> times;
    std::vector<double> gains;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() != 2)
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(lineno) + ": expected 2 fields");
        times.push_back(detail::parse_double_field(fields[0], "t_s"));
        gains.push_back(detail::parse_double_field(fields[1], "gain_db"));
    }
    if (times.size() < 2)
        throw Error(ErrorCode::ParseError, "a trace needs at least two samples");
    const double dt = times[1] - times[0];
    if (!(dt > 0.0))
        throw Error(ErrorCode::ParseError, "time stamps must be strictly increasing");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (std::abs(times[i] - times[i - 1] - dt) > kSamplingJitterS)
            throw Error(ErrorCode::ParseError,
                        "trace is not uniformly sampled at line " + std::to_string(i + 1));
    TimeTrace trace;
    trace.fs_hz = 1.0 / dt;
    trace.gain_db = std::move(gains);
    return trace;
}

inline TimeTrace parse_trace_csv_string(const std::string &text) {
    std::istringstream in(text);
    return parse_trace_csv(in);
}

inline void write_trace_csv(std::ostream &out, const TimeTrace &trace) {
    out << kTraceCsvHeader << '\n';
    for (std::size_t i = 0; i < trace.size(); ++i)
        out << detail::format_double(static_cast<double>(i) / trace.fs_hz) << ','
            << detail::format_double(trace.gain_db[i]) << '\n';
}

/// Event report: {"start_s":..,"end_s":..,"bg_db":..}
inline nlohmann::json event_json(const BlockageEvent &event, double fs_hz) {
    return {{"start_s", static_cast<double>(event.start) / fs_hz},
            {"end_s", static_cast<double>(event.end) / fs_hz},
            {"bg_db", event.bg.db()}};
}

} // namespace blockage

#endif
