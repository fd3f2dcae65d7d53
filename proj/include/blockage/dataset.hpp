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

#ifndef BLOCKAGE_DATASET_HPP
#define BLOCKAGE_DATASET_HPP

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "blockage/errors.hpp"
#include "blockage/units.hpp"

namespace blockage {

enum class Orientation { HeadOn, Sideways };

inline Orientation parse_orientation(std::string_view s) {
    if (s == "headon")
        return Orientation::HeadOn;
    if (s == "sideways")
        return Orientation::Sideways;
    throw Error(ErrorCode::UnknownOrientation,
                "orientation must be 'headon' or 'sideways' (got '" + std::string(s) + "')");
}

inline const char *orientation_label(Orientation o) noexcept {
    return o == Orientation::HeadOn ? "headon" : "sideways";
}

/// One blockage-gain observation: the minimum normalized gain seen during a
/// single crossing at a given carrier and Tx-Rx separation.
struct BlockageSample {
    Frequency f;
    Distance d;
    std::string subject;
    Orientation orientation;
    GainDb bg;
};

/// Builds a sample from raw field values, rejecting each invalid field with
/// its own error code.
inline BlockageSample validate_sample(double f_ghz, double d_m, std::string subject,
                                      std::string_view orientation, double bg_db) {
    return BlockageSample{Frequency(f_ghz), Distance(d_m), std::move(subject),
                          parse_orientation(orientation), GainDb(bg_db)};
}

/// Ordered collection of samples. Iteration order is the file/creation order,
/// so fits over the same file are deterministic.
struct Dataset {
    std::vector<BlockageSample> samples;
    std::string provenance;

    std::size_t size() const noexcept { return samples.size(); }
    bool empty() const noexcept { return samples.empty(); }
};

namespace detail {

inline double parse_double_field(std::string_view field, const char *name) {
    double value = 0.0;
    const char *first = field.data();
    const char *last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw Error(ErrorCode::ParseError,
                    std::string("cannot parse ") + name + " from '" + std::string(field) + "'");
    return value;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

inline constexpr const char *kDatasetCsvHeader = "f_ghz,d_m,subject,orientation,bg_db";

/// Parses the sample CSV (header `f_ghz,d_m,subject,orientation,bg_db`).
inline Dataset parse_dataset_csv(std::istream &in, std::string provenance = {}) {
    Dataset data;
    data.provenance = std::move(provenance);
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::ParseError, "empty dataset file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kDatasetCsvHeader)
        throw Error(ErrorCode::ParseError,
                    std::string("expected header '") + kDatasetCsvHeader + "', got '" + line + "'");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() != 5)
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(lineno) + ": expected 5 fields, got " +
                            std::to_string(fields.size()));
        data.samples.push_back(validate_sample(
            detail::parse_double_field(fields[0], "f_ghz"),
            detail::parse_double_field(fields[1], "d_m"), std::string(fields[2]), fields[3],
            detail::parse_double_field(fields[4], "bg_db")));
    }
    return data;
}

inline Dataset parse_dataset_csv_string(const std::string &text, std::string provenance = {}) {
    std::istringstream in(text);
    return parse_dataset_csv(in, std::move(provenance));
}

/// Writes a dataset back out with full double precision so that
/// serialize -> parse reproduces every sample bit for bit.
inline void write_dataset_csv(std::ostream &out, const Dataset &data) {
    out << kDatasetCsvHeader << '\n';
    for (const auto &s : data.samples) {
        out << detail::format_double(s.f.ghz()) << ',' << detail::format_double(s.d.m()) << ','
            << s.subject << ',' << orientation_label(s.orientation) << ','
            << detail::format_double(s.bg.db()) << '\n';
    }
}

} // namespace blockage

#endif
