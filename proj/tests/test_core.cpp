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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "blockage/dataset.hpp"
#include "blockage/rng.hpp"
#include "blockage/units.hpp"

using namespace blockage;

namespace {

bool has_code(const Error &e, ErrorCode c) { return e.code() == c; }

} // namespace

TEST_CASE("strong types reject invalid values with distinct codes") {
    CHECK_THROWS_MATCHES(Frequency(0.0), Error, Catch::Matchers::Predicate<Error>([](const Error &e) {
                             return has_code(e, ErrorCode::NonPositiveFrequency);
                         }));
    CHECK_THROWS_AS(Frequency(-10.0), Error);
    CHECK_THROWS_AS(Frequency(std::numeric_limits<double>::quiet_NaN()), Error);
    CHECK_THROWS_MATCHES(Distance(-0.1), Error, Catch::Matchers::Predicate<Error>([](const Error &e) {
                             return has_code(e, ErrorCode::NegativeDistance);
                         }));
    CHECK_THROWS_MATCHES(GainDb(std::numeric_limits<double>::infinity()), Error,
                         Catch::Matchers::Predicate<Error>([](const Error &e) {
                             return has_code(e, ErrorCode::NonFiniteGain);
                         }));
    CHECK(Frequency(75.0).ghz() == 75.0);
    CHECK(Distance(0.0).m() == 0.0);
    CHECK(GainDb(-45.5).db() == -45.5);
}

TEST_CASE("validate_sample builds valid samples and rejects each bad field") {
    const BlockageSample ok = validate_sample(75.0, 1.0, "s1", "headon", -45.5);
    CHECK(ok.f.ghz() == 75.0);
    CHECK(ok.d.m() == 1.0);
    CHECK(ok.orientation == Orientation::HeadOn);
    CHECK(ok.bg.db() == -45.5);

    CHECK_THROWS_MATCHES(validate_sample(0.0, 1.0, "s1", "headon", -40.0), Error,
                         Catch::Matchers::Predicate<Error>([](const Error &e) {
                             return has_code(e, ErrorCode::NonPositiveFrequency);
                         }));
    CHECK_THROWS_MATCHES(
        validate_sample(145.0, 1.75, "s1", "sideways", std::numeric_limits<double>::quiet_NaN()),
        Error, Catch::Matchers::Predicate<Error>([](const Error &e) {
            return has_code(e, ErrorCode::NonFiniteGain);
        }));
    CHECK_THROWS_MATCHES(validate_sample(145.0, 1.75, "s1", "diagonal", -40.0), Error,
                         Catch::Matchers::Predicate<Error>([](const Error &e) {
                             return has_code(e, ErrorCode::UnknownOrientation);
                         }));
    CHECK_THROWS_MATCHES(validate_sample(145.0, -1.0, "s1", "headon", -40.0), Error,
                         Catch::Matchers::Predicate<Error>([](const Error &e) {
                             return has_code(e, ErrorCode::NegativeDistance);
                         }));
}

TEST_CASE("dataset CSV parses the documented format") {
    const std::string text = "f_ghz,d_m,subject,orientation,bg_db\n"
                             "75,1,s1,headon,-45.5\n"
                             "145,1.75,s2,sideways,-52.25\n";
    const Dataset data = parse_dataset_csv_string(text, "unit");
    REQUIRE(data.size() == 2);
    CHECK(data.samples[0].f.ghz() == 75.0);
    CHECK(data.samples[1].orientation == Orientation::Sideways);
    CHECK(data.provenance == "unit");

    CHECK_THROWS_AS(parse_dataset_csv_string("bogus header\n"), Error);
    CHECK_THROWS_AS(parse_dataset_csv_string("f_ghz,d_m,subject,orientation,bg_db\n1,2,3\n"),
                    Error);
    CHECK_THROWS_AS(
        parse_dataset_csv_string("f_ghz,d_m,subject,orientation,bg_db\nx,1,s1,headon,-4\n"),
        Error);
}

TEST_CASE("dataset round-trips through CSV field for field") {
    // randomized datasets, including awkward doubles
    Rng rng(20260809);
    for (int rep = 0; rep < 20; ++rep) {
        Dataset data;
        data.provenance = "roundtrip";
        const int n = 1 + static_cast<int>(rng.next_u64() % 40);
        for (int i = 0; i < n; ++i) {
            const double f = 75.0 + 140.0 * rng.uniform();
            const double d = 3.0 * rng.uniform();
            const double bg = -80.0 + 90.0 * rng.uniform() + 1e-13 * rng.uniform();
            data.samples.push_back(BlockageSample{
                Frequency(f), Distance(d), rng.uniform() < 0.5 ? "s1" : "s2",
                rng.uniform() < 0.5 ? Orientation::HeadOn : Orientation::Sideways, GainDb(bg)});
        }
        std::ostringstream out;
        write_dataset_csv(out, data);
        const Dataset back = parse_dataset_csv_string(out.str(), data.provenance);
        REQUIRE(back.size() == data.size());
        for (std::size_t i = 0; i < data.size(); ++i) {
            CHECK(back.samples[i].f.ghz() == data.samples[i].f.ghz());
            CHECK(back.samples[i].d.m() == data.samples[i].d.m());
            CHECK(back.samples[i].subject == data.samples[i].subject);
            CHECK(back.samples[i].orientation == data.samples[i].orientation);
            CHECK(back.samples[i].bg.db() == data.samples[i].bg.db());
        }
    }
}

TEST_CASE("seeded rng reproduces its draw sequence") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 100; ++i)
        REQUIRE(a.gaussian() == b.gaussian());
    Rng c(43);
    bool all_equal = true;
    Rng a2(42);
    for (int i = 0; i < 16; ++i)
        all_equal = all_equal && (a2.gaussian() == c.gaussian());
    CHECK_FALSE(all_equal);
}
