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

#include <algorithm>
#include <cmath>
#include <vector>

#include "blockage/analysis.hpp"
#include "blockage/traceproc.hpp"
#include "oracles.hpp"

using namespace blockage;
using Catch::Matchers::WithinAbs;

TEST_CASE("median: definition and invariances") {
    CHECK(median({3.0}) == 3.0);
    CHECK(median({1.0, 2.0}) == 1.5);
    CHECK(median({5.0, 1.0, 3.0}) == 3.0);
    CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);

    Rng rng(60);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> values;
        const int n = 1 + static_cast<int>(rng.next_u64() % 25);
        for (int i = 0; i < n; ++i)
            values.push_back(-60.0 + 40.0 * rng.uniform());
        const double base = median(values);

        // permutation invariance
        std::vector<double> shuffled = values;
        for (std::size_t i = shuffled.size() - 1; i > 0; --i)
            std::swap(shuffled[i], shuffled[rng.next_u64() % (i + 1)]);
        CHECK(median(shuffled) == base);

        // shift equivariance
        std::vector<double> shifted = values;
        for (double &v : shifted)
            v += 4.25;
        CHECK_THAT(median(shifted), WithinAbs(base + 4.25, 1e-12));
    }
    CHECK_THROWS_AS(median({}), Error);
}

TEST_CASE("group medians over a deterministic close-in dataset") {
    // sigma = 0 close-in data: distance groups differ by exactly
    // phi * delta_d = 12 dB/m * 0.75 m
    BgModelParams ci = paper_preset(ModelKind::Ci);
    ci.sigma_db = 0.0;
    Rng rng(1);
    const Dataset data = synth_dataset(ci, SynthGrid{}, GroupOffsets{}, rng);
    const GroupSummary by_distance = group_medians(data, GroupKey::Distance);
    REQUIRE(by_distance.rows.size() == 3);
    CHECK(by_distance.rows[0].label == "1");
    CHECK(by_distance.rows[1].label == "1.75");
    CHECK(by_distance.rows[2].label == "2.5");
    CHECK_THAT(by_distance.rows[1].median_db - by_distance.rows[0].median_db,
               WithinAbs(9.0, 1e-9));
    CHECK_THAT(by_distance.rows[2].median_db - by_distance.rows[1].median_db,
               WithinAbs(9.0, 1e-9));
    std::size_t total = 0;
    for (const auto &row : by_distance.rows)
        total += row.count;
    CHECK(total == data.size());

    // single-sample dataset: the median is that sample
    Dataset single;
    single.samples.push_back(validate_sample(75, 1, "s1", "headon", -45.5));
    const GroupSummary one = group_medians(single, GroupKey::Frequency);
    REQUIRE(one.rows.size() == 1);
    CHECK(one.rows[0].median_db == -45.5);

    CHECK_THROWS_AS(group_medians(Dataset{}, GroupKey::Distance), Error);
}

TEST_CASE("incomplete beta agrees with numerical integration") {
    // shapes as they appear in F tests (half-integer) and generic ones
    const double as[] = {0.5, 1.0, 2.5, 13.5, 53.0, 106.0};
    const double bs[] = {0.5, 1.0, 4.0, 0.5, 1.5, 0.5};
    for (double a : as) {
        for (double b : bs) {
            for (double x : {0.01, 0.2, 0.5, 0.8, 0.99}) {
                const double reference = oracles::incomplete_beta_quadrature(a, b, x);
                CHECK_THAT(regularized_incomplete_beta(a, b, x), WithinAbs(reference, 1e-8));
            }
        }
    }
    CHECK(regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    CHECK_THROWS_AS(regularized_incomplete_beta(0.0, 1.0, 0.5), Error);
}

TEST_CASE("F survival function basics") {
    CHECK(f_distribution_sf(0.0, 1, 10) == 1.0);
    CHECK(f_distribution_sf(std::numeric_limits<double>::infinity(), 1, 10) == 0.0);
    // monotone decreasing in F at fixed dof
    double previous = 1.0;
    for (double f = 0.1; f < 20.0; f += 0.3) {
        const double p = f_distribution_sf(f, 3, 24);
        CHECK(p < previous);
        previous = p;
    }
    // frozen reference: P(F_{1,10} > 4.964603) = 0.05 (classical table value)
    CHECK_THAT(f_distribution_sf(4.964603, 1, 10), WithinAbs(0.05, 1e-4));
}

TEST_CASE("one-way ANOVA flags degenerate inputs") {
    Dataset identical;
    for (int i = 0; i < 4; ++i)
        identical.samples.push_back(
            validate_sample(75, 1, "s1", i % 2 == 0 ? "headon" : "sideways", -40.0));
    const AnovaResult flagged = one_way_anova(identical, GroupKey::Orientation);
    CHECK(flagged.zero_within_variance);
    CHECK(flagged.p_value == 0.0);
    CHECK(std::isinf(flagged.f_stat));

    Dataset one_group;
    for (int i = 0; i < 4; ++i)
        one_group.samples.push_back(validate_sample(75, 1, "s1", "headon", -40.0 - i));
    CHECK_THROWS_MATCHES(one_way_anova(one_group, GroupKey::Orientation), Error,
                         Catch::Matchers::Predicate<Error>([](const Error &e) {
                             return e.code() == ErrorCode::InsufficientGroups;
                         }));
    CHECK_THROWS_AS(one_way_anova(Dataset{}, GroupKey::Subject), Error);
}

TEST_CASE("ANOVA p-values are uniform under the null") {
    // 200 seeded null datasets; the empirical CDF of p must stay close to
    // uniform (Kolmogorov-Smirnov at the 1% level: 1.63 / sqrt(200) = 0.115)
    std::vector<double> pvalues;
    for (int seed = 0; seed < 200; ++seed) {
        Rng rng(3000 + seed);
        Dataset data;
        for (int i = 0; i < 30; ++i)
            data.samples.push_back(validate_sample(
                75, 1, "s1", i < 15 ? "headon" : "sideways", rng.gaussian()));
        pvalues.push_back(one_way_anova(data, GroupKey::Orientation).p_value);
    }
    std::sort(pvalues.begin(), pvalues.end());
    double ks = 0.0;
    const double n = static_cast<double>(pvalues.size());
    for (std::size_t i = 0; i < pvalues.size(); ++i) {
        ks = std::max(ks, std::abs(pvalues[i] - static_cast<double>(i + 1) / n));
        ks = std::max(ks, std::abs(pvalues[i] - static_cast<double>(i) / n));
    }
    CHECK(ks < 0.115);
}

TEST_CASE("ANOVA detects the published effect sizes") {
    // orientation and subject against a flat baseline, so the only spread is
    // the 6.17 dB residual
    BgModelParams flat{FiParams{-50.0, 0.0}, 6.17};
    Rng rng(42);
    const Dataset data = synth_dataset(flat, SynthGrid{}, GroupOffsets{4.6, 7.2}, rng);
    CHECK(one_way_anova(data, GroupKey::Orientation).p_value < 0.01);
    CHECK(one_way_anova(data, GroupKey::Subject).p_value < 0.01);

    // frequency and distance significance comes from the model trends
    BgModelParams trending = paper_preset(ModelKind::Abg);
    trending.sigma_db = 6.17;
    Rng rng2(43);
    const Dataset trended = synth_dataset(trending, SynthGrid{}, GroupOffsets{}, rng2);
    CHECK(one_way_anova(trended, GroupKey::Frequency).p_value < 0.01);
    CHECK(one_way_anova(trended, GroupKey::Distance).p_value < 0.01);
}

TEST_CASE("analytic p-values match the permutation oracle") {
    for (int ds = 0; ds < 5; ++ds) {
        Rng gen(5100 + ds);
        const int groups = ds % 2 == 0 ? 2 : 3;
        const int per_group = groups == 2 ? 14 : 10;
        Dataset data;
        std::vector<std::vector<double>> raw_groups(groups);
        for (int g = 0; g < groups; ++g) {
            for (int i = 0; i < per_group; ++i) {
                const double value = gen.gaussian();
                raw_groups[g].push_back(value);
                data.samples.push_back(validate_sample(75.0 + 17.5 * g, 1, "s1",
                                                       g % 2 == 0 ? "headon" : "sideways", value));
            }
        }
        const AnovaResult r = one_way_anova(data, GroupKey::Frequency);
        Rng perm_rng(7700 + ds);
        const double p_perm = oracles::permutation_anova_p(raw_groups, 10000, perm_rng);
        CHECK_THAT(r.p_value, WithinAbs(p_perm, 0.02));
    }
}
