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
// Test-only reference implementations, deliberately independent of the
// library code paths they are used to check:
//  - least squares through the normal equations (the library uses an SVD)
//  - the incomplete beta function by numerical integration (the library
//    uses a continued fraction)
//  - ANOVA p-values by brute-force label permutation
//  - screen edge paths from explicit 3D points (the library works in the
//    projection planes directly)

#ifndef BLOCKAGE_TESTS_ORACLES_HPP
#define BLOCKAGE_TESTS_ORACLES_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "blockage/rng.hpp"

namespace oracles {

// --- least squares via normal equations ------------------------------------

/// Solves min ||X b - y|| by Gaussian elimination on X^T X b = X^T y.
inline std::vector<double> normal_equations_lsq(const std::vector<std::vector<double>> &rows,
                                                const std::vector<double> &y) {
    const std::size_t n = rows.size();
    const std::size_t k = rows.front().size();
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
            for (std::size_t q = 0; q < k; ++q)
                a[p][q] += rows[i][p] * rows[i][q];
            a[p][k] += rows[i][p] * y[i];
        }
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col]))
                pivot = r;
        std::swap(a[col], a[pivot]);
        if (a[col][col] == 0.0)
            throw std::runtime_error("singular normal equations");
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col)
                continue;
            const double factor = a[r][col] / a[col][col];
            for (std::size_t q = col; q <= k; ++q)
                a[r][q] -= factor * a[col][q];
        }
    }
    std::vector<double> beta(k);
    for (std::size_t i = 0; i < k; ++i)
        beta[i] = a[i][k] / a[i][i];
    return beta;
}

// --- incomplete beta by quadrature -------------------------------------------

/// I_x(a, b) by Simpson integration after the substitution t = u^2, which
/// removes the endpoint singularity for a >= 1/2 (the F-test always has
/// half-integer shapes). Good to ~1e-10 for the shapes used in tests.
inline double incomplete_beta_quadrature(double a, double b, double x) {
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    // integrate the complementary side when x is large for accuracy
    if (x > (a + 1.0) / (a + b + 2.0))
        return 1.0 - incomplete_beta_quadrature(b, a, 1.0 - x);
    const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    const auto integrand = [&](double u) {
        // 2 u^{2a-1} (1-u^2)^{b-1}
        if (u == 0.0)
            return a == 0.5 ? 2.0 : 0.0;
        return 2.0 * std::exp((2.0 * a - 1.0) * std::log(u) + (b - 1.0) * std::log1p(-u * u));
    };
    const double upper = std::sqrt(x);
    const std::size_t intervals = 1 << 16; // even
    const double h = upper / static_cast<double>(intervals);
    double sum = integrand(0.0) + integrand(upper);
    for (std::size_t i = 1; i < intervals; ++i)
        sum += integrand(h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
    const double integral = sum * h / 3.0;
    return integral / std::exp(log_beta);
}

// --- permutation ANOVA ---------------------------------------------------------

inline double f_statistic(const std::vector<std::vector<double>> &groups) {
    std::size_t n = 0;
    double grand = 0.0;
    for (const auto &g : groups) {
        n += g.size();
        grand = std::accumulate(g.begin(), g.end(), grand);
    }
    grand /= static_cast<double>(n);
    double ssb = 0.0;
    double ssw = 0.0;
    for (const auto &g : groups) {
        const double mean =
            std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
        ssb += static_cast<double>(g.size()) * (mean - grand) * (mean - grand);
        for (double v : g)
            ssw += (v - mean) * (v - mean);
    }
    const auto k = groups.size();
    return (ssb / static_cast<double>(k - 1)) / (ssw / static_cast<double>(n - k));
}

/// Fraction of label permutations with an F statistic at least as large as
/// the observed one.
inline double permutation_anova_p(const std::vector<std::vector<double>> &groups,
                                  std::size_t permutations, blockage::Rng &rng) {
    const double f_observed = f_statistic(groups);
    std::vector<double> pool;
    std::vector<std::size_t> sizes;
    for (const auto &g : groups) {
        sizes.push_back(g.size());
        pool.insert(pool.end(), g.begin(), g.end());
    }
    const auto bounded = [&rng](std::size_t bound) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(rng.next_u64()) * bound) >> 64);
    };
    std::size_t hits = 0;
    for (std::size_t p = 0; p < permutations; ++p) {
        for (std::size_t i = pool.size() - 1; i > 0; --i)
            std::swap(pool[i], pool[bounded(i + 1)]);
        std::vector<std::vector<double>> shuffled;
        std::size_t offset = 0;
        for (std::size_t s : sizes) {
            shuffled.emplace_back(pool.begin() + static_cast<std::ptrdiff_t>(offset),
                                  pool.begin() + static_cast<std::ptrdiff_t>(offset + s));
            offset += s;
        }
        if (f_statistic(shuffled) >= f_observed)
            ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(permutations);
}

// --- 3D edge paths ------------------------------------------------------------

struct Vec3 {
    double x, y, z;
};

inline double norm(const Vec3 &v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }
inline Vec3 sub(const Vec3 &a, const Vec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

/// Excess path length around one screen edge computed from explicit 3D
/// antenna and edge points projected onto the requested plane.
/// plane: 'v' = vertical plane containing the LoS (drop y), 'h' = horizontal
/// plane (drop z).
inline double edge_excess_3d(double d, double hc, double screen_x, double edge_coord, char plane) {
    Vec3 tx{-d / 2.0, 0.0, hc};
    Vec3 rx{+d / 2.0, 0.0, hc};
    Vec3 edge = plane == 'v' ? Vec3{screen_x, 0.0, edge_coord} : Vec3{screen_x, edge_coord, hc};
    auto project = [&](Vec3 v) {
        if (plane == 'v')
            v.y = 0.0;
        else
            v.z = hc;
        return v;
    };
    const Vec3 ptx = project(tx);
    const Vec3 prx = project(rx);
    const Vec3 pedge = project(edge);
    return norm(sub(pedge, ptx)) + norm(sub(prx, pedge)) - norm(sub(prx, ptx));
}

} // namespace oracles

#endif
