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
// Two-screen human-body geometry and the 3GPP blockage estimates.
//
// The body is modeled as two vertical rectangular screens of width w and
// height h, perpendicular to the Tx-Rx line and separated by the body width
// r along it. Coordinate frame: Tx at (-d/2, 0, hc), Rx at (+d/2, 0, hc),
// ground plane z = 0, screens centered laterally on the LoS axis.
//
// Model B is the deterministic variant: per screen, a knife-edge F-term for
// each of the four edges built from the projected excess path length
// D1 + D2 - r, top/bottom edges in the vertical plane containing the LoS and
// side edges in the horizontal plane. Model A is the angle-based variant:
// each screen becomes an angular blocking region seen from the Rx. Screen
// attenuations are summed in dB.
//
// Both models are defined up to 100 GHz and extended analytically above it;
// results above that carry a validity flag.

#ifndef BLOCKAGE_GEOMETRY_HPP
#define BLOCKAGE_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <json.hpp>

#include "blockage/errors.hpp"
#include "blockage/models.hpp"
#include "blockage/units.hpp"

namespace blockage {

/// Attenuations beyond this per-screen floor are clamped and flagged.
inline constexpr double kFullBlockFloorDb = 240.0;
inline constexpr double kFullBlockTolerance = 1e-12;
/// Upper frequency validated by the cited blockage models.
inline constexpr double kGppValidatedGhz = 100.0;

struct BodyDims {
    double height_m = 1.7; // h
    double width_m = 0.4;  // r, along the LoS (hip width)
    double depth_m = 0.3;  // w, across the LoS
};

struct LinkLayout {
    double d_m = 1.0;             // Tx-Rx separation
    double hc_m = 1.0;            // antenna height
    double blocker_offset_m = 0.0; // blocker center along the link, from midpoint
};

/// One of the two body screens: a w x h rectangle in the plane x = x_m,
/// spanning y in [-half_width_m, +half_width_m] and z in [0, top_m].
struct Screen {
    double x_m;
    double half_width_m;
    double top_m;
};

inline void validate_geometry(const BodyDims &body, const LinkLayout &link) {
    if (!(body.height_m > 0.0) || !(body.width_m > 0.0) || !(body.depth_m > 0.0))
        throw Error(ErrorCode::ParseError, "body dimensions must all be positive");
    if (!(link.d_m > 0.0))
        throw Error(ErrorCode::ZeroDistance, "link distance must be positive");
    if (!(link.hc_m > 0.0))
        throw Error(ErrorCode::ParseError, "antenna height must be positive");
    if (std::abs(link.blocker_offset_m) + body.width_m / 2.0 >= link.d_m / 2.0)
        throw Error(ErrorCode::BlockerTouchesAntenna,
                    "a screen plane reaches an antenna; move the blocker or widen the link");
}

inline std::array<Screen, 2> build_screens(const BodyDims &body, const LinkLayout &link) {
    validate_geometry(body, link);
    const double half_depth = body.depth_m / 2.0;
    return {Screen{link.blocker_offset_m - body.width_m / 2.0, half_depth, body.height_m},
            Screen{link.blocker_offset_m + body.width_m / 2.0, half_depth, body.height_m}};
}

/// Projected path lengths around one screen edge: Tx-to-edge, edge-to-Rx and
/// the direct Tx-Rx length, all in the projection plane of that edge.
struct EdgePath {
    double d1_m;
    double d2_m;
    double r_proj_m;
    bool shadowed;

    double excess_m() const noexcept { return d1_m + d2_m - r_proj_m; }
};

struct ScreenPaths {
    EdgePath top, bottom, left, right;
};

/// Computes the four edge paths per screen. Top/bottom edges live in the
/// vertical plane containing the LoS, side edges in the horizontal plane.
/// The shadowed flag is set when the LoS segment passes through the screen
/// rectangle.
inline std::array<ScreenPaths, 2> edge_paths(const std::array<Screen, 2> &screens,
                                             const LinkLayout &link) {
    const double tx_x = -link.d_m / 2.0;
    const double rx_x = +link.d_m / 2.0;
    std::array<ScreenPaths, 2> out;
    for (std::size_t i = 0; i < screens.size(); ++i) {
        const Screen &s = screens[i];
        const double dx1 = s.x_m - tx_x; // Tx-to-screen along the link
        const double dx2 = rx_x - s.x_m; // screen-to-Rx along the link
        // The LoS crosses the screen plane at (y = 0, z = hc); the screens are
        // laterally centered, so only the height decides the intersection.
        const bool shadowed = link.hc_m <= s.top_m;
        const double r_proj = link.d_m;
        // Both antennas sit at the same height on the LoS axis, so an edge has
        // the same transverse offset from either end of the link.
        auto edge = [&](double transverse) {
            return EdgePath{std::hypot(dx1, transverse), std::hypot(dx2, transverse), r_proj,
                            shadowed};
        };
        ScreenPaths p;
        p.top = edge(s.top_m - link.hc_m);
        p.bottom = edge(link.hc_m);
        p.left = edge(s.half_width_m);
        p.right = edge(s.half_width_m);
        out[i] = p;
    }
    return out;
}

/// Knife-edge diffraction F-term from a projected excess path length:
/// F = atan(+-(pi/2) sqrt((pi/lambda) excess)) / pi, positive sign when the
/// edge shadows the direct path. Bounded by (-1/2, 1/2).
inline double ked_f(double path_excess_m, double lambda_m, bool shadowed) {
    if (!(lambda_m > 0.0))
        throw Error(ErrorCode::NonPositiveFrequency, "wavelength must be positive");
    if (path_excess_m < 0.0) {
        // The triangle inequality keeps the excess non-negative; tolerate
        // rounding at the exact-graze boundary only.
        if (shadowed && path_excess_m < -1e-12)
            throw Error(ErrorCode::NegativeExcessWhileShadowed,
                        "negative excess path length on a shadowed edge");
        path_excess_m = 0.0;
    }
    const double sign = shadowed ? 1.0 : -1.0;
    const double arg = (std::numbers::pi / 2.0) *
                       std::sqrt(std::numbers::pi / lambda_m * path_excess_m);
    return std::atan(sign * arg) / std::numbers::pi;
}

struct GppGain {
    GainDb gain{0.0};
    bool full_block_singular = false;
    bool beyond_validated_band = false;
};

namespace detail {

/// -20 log10(1 - Fv Fh) with the singular full-block case clamped to the
/// floor instead of returning infinity.
inline double screen_loss_db(double f_vertical_sum, double f_horizontal_sum, bool &clamped) {
    const double product = f_vertical_sum * f_horizontal_sum;
    if (product >= 1.0 - kFullBlockTolerance) {
        clamped = true;
        return kFullBlockFloorDb;
    }
    return -20.0 * std::log10(1.0 - product);
}

} // namespace detail

/// Deterministic (distance-based) screen-blockage estimate.
inline GppGain gpp_b_gain(const BodyDims &body, const LinkLayout &link, Frequency f) {
    const auto screens = build_screens(body, link);
    const auto paths = edge_paths(screens, link);
    const double lambda = f.wavelength_m();
    GppGain result;
    double total_loss = 0.0;
    for (const auto &p : paths) {
        const double fv = ked_f(p.top.excess_m(), lambda, p.top.shadowed) +
                          ked_f(p.bottom.excess_m(), lambda, p.bottom.shadowed);
        const double fh = ked_f(p.left.excess_m(), lambda, p.left.shadowed) +
                          ked_f(p.right.excess_m(), lambda, p.right.shadowed);
        total_loss += detail::screen_loss_db(fv, fh, result.full_block_singular);
    }
    result.gain = GainDb(-total_loss);
    result.beyond_validated_band = f.ghz() > kGppValidatedGhz;
    return result;
}

/// Angle-based screen-blockage estimate. Each screen maps to an angular
/// blocking region seen from the Rx: azimuth span from the side edges and
/// zenith span from the top/bottom edges. The F-terms follow the angular
/// form F = atan(+-(pi/2) sqrt((pi/lambda) r (1/cos A - 1))) / pi.
///
/// The blocker range r is taken as the two-sided equivalent
/// r2 (r1 + r2) / r1 (r1, r2 = Tx/Rx-to-screen distances), which makes the
/// angular excess agree with the two-sided knife-edge excess; with the plain
/// Rx-to-screen range the two estimates would diverge by ~6 dB for a
/// mid-link blocker instead of tracking each other.
inline GppGain gpp_a_gain(const BodyDims &body, const LinkLayout &link, Frequency f) {
    const auto screens = build_screens(body, link);
    const double lambda = f.wavelength_m();
    const double tx_x = -link.d_m / 2.0;
    const double rx_x = +link.d_m / 2.0;
    GppGain result;
    double total_loss = 0.0;
    for (const Screen &s : screens) {
        const double r1 = s.x_m - tx_x;
        const double r2 = rx_x - s.x_m;
        const double range = r2 * (r1 + r2) / r1;
        const bool shadowed = link.hc_m <= s.top_m;
        auto angular_f = [&](double transverse_m) {
            const double angle = std::atan(std::abs(transverse_m) / r2);
            const double nu = range * (1.0 / std::cos(angle) - 1.0);
            const double sign = shadowed ? 1.0 : -1.0;
            const double arg =
                (std::numbers::pi / 2.0) * std::sqrt(std::numbers::pi / lambda * nu);
            return std::atan(sign * arg) / std::numbers::pi;
        };
        const double fv = angular_f(s.top_m - link.hc_m) + angular_f(link.hc_m);
        const double fh = 2.0 * angular_f(s.half_width_m);
        total_loss += detail::screen_loss_db(fv, fh, result.full_block_singular);
    }
    result.gain = GainDb(-total_loss);
    result.beyond_validated_band = f.ghz() > kGppValidatedGhz;
    return result;
}

enum class GppModel { A, B };

/// Difference between a geometric estimate and the close-in regression at
/// the same distance and frequency; positive when the geometric model
/// predicts less attenuation.
inline double gpp_discrepancy_db(const BodyDims &body, const LinkLayout &link, Frequency f,
                                 const CiParams &ci, GppModel which = GppModel::B) {
    const GppGain g =
        which == GppModel::B ? gpp_b_gain(body, link, f) : gpp_a_gain(body, link, f);
    return g.gain.db() - eval_ci(ci, Distance(link.d_m), f).db();
}

// Geometry JSON: {"body":{"h_m":..,"r_m":..,"w_m":..},
//                 "link":{"d_m":..,"hc_m":..,"offset_m":..}}
inline std::pair<BodyDims, LinkLayout> geometry_from_json(const nlohmann::json &j) {
    BodyDims body;
    LinkLayout link;
    if (j.contains("body")) {
        const auto &b = j.at("body");
        if (b.contains("h_m")) body.height_m = b.at("h_m").get<double>();
        if (b.contains("r_m")) body.width_m = b.at("r_m").get<double>();
        if (b.contains("w_m")) body.depth_m = b.at("w_m").get<double>();
    }
    if (j.contains("link")) {
        const auto &l = j.at("link");
        if (l.contains("d_m")) link.d_m = l.at("d_m").get<double>();
        if (l.contains("hc_m")) link.hc_m = l.at("hc_m").get<double>();
        if (l.contains("offset_m")) link.blocker_offset_m = l.at("offset_m").get<double>();
    }
    validate_geometry(body, link);
    return {body, link};
}

inline nlohmann::json to_json(const BodyDims &body, const LinkLayout &link) {
    return {{"body", {{"h_m", body.height_m}, {"r_m", body.width_m}, {"w_m", body.depth_m}}},
            {"link",
             {{"d_m", link.d_m}, {"hc_m", link.hc_m}, {"offset_m", link.blocker_offset_m}}}};
}

} // namespace blockage

#endif
