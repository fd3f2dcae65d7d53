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
// Forward evaluation of the four blockage-gain regression families
// (floating-intercept, close-in, alpha-beta-gamma, close-in with a
// frequency-dependent cross term), plus the stochastic residual draw, the
// equivalent-distance rule for off-midpoint blockers, free-space path loss
// and link-budget composition.
//
// All evaluators are deterministic: the zero-mean Gaussian residual is never
// folded in implicitly and is only available through sample_chi(), so fits,
// golden tests and link budgets see reproducible values.

#ifndef BLOCKAGE_MODELS_HPP
#define BLOCKAGE_MODELS_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "blockage/errors.hpp"
#include "blockage/rng.hpp"
#include "blockage/units.hpp"

namespace blockage {

enum class ModelKind { Fi, Ci, Abg, Cif };

inline const char *model_name(ModelKind kind) noexcept {
    switch (kind) {
    case ModelKind::Fi: return "fi";
    case ModelKind::Ci: return "ci";
    case ModelKind::Abg: return "abg";
    case ModelKind::Cif: return "cif";
    }
    return "?";
}

inline ModelKind parse_model_kind(const std::string &s) {
    if (s == "fi") return ModelKind::Fi;
    if (s == "ci") return ModelKind::Ci;
    if (s == "abg") return ModelKind::Abg;
    if (s == "cif") return ModelKind::Cif;
    throw Error(ErrorCode::ParseError, "unknown model '" + s + "' (expected fi|ci|abg|cif)");
}

/// BG(f) = A + 10 n log10(f / 1 GHz)
struct FiParams {
    double intercept_db;  // A
    double loss_exponent; // n
};

/// BG(d, f) = phi d + 10 m log10(f / 1 GHz)
struct CiParams {
    double distance_gain_db_per_m; // phi
    double loss_exponent;          // m
};

/// BG(d, f) = alpha d + beta + 10 gamma log10(f / 1 GHz)
struct AbgParams {
    double distance_gain_db_per_m; // alpha
    double intercept_db;           // beta
    double loss_exponent;          // gamma
};

/// BG(d, f) = a (1 + b (f - f0) / f0) d + 10 c log10(f / 1 GHz)
struct CifParams {
    double distance_gain_db_per_m; // a
    double cross_factor;           // b
    double loss_exponent;          // c
    Frequency f0{145.0};           // band center used by the cross term
};

inline int parameter_count(ModelKind kind) noexcept {
    return (kind == ModelKind::Fi || kind == ModelKind::Ci) ? 2 : 3;
}

inline GainDb eval_fi(const FiParams &p, Frequency f) {
    return GainDb(p.intercept_db + 10.0 * p.loss_exponent * std::log10(f.ghz()));
}

inline GainDb eval_ci(const CiParams &p, Distance d, Frequency f) {
    return GainDb(p.distance_gain_db_per_m * d.m() + 10.0 * p.loss_exponent * std::log10(f.ghz()));
}

inline GainDb eval_abg(const AbgParams &p, Distance d, Frequency f) {
    return GainDb(p.distance_gain_db_per_m * d.m() + p.intercept_db +
                  10.0 * p.loss_exponent * std::log10(f.ghz()));
}

inline GainDb eval_cif(const CifParams &p, Distance d, Frequency f) {
    double cross = 1.0 + p.cross_factor * (f.ghz() - p.f0.ghz()) / p.f0.ghz();
    return GainDb(p.distance_gain_db_per_m * cross * d.m() +
                  10.0 * p.loss_exponent * std::log10(f.ghz()));
}

/// A model selection together with its (optional) residual spread.
struct BgModelParams {
    std::variant<FiParams, CiParams, AbgParams, CifParams> params;
    std::optional<double> sigma_db;

    ModelKind kind() const noexcept {
        return static_cast<ModelKind>(params.index());
    }
};

/// Deterministic model value; the FI family ignores the distance argument.
inline GainDb eval(const BgModelParams &model, Distance d, Frequency f) {
    return std::visit(
        [&](const auto &p) -> GainDb {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FiParams>)
                return eval_fi(p, f);
            else if constexpr (std::is_same_v<T, CiParams>)
                return eval_ci(p, d, f);
            else if constexpr (std::is_same_v<T, AbgParams>)
                return eval_abg(p, d, f);
            else
                return eval_cif(p, d, f);
        },
        model.params);
}

// Parameters fitted from the 75-215 GHz measurement campaign, kept verbatim
// at their published precision.
namespace paper {

inline constexpr double kFiInterceptDb = 16.0;
inline constexpr double kFiLossExponent = -3.09;
inline constexpr double kCiDistanceGainDbPerM = 12.0;
inline constexpr double kCiLossExponent = -3.32;
inline constexpr double kAbgDistanceGainDbPerM = 12.1;
inline constexpr double kAbgInterceptDb = -5.2;
inline constexpr double kAbgLossExponent = -3.09;
inline constexpr double kCifDistanceGainDbPerM = 12.1;
inline constexpr double kCifCrossFactor = 0.0196;
inline constexpr double kCifLossExponent = -3.32;
inline constexpr double kCifCenterGhz = 145.0;
inline constexpr double kSigmaFiDb = 9.65;
inline constexpr double kSigmaCiDb = 6.18;
inline constexpr double kSigmaAbgDb = 6.17;
inline constexpr double kSigmaCifDb = 6.17;

// Band covered by the campaign: nine tones equispaced by 17.5 GHz.
inline constexpr double kBandLowGhz = 75.0;
inline constexpr double kBandHighGhz = 215.0;
inline constexpr int kToneCount = 9;
inline constexpr double kToneStepGhz = 17.5;

} // namespace paper

inline BgModelParams paper_preset(ModelKind kind) {
    switch (kind) {
    case ModelKind::Fi:
        return {FiParams{paper::kFiInterceptDb, paper::kFiLossExponent}, paper::kSigmaFiDb};
    case ModelKind::Ci:
        return {CiParams{paper::kCiDistanceGainDbPerM, paper::kCiLossExponent},
                paper::kSigmaCiDb};
    case ModelKind::Abg:
        return {AbgParams{paper::kAbgDistanceGainDbPerM, paper::kAbgInterceptDb,
                          paper::kAbgLossExponent},
                paper::kSigmaAbgDb};
    case ModelKind::Cif:
        return {CifParams{paper::kCifDistanceGainDbPerM, paper::kCifCrossFactor,
                          paper::kCifLossExponent, Frequency(paper::kCifCenterGhz)},
                paper::kSigmaCifDb};
    }
    throw Error(ErrorCode::UsageError, "invalid model kind");
}

/// True when f lies inside the measured 75-215 GHz band; evaluation outside
/// it is allowed but callers may want to warn.
inline bool in_fitted_band(Frequency f) noexcept {
    return f.ghz() >= paper::kBandLowGhz && f.ghz() <= paper::kBandHighGhz;
}

/// One draw of the zero-mean Gaussian residual with standard deviation sigma.
inline double sample_chi(double sigma_db, Rng &rng) {
    if (!(sigma_db >= 0.0) || !std::isfinite(sigma_db))
        throw Error(ErrorCode::NegativeSigma, "sigma must be a finite, non-negative dB value");
    return sigma_db * rng.gaussian();
}

/// Equivalent distance for a blocker that is not at the link midpoint: twice
/// the blocker-to-nearest-antenna distance. Evaluating a model at this
/// distance yields a lower bound of the blockage gain.
inline Distance equivalent_distance(Distance d_link, Distance d_blocker_to_nearest_antenna) {
    if (d_blocker_to_nearest_antenna.m() > d_link.m() / 2.0)
        throw Error(ErrorCode::BlockerBeyondMidpoint,
                    "nearest-antenna distance exceeds half the link distance");
    return Distance(2.0 * d_blocker_to_nearest_antenna.m());
}

/// Free-space path loss, 20 log10(4 pi d f / c0), in dB.
inline double fspl_db(Distance d, Frequency f) {
    if (d.m() == 0.0)
        throw Error(ErrorCode::ZeroDistance, "free-space loss needs a strictly positive distance");
    return 20.0 * std::log10(4.0 * std::numbers::pi * d.m() * f.hz() / kSpeedOfLight);
}

/// Received power: Pt + Gt + Gr - FSPL + BG, using the deterministic part of
/// the selected blockage model.
inline double link_budget_dbm(double pt_dbm, double gt_db, double gr_db, Distance d, Frequency f,
                              const BgModelParams &bg_model) {
    return pt_dbm + gt_db + gr_db - fspl_db(d, f) + eval(bg_model, d, f).db();
}

// --- JSON wire format -----------------------------------------------------
//
// {"model":"fi|ci|abg|cif","params":{...},"sigma_db":x}
// with parameter keys named after the published symbols
// (A,n | phi,m | alpha,beta,gamma | a,b,c,f0_ghz).

inline nlohmann::json to_json(const BgModelParams &model) {
    nlohmann::json params;
    switch (model.kind()) {
    case ModelKind::Fi: {
        const auto &p = std::get<FiParams>(model.params);
        params = {{"A", p.intercept_db}, {"n", p.loss_exponent}};
        break;
    }
    case ModelKind::Ci: {
        const auto &p = std::get<CiParams>(model.params);
        params = {{"phi", p.distance_gain_db_per_m}, {"m", p.loss_exponent}};
        break;
    }
    case ModelKind::Abg: {
        const auto &p = std::get<AbgParams>(model.params);
        params = {{"alpha", p.distance_gain_db_per_m},
                  {"beta", p.intercept_db},
                  {"gamma", p.loss_exponent}};
        break;
    }
    case ModelKind::Cif: {
        const auto &p = std::get<CifParams>(model.params);
        params = {{"a", p.distance_gain_db_per_m},
                  {"b", p.cross_factor},
                  {"c", p.loss_exponent},
                  {"f0_ghz", p.f0.ghz()}};
        break;
    }
    }
    nlohmann::json j{{"model", model_name(model.kind())}, {"params", params}};
    if (model.sigma_db)
        j["sigma_db"] = *model.sigma_db;
    return j;
}

namespace detail {

inline double finite_field(const nlohmann::json &params, const char *key) {
    if (!params.contains(key))
        throw Error(ErrorCode::ParseError, std::string("model params missing '") + key + "'");
    double v = params.at(key).get<double>();
    if (!std::isfinite(v))
        throw Error(ErrorCode::NonFiniteParameter, std::string("parameter '") + key +
                                                       "' must be finite");
    return v;
}

} // namespace detail

inline BgModelParams model_from_json(const nlohmann::json &j) {
    if (!j.contains("model") || !j.contains("params"))
        throw Error(ErrorCode::ParseError, "model JSON needs 'model' and 'params'");
    ModelKind kind = parse_model_kind(j.at("model").get<std::string>());
    const auto &params = j.at("params");
    BgModelParams out;
    switch (kind) {
    case ModelKind::Fi:
        out.params = FiParams{detail::finite_field(params, "A"), detail::finite_field(params, "n")};
        break;
    case ModelKind::Ci:
        out.params =
            CiParams{detail::finite_field(params, "phi"), detail::finite_field(params, "m")};
        break;
    case ModelKind::Abg:
        out.params = AbgParams{detail::finite_field(params, "alpha"),
                               detail::finite_field(params, "beta"),
                               detail::finite_field(params, "gamma")};
        break;
    case ModelKind::Cif: {
        double f0 = params.contains("f0_ghz") ? detail::finite_field(params, "f0_ghz")
                                              : paper::kCifCenterGhz;
        out.params = CifParams{detail::finite_field(params, "a"),
                               detail::finite_field(params, "b"),
                               detail::finite_field(params, "c"), Frequency(f0)};
        break;
    }
    }
    if (j.contains("sigma_db")) {
        double sigma = j.at("sigma_db").get<double>();
        if (!(sigma >= 0.0) || !std::isfinite(sigma))
            throw Error(ErrorCode::NegativeSigma, "sigma_db must be finite and >= 0");
        out.sigma_db = sigma;
    }
    return out;
}

/// The nine measured tones, 75 GHz to 215 GHz in 17.5 GHz steps.
inline std::vector<double> paper_tones_ghz() {
    std::vector<double> tones;
    tones.reserve(paper::kToneCount);
    for (int i = 0; i < paper::kToneCount; ++i)
        tones.push_back(paper::kBandLowGhz + paper::kToneStepGhz * i);
    return tones;
}

} // namespace blockage

#endif
