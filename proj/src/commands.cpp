// SPDX-License-Identifier: Apache-2.0
//
// qcs-radar: quantized compressive sensing for FMCW range estimation
// Copyright (C) 2026 The qcs-radar authors
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

#include "qcs/commands.hpp"

#include "qcs/ambiguity.hpp"
#include "qcs/errors.hpp"
#include "qcs/rng.hpp"

#include <algorithm>
#include <numbers>

namespace qcs
{

Json run_ambiguity(const AmbiguityOptions &opt)
{
    require(opt.bit_depth.quantized(), ErrorKind::invalid_argument, "ambiguity: needs a quantized bit depth");
    const AmbiguousPair pair = build_pair(opt.n_bins, opt.n0, opt.n1, opt.psi0, opt.psi1, opt.gamma);
    const SamplingPlan plan =
        make_sampling_plan(opt.n_bins, opt.n_meas, derive_seed(opt.seed, {static_cast<std::uint64_t>(SeedTag::plan)}));

    const double margin = ambiguity_margin(plan, pair.a0);
    const QuantizerConfig cfg = pair_quantizer(plan, pair, opt.bit_depth, false);
    const bool undithered = verify_ac(plan, cfg, pair, nullptr);
    const double rate = dithered_ambiguity_rate(plan, pair, opt.bit_depth, opt.n_seeds, opt.seed);

    return Json{{"margin", margin},
                {"condition_holds", margin > opt.gamma},
                {"undithered_AC", undithered},
                {"dithered_AC_rate", rate},
                {"n_seeds", opt.n_seeds}};
}

Capture synthesize_capture(const CaptureOptions &opt)
{
    RadarParams radar = opt.radar;
    radar.n_bins = opt.n_bins;
    radar.validate();

    Rng profile_rng(derive_seed(opt.seed, {static_cast<std::uint64_t>(SeedTag::profile)}));
    RangeProfile a(opt.n_bins);
    if (opt.target_bins.empty())
    {
        require(opt.sparsity >= 1 && opt.sparsity <= opt.n_bins, ErrorKind::invalid_argument,
                "gen-capture: sparsity must lie in [1, N]");
        a = random_profile(opt.n_bins, opt.sparsity, profile_rng);
    }
    else
    {
        std::vector<std::size_t> bins = opt.target_bins;
        std::sort(bins.begin(), bins.end());
        require(std::adjacent_find(bins.begin(), bins.end()) == bins.end(), ErrorKind::invalid_argument,
                "gen-capture: duplicate target bin");
        require(bins.front() >= 1 && bins.back() <= opt.n_bins, ErrorKind::invalid_argument,
                "gen-capture: target bins must lie in [1, " + std::to_string(opt.n_bins) + "]");
        std::vector<double> mags(bins.size());
        for (double &m : mags)
            m = profile_rng.uniform_open();
        const double peak = *std::max_element(mags.begin(), mags.end());
        for (std::size_t i = 0; i < bins.size(); ++i)
            a[index_of_bin(bins[i], opt.n_bins)] =
                std::polar(mags[i] / peak, 2.0 * std::numbers::pi * profile_rng.uniform());
    }

    Capture cap;
    cap.plan = make_sampling_plan(opt.n_bins, opt.n_meas, derive_seed(opt.seed, {static_cast<std::uint64_t>(SeedTag::plan)}));
    cap.plan_by_seed = opt.plan_by_seed;
    const CVector r = forward(cap.plan, a);
    const bool dithered = opt.dithered && opt.bit_depth.quantized();
    cap.quantizer = opt.bit_depth.quantized()
                        ? QuantizerConfig::make(opt.bit_depth, dynamic_range_for(r, opt.bit_depth, dithered))
                        : QuantizerConfig::none();

    if (dithered)
    {
        require(opt.dither_storage != DitherStorage::none, ErrorKind::invalid_argument,
                "gen-capture: dithered capture needs a dither storage mode");
        cap.dither_storage = opt.dither_storage;
        Dither xi = draw_dither(cap.quantizer, opt.n_meas, derive_seed(opt.seed, {static_cast<std::uint64_t>(SeedTag::dither)}));
        cap.samples = quantize_measurements(cap.quantizer, &xi, r);
        if (opt.dither_storage == DitherStorage::values)
            xi.seed.reset();
        if (opt.dither_storage != DitherStorage::unrecorded)
            cap.dither = std::move(xi);
    }
    else
    {
        cap.samples = quantize_measurements(cap.quantizer, nullptr, r);
    }

    cap.radar = radar;
    std::vector<std::size_t> truth;
    for (std::size_t idx : a.support())
        truth.push_back(bin_of_index(idx, opt.n_bins));
    std::sort(truth.begin(), truth.end());
    cap.truth_bins = std::move(truth);
    return cap;
}

Json recover_capture(const Capture &capture, const RecoverOptions &opt)
{
    const SamplingPlan &plan = capture.plan;
    const std::size_t n = plan.n_bins;
    require(opt.sparsity >= 1 && opt.sparsity <= n, ErrorKind::invalid_argument,
            "recover: sparsity must lie in [1, " + std::to_string(n) + "]");

    RangeProfile estimate(n);
    Json out;
    out["algorithm"] = to_string(opt.algorithm);
    if (opt.algorithm == Algorithm::pbp)
    {
        estimate = pbp(plan, capture.samples, opt.sparsity);
        out["iterations"] = 0;
        out["stop_reason"] = nullptr;
        out["final_consistency"] =
            capture.dither_storage == DitherStorage::unrecorded
                ? Json(nullptr)
                : Json(consistency(plan, capture.quantizer, capture.dither ? &*capture.dither : nullptr,
                                   capture.samples, estimate));
    }
    else
    {
        // QIHT re-quantizes its estimate, which needs the exact dither.
        require(capture.dither_storage != DitherStorage::unrecorded, ErrorKind::invalid_argument,
                "recover: qiht needs the dither values, but this capture does not record them (use --algo pbp)");
        require(capture.dither_storage == DitherStorage::none || capture.dither.has_value(), ErrorKind::schema,
                "recover: capture declares a dither but none was loaded");
        RecoveryConfig rc;
        rc.sparsity = opt.sparsity;
        rc.step_size = opt.step_size;
        rc.max_iters = opt.max_iters;
        rc.consistency_target = opt.consistency_target;
        rc.validate();
        RecoveryResult res =
            qiht(plan, capture.quantizer, capture.dither ? &*capture.dither : nullptr, capture.samples, rc);
        estimate = std::move(res.estimate);
        out["iterations"] = res.iterations_run;
        out["stop_reason"] = to_string(res.stop_reason);
        out["final_consistency"] = res.final_consistency;
    }

    RadarParams radar;
    if (capture.radar)
        radar = *capture.radar;
    radar.n_bins = n;

    std::vector<std::size_t> bins;
    for (std::size_t idx : estimate.support())
        bins.push_back(bin_of_index(idx, n));
    std::sort(bins.begin(), bins.end());

    Json targets = Json::array();
    for (std::size_t bin : bins)
    {
        const Complex v = estimate[index_of_bin(bin, n)];
        targets.push_back(Json{{"bin", bin},
                               {"range_m", bin_to_range(radar, bin)},
                               {"re", v.real()},
                               {"im", v.imag()},
                               {"magnitude", std::abs(v)}});
    }
    out["targets"] = std::move(targets);

    if (capture.truth_bins && !capture.truth_bins->empty())
        out["tpr"] = tpr(*capture.truth_bins, bins, capture.truth_bins->size());
    return out;
}

} // namespace qcs
