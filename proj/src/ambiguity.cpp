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

#include "qcs/ambiguity.hpp"

#include "qcs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qcs
{

AmbiguousPair build_pair(std::size_t n_bins, std::size_t n0, std::size_t n1, double psi0, double psi1, double gamma)
{
    const std::string range = "[1, " + std::to_string(n_bins) + "]";
    require(n_bins >= 2, ErrorKind::invalid_argument, "build_pair: need N >= 2");
    require(n0 >= 1 && n0 <= n_bins, ErrorKind::invalid_argument, "build_pair: n0 outside " + range);
    require(n1 >= 1 && n1 <= n_bins, ErrorKind::invalid_argument, "build_pair: n1 outside " + range);
    require(n0 != n1, ErrorKind::invalid_argument, "build_pair: n0 and n1 must differ");
    require(gamma > 0.0 && gamma < 1.0, ErrorKind::invalid_argument, "build_pair: gamma must lie in (0, 1)");
    constexpr double pi = std::numbers::pi;
    require(psi0 >= -pi && psi0 < pi && psi1 >= -pi && psi1 < pi, ErrorKind::invalid_argument,
            "build_pair: phases must lie in [-pi, pi)");

    RangeProfile a0(n_bins);
    a0[index_of_bin(n0, n_bins)] = std::polar(1.0, -psi0);
    RangeProfile a1 = a0;
    a1[index_of_bin(n1, n_bins)] = std::polar(gamma, -psi1);
    return {std::move(a0), std::move(a1), gamma, n0, n1, psi0, psi1};
}

double ambiguity_margin(const SamplingPlan &plan, const RangeProfile &a0)
{
    const CVector r0 = forward(plan, a0);
    double margin = std::numeric_limits<double>::infinity();
    for (const Complex &v : r0)
        margin = std::min({margin, std::abs(v.real()), std::abs(v.imag())});
    return margin;
}

bool check_margin(const SamplingPlan &plan, const RangeProfile &a0, double gamma)
{
    return ambiguity_margin(plan, a0) > gamma;
}

bool verify_ac(const SamplingPlan &plan, const QuantizerConfig &cfg, const AmbiguousPair &pair, const Dither *dither)
{
    // Both sides come from the same code path onto the same grid, so exact
    // comparison is meaningful.
    return sense(plan, cfg, dither, pair.a0) == sense(plan, cfg, dither, pair.a1);
}

QuantizerConfig pair_quantizer(const SamplingPlan &plan, const AmbiguousPair &pair, BitDepth depth, bool dithered)
{
    const CVector r0 = forward(plan, pair.a0);
    const CVector r1 = forward(plan, pair.a1);
    const double range = std::max(dynamic_range_for(r0, depth, dithered), dynamic_range_for(r1, depth, dithered));
    return QuantizerConfig::make(depth, range);
}

double dithered_ambiguity_rate(const SamplingPlan &plan, const AmbiguousPair &pair, BitDepth depth,
                               std::size_t n_seeds, std::uint64_t base_seed)
{
    require(n_seeds >= 1, ErrorKind::invalid_argument, "dithered_ambiguity_rate: need at least one seed");
    const QuantizerConfig cfg = pair_quantizer(plan, pair, depth, true);
    const CVector r0 = forward(plan, pair.a0);
    const CVector r1 = forward(plan, pair.a1);
    std::size_t ambiguous = 0;
    for (std::size_t s = 0; s < n_seeds; ++s)
    {
        const Dither xi = draw_dither(cfg, plan.n_meas(), derive_seed(base_seed, {static_cast<std::uint64_t>(SeedTag::dither), s}));
        if (quantize_measurements(cfg, &xi, r0) == quantize_measurements(cfg, &xi, r1))
            ++ambiguous;
    }
    return static_cast<double>(ambiguous) / static_cast<double>(n_seeds);
}

} // namespace qcs
