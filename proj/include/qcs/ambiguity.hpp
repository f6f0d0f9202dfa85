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

#pragma once

#include "qcs/quantization.hpp"
#include "qcs/signal_model.hpp"

#include <cstddef>
#include <cstdint>

namespace qcs
{

// a0 = e^{-i psi0} b_{n0}, a1 = a0 + gamma e^{-i psi1} b_{n1}. Bins are 1-based.
struct AmbiguousPair
{
    RangeProfile a0;
    RangeProfile a1;
    double gamma = 0.0;
    std::size_t n0 = 0;
    std::size_t n1 = 0;
    double psi0 = 0.0;
    double psi1 = 0.0;
};

AmbiguousPair build_pair(std::size_t n_bins, std::size_t n0, std::size_t n1, double psi0, double psi1, double gamma);

// min over measurements of min(|Re r0[m]|, |Im r0[m]|), r0 = Phi a0.
double ambiguity_margin(const SamplingPlan &plan, const RangeProfile &a0);

// True iff the margin strictly exceeds gamma. Under 1-bit undithered
// quantization this guarantees Q(Phi a0) = Q(Phi a1) for every n1, psi1.
bool check_margin(const SamplingPlan &plan, const RangeProfile &a0, double gamma);

// True iff a0 and a1 produce exactly the same quantized measurements.
bool verify_ac(const SamplingPlan &plan, const QuantizerConfig &cfg, const AmbiguousPair &pair, const Dither *dither);

// Quantizer whose range covers both Phi a0 and Phi a1.
QuantizerConfig pair_quantizer(const SamplingPlan &plan, const AmbiguousPair &pair, BitDepth depth, bool dithered);

// Fraction of dither seeds (derived from base_seed) for which the pair
// remains ambiguous under dithered quantization.
double dithered_ambiguity_rate(const SamplingPlan &plan, const AmbiguousPair &pair, BitDepth depth,
                               std::size_t n_seeds, std::uint64_t base_seed);

} // namespace qcs
