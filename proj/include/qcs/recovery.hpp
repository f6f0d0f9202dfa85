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
#include <optional>
#include <span>
#include <string>

namespace qcs
{

struct RecoveryConfig
{
    std::size_t sparsity = 1;              // K
    double step_size = 1.0;                // mu
    std::size_t min_iters = 20;            // early stops are only honored from here on
    std::optional<std::size_t> max_iters;  // default max(20, 100 K)
    double consistency_target = 0.95;

    void validate() const;
    std::size_t iteration_budget() const;
};

enum class StopReason
{
    budget,
    consistency_target,
    consistency_drop,
    diverged,
};

std::string to_string(StopReason reason);

struct RecoveryResult
{
    RangeProfile estimate;
    std::size_t iterations_run = 0;
    double final_consistency = 0.0;
    StopReason stop_reason = StopReason::budget;
};

// Keeps the K largest-modulus entries; ties go to the lowest index.
CVector hard_threshold(std::span<const Complex> v, std::size_t sparsity);

// Projected back projection H_K(Phi^* y / M).
RangeProfile pbp(const SamplingPlan &plan, std::span<const Complex> y, std::size_t sparsity);

// Fraction of measurements k with A_b(estimate)_k == y_k (both components).
// Without a quantizer the comparison uses a 1e-9 relative tolerance.
double consistency(const SamplingPlan &plan, const QuantizerConfig &cfg, const Dither *dither,
                   std::span<const Complex> y, const RangeProfile &estimate);

// Quantized iterative hard thresholding started from the PBP estimate:
//   a^{j+1} = H_K[a^j + (mu/M) Phi^* (y - A_b(a^j))].
// dither must be the exact vector used to produce y (nullptr if undithered).
// Stops on full consistency, on reaching the consistency target or on a strict
// consistency drop (both only after min_iters), on a non-finite iterate, or
// when the budget runs out; in the last three cases the best iterate is returned.
RecoveryResult qiht(const SamplingPlan &plan, const QuantizerConfig &cfg, const Dither *dither,
                    std::span<const Complex> y, const RecoveryConfig &rc);

} // namespace qcs
