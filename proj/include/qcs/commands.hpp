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

#include "qcs/evaluation.hpp"
#include "qcs/io.hpp"
#include "qcs/quantization.hpp"
#include "qcs/recovery.hpp"
#include "qcs/signal_model.hpp"

#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

// Entry points behind the qcs_radar subcommands, kept in the library so they
// can be tested without spawning processes.
namespace qcs
{

struct AmbiguityOptions
{
    std::size_t n_bins = 256;
    std::size_t n0 = 64;
    std::size_t n1 = 10;
    double psi0 = std::numbers::pi / 4.0;
    double psi1 = 0.0;
    double gamma = 0.5;
    BitDepth bit_depth = BitDepth::bits(1);
    std::size_t n_meas = 1024;
    std::size_t n_seeds = 200;
    std::uint64_t seed = 0; // plan remainder and dither seeds
};

// {"margin", "condition_holds", "undithered_AC", "dithered_AC_rate", "n_seeds"}
Json run_ambiguity(const AmbiguityOptions &opt);

struct CaptureOptions
{
    std::size_t n_bins = 256;
    std::size_t sparsity = 2;
    std::vector<std::size_t> target_bins; // 1-based; random support when empty
    BitDepth bit_depth = BitDepth::bits(1);
    std::size_t n_meas = 8192;
    bool dithered = true;
    DitherStorage dither_storage = DitherStorage::seed; // ignored when not dithered
    bool plan_by_seed = false;
    std::uint64_t seed = 0;
    RadarParams radar;
};

// Simulated acquisition of a random (or programmed) scene.
Capture synthesize_capture(const CaptureOptions &opt);

struct RecoverOptions
{
    Algorithm algorithm = Algorithm::qiht;
    std::size_t sparsity = 2;
    double step_size = 1.0;
    std::optional<std::size_t> max_iters;
    double consistency_target = 0.95;
};

// Estimated targets as JSON: algorithm, iterations, stop_reason,
// final_consistency, targets [{bin, range_m, re, im, magnitude}] and, when
// the capture carries the true support, tpr.
Json recover_capture(const Capture &capture, const RecoverOptions &opt);

} // namespace qcs
