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
#include "qcs/recovery.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace qcs
{

enum class Algorithm
{
    pbp,
    qiht,
};

std::string to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string &text);

struct ExperimentConfig
{
    std::size_t n_bins = 256;
    std::vector<std::size_t> sparsities{2};
    std::vector<BitDepth> bit_depths{BitDepth::bits(1), BitDepth::bits(2), BitDepth::unquantized()};
    std::vector<std::uint64_t> bitrates = default_bitrates(); // total bits B = b M
    std::vector<bool> dithered{true, false};
    std::vector<Algorithm> algorithms{Algorithm::pbp};
    std::size_t trials = 2000;
    std::uint64_t master_seed = 0;

    double mu = 1.0;
    double consistency_target = 0.95;
    std::size_t min_iters = 20;
    std::optional<std::size_t> max_iters; // default max(20, 100 K)

    // Grid points whose M = B / b falls outside this range are skipped.
    std::size_t min_meas = 8;
    std::size_t max_meas = 8192;

    RangeNorm range_norm = RangeNorm::modulus;

    void validate() const;

    // 2^3 .. 2^13.
    static std::vector<std::uint64_t> default_bitrates();

    bool operator==(const ExperimentConfig &) const = default;
};

struct GridPoint
{
    std::size_t sparsity = 0;
    BitDepth bit_depth = BitDepth::bits(1);
    std::uint64_t bitrate = 0;
    std::size_t n_meas = 0;
    bool dithered = false;
    Algorithm algorithm = Algorithm::pbp;

    double log2_bitrate() const;

    // Result order: algorithm, dithered, b, K, B.
    auto order_key() const { return std::tuple(algorithm, dithered, bit_depth, sparsity, bitrate); }
    bool operator==(const GridPoint &) const = default;
};

std::string describe(const GridPoint &point);

struct GridExpansion
{
    std::vector<GridPoint> points; // sorted by order_key
    std::vector<std::string> warnings;
};

// Cartesian product of the config lists, minus invalid (b, B) pairs (with a
// warning) and dithered unquantized points (dither needs a quantizer).
GridExpansion expand_grid(const ExperimentConfig &cfg);

struct TrialSeeds
{
    std::uint64_t profile = 0;
    std::uint64_t plan = 0;
    std::uint64_t dither = 0;
};

// The profile seed depends only on (master, K, trial), so every bit-rate,
// bit depth, dithering mode and algorithm sees the same range profiles; the
// algorithm never enters a seed, so PBP and QIHT are compared on identical data.
TrialSeeds trial_seeds(std::uint64_t master_seed, const GridPoint &point, std::size_t trial_index);

struct TrialRecord
{
    std::size_t trial_index = 0;
    GridPoint point;
    std::size_t true_positives = 0;
    double tpr = 0.0;
    double l2_error = 0.0;
    std::size_t iterations = 0;
    StopReason stop_reason = StopReason::budget;
    TrialSeeds seeds;
};

struct AggregateResult
{
    GridPoint point;
    std::size_t trials = 0;
    double mean_tpr_pct = 0.0;
    double stderr_pct = 0.0;
    double mean_l2_error = 0.0;
};

// |truth ∩ estimate| / K.
double tpr(std::span<const std::size_t> true_support, std::span<const std::size_t> est_support, std::size_t sparsity);

RecoveryConfig recovery_config(const ExperimentConfig &cfg, std::size_t sparsity);

TrialRecord run_trial(const ExperimentConfig &cfg, const GridPoint &point, std::size_t trial_index);

struct RunOptions
{
    std::size_t threads = 0; // 0: QCS_THREADS, else hardware concurrency
    std::function<void(const std::string &)> on_warning;
};

// Worker count from QCS_THREADS (if set and positive), else the hardware count.
std::size_t default_thread_count();

std::vector<AggregateResult> run_grid(const ExperimentConfig &cfg, const RunOptions &options = {});

// Aggregates the given points only (must be valid for cfg).
std::vector<AggregateResult> run_points(const ExperimentConfig &cfg, std::span<const GridPoint> points,
                                        const RunOptions &options = {});

} // namespace qcs
