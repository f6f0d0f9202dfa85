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
#include "qcs/quantization.hpp"
#include "qcs/signal_model.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qcs
{

using Json = nlohmann::json;

// ---- sampling plans and dithers --------------------------------------------

// {"n_bins": N, "n_meas": M, "seed": s, "omega": [...]}
Json to_json(const SamplingPlan &plan);
SamplingPlan plan_from_json(const Json &j);

// {"seed": s, "delta": d} when by_seed and the dither has a seed, otherwise
// {"values": [[re, im], ...]}.
Json to_json(const Dither &dither, bool by_seed);

// Regenerates seeded dithers with draw_dither; cfg and n_meas must match.
Dither dither_from_json(const Json &j, const QuantizerConfig &cfg, std::size_t n_meas);

// ---- experiment configuration -------------------------------------------------

Json to_json(const ExperimentConfig &cfg);

// Missing fields take their defaults; unknown fields, wrong types and bit
// depths without any usable bit-rate are rejected with the offending field
// named in the message.
ExperimentConfig config_from_json(const Json &j);
ExperimentConfig parse_config(const std::filesystem::path &path);

// ---- results ------------------------------------------------------------------

inline constexpr const char *kResultsHeader =
    "K,b,log2_bitrate,M,dithered,algorithm,trials,mean_tpr_pct,stderr_pct,mean_l2_error";

// Header plus one row per aggregate, sorted by (algorithm, dithered, b, K, B).
std::string results_csv(std::span<const AggregateResult> results);
void write_results(std::span<const AggregateResult> results, const std::filesystem::path &path);

// ---- captures -----------------------------------------------------------------

inline constexpr int kCaptureSchemaVersion = 1;

enum class DitherStorage
{
    none,       // undithered acquisition
    seed,       // regenerable from {"seed", "delta"}
    values,     // recorded dither values
    unrecorded, // dithered with an unknown (analog) source; PBP only
};

// Sidecar JSON plus a payload of little-endian float32 interleaved I/Q.
struct Capture
{
    SamplingPlan plan;
    bool plan_by_seed = false;
    QuantizerConfig quantizer;
    DitherStorage dither_storage = DitherStorage::none;
    std::optional<Dither> dither;
    CVector samples;
    std::optional<RadarParams> radar;
    std::optional<std::vector<std::size_t>> truth_bins; // 1-based range bins

    bool operator==(const Capture &) const = default;
};

// Payload file that belongs to a sidecar: same stem, ".iq" extension.
std::filesystem::path payload_path_for(const std::filesystem::path &sidecar);

void write_capture(const Capture &capture, const std::filesystem::path &sidecar);

// Quantized payloads are snapped back onto the delta-grid. Samples that are
// not within float precision of the grid are kept as read and reported
// through warnings.
Capture read_capture(const std::filesystem::path &sidecar, std::vector<std::string> *warnings = nullptr);

} // namespace qcs
