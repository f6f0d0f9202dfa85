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

#include "qcs/signal_model.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace qcs
{

// Bits per real component (I or Q), or the unquantized pass-through.
class BitDepth
{
public:
    static constexpr unsigned kMaxBits = 32;
    // Unquantized samples are accounted as 32-bit floats.
    static constexpr unsigned kUnquantizedAccountingBits = 32;

    static BitDepth bits(unsigned b);
    static BitDepth unquantized() { return BitDepth(); }

    bool quantized() const { return bits_ != 0; }

    // Throws for the unquantized depth.
    unsigned value() const;

    // Bits charged per measurement in the bit-rate B = b M.
    unsigned accounting_bits() const { return quantized() ? bits_ : kUnquantizedAccountingBits; }

    // alpha_b = 2^(1-b).
    double alpha() const;

    // Unquantized sorts after every finite depth.
    std::strong_ordering operator<=>(const BitDepth &other) const
    {
        return sort_key() <=> other.sort_key();
    }
    bool operator==(const BitDepth &) const = default;

private:
    BitDepth() = default;
    explicit BitDepth(unsigned b) : bits_(b) {}
    unsigned sort_key() const { return quantized() ? bits_ : kMaxBits + 1; }

    unsigned bits_ = 0;
};

// "1".."32" or "unquantized".
std::string to_string(BitDepth depth);
BitDepth parse_bit_depth(const std::string &text);

// How ||r||_inf is measured when fitting the dynamic range.
enum class RangeNorm
{
    modulus,   // max_k |r_k|
    component, // max_k max(|Re r_k|, |Im r_k|)
};

std::string to_string(RangeNorm norm);
RangeNorm parse_range_norm(const std::string &text);

struct QuantizerConfig
{
    BitDepth bit_depth = BitDepth::unquantized();
    double dynamic_range = 1.0; // Delta, input span [-Delta, Delta]

    static QuantizerConfig make(BitDepth depth, double dynamic_range);
    static QuantizerConfig none() { return {}; }

    bool quantized() const { return bit_depth.quantized(); }

    // delta = alpha_b Delta. Zero when unquantized.
    double step() const { return quantized() ? bit_depth.alpha() * dynamic_range : 0.0; }

    bool operator==(const QuantizerConfig &) const = default;
};

// Complex dither xi, real and imaginary parts i.i.d. U(-delta/2, delta/2).
// A synthetic dither keeps its seed so it can be regenerated.
struct Dither
{
    CVector values;
    std::optional<std::uint64_t> seed;
    double step = 0.0;

    std::size_t size() const { return values.size(); }

    bool operator==(const Dither &) const = default;
};

// Mid-rise quantizer delta * floor(lambda / delta) + delta / 2. No saturation.
double quantize_scalar(const QuantizerConfig &cfg, double lambda);

// Quantizes real and imaginary parts independently.
CVector quantize_complex(const QuantizerConfig &cfg, std::span<const Complex> v);

double range_norm(std::span<const Complex> r, RangeNorm norm);

// Undithered: Delta = ||r||_inf. Dithered: the smallest Delta with
// Delta >= ||r||_inf + delta/2, i.e. ||r||_inf / (1 - 2^-b).
// Unquantized: returns ||r||_inf for bookkeeping.
double dynamic_range_for(std::span<const Complex> r, BitDepth depth, bool dithered,
                         RangeNorm norm = RangeNorm::modulus);

Dither draw_dither(const QuantizerConfig &cfg, std::size_t n_meas, std::uint64_t seed);

// Q(r + xi) on an already-sensed signal; pass-through when unquantized.
CVector quantize_measurements(const QuantizerConfig &cfg, const Dither *dither, std::span<const Complex> r);

// y = A_b(a) = Q(Phi a + xi). dither == nullptr means undithered.
CVector sense(const SamplingPlan &plan, const QuantizerConfig &cfg, const Dither *dither, const RangeProfile &a);

} // namespace qcs
