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

#include "qcs/quantization.hpp"

#include "qcs/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qcs
{

BitDepth BitDepth::bits(unsigned b)
{
    require(b >= 1 && b <= kMaxBits, ErrorKind::invalid_argument,
            "bit depth must be in [1, 32] or unquantized, got " + std::to_string(b));
    return BitDepth(b);
}

unsigned BitDepth::value() const
{
    require(quantized(), ErrorKind::invalid_argument, "unquantized bit depth has no numeric value");
    return bits_;
}

double BitDepth::alpha() const
{
    return std::ldexp(1.0, 1 - static_cast<int>(value()));
}

std::string to_string(BitDepth depth)
{
    return depth.quantized() ? std::to_string(depth.value()) : std::string("unquantized");
}

BitDepth parse_bit_depth(const std::string &text)
{
    if (text == "unquantized")
        return BitDepth::unquantized();
    std::size_t used = 0;
    unsigned long b = 0;
    try
    {
        b = std::stoul(text, &used);
    }
    catch (const std::exception &)
    {
        used = 0;
    }
    require(used == text.size() && used > 0, ErrorKind::invalid_argument,
            "bit depth must be an integer in [1, 32] or \"unquantized\", got \"" + text + "\"");
    require(b <= BitDepth::kMaxBits, ErrorKind::invalid_argument, "bit depth " + text + " exceeds 32");
    return BitDepth::bits(static_cast<unsigned>(b));
}

std::string to_string(RangeNorm norm)
{
    return norm == RangeNorm::modulus ? "modulus" : "component";
}

RangeNorm parse_range_norm(const std::string &text)
{
    if (text == "modulus")
        return RangeNorm::modulus;
    if (text == "component")
        return RangeNorm::component;
    fail(ErrorKind::invalid_argument, "range norm must be \"modulus\" or \"component\", got \"" + text + "\"");
}

QuantizerConfig QuantizerConfig::make(BitDepth depth, double dynamic_range)
{
    require(std::isfinite(dynamic_range) && dynamic_range > 0.0, ErrorKind::invalid_argument,
            "dynamic range must be finite and > 0");
    return {depth, dynamic_range};
}

double quantize_scalar(const QuantizerConfig &cfg, double lambda)
{
    require(cfg.quantized(), ErrorKind::invalid_argument, "quantize_scalar: quantizer is unquantized");
    const double delta = cfg.step();
    return delta * std::floor(lambda / delta) + 0.5 * delta;
}

CVector quantize_complex(const QuantizerConfig &cfg, std::span<const Complex> v)
{
    require(cfg.quantized(), ErrorKind::invalid_argument, "quantize_complex: quantizer is unquantized");
    const double delta = cfg.step();
    const double half = 0.5 * delta;
    CVector out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        out[k] = {delta * std::floor(v[k].real() / delta) + half, delta * std::floor(v[k].imag() / delta) + half};
    return out;
}

double range_norm(std::span<const Complex> r, RangeNorm norm)
{
    double m = 0.0;
    for (const Complex &v : r)
        m = std::max(m, norm == RangeNorm::modulus ? std::abs(v) : std::max(std::abs(v.real()), std::abs(v.imag())));
    return m;
}

double dynamic_range_for(std::span<const Complex> r, BitDepth depth, bool dithered, RangeNorm norm)
{
    const double peak = range_norm(r, norm);
    require(peak > 0.0, ErrorKind::invalid_argument, "dynamic_range_for: signal is identically zero");
    if (!depth.quantized() || !dithered)
        return peak;
    return peak / (1.0 - std::ldexp(1.0, -static_cast<int>(depth.value())));
}

Dither draw_dither(const QuantizerConfig &cfg, std::size_t n_meas, std::uint64_t seed)
{
    require(cfg.quantized(), ErrorKind::invalid_argument, "draw_dither: quantizer is unquantized");
    const double delta = cfg.step();
    const double half = 0.5 * delta;
    Rng rng(seed);
    auto draw = [&] {
        for (;;)
        {
            const double xi = delta * (rng.uniform_open() - 0.5);
            // Rounding of the product can land on the boundary for non-dyadic delta.
            if (std::abs(xi) < half)
                return xi;
        }
    };

    Dither d;
    d.seed = seed;
    d.step = delta;
    d.values.resize(n_meas);
    for (Complex &v : d.values)
    {
        const double re = draw();
        const double im = draw();
        v = {re, im};
    }
    return d;
}

CVector quantize_measurements(const QuantizerConfig &cfg, const Dither *dither, std::span<const Complex> r)
{
    if (!cfg.quantized())
    {
        require(dither == nullptr, ErrorKind::invalid_argument, "sense: dither given for an unquantized quantizer");
        return CVector(r.begin(), r.end());
    }
    if (dither == nullptr)
        return quantize_complex(cfg, r);

    require(dither->size() == r.size(), ErrorKind::dimension_mismatch,
            "sense: dither has " + std::to_string(dither->size()) + " entries, expected " + std::to_string(r.size()));
    const double delta = cfg.step();
    const double half = 0.5 * delta;
    CVector out(r.size());
    for (std::size_t k = 0; k < r.size(); ++k)
    {
        const Complex z = r[k] + dither->values[k];
        out[k] = {delta * std::floor(z.real() / delta) + half, delta * std::floor(z.imag() / delta) + half};
    }
    return out;
}

CVector sense(const SamplingPlan &plan, const QuantizerConfig &cfg, const Dither *dither, const RangeProfile &a)
{
    return quantize_measurements(cfg, dither, forward(plan, a));
}

} // namespace qcs
