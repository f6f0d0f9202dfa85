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

#include "qcs/signal_model.hpp"

#include "qcs/errors.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace qcs
{
namespace
{

// Uniformly random k-subset of {0..n-1} by a partial Fisher-Yates shuffle,
// returned sorted.
std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, Rng &rng)
{
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i)
        std::swap(pool[i], pool[i + rng.index(n - i)]);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

} // namespace

void RadarParams::validate() const
{
    require(carrier_hz > 0.0 && bandwidth_hz > 0.0 && ramp_duration_s > 0.0,
            ErrorKind::invalid_argument, "radar parameters must be strictly positive");
    require(n_bins >= 1, ErrorKind::invalid_argument, "radar n_bins must be >= 1");
}

double bin_to_range(const RadarParams &params, std::size_t bin)
{
    params.validate();
    require(bin >= 1 && bin <= params.n_bins, ErrorKind::invalid_argument,
            "range bin " + std::to_string(bin) + " outside [1, " + std::to_string(params.n_bins) + "]");
    return static_cast<double>(bin) * params.resolution_m();
}

RangeProfile::RangeProfile(std::size_t n_bins) : amplitudes_(n_bins)
{
    require(n_bins >= 1, ErrorKind::invalid_argument, "range profile needs at least one bin");
}

RangeProfile::RangeProfile(CVector amplitudes) : amplitudes_(std::move(amplitudes))
{
    require(!amplitudes_.empty(), ErrorKind::invalid_argument, "range profile needs at least one bin");
}

std::vector<std::size_t> RangeProfile::support() const
{
    std::vector<std::size_t> s;
    for (std::size_t n = 0; n < amplitudes_.size(); ++n)
        if (amplitudes_[n] != Complex{})
            s.push_back(n);
    return s;
}

std::size_t RangeProfile::sparsity() const
{
    return static_cast<std::size_t>(
        std::count_if(amplitudes_.begin(), amplitudes_.end(), [](const Complex &v) { return v != Complex{}; }));
}

double RangeProfile::max_modulus() const
{
    double m = 0.0;
    for (const Complex &v : amplitudes_)
        m = std::max(m, std::abs(v));
    return m;
}

double RangeProfile::norm() const
{
    double s = 0.0;
    for (const Complex &v : amplitudes_)
        s += std::norm(v);
    return std::sqrt(s);
}

double distance(const RangeProfile &a, const RangeProfile &b)
{
    require(a.n_bins() == b.n_bins(), ErrorKind::dimension_mismatch, "distance: profiles differ in length");
    double s = 0.0;
    for (std::size_t n = 0; n < a.n_bins(); ++n)
        s += std::norm(a[n] - b[n]);
    return std::sqrt(s);
}

void SamplingPlan::validate() const
{
    require(n_bins >= 1, ErrorKind::invalid_argument, "sampling plan: n_bins must be >= 1");
    require(!omega.empty(), ErrorKind::invalid_argument, "sampling plan: n_meas must be >= 1");
    for (std::size_t j = 0; j < omega.size(); ++j)
        require(omega[j] < n_bins, ErrorKind::invalid_argument,
                "sampling plan: omega[" + std::to_string(j) + "] = " + std::to_string(omega[j]) + " outside [0, " +
                    std::to_string(n_bins) + ")");
}

SamplingPlan make_sampling_plan(std::size_t n_bins, std::size_t n_meas, std::uint64_t seed)
{
    require(n_bins >= 1, ErrorKind::invalid_argument, "make_sampling_plan: N must be >= 1");
    require(n_meas >= 1, ErrorKind::invalid_argument, "make_sampling_plan: M must be >= 1");

    SamplingPlan plan;
    plan.n_bins = n_bins;
    plan.seed = seed;
    plan.omega.reserve(n_meas);

    const std::size_t full_ramps = n_meas / n_bins;
    for (std::size_t ramp = 0; ramp < full_ramps; ++ramp)
        for (std::size_t m = 0; m < n_bins; ++m)
            plan.omega.push_back(m);

    const std::size_t remainder = n_meas - full_ramps * n_bins;
    if (remainder > 0)
    {
        Rng rng(seed);
        const auto tail = random_subset(n_bins, remainder, rng);
        plan.omega.insert(plan.omega.end(), tail.begin(), tail.end());
    }
    return plan;
}

CVector forward(const SamplingPlan &plan, const RangeProfile &a)
{
    require(a.n_bins() == plan.n_bins, ErrorKind::dimension_mismatch,
            "forward: profile has " + std::to_string(a.n_bins()) + " bins, plan expects " + std::to_string(plan.n_bins));

    // Full spectrum once, then gather the sampled rows.
    thread_local CVector spectrum;
    spectrum.resize(plan.n_bins);
    detail::dft(a.amplitudes(), spectrum, detail::FftSign::negative);

    CVector r(plan.n_meas());
    for (std::size_t j = 0; j < r.size(); ++j)
        r[j] = spectrum[plan.omega[j]];
    return r;
}

CVector adjoint(const SamplingPlan &plan, std::span<const Complex> y)
{
    require(y.size() == plan.n_meas(), ErrorKind::dimension_mismatch,
            "adjoint: got " + std::to_string(y.size()) + " measurements, plan has " + std::to_string(plan.n_meas()));

    thread_local CVector spectrum;
    spectrum.assign(plan.n_bins, Complex{});
    for (std::size_t j = 0; j < y.size(); ++j)
        spectrum[plan.omega[j]] += y[j];

    CVector out(plan.n_bins);
    detail::dft(spectrum, out, detail::FftSign::positive);
    return out;
}

RangeProfile random_profile(std::size_t n_bins, std::size_t sparsity, Rng &rng)
{
    require(sparsity >= 1 && sparsity <= n_bins, ErrorKind::invalid_argument,
            "random_profile: need 1 <= K <= N, got K=" + std::to_string(sparsity) + ", N=" + std::to_string(n_bins));

    RangeProfile a(n_bins);
    const auto support = random_subset(n_bins, sparsity, rng);
    std::vector<double> magnitude(sparsity), phase(sparsity);
    for (std::size_t k = 0; k < sparsity; ++k)
    {
        // Open interval so every support entry is nonzero.
        magnitude[k] = rng.uniform_open();
        phase[k] = 2.0 * std::numbers::pi * rng.uniform();
    }
    const double peak = *std::max_element(magnitude.begin(), magnitude.end());
    for (std::size_t k = 0; k < sparsity; ++k)
        a[support[k]] = std::polar(magnitude[k] / peak, phase[k]);
    return a;
}

} // namespace qcs
