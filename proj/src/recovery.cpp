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

#include "qcs/recovery.hpp"

#include "qcs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcs
{
namespace
{

struct Residual
{
    CVector values;
    double consistency = 0.0;
};

// y - A_b(estimate) together with the consistency of the estimate.
Residual residual_of(const SamplingPlan &plan, const QuantizerConfig &cfg, const Dither *dither,
                     std::span<const Complex> y, const RangeProfile &estimate)
{
    Residual res{quantize_measurements(cfg, dither, forward(plan, estimate)), 0.0};
    std::size_t hits = 0;
    if (cfg.quantized())
    {
        for (std::size_t k = 0; k < y.size(); ++k)
        {
            hits += res.values[k] == y[k];
            res.values[k] = y[k] - res.values[k];
        }
    }
    else
    {
        double scale = 1.0;
        for (const Complex &v : y)
            scale = std::max(scale, std::abs(v));
        const double tol = 1e-9 * scale;
        for (std::size_t k = 0; k < y.size(); ++k)
        {
            res.values[k] = y[k] - res.values[k];
            hits += std::abs(res.values[k]) <= tol;
        }
    }
    res.consistency = static_cast<double>(hits) / static_cast<double>(y.size());
    return res;
}

bool all_finite(std::span<const Complex> v)
{
    return std::all_of(v.begin(), v.end(),
                       [](const Complex &z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

} // namespace

void RecoveryConfig::validate() const
{
    require(sparsity >= 1, ErrorKind::invalid_argument, "recovery: sparsity must be >= 1");
    require(std::isfinite(step_size) && step_size > 0.0, ErrorKind::invalid_argument, "recovery: mu must be > 0");
    require(!max_iters || *max_iters >= 1, ErrorKind::invalid_argument, "recovery: max_iters must be >= 1");
    require(consistency_target > 0.0 && consistency_target <= 1.0, ErrorKind::invalid_argument,
            "recovery: consistency target must lie in (0, 1]");
}

std::size_t RecoveryConfig::iteration_budget() const
{
    return max_iters ? *max_iters : std::max<std::size_t>(20, 100 * sparsity);
}

std::string to_string(StopReason reason)
{
    switch (reason)
    {
    case StopReason::budget:
        return "budget";
    case StopReason::consistency_target:
        return "consistency_target";
    case StopReason::consistency_drop:
        return "consistency_drop";
    case StopReason::diverged:
        return "diverged";
    }
    return "unknown";
}

CVector hard_threshold(std::span<const Complex> v, std::size_t sparsity)
{
    require(sparsity >= 1 && sparsity <= v.size(), ErrorKind::invalid_argument,
            "hard_threshold: need 1 <= K <= N, got K=" + std::to_string(sparsity) + ", N=" + std::to_string(v.size()));
    CVector out(v.size());
    if (sparsity == v.size())
    {
        std::copy(v.begin(), v.end(), out.begin());
        return out;
    }

    std::vector<double> modulus(v.size());
    for (std::size_t n = 0; n < v.size(); ++n)
        modulus[n] = std::abs(v[n]);
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto before = [&](std::size_t i, std::size_t j) {
        return modulus[i] > modulus[j] || (modulus[i] == modulus[j] && i < j);
    };
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(sparsity - 1), order.end(), before);
    for (std::size_t k = 0; k < sparsity; ++k)
        out[order[k]] = v[order[k]];
    return out;
}

RangeProfile pbp(const SamplingPlan &plan, std::span<const Complex> y, std::size_t sparsity)
{
    CVector back = adjoint(plan, y);
    const double scale = 1.0 / static_cast<double>(plan.n_meas());
    for (Complex &v : back)
        v *= scale;
    require(all_finite(back), ErrorKind::invalid_argument, "pbp: measurements contain non-finite values");
    return RangeProfile(hard_threshold(back, sparsity));
}

double consistency(const SamplingPlan &plan, const QuantizerConfig &cfg, const Dither *dither,
                   std::span<const Complex> y, const RangeProfile &estimate)
{
    require(y.size() == plan.n_meas(), ErrorKind::dimension_mismatch,
            "consistency: got " + std::to_string(y.size()) + " measurements, plan has " + std::to_string(plan.n_meas()));
    return residual_of(plan, cfg, dither, y, estimate).consistency;
}

RecoveryResult qiht(const SamplingPlan &plan, const QuantizerConfig &cfg, const Dither *dither,
                    std::span<const Complex> y, const RecoveryConfig &rc)
{
    rc.validate();
    require(y.size() == plan.n_meas(), ErrorKind::dimension_mismatch,
            "qiht: got " + std::to_string(y.size()) + " measurements, plan has " + std::to_string(plan.n_meas()));
    if (dither != nullptr)
        require(dither->size() == y.size(), ErrorKind::dimension_mismatch, "qiht: dither length differs from M");

    const std::size_t budget = rc.iteration_budget();
    const std::size_t min_iters = std::min(rc.min_iters, budget);
    const double gain = rc.step_size / static_cast<double>(plan.n_meas());

    RangeProfile current = pbp(plan, y, rc.sparsity);
    Residual res = residual_of(plan, cfg, dither, y, current);
    if (res.consistency >= 1.0)
        return {current, 0, res.consistency, StopReason::consistency_target};

    RangeProfile best = current;
    double best_consistency = res.consistency;

    for (std::size_t j = 1; j <= budget; ++j)
    {
        CVector step = adjoint(plan, res.values);
        for (std::size_t n = 0; n < step.size(); ++n)
            step[n] = current[n] + gain * step[n];
        if (!all_finite(step))
            return {best, j, best_consistency, StopReason::diverged};

        RangeProfile next(hard_threshold(step, rc.sparsity));
        Residual next_res = residual_of(plan, cfg, dither, y, next);

        if (j > min_iters && next_res.consistency < res.consistency)
            return {best, j, best_consistency, StopReason::consistency_drop};

        current = std::move(next);
        res = std::move(next_res);
        if (j <= min_iters || res.consistency >= best_consistency)
        {
            best = current;
            best_consistency = res.consistency;
        }
        // Full consistency is a fixed point: the update term vanishes.
        if (res.consistency >= 1.0 || (j >= min_iters && res.consistency >= rc.consistency_target))
            return {current, j, res.consistency, StopReason::consistency_target};
    }
    return {best, budget, best_consistency, StopReason::budget};
}

} // namespace qcs
