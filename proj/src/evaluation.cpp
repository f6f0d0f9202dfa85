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

#include "qcs/evaluation.hpp"

#include "qcs/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace qcs
{
namespace
{

__extension__ using Int128 = __int128;

// Fixed-point l2 accumulation keeps the sum exact and therefore independent
// of the order in which workers finish trials.
constexpr double kL2Scale = 0x1.0p32;
constexpr double kL2Saturation = 1e18;

struct Accumulator
{
    std::uint64_t trials = 0;
    std::uint64_t tp_sum = 0;
    std::uint64_t tp_sq_sum = 0;
    Int128 l2_fixed = 0;
    std::uint64_t l2_saturated = 0;

    void add(const TrialRecord &rec)
    {
        ++trials;
        tp_sum += rec.true_positives;
        tp_sq_sum += rec.true_positives * rec.true_positives;
        if (std::isfinite(rec.l2_error) && rec.l2_error < kL2Saturation)
            l2_fixed += static_cast<Int128>(std::nearbyint(rec.l2_error * kL2Scale));
        else
            ++l2_saturated;
    }

    void merge(const Accumulator &other)
    {
        trials += other.trials;
        tp_sum += other.tp_sum;
        tp_sq_sum += other.tp_sq_sum;
        l2_fixed += other.l2_fixed;
        l2_saturated += other.l2_saturated;
    }

    AggregateResult finish(const GridPoint &point) const
    {
        AggregateResult out;
        out.point = point;
        out.trials = trials;
        if (trials == 0)
            return out;
        const double n = static_cast<double>(trials);
        const double k = static_cast<double>(point.sparsity);
        out.mean_tpr_pct = 100.0 * static_cast<double>(tp_sum) / (n * k);
        if (trials > 1)
        {
            // n * sum(tp^2) - sum(tp)^2 is exact in integers.
            const Int128 centered = static_cast<Int128>(trials) * tp_sq_sum - static_cast<Int128>(tp_sum) * tp_sum;
            const double variance = static_cast<double>(centered) / (n * (n - 1.0)) / (k * k);
            out.stderr_pct = 100.0 * std::sqrt(variance / n);
        }
        out.mean_l2_error = l2_saturated > 0 ? std::numeric_limits<double>::infinity()
                                             : static_cast<double>(l2_fixed) / kL2Scale / n;
        return out;
    }
};

std::uint64_t depth_key(BitDepth depth)
{
    return depth.quantized() ? depth.value() : 0;
}

} // namespace

std::string to_string(Algorithm algorithm)
{
    return algorithm == Algorithm::pbp ? "pbp" : "qiht";
}

Algorithm parse_algorithm(const std::string &text)
{
    if (text == "pbp")
        return Algorithm::pbp;
    if (text == "qiht")
        return Algorithm::qiht;
    fail(ErrorKind::invalid_argument, "algorithm must be \"pbp\" or \"qiht\", got \"" + text + "\"");
}

std::vector<std::uint64_t> ExperimentConfig::default_bitrates()
{
    std::vector<std::uint64_t> b;
    for (int e = 3; e <= 13; ++e)
        b.push_back(std::uint64_t{1} << e);
    return b;
}

void ExperimentConfig::validate() const
{
    require(n_bins >= 1, ErrorKind::invalid_argument, "n_bins must be >= 1");
    require(!sparsities.empty(), ErrorKind::invalid_argument, "sparsities must not be empty");
    for (std::size_t k : sparsities)
        require(k >= 1 && k <= n_bins, ErrorKind::invalid_argument,
                "sparsity " + std::to_string(k) + " outside [1, n_bins]");
    require(!bit_depths.empty(), ErrorKind::invalid_argument, "bit_depths must not be empty");
    require(!bitrates.empty(), ErrorKind::invalid_argument, "bitrates must not be empty");
    for (std::uint64_t b : bitrates)
        require(b >= 1, ErrorKind::invalid_argument, "bitrates must be positive");
    require(!dithered.empty(), ErrorKind::invalid_argument, "dithered must not be empty");
    require(!algorithms.empty(), ErrorKind::invalid_argument, "algorithms must not be empty");
    require(trials >= 1, ErrorKind::invalid_argument, "trials must be >= 1");
    require(min_meas >= 1 && min_meas <= max_meas, ErrorKind::invalid_argument, "need 1 <= min_meas <= max_meas");
    RecoveryConfig rc{1, mu, min_iters, max_iters, consistency_target};
    rc.validate();
}

double GridPoint::log2_bitrate() const
{
    return std::log2(static_cast<double>(bitrate));
}

std::string describe(const GridPoint &p)
{
    std::ostringstream os;
    os << "K=" << p.sparsity << " b=" << to_string(p.bit_depth) << " B=" << p.bitrate << " M=" << p.n_meas
       << (p.dithered ? " dithered " : " undithered ") << to_string(p.algorithm);
    return os.str();
}

GridExpansion expand_grid(const ExperimentConfig &cfg)
{
    cfg.validate();
    GridExpansion out;
    for (BitDepth depth : cfg.bit_depths)
    {
        const std::uint64_t bits = depth.accounting_bits();
        for (std::uint64_t bitrate : cfg.bitrates)
        {
            if (bitrate % bits != 0)
            {
                out.warnings.push_back("skipping b=" + to_string(depth) + ", B=" + std::to_string(bitrate) + ": " +
                                       std::to_string(bitrate) + "/" + std::to_string(bits) + " is not an integer");
                continue;
            }
            const std::size_t m = bitrate / bits;
            if (m < cfg.min_meas || m > cfg.max_meas)
            {
                out.warnings.push_back("skipping b=" + to_string(depth) + ", B=" + std::to_string(bitrate) + ": M=" +
                                       std::to_string(m) + " outside [" + std::to_string(cfg.min_meas) + ", " +
                                       std::to_string(cfg.max_meas) + "]");
                continue;
            }
            for (bool dithered : cfg.dithered)
            {
                if (dithered && !depth.quantized())
                    continue;
                for (std::size_t k : cfg.sparsities)
                    for (Algorithm algo : cfg.algorithms)
                        out.points.push_back({k, depth, bitrate, m, dithered, algo});
            }
        }
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const GridPoint &a, const GridPoint &b) { return a.order_key() < b.order_key(); });
    out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
    return out;
}

TrialSeeds trial_seeds(std::uint64_t master_seed, const GridPoint &point, std::size_t trial_index)
{
    const std::uint64_t k = point.sparsity;
    const std::uint64_t t = trial_index;
    TrialSeeds s;
    s.profile = derive_seed(master_seed, {static_cast<std::uint64_t>(SeedTag::profile), k, t});
    s.plan = derive_seed(master_seed, {static_cast<std::uint64_t>(SeedTag::plan), k, point.n_meas, t});
    s.dither = derive_seed(master_seed,
                           {static_cast<std::uint64_t>(SeedTag::dither), k, depth_key(point.bit_depth), point.n_meas, t});
    return s;
}

double tpr(std::span<const std::size_t> true_support, std::span<const std::size_t> est_support, std::size_t sparsity)
{
    require(!true_support.empty(), ErrorKind::invalid_argument, "tpr: true support is empty");
    require(true_support.size() == sparsity, ErrorKind::invalid_argument, "tpr: |true support| differs from K");
    std::size_t hits = 0;
    for (std::size_t n : est_support)
        hits += std::find(true_support.begin(), true_support.end(), n) != true_support.end();
    return static_cast<double>(hits) / static_cast<double>(sparsity);
}

RecoveryConfig recovery_config(const ExperimentConfig &cfg, std::size_t sparsity)
{
    return {sparsity, cfg.mu, cfg.min_iters, cfg.max_iters, cfg.consistency_target};
}

TrialRecord run_trial(const ExperimentConfig &cfg, const GridPoint &point, std::size_t trial_index)
{
    require(!point.dithered || point.bit_depth.quantized(), ErrorKind::invalid_argument,
            "run_trial: dithering requires a quantizer");

    TrialRecord rec;
    rec.trial_index = trial_index;
    rec.point = point;
    rec.seeds = trial_seeds(cfg.master_seed, point, trial_index);

    Rng profile_rng(rec.seeds.profile);
    const RangeProfile a = random_profile(cfg.n_bins, point.sparsity, profile_rng);
    const SamplingPlan plan = make_sampling_plan(cfg.n_bins, point.n_meas, rec.seeds.plan);
    const CVector r = forward(plan, a);

    QuantizerConfig quantizer = QuantizerConfig::none();
    std::optional<Dither> dither;
    if (point.bit_depth.quantized())
    {
        quantizer = QuantizerConfig::make(point.bit_depth,
                                          dynamic_range_for(r, point.bit_depth, point.dithered, cfg.range_norm));
        if (point.dithered)
            dither = draw_dither(quantizer, plan.n_meas(), rec.seeds.dither);
    }
    const Dither *xi = dither ? &*dither : nullptr;
    const CVector y = quantize_measurements(quantizer, xi, r);

    std::optional<RangeProfile> estimate;
    if (point.algorithm == Algorithm::pbp)
    {
        estimate = pbp(plan, y, point.sparsity);
    }
    else
    {
        RecoveryResult res = qiht(plan, quantizer, xi, y, recovery_config(cfg, point.sparsity));
        rec.iterations = res.iterations_run;
        rec.stop_reason = res.stop_reason;
        estimate = std::move(res.estimate);
    }

    const auto truth = a.support();
    const auto found = estimate->support();
    rec.tpr = tpr(truth, found, point.sparsity);
    rec.true_positives = static_cast<std::size_t>(std::lround(rec.tpr * static_cast<double>(point.sparsity)));
    rec.l2_error = distance(a, *estimate);
    return rec;
}

std::size_t default_thread_count()
{
    if (const char *env = std::getenv("QCS_THREADS"))
    {
        char *end = nullptr;
        const unsigned long n = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && n > 0)
            return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<AggregateResult> run_points(const ExperimentConfig &cfg, std::span<const GridPoint> points,
                                        const RunOptions &options)
{
    cfg.validate();
    const std::size_t total = points.size() * cfg.trials;
    std::size_t workers = options.threads > 0 ? options.threads : default_thread_count();
    workers = std::max<std::size_t>(1, std::min(workers, total));

    // Job j is trial (j % trials) of point (j / trials). Each worker keeps
    // its own accumulators; integer merging makes the result order-free.
    std::atomic<std::size_t> next{0};
    std::vector<std::vector<Accumulator>> partial(workers, std::vector<Accumulator>(points.size()));
    std::vector<std::exception_ptr> errors(workers);

    auto work = [&](std::size_t w) {
        try
        {
            for (std::size_t job = next++; job < total; job = next++)
            {
                const std::size_t p = job / cfg.trials;
                partial[w][p].add(run_trial(cfg, points[p], job % cfg.trials));
            }
        }
        catch (...)
        {
            errors[w] = std::current_exception();
            next = total;
        }
    };

    if (workers == 1)
    {
        work(0);
    }
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
        for (auto &t : pool)
            t.join();
    }
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);

    std::vector<AggregateResult> results;
    results.reserve(points.size());
    for (std::size_t p = 0; p < points.size(); ++p)
    {
        Accumulator acc;
        for (const auto &worker : partial)
            acc.merge(worker[p]);
        results.push_back(acc.finish(points[p]));
    }
    std::sort(results.begin(), results.end(), [](const AggregateResult &a, const AggregateResult &b) {
        return a.point.order_key() < b.point.order_key();
    });
    return results;
}

std::vector<AggregateResult> run_grid(const ExperimentConfig &cfg, const RunOptions &options)
{
    GridExpansion grid = expand_grid(cfg);
    if (options.on_warning)
        for (const auto &w : grid.warnings)
            options.on_warning(w);
    return run_points(cfg, grid.points, options);
}

} // namespace qcs
