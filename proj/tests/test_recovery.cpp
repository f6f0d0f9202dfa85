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

#include "helpers.hpp"
#include "oracles.hpp"

#include "qcs/quantization.hpp"
#include "qcs/recovery.hpp"

#include <cmath>

using qcs::BitDepth;
using qcs::Complex;
using qcs::CVector;
using qcs::ErrorKind;
using qcs::QuantizerConfig;

namespace
{

struct Scene
{
    qcs::SamplingPlan plan;
    qcs::RangeProfile truth{1};
    QuantizerConfig cfg;
    std::optional<qcs::Dither> dither;
    CVector y;

    const qcs::Dither *xi() const { return dither ? &*dither : nullptr; }
};

Scene make_scene(std::size_t n, std::size_t k, std::size_t m, BitDepth depth, bool dithered, std::uint64_t seed)
{
    Scene s;
    qcs::Rng rng(qcs::derive_seed(seed, {1}));
    s.truth = qcs::random_profile(n, k, rng);
    s.plan = qcs::make_sampling_plan(n, m, qcs::derive_seed(seed, {2}));
    const CVector r = qcs::forward(s.plan, s.truth);
    if (depth.quantized())
    {
        s.cfg = QuantizerConfig::make(depth, qcs::dynamic_range_for(r, depth, dithered));
        if (dithered)
            s.dither = qcs::draw_dither(s.cfg, m, qcs::derive_seed(seed, {3}));
    }
    s.y = qcs::quantize_measurements(s.cfg, s.xi(), r);
    return s;
}

} // namespace

TEST_CASE("recovery - hard threshold examples")
{
    const CVector v{{3, 0}, {1, 1}, {0, 0.5}, {-2, 0}};
    CHECK(qcs::hard_threshold(v, 2) == CVector{{3, 0}, {0, 0}, {0, 0}, {-2, 0}});
    CHECK(qcs::hard_threshold(v, 4) == v);

    const CVector tie{{1, 0}, {0, 2}, {2, 0}, {0, -2}, {0.5, 0}};
    CHECK(qcs::hard_threshold(tie, 1) == CVector{{0, 0}, {0, 2}, {0, 0}, {0, 0}, {0, 0}});
    CHECK(qcs::hard_threshold(tie, 2) == CVector{{0, 0}, {0, 2}, {2, 0}, {0, 0}, {0, 0}});

    CHECK_THROWS_KIND(qcs::hard_threshold(v, 0), ErrorKind::invalid_argument);
    CHECK_THROWS_KIND(qcs::hard_threshold(v, 5), ErrorKind::invalid_argument);
}

TEST_CASE("recovery - hard threshold matches sort oracle")
{
    qcs::Rng rng(31);
    for (int rep = 0; rep < 2000; ++rep)
    {
        const std::size_t n = 1 + rng.index(16);
        const std::size_t k = 1 + rng.index(n);
        CVector v(n);
        // Coarse values so that ties are common
        for (Complex &z : v)
            z = {double(rng.index(5)) - 2.0, double(rng.index(5)) - 2.0};
        CHECK(qcs::hard_threshold(v, k) == oracle::hard_threshold(v, k));
    }
}

TEST_CASE("recovery - configuration")
{
    qcs::RecoveryConfig rc;
    rc.sparsity = 2;
    CHECK(rc.iteration_budget() == 200);
    rc.sparsity = 0;
    CHECK_THROWS_KIND(rc.validate(), ErrorKind::invalid_argument);
    rc.sparsity = 1;
    CHECK(rc.iteration_budget() == 100);
    rc.max_iters = 7;
    CHECK(rc.iteration_budget() == 7);
    rc.max_iters = 0;
    CHECK_THROWS_KIND(rc.validate(), ErrorKind::invalid_argument);
    rc.max_iters.reset();
    rc.step_size = 0.0;
    CHECK_THROWS_KIND(rc.validate(), ErrorKind::invalid_argument);
    rc.step_size = 1.0;
    rc.consistency_target = 1.5;
    CHECK_THROWS_KIND(rc.validate(), ErrorKind::invalid_argument);
    rc.consistency_target = 0.0;
    CHECK_THROWS_KIND(rc.validate(), ErrorKind::invalid_argument);

    CHECK(qcs::to_string(qcs::StopReason::consistency_drop) == "consistency_drop");
    CHECK(qcs::to_string(qcs::StopReason::budget) == "budget");
}

TEST_CASE("recovery - projected back projection")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        const Scene s = make_scene(64, 3, 64, BitDepth::unquantized(), false, seed);
        const auto est = qcs::pbp(s.plan, s.y, 3);
        CHECK(est.support() == s.truth.support());
        CHECK(qcs::distance(est, s.truth) <= 1e-12);
    }

    const auto plan = qcs::make_sampling_plan(32, 40, 1);
    const auto zero = qcs::pbp(plan, CVector(40), 3);
    CHECK(zero.sparsity() == 0);
    CHECK(zero.n_bins() == 32);

    CHECK_THROWS_KIND(qcs::pbp(plan, CVector(39), 3), ErrorKind::dimension_mismatch);
    CVector bad(40);
    bad[3] = {std::nan(""), 0.0};
    CHECK_THROWS_KIND(qcs::pbp(plan, bad, 3), ErrorKind::invalid_argument);
}

TEST_CASE("recovery - consistency")
{
    const Scene s = make_scene(64, 2, 200, BitDepth::bits(1), true, 4);
    CHECK(qcs::consistency(s.plan, s.cfg, s.xi(), s.y, s.truth) == 1.0);
    CHECK_THROWS_KIND(qcs::consistency(s.plan, s.cfg, s.xi(), CVector(199), s.truth), ErrorKind::dimension_mismatch);

    // Zero estimate against a strong target, tiny M, against the oracle
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        const Scene t = make_scene(8, 1, 4, BitDepth::bits(1), true, seed);
        const qcs::RangeProfile zero(8);
        const std::vector<Complex> za(8);
        CHECK(qcs::consistency(t.plan, t.cfg, t.xi(), t.y, zero) ==
              oracle::consistency(t.plan.omega, 8, t.cfg.step(), &t.dither->values, t.y, za));
    }
}

TEST_CASE("recovery - qiht stops at a consistent start")
{
    // One-bit undithered single target: PBP usually reproduces y already
    std::size_t consistent_starts = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        const Scene s = make_scene(16, 1, 16, BitDepth::bits(1), false, seed);
        qcs::RecoveryConfig rc;
        rc.sparsity = 1;
        const auto start = qcs::pbp(s.plan, s.y, 1);
        if (qcs::consistency(s.plan, s.cfg, nullptr, s.y, start) < 1.0)
            continue;
        ++consistent_starts;
        const auto res = qcs::qiht(s.plan, s.cfg, nullptr, s.y, rc);
        CHECK(res.iterations_run == 0);
        CHECK(res.estimate == start);
        CHECK(res.stop_reason == qcs::StopReason::consistency_target);
    }
    CHECK(consistent_starts > 0);

    // Fixed point: a fully consistent iterate is not moved by the update
    const Scene d = make_scene(64, 2, 256, BitDepth::bits(1), true, 9);
    const qcs::CVector resid = [&] {
        CVector z = qcs::sense(d.plan, d.cfg, d.xi(), d.truth);
        for (std::size_t k = 0; k < z.size(); ++k)
            z[k] = d.y[k] - z[k];
        return z;
    }();
    for (const Complex &v : qcs::adjoint(d.plan, resid))
        CHECK(v == Complex{});
}

TEST_CASE("recovery - qiht results are sparse and bounded")
{
    for (std::uint64_t seed = 0; seed < 30; ++seed)
    {
        const std::size_t k = 1 + seed % 6;
        const Scene s = make_scene(64, k, 128 + 64 * (seed % 5), BitDepth::bits(1 + seed % 3), seed % 2 == 0, seed);
        qcs::RecoveryConfig rc;
        rc.sparsity = k;
        const auto res = qcs::qiht(s.plan, s.cfg, s.xi(), s.y, rc);
        CHECK(res.estimate.sparsity() <= k);
        CHECK(res.iterations_run <= rc.iteration_budget());
        CHECK(res.final_consistency == qcs::consistency(s.plan, s.cfg, s.xi(), s.y, res.estimate));
    }

    const Scene s = make_scene(32, 2, 64, BitDepth::bits(1), true, 1);
    qcs::RecoveryConfig rc;
    rc.sparsity = 2;
    CHECK_THROWS_KIND(qcs::qiht(s.plan, s.cfg, s.xi(), CVector(63), rc), ErrorKind::dimension_mismatch);
    const auto short_dither = qcs::draw_dither(s.cfg, 63, 1);
    CHECK_THROWS_KIND(qcs::qiht(s.plan, s.cfg, &short_dither, s.y, rc), ErrorKind::dimension_mismatch);
}

TEST_CASE("recovery - unquantized mode reduces to iterative hard thresholding")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        const Scene s = make_scene(64, 3, 48, BitDepth::unquantized(), false, seed);
        const double m = 48.0;

        // Thresholding: H_K(Phi^* y / M)
        CVector back = qcs::adjoint(s.plan, s.y);
        for (Complex &v : back)
            v *= 1.0 / m;
        const CVector a0 = qcs::hard_threshold(back, 3);
        CHECK(qcs::pbp(s.plan, s.y, 3).amplitudes().size() == 64);
        CHECK(helpers::to_vector(qcs::pbp(s.plan, s.y, 3).amplitudes()) == a0);

        // One IHT step: H_K(a + mu/M Phi^*(y - Phi a))
        CVector r = qcs::forward(s.plan, qcs::RangeProfile(a0));
        for (std::size_t k = 0; k < r.size(); ++k)
            r[k] = s.y[k] - r[k];
        CVector step = qcs::adjoint(s.plan, r);
        for (std::size_t n = 0; n < 64; ++n)
            step[n] = a0[n] + (1.0 / m) * step[n];
        qcs::RecoveryConfig rc;
        rc.sparsity = 3;
        rc.max_iters = 1;
        const auto res = qcs::qiht(s.plan, QuantizerConfig::none(), nullptr, s.y, rc);
        REQUIRE(res.iterations_run == 1);
        CHECK(helpers::to_vector(res.estimate.amplitudes()) == qcs::hard_threshold(step, 3));
    }
}

TEST_CASE("recovery - qiht beats pbp on small dithered scenes")
{
    std::size_t pbp_hits = 0, qiht_hits = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed)
    {
        const Scene s = make_scene(8, 1, 64, BitDepth::bits(1), true, 1000 + seed);
        qcs::RecoveryConfig rc;
        rc.sparsity = 1;
        pbp_hits += qcs::pbp(s.plan, s.y, 1).support() == s.truth.support();
        qiht_hits += qcs::qiht(s.plan, s.cfg, s.xi(), s.y, rc).estimate.support() == s.truth.support();
    }
    CHECK(qiht_hits >= pbp_hits);
}

TEST_CASE("recovery - support recovery improves with more measurements")
{
    // Two targets, weaker one at modulus 0.5
    auto rate = [](std::size_t m) {
        std::size_t ok = 0;
        for (std::uint64_t t = 0; t < 300; ++t)
        {
            qcs::Rng rng(qcs::derive_seed(55, {t}));
            const std::size_t i = rng.index(256);
            std::size_t j = rng.index(255);
            j += j >= i;
            qcs::RangeProfile a(256);
            a[i] = std::polar(1.0, 2.0 * M_PI * rng.uniform());
            a[j] = std::polar(0.5, 2.0 * M_PI * rng.uniform());
            const auto plan = qcs::make_sampling_plan(256, m, qcs::derive_seed(56, {t, m}));
            const CVector r = qcs::forward(plan, a);
            const auto cfg = QuantizerConfig::make(BitDepth::bits(1), qcs::dynamic_range_for(r, BitDepth::bits(1), true));
            const auto xi = qcs::draw_dither(cfg, m, qcs::derive_seed(57, {t, m}));
            ok += qcs::pbp(plan, qcs::quantize_measurements(cfg, &xi, r), 2).support() == a.support();
        }
        return ok;
    };
    const std::size_t r256 = rate(256), r1024 = rate(1024), r4096 = rate(4096);
    CHECK(r256 <= r1024);
    CHECK(r1024 <= r4096);
}
