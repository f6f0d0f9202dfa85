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

#include "qcs/ambiguity.hpp"

#include <cmath>
#include <numbers>

using qcs::BitDepth;
using qcs::ErrorKind;

namespace
{

constexpr double pi = std::numbers::pi;

qcs::SamplingPlan full_plan(std::size_t n) { return qcs::make_sampling_plan(n, n, 0); }

} // namespace

TEST_CASE("ambiguity - pair construction")
{
    const auto pair = qcs::build_pair(256, 64, 10, pi / 4.0, 0.0, 0.5);
    CHECK(pair.a0.support() == std::vector<std::size_t>{64});
    CHECK(pair.a1.support() == std::vector<std::size_t>{10, 64});
    CHECK(std::abs(qcs::distance(pair.a0, pair.a1) - 0.5) <= 1e-12);
    CHECK(pair.a0[64] == std::polar(1.0, -pi / 4.0));

    const auto tiny = qcs::build_pair(256, 64, 10, pi / 4.0, 0.0, 1e-9);
    CHECK(qcs::distance(tiny.a0, tiny.a1) <= 1e-9 + 1e-20);

    // Bin N maps onto index 0
    CHECK(qcs::build_pair(16, 16, 3, 0.0, 0.0, 0.5).a0.support() == std::vector<std::size_t>{0});

    CHECK_THROWS_KIND(qcs::build_pair(256, 64, 64, 0.0, 0.0, 0.5), ErrorKind::invalid_argument);
    CHECK_THROWS_KIND(qcs::build_pair(256, 0, 10, 0.0, 0.0, 0.5), ErrorKind::invalid_argument);
    CHECK_THROWS_KIND(qcs::build_pair(256, 64, 257, 0.0, 0.0, 0.5), ErrorKind::invalid_argument);
    CHECK_THROWS_KIND(qcs::build_pair(256, 64, 10, 0.0, 0.0, 0.0), ErrorKind::invalid_argument);
    CHECK_THROWS_KIND(qcs::build_pair(256, 64, 10, 0.0, 0.0, 1.0), ErrorKind::invalid_argument);
    CHECK_THROWS_KIND(qcs::build_pair(256, 64, 10, pi, 0.0, 0.5), ErrorKind::invalid_argument);
    CHECK_THROWS_KIND(qcs::build_pair(256, 64, 10, 0.0, -4.0, 0.5), ErrorKind::invalid_argument);
}

TEST_CASE("ambiguity - margin condition")
{
    const auto plan = full_plan(256);
    const auto pair = qcs::build_pair(256, 64, 10, pi / 4.0, 0.0, 0.5);
    CHECK(qcs::ambiguity_margin(plan, pair.a0) == Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(qcs::check_margin(plan, pair.a0, 0.5));
    CHECK_FALSE(qcs::check_margin(plan, pair.a0, 0.8));

    // On-axis samples leave no margin
    const auto axis = qcs::build_pair(256, 128, 10, 0.0, 0.0, 0.5);
    for (double g : {1e-6, 0.1, 0.5, 0.99})
        CHECK_FALSE(qcs::check_margin(plan, axis.a0, g));

    // Against a direct scan of the components
    double scan = 1e9;
    for (std::size_t m = 0; m < 256; ++m)
    {
        const double theta = -pi / 4.0 - 2.0 * pi * double(m * 64 % 256) / 256.0;
        scan = std::min({scan, std::abs(std::cos(theta)), std::abs(std::sin(theta))});
    }
    CHECK(qcs::ambiguity_margin(plan, pair.a0) == Catch::Approx(scan).epsilon(1e-12));
}

TEST_CASE("ambiguity - undithered pairs collide")
{
    const auto plan = full_plan(256);
    const auto pair = qcs::build_pair(256, 64, 10, pi / 4.0, 0.0, 0.5);
    const auto cfg = qcs::pair_quantizer(plan, pair, BitDepth::bits(1), false);
    REQUIRE(qcs::verify_ac(plan, cfg, pair, nullptr));
    CHECK(qcs::distance(pair.a0, pair.a1) > 0.0);
}

TEST_CASE("ambiguity - margin implies collision for every weak target")
{
    for (std::size_t n : {8u, 16u, 32u})
    {
        const auto plan = full_plan(n);
        const std::size_t n0 = n / 4;
        for (std::size_t n1 = 1; n1 <= n; ++n1)
        {
            if (n1 == n0)
                continue;
            for (int g = 0; g < 64; ++g)
            {
                const double psi1 = -pi + 2.0 * pi * g / 64.0;
                const auto pair = qcs::build_pair(n, n0, n1, pi / 4.0, psi1, 0.5);
                REQUIRE(qcs::check_margin(plan, pair.a0, pair.gamma));
                const auto cfg = qcs::pair_quantizer(plan, pair, BitDepth::bits(1), false);
                CHECK(qcs::verify_ac(plan, cfg, pair, nullptr));
            }
        }
    }
}

TEST_CASE("ambiguity - large weak target breaks the collision")
{
    const auto plan = full_plan(256);
    bool found = false;
    for (int g = 0; g < 256 && !found; ++g)
    {
        const double psi1 = -pi + 2.0 * pi * g / 256.0;
        const auto pair = qcs::build_pair(256, 64, 10, pi / 4.0, psi1, 0.9);
        CHECK_FALSE(qcs::check_margin(plan, pair.a0, pair.gamma));
        const auto cfg = qcs::pair_quantizer(plan, pair, BitDepth::bits(1), false);
        found = !qcs::verify_ac(plan, cfg, pair, nullptr);
    }
    CHECK(found);
}

TEST_CASE("ambiguity - dither resolves the pair")
{
    const auto plan = qcs::make_sampling_plan(256, 1024, 3);
    const auto pair = qcs::build_pair(256, 64, 10, pi / 4.0, 0.0, 0.5);
    CHECK(qcs::dithered_ambiguity_rate(plan, pair, BitDepth::bits(1), 200, 1) < 0.05);

    // Weak second target: the collision rate drops as M grows
    const auto weak = qcs::build_pair(256, 64, 10, pi / 4.0, 0.0, 0.01);
    const double at64 = qcs::dithered_ambiguity_rate(qcs::make_sampling_plan(256, 64, 3), weak, BitDepth::bits(1), 500, 2);
    const double at1024 = qcs::dithered_ambiguity_rate(qcs::make_sampling_plan(256, 1024, 3), weak, BitDepth::bits(1), 500, 2);
    CHECK(at64 > 0.0);
    CHECK(at1024 < at64);

    CHECK_THROWS_KIND(qcs::dithered_ambiguity_rate(plan, pair, BitDepth::bits(1), 0, 1), ErrorKind::invalid_argument);
}
