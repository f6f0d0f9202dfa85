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

#include "qcs/signal_model.hpp"

#include <cmath>
#include <map>
#include <set>

using qcs::Complex;
using qcs::CVector;
using qcs::ErrorKind;

namespace
{

qcs::RangeProfile unit_at(std::size_t n_bins, std::size_t index)
{
    qcs::RangeProfile a(n_bins);
    a[index] = 1.0;
    return a;
}

qcs::SamplingPlan plan_of(std::size_t n_bins, std::vector<std::size_t> omega)
{
    qcs::SamplingPlan p;
    p.n_bins = n_bins;
    p.omega = std::move(omega);
    return p;
}

} // namespace

TEST_CASE("signal_model - sampling plan structure")
{
    const auto full = qcs::make_sampling_plan(4, 4, 123);
    CHECK(full.omega == std::vector<std::size_t>{0, 1, 2, 3});

    const auto p9 = qcs::make_sampling_plan(4, 9, 99);
    REQUIRE(p9.n_meas() == 9);
    CHECK(std::vector<std::size_t>(p9.omega.begin(), p9.omega.begin() + 8) ==
          std::vector<std::size_t>{0, 1, 2, 3, 0, 1, 2, 3});
    CHECK(p9.omega[8] < 4);

    // Remainder entries are distinct, for many seeds
    for (std::uint64_t seed = 0; seed < 200; ++seed)
    {
        const auto p = qcs::make_sampling_plan(16, 16 * 3 + 7, seed);
        std::set<std::size_t> tail(p.omega.begin() + 48, p.omega.end());
        CHECK(tail.size() == 7);
        for (std::size_t j = 0; j < 48; ++j)
            CHECK(p.omega[j] == j % 16);
    }

    const auto p64 = qcs::make_sampling_plan(256, 64, 7);
    CHECK(std::set<std::size_t>(p64.omega.begin(), p64.omega.end()).size() == 64);
    CHECK(p64 == qcs::make_sampling_plan(256, 64, 7));
    CHECK(p64 != qcs::make_sampling_plan(256, 64, 8));
    CHECK(p64.seed == 7);

    CHECK_THROWS_KIND(qcs::make_sampling_plan(0, 4, 1), ErrorKind::invalid_argument);
    CHECK_THROWS_KIND(qcs::make_sampling_plan(4, 0, 1), ErrorKind::invalid_argument);
}

TEST_CASE("signal_model - sampling plan is uniform over indices")
{
    // Chi-square over 10^4 plans, 255 degrees of freedom; 345 is beyond the 99.9% quantile.
    const std::size_t n = 256, m = 64, draws = 10000;
    std::vector<double> counts(n, 0.0);
    for (std::size_t s = 0; s < draws; ++s)
        for (std::size_t w : qcs::make_sampling_plan(n, m, qcs::derive_seed(42, {s})).omega)
            counts[w] += 1.0;
    const double expected = static_cast<double>(draws * m) / static_cast<double>(n);
    double chi2 = 0.0;
    for (double c : counts)
        chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 345.0);
}

TEST_CASE("signal_model - forward examples")
{
    const auto plan = plan_of(4, {0, 1, 2, 3});
    const CVector r = qcs::forward(plan, unit_at(4, 1));
    const CVector expected{{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    CHECK(helpers::max_abs_diff(expected, r) < 1e-15);

    const CVector zero = qcs::forward(qcs::make_sampling_plan(32, 50, 3), qcs::RangeProfile(32));
    for (const Complex &z : zero)
        CHECK(z == Complex{});

    const CVector rep = qcs::forward(plan_of(4, {2, 2}), unit_at(4, 1));
    CHECK(helpers::max_abs_diff({{-1, 0}, {-1, 0}}, rep) < 1e-15);

    CHECK_THROWS_KIND(qcs::forward(plan, qcs::RangeProfile(8)), ErrorKind::dimension_mismatch);
}

TEST_CASE("signal_model - adjoint examples")
{
    const auto plan = plan_of(4, {0, 1, 2, 3});
    const CVector y = qcs::forward(plan, unit_at(4, 1));
    CVector x = qcs::adjoint(plan, y);
    for (Complex &v : x)
        v /= 4.0;
    CHECK(helpers::max_abs_diff({{0, 0}, {1, 0}, {0, 0}, {0, 0}}, x) < 1e-15);

    for (const Complex &v : qcs::adjoint(plan, CVector(4)))
        CHECK(v == Complex{});

    const CVector acc = qcs::adjoint(plan_of(4, {2, 2}), CVector{{1, 0}, {1, 0}});
    CHECK(helpers::max_abs_diff({{2, 0}, {-2, 0}, {2, 0}, {-2, 0}}, acc) < 1e-14);

    CHECK_THROWS_KIND(qcs::adjoint(plan, CVector(3)), ErrorKind::dimension_mismatch);
}

TEST_CASE("signal_model - operator pair properties")
{
    qcs::Rng rng(2024);
    for (int rep = 0; rep < 50; ++rep)
    {
        const std::size_t n = 1 + rng.index(300);
        const std::size_t m = 1 + rng.index(3 * n);
        const auto plan = qcs::make_sampling_plan(n, m, rng.engine()());
        const qcs::RangeProfile a(helpers::random_vector(n, rng));
        const CVector y = helpers::random_vector(m, rng);

        // <Phi a, y> == <a, Phi^* y>
        const CVector fa = qcs::forward(plan, a);
        const CVector ay = qcs::adjoint(plan, y);
        Complex lhs{}, rhs{};
        for (std::size_t j = 0; j < m; ++j)
            lhs += fa[j] * std::conj(y[j]);
        for (std::size_t i = 0; i < n; ++i)
            rhs += a[i] * std::conj(ay[i]);
        double ny = 0.0;
        for (const Complex &v : y)
            ny += std::norm(v);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * a.norm() * std::sqrt(ny));
    }

    for (std::size_t n : {1u, 7u, 64u, 256u})
    {
        const auto plan = qcs::make_sampling_plan(n, n, 1);
        const qcs::RangeProfile a(helpers::random_vector(n, rng));
        CVector back = qcs::adjoint(plan, qcs::forward(plan, a));
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(back[i] / static_cast<double>(n) - a[i]) <= 1e-10);

        for (std::size_t k = 0; k < n; ++k)
            for (const Complex &v : qcs::forward(plan, unit_at(n, k)))
                CHECK(std::abs(std::abs(v) - 1.0) <= 1e-12);
    }
}

TEST_CASE("signal_model - matches brute-force operators")
{
    qcs::Rng rng(77);
    for (int rep = 0; rep < 300; ++rep)
    {
        const std::size_t n = 1 + rng.index(16);
        const std::size_t m = 1 + rng.index(40);
        const auto plan = qcs::make_sampling_plan(n, m, rng.engine()());
        const auto a = helpers::random_vector(n, rng);
        const auto y = helpers::random_vector(m, rng);
        CHECK(helpers::max_abs_diff(oracle::forward(plan.omega, n, a), qcs::forward(plan, qcs::RangeProfile(a))) <= 1e-12);
        CHECK(helpers::max_abs_diff(oracle::adjoint(plan.omega, n, y), qcs::adjoint(plan, y)) <= 1e-12);
    }
}

TEST_CASE("signal_model - random profiles")
{
    qcs::Rng rng(5);
    const auto a = qcs::random_profile(256, 2, rng);
    CHECK(a.sparsity() == 2);
    CHECK(a.max_modulus() == 1.0);
    qcs::Rng again(5);
    CHECK(qcs::random_profile(256, 2, again) == a);

    const auto dense = qcs::random_profile(16, 16, rng);
    CHECK(dense.sparsity() == 16);
    CHECK(dense.max_modulus() == 1.0);

    CHECK_THROWS_KIND(qcs::random_profile(8, 9, rng), ErrorKind::invalid_argument);
    CHECK_THROWS_KIND(qcs::random_profile(8, 0, rng), ErrorKind::invalid_argument);
}

TEST_CASE("signal_model - random profile support is uniform")
{
    const std::size_t n = 8, k = 2, draws = 100000;
    std::vector<double> hits(n, 0.0);
    std::map<std::vector<std::size_t>, std::size_t> pairs;
    qcs::Rng rng(11);
    for (std::size_t d = 0; d < draws; ++d)
    {
        const auto s = qcs::random_profile(n, k, rng).support();
        for (std::size_t i : s)
            hits[i] += 1.0;
        ++pairs[s];
    }
    for (double h : hits)
        CHECK(std::abs(h / static_cast<double>(draws) - 0.25) <= 0.01);
    CHECK(pairs.size() == 28); // every one of C(8,2) subsets occurs
}

TEST_CASE("signal_model - bins and ranges")
{
    qcs::RadarParams p;
    CHECK(p.bandwidth_hz == 150e6);
    CHECK(qcs::bin_to_range(p, 1) == Catch::Approx(0.99931).epsilon(1e-4));
    CHECK(qcs::bin_to_range(p, 64) == Catch::Approx(63.96).epsilon(1e-3));
    CHECK(p.max_range_m() == Catch::Approx(256 * 0.999308193));
    CHECK_THROWS_KIND(qcs::bin_to_range(p, 0), ErrorKind::invalid_argument);
    CHECK_THROWS_KIND(qcs::bin_to_range(p, 257), ErrorKind::invalid_argument);

    qcs::RadarParams bad;
    bad.bandwidth_hz = 0.0;
    CHECK_THROWS_KIND(bad.validate(), ErrorKind::invalid_argument);

    CHECK(qcs::index_of_bin(256, 256) == 0);
    CHECK(qcs::bin_of_index(0, 256) == 256);
    CHECK(qcs::bin_of_index(17, 256) == 17);
}

TEST_CASE("signal_model - determinism")
{
    qcs::Rng r1(9), r2(9);
    CHECK(qcs::random_profile(64, 5, r1) == qcs::random_profile(64, 5, r2));
    CHECK(qcs::make_sampling_plan(64, 200, 3) == qcs::make_sampling_plan(64, 200, 3));
}
