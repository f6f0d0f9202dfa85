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

#include "catch_amalgamated.hpp"

#include "qcs/errors.hpp"
#include "qcs/rng.hpp"
#include "qcs/signal_model.hpp"

#include <complex>
#include <vector>

// Passes when expr throws qcs::Error of the given kind.
#define CHECK_THROWS_KIND(expr, expected_kind)                                                                      \
    do                                                                                                              \
    {                                                                                                               \
        bool qcs_thrown_ = false;                                                                                   \
        try                                                                                                         \
        {                                                                                                           \
            (void)(expr);                                                                                           \
        }                                                                                                           \
        catch (const qcs::Error &qcs_e_)                                                                            \
        {                                                                                                           \
            qcs_thrown_ = true;                                                                                     \
            CHECK(qcs_e_.kind() == (expected_kind));                                                                \
        }                                                                                                           \
        CHECK(qcs_thrown_);                                                                                         \
    } while (false)

namespace helpers
{

inline std::vector<std::complex<double>> random_vector(std::size_t n, qcs::Rng &rng)
{
    std::vector<std::complex<double>> v(n);
    for (auto &x : v)
        x = {2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
    return v;
}

inline double max_abs_diff(const std::vector<std::complex<double>> &a, std::span<const std::complex<double>> b)
{
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline std::vector<std::complex<double>> to_vector(std::span<const std::complex<double>> s)
{
    return {s.begin(), s.end()};
}

} // namespace helpers
