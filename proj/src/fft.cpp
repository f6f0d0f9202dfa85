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

#include "fft.hpp"

#include "qcs/errors.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace qcs::detail
{
namespace
{

// FFTW's planner is not thread-safe but fftw_execute_dft is, so plans are
// created once per (size, sign) under a lock and then shared.
class PlanCache
{
public:
    ~PlanCache()
    {
        for (auto &[key, plan] : plans_)
            fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, FftSign sign)
    {
        std::lock_guard lock(mutex_);
        const auto key = std::make_pair(n, static_cast<int>(sign));
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;

        std::vector<Complex> in(n), out(n);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n),
                                          reinterpret_cast<fftw_complex *>(in.data()),
                                          reinterpret_cast<fftw_complex *>(out.data()),
                                          sign == FftSign::negative ? FFTW_FORWARD : FFTW_BACKWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        require(plan != nullptr, ErrorKind::invalid_argument, "fft: cannot plan transform of size " + std::to_string(n));
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache &cache()
{
    static PlanCache instance;
    return instance;
}

} // namespace

void dft(std::span<const Complex> in, std::span<Complex> out, FftSign sign)
{
    require(in.size() == out.size(), ErrorKind::dimension_mismatch, "fft: input and output sizes differ");
    if (in.empty())
        return;
    fftw_plan plan = cache().get(in.size(), sign);
    // Out-of-place complex transforms leave the input untouched.
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex *>(const_cast<Complex *>(in.data())),
                     reinterpret_cast<fftw_complex *>(out.data()));
}

} // namespace qcs::detail
