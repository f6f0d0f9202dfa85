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

#include <span>

namespace qcs::detail
{

enum class FftSign : int
{
    negative = -1, // sum_n x_n exp(-i 2 pi k n / N)
    positive = +1, // sum_n x_n exp(+i 2 pi k n / N)
};

// Unnormalized DFT of length in.size(). in and out must not alias.
// Safe to call concurrently from multiple threads.
void dft(std::span<const Complex> in, std::span<Complex> out, FftSign sign);

} // namespace qcs::detail
