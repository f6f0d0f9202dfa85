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

#include "qcs/rng.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qcs
{

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

struct RadarParams
{
    double carrier_hz = 24.0e9;
    double bandwidth_hz = 150.0e6;
    double ramp_duration_s = 1.0e-3;
    std::size_t n_bins = 256;

    void validate() const;
    bool operator==(const RadarParams &) const = default;

    // Range resolution c / (2B).
    double resolution_m() const { return kSpeedOfLight / (2.0 * bandwidth_hz); }

    // R_max = c N / (2B).
    double max_range_m() const { return resolution_m() * static_cast<double>(n_bins); }
};

// Range of bin n in meters, n in [1, N].
double bin_to_range(const RadarParams &params, std::size_t bin);

// Range bins are numbered 1..N while profile vectors are indexed 0..N-1 by
// their Fourier phase exponent; bin N and index 0 coincide (the phase
// exp(-i 2 pi m n / N) is N-periodic in n).
constexpr std::size_t index_of_bin(std::size_t bin, std::size_t n_bins) { return bin % n_bins; }
constexpr std::size_t bin_of_index(std::size_t index, std::size_t n_bins) { return index == 0 ? n_bins : index; }

// Complex range profile a. Entry n multiplies the Fourier atom exp(-i 2 pi m n / N).
class RangeProfile
{
public:
    explicit RangeProfile(std::size_t n_bins);
    explicit RangeProfile(CVector amplitudes);

    std::size_t n_bins() const { return amplitudes_.size(); }

    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::span<Complex> amplitudes() { return amplitudes_; }

    const Complex &operator[](std::size_t n) const { return amplitudes_[n]; }
    Complex &operator[](std::size_t n) { return amplitudes_[n]; }

    // Sorted indices of the nonzero entries.
    std::vector<std::size_t> support() const;
    std::size_t sparsity() const;

    double max_modulus() const;
    double norm() const;

    bool operator==(const RangeProfile &) const = default;

private:
    CVector amplitudes_;
};

// Euclidean distance between two profiles of equal length.
double distance(const RangeProfile &a, const RangeProfile &b);

// The measured frequency multiset Omega, kept in acquisition order so that
// measurement j, dither entry j and omega[j] stay paired.
struct SamplingPlan
{
    std::size_t n_bins = 0;
    std::vector<std::size_t> omega;
    std::uint64_t seed = 0;

    std::size_t n_meas() const { return omega.size(); }

    void validate() const;

    bool operator==(const SamplingPlan &) const = default;
};

// M < N: a uniformly random M-subset of {0..N-1}.
// M >= N: floor(M/N) full ramps followed by a random (M mod N)-subset.
SamplingPlan make_sampling_plan(std::size_t n_bins, std::size_t n_meas, std::uint64_t seed);

// r = Phi a, r[j] = sum_n a_n exp(-i 2 pi omega[j] n / N).
CVector forward(const SamplingPlan &plan, const RangeProfile &a);

// Phi^* y, (Phi^* y)_n = sum_j y[j] exp(+i 2 pi omega[j] n / N). Computed by
// accumulating y into an N-bin spectrum followed by one inverse FFT.
CVector adjoint(const SamplingPlan &plan, std::span<const Complex> y);

// K-sparse profile with uniform support, C exp(i psi) entries, C ~ U[0,1],
// psi ~ U[0, 2 pi), normalized to unit max modulus.
RangeProfile random_profile(std::size_t n_bins, std::size_t sparsity, Rng &rng);

} // namespace qcs
