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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcs
{

enum class ErrorKind
{
    invalid_argument,
    dimension_mismatch,
    schema,
    io,
    length_mismatch,
    unsupported_version,
};

constexpr std::string_view to_string(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::invalid_argument:
        return "invalid_argument";
    case ErrorKind::dimension_mismatch:
        return "dimension_mismatch";
    case ErrorKind::schema:
        return "schema";
    case ErrorKind::io:
        return "io";
    case ErrorKind::length_mismatch:
        return "length_mismatch";
    case ErrorKind::unsupported_version:
        return "unsupported_version";
    }
    return "unknown";
}

// Library-wide exception. The kind is the stable, machine-readable part;
// what() carries the human-readable detail.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what)
{
    throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string &what)
{
    if (!condition)
        fail(kind, what);
}

} // namespace qcs
