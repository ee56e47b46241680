// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The isacsim Authors
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

namespace isac
{
    // Configuration or argument validation failure. CLI exit code 2.
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Numerical routine failed to converge or produced a non-finite value. CLI exit code 3.
    class NumericError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Requested model feature has no defined methodology. CLI exit code 4.
    class UnsupportedFeature : public std::logic_error
    {
    public:
        using std::logic_error::logic_error;
    };

    // Input outside the domain of a formula (distance bounds, degenerate geometry, ...).
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };
}
