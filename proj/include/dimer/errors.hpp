// Copyright 2026 The dimer-dynamics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace dimer {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// A matrix or X-state spec that violates a density-matrix constraint.
class InvalidState : public Error {
public:
    using Error::Error;
};

class InvalidGeometry : public Error {
public:
    using Error::Error;
};

/// Raised by numerical kernels that fail to converge or detect a positivity bug.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

class NonUniqueSteadyState : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

/// Step-size underflow in the adaptive integrator; carries the time reached.
class IntegrationFailure : public NumericalFailure {
public:
    IntegrationFailure(const std::string& what, double time_us)
        : NumericalFailure(what), time_us_(time_us) {}

    double time_us() const noexcept { return time_us_; }

private:
    double time_us_;
};

class LookupError : public Error {
public:
    using Error::Error;
};

/// Configuration problem; key_path names the offending key ("system.v12_mhz").
class ConfigError : public Error {
public:
    ConfigError(std::string key_path, const std::string& message)
        : Error(key_path.empty() ? message : key_path + ": " + message),
          key_path_(std::move(key_path)) {}

    const std::string& key_path() const noexcept { return key_path_; }

private:
    std::string key_path_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace dimer
