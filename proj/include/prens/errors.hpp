// Copyright 2026 The prens Authors
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

#ifndef PRENS_ERRORS_HPP
#define PRENS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace prens {

/// Base class for all prens errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent arguments (dimension mismatch, non-finite
/// entries, out-of-range parameters).
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(what) {}
};

/// Drift matrix has an eigenvalue with non-positive real part, so no
/// stationary covariance exists.
class SingularDynamics : public Error {
public:
    explicit SingularDynamics(const std::string& what) : Error(what) {}
};

/// Matrix required to be positive semidefinite is not.
class NotPSD : public Error {
public:
    explicit NotPSD(const std::string& what) : Error(what) {}
};

/// The generator kernel is not one-dimensional.
class NonUniqueSteadyState : public Error {
public:
    explicit NonUniqueSteadyState(const std::string& what) : Error(what) {}
};

/// Requested a model/feature combination that is intentionally not provided.
class Unsupported : public Error {
public:
    explicit Unsupported(const std::string& what) : Error(what) {}
};

/// Filesystem-level failure (missing file, unreadable path).
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

/// Config file violates the input schema; `location` is a JSON-pointer-style
/// path to the offending element.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::string location = "")
        : Error(location.empty() ? what : what + " (at " + location + ")"),
          location_(std::move(location)) {}

    const std::string& location() const { return location_; }

private:
    std::string location_;
};

} // namespace prens

#endif // PRENS_ERRORS_HPP
