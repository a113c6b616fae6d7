// Copyright 2026 The steering-canon Authors
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

namespace steering_canon {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument is outside the admissible range (message names the bound).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A brute-force oracle was asked for more qubits than the configured cap.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Input does not describe a physical two-qubit state (e.g. complex spectrum of G*Omega).
class NonPhysicalError : public Error {
public:
    using Error::Error;
};

/// Isotropic top eigenspace whose Gram matrix is not in the supported shifted pattern.
class UnsupportedStructureError : public Error {
public:
    using Error::Error;
};

/// A normalization denominator vanished (zero-probability outcome or collapsed orbit).
class SingularError : public Error {
public:
    using Error::Error;
};

/// A canonical class produced a non-positive density matrix.
class InconsistentClassError : public Error {
public:
    using Error::Error;
};

} // namespace steering_canon
