// Copyright 2026 The gaussphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace gaussphase {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain of the requested operation.
class DomainError : public Error {
   public:
    using Error::Error;
};

/// The Fock-space cutoff is too small for the requested accuracy.
class TruncationError : public Error {
   public:
    using Error::Error;
};

/// An iterative routine (quadrature, root finding, minimization) ran out of budget.
class ConvergenceError : public Error {
   public:
    using Error::Error;
};

/// The result is not representable as a finite double.
class OverflowError : public Error {
   public:
    using Error::Error;
};

}  // namespace gaussphase
