// Copyright 2026 The catforge Authors
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

namespace catforge {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (negative time, bad mode index, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The odd cat state of a zero amplitude is the zero vector.
class DegenerateCat : public Error {
 public:
  using Error::Error;
};

/// The design equation has no root before the first pole of G.
class NoSolution : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole of a function (cat size vanishes there).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// The Fock-space truncation cannot represent the state accurately.
class CutoffError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown inside an evolution (zero trace after heralding, etc.).
class EngineError : public Error {
 public:
  using Error::Error;
};

}  // namespace catforge
