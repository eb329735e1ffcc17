// Copyright 2026 The tbounds Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TBOUNDS_ERRORS_HPP
#define TBOUNDS_ERRORS_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace tbounds {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NegativeEigenvalue : public Error {
 public:
  using Error::Error;
};

class InvalidRank : public Error {
 public:
  using Error::Error;
};

class InvalidP : public Error {
 public:
  using Error::Error;
};

class InvalidSpectrum : public Error {
 public:
  using Error::Error;
};

class NotNormalized : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A density-matrix invariant failed. `invariant()` is one of "shape",
/// "finite", "hermiticity", "trace", "positivity"; `magnitude()` is the
/// worst offending value (e.g. max |m - m^dagger|, |tr - 1|, or the most
/// negative eigenvalue).
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, double magnitude)
      : Error("state violates " + invariant + " invariant (worst magnitude " +
              format(magnitude) + ")"),
        invariant_(std::move(invariant)),
        magnitude_(magnitude) {}

  const std::string& invariant() const noexcept { return invariant_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }

  std::string invariant_;
  double magnitude_;
};

}  // namespace tbounds

#endif  // TBOUNDS_ERRORS_HPP
