// Copyright 2026 The wvx Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wvx {

/// Raised when operands have incompatible dimensions or index ranges.
class DimensionMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a vector, basis, operator or distribution violates its invariant.
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A pre/post-selection overlap <phi_l|psi_j> is too close to zero; the
/// corresponding weak value is unbounded.
class OverlapTooSmall : public std::runtime_error {
  public:
    OverlapTooSmall(std::size_t post_index, std::size_t pre_index, double modulus);

    std::size_t post_index() const noexcept { return post_index_; }
    std::size_t pre_index() const noexcept { return pre_index_; }
    double modulus() const noexcept { return modulus_; }

  private:
    std::size_t post_index_;
    std::size_t pre_index_;
    double modulus_;
};

/// The overlap matrix is singular: the pre-measurement state cannot be
/// recovered from the post-measurement statistics.
class SingularMeasurement : public std::runtime_error {
  public:
    explicit SingularMeasurement(double determinant);

    double determinant() const noexcept { return determinant_; }

  private:
    double determinant_;
};

/// The bistochastic matrix provably has no unitary realization.
class NotUnistochastic : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Numerical search for a unitary realization gave up; the matrix may or may
/// not be unistochastic.
class SearchFailed : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace wvx
