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

#include "wvx/errors.hpp"

#include <sstream>

namespace wvx {

namespace {

std::string overlap_message(std::size_t l, std::size_t j, double modulus) {
    std::ostringstream os;
    os << "overlap <phi_" << l << "|psi_" << j << "> has modulus " << modulus
       << ", weak value is unbounded";
    return os.str();
}

std::string singular_message(double det) {
    std::ostringstream os;
    os << "overlap matrix is singular (det = " << det << "), measurement is irreversible";
    return os.str();
}

}  // namespace

OverlapTooSmall::OverlapTooSmall(std::size_t post_index, std::size_t pre_index, double modulus)
    : std::runtime_error(overlap_message(post_index, pre_index, modulus)), post_index_(post_index),
      pre_index_(pre_index), modulus_(modulus) {}

SingularMeasurement::SingularMeasurement(double determinant)
    : std::runtime_error(singular_message(determinant)), determinant_(determinant) {}

}  // namespace wvx
