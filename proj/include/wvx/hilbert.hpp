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

// Complex vectors, orthonormal bases and the spin fixtures used by the rest of
// the library. Basis vectors are stored as columns in index order; indices are
// 0-based throughout.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace wvx {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Tolerance for unit norm, orthonormality and Hermiticity checks.
inline constexpr double kNormTolerance = 1e-10;
/// Overlaps with modulus at or below this make a basis pair inadmissible.
inline constexpr double kOverlapTolerance = 1e-8;

/// A normalized vector of complex amplitudes.
class StateVector {
  public:
    explicit StateVector(ComplexVector amplitudes);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
    const ComplexVector &amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

  private:
    ComplexVector amplitudes_;
};

/// <v|w>, conjugate-linear in the first argument.
Complex inner_product(const StateVector &v, const StateVector &w);

/// An orthonormal basis of n vectors in an n-dimensional space.
class Basis {
  public:
    explicit Basis(std::vector<StateVector> vectors);

    /// Builds a basis from the columns of a square matrix.
    static Basis from_columns(const ComplexMatrix &columns);
    static Basis standard(std::size_t n);

    std::size_t size() const noexcept { return vectors_.size(); }
    std::size_t dim() const noexcept { return vectors_.size(); }
    const StateVector &operator[](std::size_t i) const { return vectors_.at(i); }
    const std::vector<StateVector> &vectors() const noexcept { return vectors_; }
    /// Matrix whose i-th column is the i-th basis vector.
    const ComplexMatrix &columns() const noexcept { return columns_; }

    /// max_{i,j} |<v_i|v_j> - delta_ij|
    double orthonormality_error() const;

  private:
    std::vector<StateVector> vectors_;
    ComplexMatrix columns_;
};

/// Pre-selection basis {psi_j} and post-selection basis {phi_l}.
class BasisPair {
  public:
    BasisPair(Basis pre, Basis post);

    const Basis &pre() const noexcept { return pre_; }
    const Basis &post() const noexcept { return post_; }
    std::size_t dim() const noexcept { return pre_.dim(); }

    /// G(l, j) = <phi_l|psi_j>.
    const ComplexMatrix &overlaps() const noexcept { return overlaps_; }
    Complex overlap(std::size_t l, std::size_t j) const;

    double min_overlap_modulus() const;
    /// True when every |<phi_l|psi_j>| exceeds kOverlapTolerance.
    bool admissible() const { return min_overlap_modulus() > kOverlapTolerance; }

  private:
    Basis pre_;
    Basis post_;
    ComplexMatrix overlaps_;
};

/// Multiplies the j-th vector by exp(i * phases[j]).
Basis gauge_transform(const Basis &basis, std::span<const double> phases);

class HermitianOperator {
  public:
    explicit HermitianOperator(ComplexMatrix matrix);

    static HermitianOperator identity(std::size_t n);
    static HermitianOperator zero(std::size_t n);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    const ComplexMatrix &matrix() const noexcept { return matrix_; }

    /// Real eigenvalues in ascending order.
    RealVector eigenvalues() const;

  private:
    ComplexMatrix matrix_;
};

/// Probabilities attached to the vectors of one basis.
class MixedState {
  public:
    explicit MixedState(RealVector probabilities);
    explicit MixedState(const std::vector<double> &probabilities);

    static MixedState point_mass(std::size_t n, std::size_t k);
    static MixedState uniform(std::size_t n);

    std::size_t size() const noexcept { return static_cast<std::size_t>(probabilities_.size()); }
    const RealVector &probabilities() const noexcept { return probabilities_; }
    double operator[](std::size_t i) const { return probabilities_(static_cast<Eigen::Index>(i)); }

  private:
    RealVector probabilities_;
};

struct SpinOperators {
    HermitianOperator x;
    HermitianOperator y;
    HermitianOperator z;
};

/// sigma_x, sigma_y, sigma_z.
SpinOperators pauli_matrices();
/// Spin-1 L_x, L_y, L_z with L_z = diag(1, 0, -1).
SpinOperators spin_one_matrices();
/// The eight Gell-Mann matrices lambda_1..lambda_8, normalized tr(l_a l_b) = 2 delta_ab.
std::vector<HermitianOperator> gell_mann_matrices();

/// Eigenbasis of rotated_operator(dim, theta): the standard basis rotated about
/// the y axis. For dim 2 the vectors are (cos t/2, sin t/2), (-sin t/2, cos t/2).
Basis rotated_basis(int dim, double theta);

/// sigma_z cos(theta) + sigma_x sin(theta) for dim 2, L_z cos(theta) + L_x sin(theta) for dim 3.
HermitianOperator rotated_operator(int dim, double theta);

/// Standard pre-selection basis with rotated_basis(dim, theta) as post-selection.
BasisPair rotated_pair(int dim, double theta);

/// Spin-1/2 up/down pre-selection with the x eigenbasis as post-selection.
/// Post vectors follow the rotated_basis(2, pi/2) sign convention; the
/// alternative phi_2 = (1, -1)/sqrt(2) is a gauge choice with identical weak values.
BasisPair exclusive_pair();

}  // namespace wvx
