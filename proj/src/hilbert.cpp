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

#include "wvx/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wvx/errors.hpp"

namespace wvx {

namespace {

using namespace std::complex_literals;

ComplexMatrix hermitian_or_throw(ComplexMatrix m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw InvalidInput("operator matrix must be square and non-empty");
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kNormTolerance)
        throw InvalidInput("operator is not Hermitian (max |A - A^dagger| = " + std::to_string(asym) + ")");
    return m;
}

}  // namespace

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0)
        throw InvalidInput("state vector must be non-empty");
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > kNormTolerance)
        throw InvalidInput("state vector is not normalized (norm = " + std::to_string(norm) + ")");
}

Complex inner_product(const StateVector &v, const StateVector &w) {
    if (v.dim() != w.dim())
        throw DimensionMismatch("inner product of vectors with dimensions " + std::to_string(v.dim()) + " and " +
                                std::to_string(w.dim()));
    return v.amplitudes().dot(w.amplitudes());  // Eigen conjugates the left operand
}

Basis::Basis(std::vector<StateVector> vectors) : vectors_(std::move(vectors)) {
    const auto n = vectors_.size();
    if (n == 0)
        throw InvalidInput("basis must contain at least one vector");
    columns_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (vectors_[i].dim() != n)
            throw DimensionMismatch("basis of " + std::to_string(n) + " vectors contains a vector of dimension " +
                                    std::to_string(vectors_[i].dim()));
        columns_.col(static_cast<Eigen::Index>(i)) = vectors_[i].amplitudes();
    }
    const double err = orthonormality_error();
    if (err > kNormTolerance)
        throw InvalidInput("basis is not orthonormal (error " + std::to_string(err) + ")");
}

Basis Basis::from_columns(const ComplexMatrix &columns) {
    if (columns.rows() != columns.cols())
        throw DimensionMismatch("basis matrix must be square");
    std::vector<StateVector> vs;
    vs.reserve(static_cast<std::size_t>(columns.cols()));
    for (Eigen::Index i = 0; i < columns.cols(); ++i)
        vs.emplace_back(columns.col(i));
    return Basis(std::move(vs));
}

Basis Basis::standard(std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(n);
    return from_columns(ComplexMatrix::Identity(dim, dim));
}

double Basis::orthonormality_error() const {
    const auto n = columns_.cols();
    const ComplexMatrix gram = columns_.adjoint() * columns_;
    return (gram - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

BasisPair::BasisPair(Basis pre, Basis post) : pre_(std::move(pre)), post_(std::move(post)) {
    if (pre_.dim() != post_.dim())
        throw DimensionMismatch("pre and post bases differ in dimension");
    overlaps_ = post_.columns().adjoint() * pre_.columns();
}

Complex BasisPair::overlap(std::size_t l, std::size_t j) const {
    if (l >= dim() || j >= dim())
        throw DimensionMismatch("basis index out of range");
    return overlaps_(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j));
}

double BasisPair::min_overlap_modulus() const { return overlaps_.cwiseAbs().minCoeff(); }

Basis gauge_transform(const Basis &basis, std::span<const double> phases) {
    if (phases.size() != basis.size())
        throw DimensionMismatch("gauge transform needs one phase per basis vector");
    std::vector<StateVector> out;
    out.reserve(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        out.emplace_back(std::polar(1.0, phases[j]) * basis[j].amplitudes());
    return Basis(std::move(out));
}

HermitianOperator::HermitianOperator(ComplexMatrix matrix) : matrix_(hermitian_or_throw(std::move(matrix))) {}

HermitianOperator HermitianOperator::identity(std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(n);
    return HermitianOperator(ComplexMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(n);
    return HermitianOperator(ComplexMatrix::Zero(dim, dim));
}

RealVector HermitianOperator::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

MixedState::MixedState(RealVector probabilities) : probabilities_(std::move(probabilities)) {
    if (probabilities_.size() == 0)
        throw InvalidInput("distribution must be non-empty");
    for (double p : probabilities_)
        if (!(p >= -kNormTolerance && p <= 1.0 + kNormTolerance))
            throw InvalidInput("probability outside [0, 1]: " + std::to_string(p));
    if (std::abs(probabilities_.sum() - 1.0) > kNormTolerance)
        throw InvalidInput("probabilities do not sum to 1");
}

MixedState::MixedState(const std::vector<double> &probabilities)
    : MixedState(RealVector(Eigen::Map<const RealVector>(probabilities.data(),
                                                          static_cast<Eigen::Index>(probabilities.size())))) {}

MixedState MixedState::point_mass(std::size_t n, std::size_t k) {
    if (k >= n)
        throw DimensionMismatch("point mass index out of range");
    RealVector p = RealVector::Zero(static_cast<Eigen::Index>(n));
    p(static_cast<Eigen::Index>(k)) = 1.0;
    return MixedState(std::move(p));
}

MixedState MixedState::uniform(std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(n);
    return MixedState(RealVector::Constant(dim, 1.0 / static_cast<double>(n)));
}

SpinOperators pauli_matrices() {
    ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, -1i, 1i, 0;
    z << 1, 0, 0, -1;
    return {HermitianOperator(x), HermitianOperator(y), HermitianOperator(z)};
}

SpinOperators spin_one_matrices() {
    const double r = 1.0 / std::numbers::sqrt2;
    ComplexMatrix x(3, 3), y(3, 3), z(3, 3);
    x << 0, r, 0, r, 0, r, 0, r, 0;
    y << 0, -1i * r, 0, 1i * r, 0, -1i * r, 0, 1i * r, 0;
    z << 1, 0, 0, 0, 0, 0, 0, 0, -1;
    return {HermitianOperator(x), HermitianOperator(y), HermitianOperator(z)};
}

std::vector<HermitianOperator> gell_mann_matrices() {
    std::vector<ComplexMatrix> m(8, ComplexMatrix::Zero(3, 3));
    m[0](0, 1) = m[0](1, 0) = 1;
    m[1](0, 1) = -1i;
    m[1](1, 0) = 1i;
    m[2](0, 0) = 1;
    m[2](1, 1) = -1;
    m[3](0, 2) = m[3](2, 0) = 1;
    m[4](0, 2) = -1i;
    m[4](2, 0) = 1i;
    m[5](1, 2) = m[5](2, 1) = 1;
    m[6](1, 2) = -1i;
    m[6](2, 1) = 1i;
    const double s = 1.0 / std::sqrt(3.0);
    m[7](0, 0) = m[7](1, 1) = s;
    m[7](2, 2) = -2 * s;
    std::vector<HermitianOperator> out;
    out.reserve(8);
    for (auto &mat : m)
        out.emplace_back(std::move(mat));
    return out;
}

Basis rotated_basis(int dim, double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    if (dim == 2) {
        ComplexMatrix cols(2, 2);
        cols << c, -s, s, c;
        return Basis::from_columns(cols);
    }
    if (dim == 3) {
        const double r = std::sin(theta) / std::numbers::sqrt2;
        ComplexMatrix cols(3, 3);
        // columns: phi_1, phi_2, phi_3
        cols << c * c, -r, s * s,  //
            r, std::cos(theta), -r,  //
            s * s, r, c * c;
        return Basis::from_columns(cols);
    }
    throw InvalidInput("rotated basis is only available for dim 2 or 3, got " + std::to_string(dim));
}

HermitianOperator rotated_operator(int dim, double theta) {
    if (dim == 2) {
        const auto s = pauli_matrices();
        return HermitianOperator(s.z.matrix() * std::cos(theta) + s.x.matrix() * std::sin(theta));
    }
    if (dim == 3) {
        const auto l = spin_one_matrices();
        return HermitianOperator(l.z.matrix() * std::cos(theta) + l.x.matrix() * std::sin(theta));
    }
    throw InvalidInput("rotated operator is only available for dim 2 or 3, got " + std::to_string(dim));
}

BasisPair rotated_pair(int dim, double theta) {
    auto post = rotated_basis(dim, theta);
    return BasisPair(Basis::standard(static_cast<std::size_t>(dim)), std::move(post));
}

BasisPair exclusive_pair() { return rotated_pair(2, std::numbers::pi / 2); }

}  // namespace wvx
