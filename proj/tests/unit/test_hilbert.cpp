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

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "support/random_fixtures.hpp"
#include "wvx/errors.hpp"
#include "wvx/hilbert.hpp"

using namespace wvx;
using namespace std::complex_literals;
using wvx::testing::max_abs;

namespace {

constexpr double pi = std::numbers::pi;

ComplexMatrix commutator(const HermitianOperator &a, const HermitianOperator &b) {
    return a.matrix() * b.matrix() - b.matrix() * a.matrix();
}

StateVector vec2(Complex a, Complex b) { return StateVector(Eigen::Vector2cd(a, b)); }

}  // namespace

TEST_CASE("inner product") {
    const auto psi1 = vec2(1, 0);
    CHECK(std::abs(inner_product(psi1, psi1) - 1.0) < 1e-15);

    const auto phi1 = vec2(1 / std::sqrt(2.0), 1 / std::sqrt(2.0));
    CHECK(std::abs(inner_product(phi1, psi1) - 1 / std::sqrt(2.0)) < 1e-15);

    // conjugate-linear in the first argument
    const auto plus_i = vec2(1 / std::sqrt(2.0), 1i / std::sqrt(2.0));
    CHECK(std::abs(inner_product(plus_i, vec2(0, 1)) - (-1i / std::sqrt(2.0))) < 1e-15);

    for (double theta : {0.3, 1.1, 2.5}) {
        const auto post = rotated_basis(3, theta);
        const auto pre = Basis::standard(3);
        CHECK(std::abs(inner_product(post[0], pre[0]) - std::pow(std::cos(theta / 2), 2)) < 1e-15);
    }

    CHECK_THROWS_AS(inner_product(psi1, StateVector(Eigen::Vector3cd(1, 0, 0))), DimensionMismatch);
}

TEST_CASE("state vectors and bases validate their invariants") {
    CHECK_THROWS_AS(StateVector(Eigen::Vector2cd(1, 1)), InvalidInput);
    CHECK_THROWS_AS(Basis::from_columns((ComplexMatrix(2, 2) << 1, 1, 0, 0).finished()), InvalidInput);
    CHECK_THROWS_AS(BasisPair(Basis::standard(2), Basis::standard(3)), DimensionMismatch);
    CHECK_THROWS_AS(HermitianOperator((ComplexMatrix(2, 2) << 0, 1, 0, 0).finished()), InvalidInput);
    CHECK_THROWS_AS(MixedState(std::vector<double>{0.7, 0.7}), InvalidInput);
    CHECK_THROWS_AS(MixedState(std::vector<double>{1.2, -0.2}), InvalidInput);
}

TEST_CASE("gauge transform") {
    const auto std2 = Basis::standard(2);
    const std::vector<double> zero{0.0, 0.0};
    CHECK(max_abs(gauge_transform(std2, zero).columns() - std2.columns()) == 0.0);

    const std::vector<double> flip{pi, 0.0};
    const auto flipped = gauge_transform(std2, flip);
    CHECK(std::abs(flipped[0][0] - (-1.0)) < 1e-15);
    CHECK(std::abs(flipped[0][1]) < 1e-15);
    CHECK(std::abs(flipped[1][1] - 1.0) < 1e-15);

    wvx::testing::Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto basis = Basis::from_columns(wvx::testing::random_unitary(4, rng));
        const auto phases = wvx::testing::random_phases(4, rng);
        CHECK(gauge_transform(basis, phases).orthonormality_error() <= 1e-12);
    }
    const std::vector<double> one{0.1};
    CHECK_THROWS_AS(gauge_transform(std2, one), DimensionMismatch);
}

TEST_CASE("pauli matrices") {
    const auto s = pauli_matrices();
    CHECK(max_abs(s.z.matrix() - (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished()) == 0.0);
    CHECK(max_abs(s.x.matrix() * s.x.matrix() - ComplexMatrix::Identity(2, 2)) == 0.0);
    CHECK(max_abs(commutator(s.x, s.y) - 2.0i * s.z.matrix()) < 1e-15);
    CHECK(max_abs(commutator(s.y, s.z) - 2.0i * s.x.matrix()) < 1e-15);
}

TEST_CASE("spin-1 matrices") {
    const auto l = spin_one_matrices();
    CHECK(max_abs(l.z.matrix() - RealMatrix(Eigen::Vector3d(1, 0, -1).asDiagonal()).cast<Complex>()) == 0.0);
    CHECK(max_abs(commutator(l.x, l.y) - 1.0i * l.z.matrix()) <= 1e-14);
    CHECK(max_abs(commutator(l.y, l.z) - 1.0i * l.x.matrix()) <= 1e-14);
    CHECK(max_abs(commutator(l.z, l.x) - 1.0i * l.y.matrix()) <= 1e-14);
    const ComplexMatrix casimir =
        l.x.matrix() * l.x.matrix() + l.y.matrix() * l.y.matrix() + l.z.matrix() * l.z.matrix();
    CHECK(max_abs(casimir - 2.0 * ComplexMatrix::Identity(3, 3)) < 1e-14);
}

TEST_CASE("gell-mann matrices") {
    const auto g = gell_mann_matrices();
    REQUIRE(g.size() == 8);
    for (std::size_t a = 0; a < 8; ++a) {
        CHECK(std::abs(g[a].matrix().trace()) < 1e-15);
        for (std::size_t b = 0; b < 8; ++b) {
            const Complex t = (g[a].matrix() * g[b].matrix()).trace();
            CHECK(std::abs(t - (a == b ? 2.0 : 0.0)) < 1e-14);
        }
    }

    wvx::testing::Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = wvx::testing::random_hermitian(3, rng).matrix();
        ComplexMatrix rebuilt = m.trace() / 3.0 * ComplexMatrix::Identity(3, 3);
        for (const auto &lam : g)
            rebuilt += (lam.matrix() * m).trace() / 2.0 * lam.matrix();
        CHECK(max_abs(rebuilt - m) < 1e-13);
    }
}

TEST_CASE("rotated basis") {
    CHECK(max_abs(rotated_basis(2, 0.0).columns() - ComplexMatrix::Identity(2, 2)) == 0.0);

    const auto half = rotated_basis(2, pi / 2);
    const double r = 1 / std::sqrt(2.0);
    CHECK(max_abs(half.columns() - (ComplexMatrix(2, 2) << r, -r, r, r).finished()) < 1e-15);

    for (double theta : {0.0, 0.4, 1.3, pi / 2, 2.8, pi}) {
        const auto b3 = rotated_basis(3, theta);
        CHECK(b3.orthonormality_error() <= 1e-12);
        CHECK(rotated_basis(2, theta).orthonormality_error() <= 1e-12);
        const Eigen::Vector3cd phi2(-std::sin(theta) / std::sqrt(2.0), std::cos(theta), std::sin(theta) / std::sqrt(2.0));
        CHECK(max_abs(b3[1].amplitudes() - phi2) < 1e-15);
    }
    CHECK_THROWS_AS(rotated_basis(4, 0.1), InvalidInput);
}

TEST_CASE("rotated operator") {
    const auto s = pauli_matrices();
    CHECK(max_abs(rotated_operator(2, 0.0).matrix() - s.z.matrix()) == 0.0);
    CHECK(max_abs(rotated_operator(2, pi / 2).matrix() - s.x.matrix()) < 1e-15);

    for (double theta : {0.2, 0.9, 1.7, 3.0}) {
        for (int dim : {2, 3}) {
            const auto op = rotated_operator(dim, theta);
            const auto basis = rotated_basis(dim, theta);
            const RealVector ev = op.eigenvalues();
            if (dim == 2) {
                CHECK(std::abs(ev(0) + 1) <= 1e-12);
                CHECK(std::abs(ev(1) - 1) <= 1e-12);
            } else {
                CHECK(std::abs(ev(0) + 1) <= 1e-12);
                CHECK(std::abs(ev(1)) <= 1e-12);
                CHECK(std::abs(ev(2) - 1) <= 1e-12);
            }
            // eigenvalues +1, (0,) -1 in basis order
            for (int l = 0; l < dim; ++l) {
                const double lambda = dim == 2 ? (l == 0 ? 1.0 : -1.0) : 1.0 - l;
                const auto &v = basis[static_cast<std::size_t>(l)].amplitudes();
                CHECK(max_abs(op.matrix() * v - lambda * v) < 1e-14);
            }
        }
    }
    CHECK_THROWS_AS(rotated_operator(5, 0.1), InvalidInput);
}

TEST_CASE("exclusive pair matches the x eigenbasis up to gauge") {
    const auto pair = exclusive_pair();
    const double r = 1 / std::sqrt(2.0);
    CHECK(max_abs(pair.post()[0].amplitudes() - Eigen::Vector2cd(r, r)) < 1e-15);
    // (1, -1)/sqrt(2) convention is a global sign away
    CHECK(max_abs(-pair.post()[1].amplitudes() - Eigen::Vector2cd(r, -r)) < 1e-15);
    CHECK(pair.admissible());
}
