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
#include "wvx/weakval.hpp"

using namespace wvx;
using namespace std::complex_literals;
using wvx::testing::max_abs;

namespace {

constexpr double pi = std::numbers::pi;

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) { return (ComplexMatrix(2, 2) << a, b, c, d).finished(); }

}  // namespace

TEST_CASE("weak value, exclusive pair") {
    const auto pair = exclusive_pair();
    const auto s = pauli_matrices();
    CHECK(std::abs(weak_value(s.z, pair, 0, 1) - (-1.0)) < 1e-12);
    CHECK(std::abs(weak_value(s.z, pair, 0, 0) - 1.0) < 1e-12);
    for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(std::abs(weak_value(HermitianOperator::identity(2), pair, l, j) - 1.0) < 1e-15);
    CHECK_THROWS_AS(weak_value(s.z, pair, 2, 0), DimensionMismatch);
    CHECK_THROWS_AS(weak_value(HermitianOperator::identity(3), pair, 0, 0), DimensionMismatch);
}

TEST_CASE("weak value, generic theta") {
    const auto s = pauli_matrices();
    for (double theta : {0.3, 1.0, 2.2}) {
        const auto pair = rotated_pair(2, theta);
        CHECK(std::abs(weak_value(s.y, pair, 0, 0) - 1.0i * std::tan(theta / 2)) < 1e-12);
    }
}

TEST_CASE("overlap too small carries the offending indices") {
    const auto pair = rotated_pair(2, 0.0);
    try {
        (void)weak_value(pauli_matrices().x, pair, 0, 1);
        FAIL("expected OverlapTooSmall");
    } catch (const OverlapTooSmall &e) {
        CHECK(e.post_index() == 0);
        CHECK(e.pre_index() == 1);
        CHECK(e.modulus() < 1e-15);
    }
    CHECK_THROWS_AS(w_operator(pair, 1, 0), OverlapTooSmall);
}

TEST_CASE("w operators") {
    const auto ex = exclusive_pair();
    CHECK(max_abs(w_operator(ex, 0, 0) - mat2(1, 0, 1, 0)) < 1e-15);
    CHECK(max_abs(w_operator(ex, 0, 1) - mat2(0, 1, 0, 1)) < 1e-15);
    CHECK(max_abs(w_operator(ex, 1, 0) - mat2(1, 0, -1, 0)) < 1e-15);
    CHECK(max_abs(w_operator(ex, 1, 1) - mat2(0, -1, 0, 1)) < 1e-15);

    // same pre and post basis: W_{jj} is the projector
    wvx::testing::Rng rng(3);
    const auto basis = Basis::from_columns(wvx::testing::random_unitary(3, rng));
    const BasisPair same(basis, basis);
    for (std::size_t j = 0; j < 3; ++j) {
        const auto &v = basis[j].amplitudes();
        CHECK(max_abs(w_operator(same, j, j) - v * v.adjoint()) < 1e-14);
    }

    for (double theta : {0.4, 1.2, 2.6}) {
        const auto pair = rotated_pair(2, theta);
        const double t = std::tan(theta / 2), ct = 1 / t;
        CHECK(max_abs(w_operator(pair, 0, 0) - mat2(1, 0, t, 0)) < 1e-12);
        CHECK(max_abs(w_operator(pair, 0, 1) - mat2(0, ct, 0, 1)) < 1e-12);
        CHECK(max_abs(w_operator(pair, 1, 0) - mat2(1, 0, -ct, 0)) < 1e-12);
        CHECK(max_abs(w_operator(pair, 1, 1) - mat2(0, -t, 0, 1)) < 1e-12);

        const WOperatorSet set(pair);
        for (std::size_t l = 0; l < 2; ++l)
            for (std::size_t j = 0; j < 2; ++j) {
                CHECK(std::abs(set(l, j).trace() - 1.0) < 1e-10);
                Eigen::JacobiSVD<ComplexMatrix> svd(set(l, j));
                CHECK(svd.singularValues()(1) < 1e-12 * svd.singularValues()(0));
            }
    }
}

TEST_CASE("spin-1 w operators derived from the definition") {
    const double theta = 0.9;
    const auto pair = rotated_pair(3, theta);
    const double t = std::tan(theta / 2), ct = 1 / t, r2 = std::sqrt(2.0);
    ComplexMatrix w11 = ComplexMatrix::Zero(3, 3);
    w11.col(0) << 1, r2 * t, t * t;
    CHECK(max_abs(w_operator(pair, 0, 0) - w11) < 1e-12);
    // the display's first "W_{2,1}" is W_{1,2}
    ComplexMatrix w12 = ComplexMatrix::Zero(3, 3);
    w12.col(1) << ct / r2, 1, t / r2;
    CHECK(max_abs(w_operator(pair, 0, 1) - w12) < 1e-12);
    ComplexMatrix w22 = ComplexMatrix::Zero(3, 3);
    w22.col(1) << -std::tan(theta) / r2, 1, std::tan(theta) / r2;
    CHECK(max_abs(w_operator(pair, 1, 1) - w22) < 1e-12);
    ComplexMatrix w32 = ComplexMatrix::Zero(3, 3);
    w32.col(1) << -t / r2, 1, -ct / r2;
    CHECK(max_abs(w_operator(pair, 2, 1) - w32) < 1e-12);
}

TEST_CASE("overlap matrix") {
    const auto ex = overlap_matrix(exclusive_pair());
    CHECK((ex.values().array() - 0.5).abs().maxCoeff() < 1e-15);

    wvx::testing::Rng rng(5);
    const auto basis = Basis::from_columns(wvx::testing::random_unitary(4, rng));
    CHECK((overlap_matrix(BasisPair(basis, basis)).values() - RealMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);

    for (double theta : {0.3, 1.4, 2.9}) {
        const auto mu = overlap_matrix(rotated_pair(3, theta));
        CHECK(std::abs(mu(0, 0) - std::pow(std::cos(theta / 2), 4)) < 1e-14);
        CHECK(std::abs(mu(1, 1) - std::pow(std::cos(theta), 2)) < 1e-14);
        CHECK(std::abs(mu(0, 1) - std::pow(std::sin(theta), 2) / 2) < 1e-14);
        CHECK(mu.stochastic_error() < 1e-12);
    }

    // zero overlaps are allowed here
    CHECK(overlap_matrix(rotated_pair(2, 0.0)).stochastic_error() < 1e-15);
}

TEST_CASE("weak value table") {
    const auto s = pauli_matrices();
    const auto table = weak_value_table(s.x, exclusive_pair());
    CHECK(max_abs(table.values() - mat2(1, 1, -1, -1)) < 1e-12);

    for (double theta : {0.25, 1.0, 2.0}) {
        const auto sigma_theta = rotated_operator(2, theta);
        const double c = std::cos(theta), sn = std::sin(theta);
        const auto t = weak_value_table(sigma_theta, exclusive_pair());
        // diagonal entries c + s and -c - s; off-diagonals interpolate the sigma_z table
        // (theta = 0) and the sigma_x table (theta = pi/2)
        CHECK(max_abs(t.values() - mat2(c + sn, -c + sn, c - sn, -c - sn)) < 1e-12);

        const auto lx = weak_value_table(spin_one_matrices().x, rotated_pair(3, theta));
        CHECK(std::abs(lx(0, 1) - 1 / sn) < 1e-12);
    }

    const auto id = weak_value_table(HermitianOperator::identity(3), rotated_pair(3, 0.7));
    CHECK((id.values().array() - 1.0).abs().maxCoeff() < 1e-14);

    try {
        (void)weak_value_table(s.x, rotated_pair(2, 0.0));
        FAIL("expected OverlapTooSmall");
    } catch (const OverlapTooSmall &e) {
        CHECK(e.post_index() == 0);
        CHECK(e.pre_index() == 1);
    }
}

TEST_CASE("expansion") {
    const auto s = pauli_matrices();
    const auto ex = exclusive_pair();
    const WOperatorSet w(ex);
    const ComplexMatrix sx = 0.5 * (w(0, 0) + w(0, 1) - w(1, 0) - w(1, 1));
    CHECK(max_abs(sx - s.x.matrix()) < 1e-12);
    CHECK(max_abs(expand(weak_value_table(s.x, ex)).matrix() - s.x.matrix()) < 1e-12);
    CHECK(max_abs(expand(weak_value_table(HermitianOperator::identity(2), ex)).matrix() -
                  ComplexMatrix::Identity(2, 2)) < 1e-12);

    wvx::testing::Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = wvx::testing::random_hermitian(3, rng);
        const auto pair = wvx::testing::random_pair(3, rng);
        CHECK(max_abs(expand(weak_value_table(a, pair)).matrix() - a.matrix()) <= 1e-10);
    }
}

TEST_CASE("trace route") {
    const auto s = pauli_matrices();
    const WOperatorSet ex(exclusive_pair());
    CHECK(std::abs(weak_value_by_trace(s.z, ex, 0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(weak_value_by_trace(HermitianOperator::zero(2), ex, 1, 0)) == 0.0);
    // tr[W A] is the conjugate: (sigma_y)_{1,1} = i but tr[W_{1,1} sigma_y] = -i
    CHECK(std::abs(weak_value_by_trace(s.y, ex, 0, 0) - 1.0i) < 1e-12);
    CHECK(std::abs((ex(0, 0) * s.y.matrix()).trace() - (-1.0i)) < 1e-12);

    wvx::testing::Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = wvx::testing::random_hermitian(4, rng);
        const auto pair = wvx::testing::random_pair(4, rng);
        const WOperatorSet set(pair);
        for (std::size_t l = 0; l < 4; ++l)
            for (std::size_t j = 0; j < 4; ++j) {
                const Complex direct = weak_value(a, pair, l, j);
                CHECK(std::abs(weak_value_by_trace(a, set, l, j) - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
            }
    }
}

TEST_CASE("mixed weak value") {
    const auto s = pauli_matrices();
    const auto ex = exclusive_pair();
    const auto table = weak_value_table(s.z, ex);
    for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(std::abs(mixed_weak_value(s.z, ex, MixedState::point_mass(2, j), MixedState::point_mass(2, l)) -
                           table(l, j)) < 1e-15);

    // brute force over the table: (1 - 1 + 1 - 1) / 4
    const double expected_sigma_z[2][2] = {{1, -1}, {1, -1}};
    double brute = 0.0;
    for (auto &row : expected_sigma_z)
        for (double v : row)
            brute += 0.25 * v;
    const auto u = MixedState::uniform(2);
    CHECK(std::abs(mixed_weak_value(s.z, ex, u, u) - brute) < 1e-15);

    wvx::testing::Rng rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = wvx::testing::random_hermitian(3, rng);
        const auto pair = wvx::testing::random_pair(3, rng);
        const MixedState p(wvx::testing::random_distribution(3, rng));
        const MixedState q(wvx::testing::random_distribution(3, rng));
        const Complex sum = mixed_weak_value(a, pair, p, q);
        CHECK(std::abs(mixed_weak_value_by_trace(a, pair, p, q) - sum) <= 1e-11 * std::max(1.0, std::abs(sum)));
    }
    CHECK_THROWS_AS(mixed_weak_value(s.z, ex, MixedState::uniform(3), u), DimensionMismatch);
}

TEST_CASE("fractional decomposition") {
    const auto s = pauli_matrices();
    const auto ex = exclusive_pair();
    const auto terms = fractional_decomposition(s.x, ex, 0, Side::Pre);
    REQUIRE(terms.size() == 2);
    CHECK(std::abs(terms[0] - 0.5) < 1e-12);
    CHECK(std::abs(terms[1] + 0.5) < 1e-12);

    const auto pair = rotated_pair(3, 1.1);
    const auto mu = overlap_matrix(pair);
    for (std::size_t k = 0; k < 3; ++k) {
        const auto id_terms = fractional_decomposition(HermitianOperator::identity(3), pair, k, Side::Pre);
        Complex sum = 0.0;
        for (std::size_t l = 0; l < 3; ++l) {
            CHECK(std::abs(id_terms[l] - mu(l, k)) < 1e-14);
            sum += id_terms[l];
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }

    const auto lz = spin_one_matrices().z;
    const auto phi2 = pair.post()[1].amplitudes();
    const Complex expectation = phi2.dot(lz.matrix() * phi2);
    Complex sum = 0.0;
    for (const auto &t : fractional_decomposition(lz, pair, 1, Side::Post))
        sum += t;
    CHECK(std::abs(sum - expectation) < 1e-12);
    CHECK(std::abs(sum.imag()) < 1e-12);
}

TEST_CASE("beyond classically allowed values") {
    const auto t = weak_value_table(rotated_operator(2, pi / 4), exclusive_pair());
    const auto flagged = beyond_classical(t);
    // (sigma_theta)_{1,1} = sqrt 2 and (sigma_theta)_{2,2} = -sqrt 2
    REQUIRE(flagged.size() == 2);
    CHECK(flagged[0] == std::pair<std::size_t, std::size_t>{0, 0});
    CHECK(flagged[1] == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(beyond_classical(weak_value_table(pauli_matrices().x, exclusive_pair())).empty());
}

TEST_CASE("both sign conventions for the exclusive basis give the same tables") {
    const double r = 1 / std::sqrt(2.0);
    ComplexMatrix post(2, 2);
    post << r, r, r, -r;
    const BasisPair other(Basis::standard(2), Basis::from_columns(post));
    const BasisPair ours = exclusive_pair();
    const auto s = pauli_matrices();
    for (const auto &op : {s.x, s.y, s.z, rotated_operator(2, 0.6)})
        CHECK(max_abs(weak_value_table(op, ours).values() - weak_value_table(op, other).values()) < 1e-15);
    CHECK((overlap_matrix(ours).values() - overlap_matrix(other).values()).cwiseAbs().maxCoeff() < 1e-15);
    for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(max_abs(w_operator(ours, l, j) - w_operator(other, l, j)) < 1e-15);
}
