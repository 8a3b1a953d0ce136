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

#include "wvx/weakval.hpp"

#include <cmath>
#include <string>

#include "wvx/errors.hpp"

namespace wvx {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

void check_indices(const BasisPair &pair, std::size_t l, std::size_t j) {
    if (l >= pair.dim() || j >= pair.dim())
        throw DimensionMismatch("index (" + std::to_string(l) + ", " + std::to_string(j) + ") out of range for dim " +
                                std::to_string(pair.dim()));
}

void check_operator(const HermitianOperator &a, const BasisPair &pair) {
    if (a.dim() != pair.dim())
        throw DimensionMismatch("operator dimension " + std::to_string(a.dim()) + " does not match basis dimension " +
                                std::to_string(pair.dim()));
}

Complex admissible_overlap(const BasisPair &pair, std::size_t l, std::size_t j) {
    check_indices(pair, l, j);
    const Complex g = pair.overlap(l, j);
    if (std::abs(g) <= kOverlapTolerance)
        throw OverlapTooSmall(l, j, std::abs(g));
    return g;
}

void check_distributions(const BasisPair &pair, const MixedState &p, const MixedState &q) {
    if (p.size() != pair.dim() || q.size() != pair.dim())
        throw DimensionMismatch("mixed state size does not match basis dimension");
}

}  // namespace

double OverlapMatrix::stochastic_error() const {
    const double rows = (mu_.rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double cols = (mu_.colwise().sum().array() - 1.0).abs().maxCoeff();
    return std::max(rows, cols);
}

OverlapMatrix overlap_matrix(const BasisPair &pair) { return OverlapMatrix(pair.overlaps().cwiseAbs2()); }

Complex weak_value(const HermitianOperator &a, const BasisPair &pair, std::size_t l, std::size_t j) {
    check_operator(a, pair);
    const Complex g = admissible_overlap(pair, l, j);
    const Complex numerator = pair.post()[l].amplitudes().dot(a.matrix() * pair.pre()[j].amplitudes());
    return numerator / g;
}

ComplexMatrix w_operator(const BasisPair &pair, std::size_t l, std::size_t j) {
    const Complex g = admissible_overlap(pair, l, j);
    // <psi_j|phi_l> = conj(<phi_l|psi_j>)
    return pair.post()[l].amplitudes() * pair.pre()[j].amplitudes().adjoint() / std::conj(g);
}

WOperatorSet::WOperatorSet(BasisPair pair) : pair_(std::move(pair)) {
    const auto n = pair_.dim();
    ops_.reserve(n * n);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j)
            ops_.push_back(w_operator(pair_, l, j));
}

const ComplexMatrix &WOperatorSet::operator()(std::size_t l, std::size_t j) const {
    check_indices(pair_, l, j);
    return ops_[l * pair_.dim() + j];
}

WeakValueTable::WeakValueTable(ComplexMatrix values, HermitianOperator op, BasisPair pair)
    : values_(std::move(values)), op_(std::move(op)), pair_(std::move(pair)) {
    const auto n = idx(pair_.dim());
    if (values_.rows() != n || values_.cols() != n || op_.dim() != pair_.dim())
        throw DimensionMismatch("weak value table dimensions are inconsistent");
}

WeakValueTable weak_value_table(const HermitianOperator &a, const BasisPair &pair) {
    check_operator(a, pair);
    const auto n = pair.dim();
    ComplexMatrix values(idx(n), idx(n));
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j)
            values(idx(l), idx(j)) = weak_value(a, pair, l, j);
    return WeakValueTable(std::move(values), a, pair);
}

ComplexMatrix expansion_sum(const WeakValueTable &table) {
    const auto &pair = table.basis_pair();
    const auto n = pair.dim();
    const auto mu = overlap_matrix(pair);
    ComplexMatrix sum = ComplexMatrix::Zero(idx(n), idx(n));
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j)
            sum += table(l, j) * mu(l, j) * w_operator(pair, l, j);
    return sum;
}

HermitianOperator expand(const WeakValueTable &table) { return HermitianOperator(expansion_sum(table)); }

Complex weak_value_by_trace(const HermitianOperator &a, const WOperatorSet &wset, std::size_t l, std::size_t j) {
    if (a.dim() != wset.dim())
        throw DimensionMismatch("operator dimension does not match W-operator set");
    return (a.matrix() * wset(l, j).adjoint()).trace();
}

ComplexMatrix mixed_w_operator(const BasisPair &pair, const MixedState &p, const MixedState &q) {
    check_distributions(pair, p, q);
    const auto n = pair.dim();
    ComplexMatrix w = ComplexMatrix::Zero(idx(n), idx(n));
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j)
            w += q[l] * p[j] * w_operator(pair, l, j);
    return w;
}

Complex mixed_weak_value(const HermitianOperator &a, const BasisPair &pair, const MixedState &p,
                         const MixedState &q) {
    check_distributions(pair, p, q);
    const auto n = pair.dim();
    Complex sum = 0.0;
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j)
            sum += q[l] * p[j] * weak_value(a, pair, l, j);
    return sum;
}

Complex mixed_weak_value_by_trace(const HermitianOperator &a, const BasisPair &pair, const MixedState &p,
                                  const MixedState &q) {
    check_operator(a, pair);
    return (a.matrix() * mixed_w_operator(pair, p, q).adjoint()).trace();
}

std::vector<Complex> fractional_decomposition(const HermitianOperator &a, const BasisPair &pair, std::size_t k,
                                              Side side) {
    check_operator(a, pair);
    const auto n = pair.dim();
    if (k >= n)
        throw DimensionMismatch("component index out of range");
    const auto mu = overlap_matrix(pair);
    std::vector<Complex> terms;
    terms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t l = side == Side::Pre ? i : k;
        const std::size_t j = side == Side::Pre ? k : i;
        terms.push_back(weak_value(a, pair, l, j) * mu(l, j));
    }
    return terms;
}

std::vector<std::pair<std::size_t, std::size_t>> beyond_classical(const WeakValueTable &table) {
    const double radius = table.op().eigenvalues().cwiseAbs().maxCoeff();
    const double bound = radius * (1.0 + 1e-12) + 1e-12;
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t l = 0; l < table.dim(); ++l)
        for (std::size_t j = 0; j < table.dim(); ++j)
            if (std::abs(table(l, j)) > bound)
                out.emplace_back(l, j);
    return out;
}

}  // namespace wvx
