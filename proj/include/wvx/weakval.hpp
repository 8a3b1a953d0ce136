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

// Weak values over a biorthogonal basis pair and the expansion of a Hermitian
// operator in the W-operator frame:
//
//   (A)_{l,j} = <phi_l|A|psi_j> / <phi_l|psi_j>
//   W_{l,j}   = |phi_l><psi_j| / <psi_j|phi_l>
//   mu_{l,j}  = |<phi_l|psi_j>|^2
//   A         = sum_{l,j} (A)_{l,j} W_{l,j} mu_{l,j}
//
// Index order is always (post l, pre j).

#include <cstddef>
#include <utility>
#include <vector>

#include "wvx/hilbert.hpp"

namespace wvx {

/// Squared overlap moduli mu_{l,j}; bistochastic for any basis pair.
class OverlapMatrix {
  public:
    explicit OverlapMatrix(RealMatrix mu) : mu_(std::move(mu)) {}

    std::size_t dim() const noexcept { return static_cast<std::size_t>(mu_.rows()); }
    const RealMatrix &values() const noexcept { return mu_; }
    double operator()(std::size_t l, std::size_t j) const {
        return mu_(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j));
    }
    /// Largest deviation of a row or column sum from 1.
    double stochastic_error() const;

  private:
    RealMatrix mu_;
};

/// Works for any pair; zero overlaps are allowed here.
OverlapMatrix overlap_matrix(const BasisPair &pair);

/// Throws OverlapTooSmall when |<phi_l|psi_j>| <= kOverlapTolerance.
Complex weak_value(const HermitianOperator &a, const BasisPair &pair, std::size_t l, std::size_t j);

/// Rank-one W_{l,j}; trace is 1. Throws OverlapTooSmall like weak_value.
ComplexMatrix w_operator(const BasisPair &pair, std::size_t l, std::size_t j);

/// All n^2 W-operators of an admissible pair.
class WOperatorSet {
  public:
    explicit WOperatorSet(BasisPair pair);

    std::size_t dim() const noexcept { return pair_.dim(); }
    const BasisPair &basis_pair() const noexcept { return pair_; }
    const ComplexMatrix &operator()(std::size_t l, std::size_t j) const;

  private:
    BasisPair pair_;
    std::vector<ComplexMatrix> ops_;  // row-major in (l, j)
};

/// The complete n x n set of weak values of one operator.
class WeakValueTable {
  public:
    WeakValueTable(ComplexMatrix values, HermitianOperator op, BasisPair pair);

    std::size_t dim() const noexcept { return pair_.dim(); }
    const ComplexMatrix &values() const noexcept { return values_; }
    const HermitianOperator &op() const noexcept { return op_; }
    const BasisPair &basis_pair() const noexcept { return pair_; }
    Complex operator()(std::size_t l, std::size_t j) const {
        return values_(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j));
    }

  private:
    ComplexMatrix values_;
    HermitianOperator op_;
    BasisPair pair_;
};

/// Throws OverlapTooSmall for the first inadmissible (l, j) in row-major order.
WeakValueTable weak_value_table(const HermitianOperator &a, const BasisPair &pair);

/// Raw sum_{l,j} (A)_{l,j} W_{l,j} mu_{l,j}.
ComplexMatrix expansion_sum(const WeakValueTable &table);
/// expansion_sum as an operator; equals table.op() up to rounding.
HermitianOperator expand(const WeakValueTable &table);

/// tr[A W_{l,j}^dagger]. Note tr[W_{l,j} A] is the complex conjugate of the
/// weak value for Hermitian A, so the adjoint form is the one used here.
Complex weak_value_by_trace(const HermitianOperator &a, const WOperatorSet &wset, std::size_t l, std::size_t j);

/// W_{q,p} = sum_{l,j} q_l p_j W_{l,j}.
ComplexMatrix mixed_w_operator(const BasisPair &pair, const MixedState &p, const MixedState &q);

/// (A)_{q,p} = sum_{l,j} q_l p_j (A)_{l,j}, with p on the pre basis and q on the post basis.
Complex mixed_weak_value(const HermitianOperator &a, const BasisPair &pair, const MixedState &p,
                         const MixedState &q);

/// tr[A W_{q,p}^dagger]; agrees with mixed_weak_value.
Complex mixed_weak_value_by_trace(const HermitianOperator &a, const BasisPair &pair, const MixedState &p,
                                  const MixedState &q);

enum class Side { Pre, Post };

/// Terms whose sum is a diagonal expectation value.
///   Side::Pre : (A)_{l,k} mu_{l,k} over l, summing to <psi_k|A|psi_k>
///   Side::Post: (A)_{k,j} mu_{k,j} over j, summing to <phi_k|A|phi_k>
std::vector<Complex> fractional_decomposition(const HermitianOperator &a, const BasisPair &pair, std::size_t k,
                                              Side side);

/// Entries with |(A)_{l,j}| strictly above the spectral radius of A.
std::vector<std::pair<std::size_t, std::size_t>> beyond_classical(const WeakValueTable &table);

}  // namespace wvx
