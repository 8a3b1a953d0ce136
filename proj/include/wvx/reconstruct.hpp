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

// Recovering a state that was diagonal in the pre-selection basis {psi_j} from
// the diagonal statistics tau_l it leaves after a projective measurement in the
// post-selection basis {phi_l}.
//
// With G_{lj} = <phi_l|psi_j> and mu_{lj} = |G_{lj}|^2 the unknowns satisfy
//
//   sum_j mu_{mj} rho_j               = tau_m
//   sum_j G_{mj} conj(G_{kj}) rho_j   = rho^(phi)_{mk}     (m != k)
//
// or, equivalently, the n^2 equations indexed by (m, j)
//
//   G_{mj} rho_j - sum_{l != m} G_{lj} rho^(phi)_{ml} = G_{mj} tau_m.

#include <cstddef>
#include <vector>

#include "wvx/hilbert.hpp"

namespace wvx {

/// |det mu| at or below this makes the measurement irreversible.
inline constexpr double kDetTolerance = 1e-10;
/// Slack allowed on [0, 1] when flagging a solution as physical.
inline constexpr double kPhysicalSlack = 1e-9;

class ReconstructionProblem {
  public:
    /// pair.pre() is the basis the state was prepared in, pair.post() the measured one.
    ReconstructionProblem(BasisPair pair, RealVector tau);

    const BasisPair &basis_pair() const noexcept { return pair_; }
    const RealVector &tau() const noexcept { return tau_; }
    std::size_t dim() const noexcept { return pair_.dim(); }

  private:
    BasisPair pair_;
    RealVector tau_;
};

struct ReconstructionSolution {
    RealVector rho_psi;
    /// rho^(phi)_{mk} for m != k; the diagonal is left at zero.
    ComplexMatrix rho_phi_offdiag;
    /// Reciprocal 2-norm condition number of mu (sigma_min / sigma_max).
    double rcond = 0.0;
    double det_mu = 0.0;
    /// Residual of the linear system that produced the solution.
    double residual = 0.0;
    /// Every rho_psi component lies in [-kPhysicalSlack, 1 + kPhysicalSlack].
    bool physical = false;
};

/// The n^2 x n^2 system A X = B. Unknown order: rho_1..rho_n, then
/// rho^(phi)_{kl} for k != l in row-major order. Row order: (m, j) row-major.
struct ReconstructionSystem {
    ComplexMatrix matrix;
    ComplexVector rhs;
};

ReconstructionSystem reconstruction_system(const ReconstructionProblem &problem);

/// tau_m = sum_j mu_{mj} rho_j.
RealVector project(const RealVector &rho_psi, const BasisPair &pair);

/// Solves the n^2 system. Throws SingularMeasurement when |det mu| <= kDetTolerance.
ReconstructionSolution reconstruct_full(const ReconstructionProblem &problem);

/// Solves the two split equations: mu^-1 tau, then the off-diagonal sums.
ReconstructionSolution reconstruct_split(const ReconstructionProblem &problem);

/// mu^-1 tau. Throws SingularMeasurement when |det mu| <= kDetTolerance.
RealVector reconstruct_diagonal(const ReconstructionProblem &problem);

struct Irreversibility {
    bool irreversible = false;
    double abs_det = 0.0;
};

Irreversibility is_irreversible(const BasisPair &pair);

}  // namespace wvx
