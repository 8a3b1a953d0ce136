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

#include "wvx/reconstruct.hpp"

#include <cmath>
#include <string>

#include "wvx/errors.hpp"

namespace wvx {

namespace {

using Index = Eigen::Index;

struct MuFactorization {
    RealMatrix mu;
    double det = 0.0;
    double rcond = 0.0;
};

MuFactorization factorize(const BasisPair &pair) {
    MuFactorization f;
    f.mu = pair.overlaps().cwiseAbs2();
    f.det = f.mu.determinant();
    const RealVector sv = Eigen::JacobiSVD<RealMatrix>(f.mu).singularValues();
    f.rcond = sv(0) > 0.0 ? sv(sv.size() - 1) / sv(0) : 0.0;
    return f;
}

Index offdiag_column(Index n, Index k, Index l) { return n + k * (n - 1) + (l < k ? l : l - 1); }

bool is_physical(const RealVector &rho) {
    for (double r : rho)
        if (r < -kPhysicalSlack || r > 1.0 + kPhysicalSlack)
            return false;
    return true;
}

ComplexMatrix offdiag_from_diagonal(const BasisPair &pair, const RealVector &rho_psi) {
    const ComplexMatrix &g = pair.overlaps();
    ComplexMatrix rho = g * rho_psi.cast<Complex>().asDiagonal() * g.adjoint();
    rho.diagonal().setZero();
    return rho;
}

}  // namespace

ReconstructionProblem::ReconstructionProblem(BasisPair pair, RealVector tau)
    : pair_(std::move(pair)), tau_(std::move(tau)) {
    if (static_cast<std::size_t>(tau_.size()) != pair_.dim())
        throw DimensionMismatch("tau has " + std::to_string(tau_.size()) + " entries, basis dimension is " +
                                std::to_string(pair_.dim()));
    for (double t : tau_)
        if (!(t >= 0.0))
            throw InvalidInput("tau entries must be nonnegative");
    if (std::abs(tau_.sum() - 1.0) > 1e-12)
        throw InvalidInput("tau must sum to 1");
}

ReconstructionSystem reconstruction_system(const ReconstructionProblem &problem) {
    const auto &g = problem.basis_pair().overlaps();
    const auto &tau = problem.tau();
    const Index n = g.rows();
    ReconstructionSystem sys{ComplexMatrix::Zero(n * n, n * n), ComplexVector::Zero(n * n)};
    for (Index m = 0; m < n; ++m) {
        for (Index j = 0; j < n; ++j) {
            const Index row = m * n + j;
            sys.matrix(row, j) = g(m, j);
            for (Index l = 0; l < n; ++l)
                if (l != m)
                    sys.matrix(row, offdiag_column(n, m, l)) = -g(l, j);
            sys.rhs(row) = g(m, j) * tau(m);
        }
    }
    return sys;
}

RealVector project(const RealVector &rho_psi, const BasisPair &pair) {
    if (static_cast<std::size_t>(rho_psi.size()) != pair.dim())
        throw DimensionMismatch("state size does not match basis dimension");
    return pair.overlaps().cwiseAbs2() * rho_psi;
}

ReconstructionSolution reconstruct_full(const ReconstructionProblem &problem) {
    const auto f = factorize(problem.basis_pair());
    if (std::abs(f.det) <= kDetTolerance)
        throw SingularMeasurement(f.det);

    const auto sys = reconstruction_system(problem);
    const ComplexVector x = sys.matrix.completeOrthogonalDecomposition().solve(sys.rhs);

    const Index n = static_cast<Index>(problem.dim());
    ReconstructionSolution sol;
    sol.rho_psi = x.head(n).real();
    sol.rho_phi_offdiag = ComplexMatrix::Zero(n, n);
    for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l)
            if (k != l)
                sol.rho_phi_offdiag(k, l) = x(offdiag_column(n, k, l));
    sol.rcond = f.rcond;
    sol.det_mu = f.det;
    sol.residual = (sys.matrix * x - sys.rhs).norm();
    sol.physical = is_physical(sol.rho_psi);
    return sol;
}

RealVector reconstruct_diagonal(const ReconstructionProblem &problem) {
    const auto f = factorize(problem.basis_pair());
    if (std::abs(f.det) <= kDetTolerance)
        throw SingularMeasurement(f.det);
    return f.mu.partialPivLu().solve(problem.tau());
}

ReconstructionSolution reconstruct_split(const ReconstructionProblem &problem) {
    const auto f = factorize(problem.basis_pair());
    if (std::abs(f.det) <= kDetTolerance)
        throw SingularMeasurement(f.det);
    ReconstructionSolution sol;
    sol.rho_psi = f.mu.partialPivLu().solve(problem.tau());
    sol.rho_phi_offdiag = offdiag_from_diagonal(problem.basis_pair(), sol.rho_psi);
    sol.rcond = f.rcond;
    sol.det_mu = f.det;
    sol.residual = (f.mu * sol.rho_psi - problem.tau()).norm();
    sol.physical = is_physical(sol.rho_psi);
    return sol;
}

Irreversibility is_irreversible(const BasisPair &pair) {
    const double det = std::abs(pair.overlaps().cwiseAbs2().determinant());
    return {det <= kDetTolerance, det};
}

}  // namespace wvx
