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

// Bistochastic matrices, the Birkhoff polytope B_N of their convex hull, and
// the unistochastic / degenerate subsets relevant to measurement reversibility.
//
// For N = 3 the corner order matches the lexicographic order of permutations:
//   P0 = (0 1 2), P1 = (0 2 1), P2 = (1 0 2), P3 = (1 2 0), P4 = (2 0 1), P5 = (2 1 0)
// where entry i of the tuple is the column of the 1 in row i.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wvx/hilbert.hpp"

namespace wvx {

/// Row/column sum slack for bistochastic matrices and polytope points.
inline constexpr double kStochasticTolerance = 1e-12;
/// Slack on the chain-link triangle inequalities when deciding unistochasticity.
inline constexpr double kTriangleTolerance = 1e-12;
/// Equality tolerance for the triangle condition at analytically given points.
inline constexpr double kBoundaryTolerance = 1e-9;
/// Largest N accepted by permutation_corners.
inline constexpr std::size_t kMaxCornerDim = 8;

class BistochasticMatrix {
  public:
    explicit BistochasticMatrix(RealMatrix entries);

    static BistochasticMatrix identity(std::size_t n);
    /// The center of B_N, all entries 1/n.
    static BistochasticMatrix uniform(std::size_t n);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
    const RealMatrix &values() const noexcept { return entries_; }
    double operator()(std::size_t i, std::size_t j) const {
        return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

  private:
    RealMatrix entries_;
};

/// Largest deviation of a row or column sum of m from 1.
double stochastic_error(const RealMatrix &m);

class PermutationMatrix {
  public:
    /// perm[i] is the column holding the 1 in row i.
    explicit PermutationMatrix(std::vector<std::size_t> perm);

    std::size_t dim() const noexcept { return perm_.size(); }
    const std::vector<std::size_t> &perm() const noexcept { return perm_; }
    RealMatrix matrix() const;
    BistochasticMatrix as_bistochastic() const { return BistochasticMatrix(matrix()); }

  private:
    std::vector<std::size_t> perm_;
};

/// Convex weights over an ordered list of corners. Several points may map to
/// the same matrix; compare matrices, not coefficients.
class PolytopePoint {
  public:
    explicit PolytopePoint(std::vector<double> coefficients);

    static PolytopePoint vertex(std::size_t size, std::size_t i);
    static PolytopePoint uniform(std::size_t size);

    std::size_t size() const noexcept { return coefficients_.size(); }
    const std::vector<double> &coefficients() const noexcept { return coefficients_; }
    double operator[](std::size_t i) const { return coefficients_.at(i); }

  private:
    std::vector<double> coefficients_;
};

/// All N! permutation matrices in lexicographic order (identity first).
std::vector<PermutationMatrix> permutation_corners(std::size_t n);

/// sum_i p_i P_i.
BistochasticMatrix combine(const PolytopePoint &point, std::span<const PermutationMatrix> corners);

/// Minimum-norm least-squares weights w with sum_i w_i P_i = m and sum_i w_i = 1.
/// The weights are not clipped, so they may be negative.
RealVector canonicalize(const BistochasticMatrix &m, std::span<const PermutationMatrix> corners);

/// sqrt(Tr (A - B)(A - B)^dagger).
double distance(const RealMatrix &a, const RealMatrix &b);
double distance(const BistochasticMatrix &a, const BistochasticMatrix &b);

/// Dimension of the affine hull of a point set, from the numerical rank of the
/// centered samples.
std::size_t affine_dimension(std::span<const BistochasticMatrix> samples, double tolerance = 1e-9);

using ChainLinks = std::array<double, 3>;

/// L_i = sqrt(mu_{i,a} mu_{i,b}) for a 3x3 matrix; columns 0 and 1 by default.
ChainLinks chain_links(const BistochasticMatrix &mu, std::size_t col_a = 0, std::size_t col_b = 1);

/// min(L1 - |L2 - L3|, L2 + L3 - L1): positive when the links form a proper
/// triangle, zero on a degenerate one, negative when no triangle exists.
double triangle_margin(const ChainLinks &links);

enum class Verdict { Yes, No, Unknown };

const char *to_string(Verdict v);

struct UnistochasticCertificate {
    Verdict verdict = Verdict::Unknown;
    std::optional<ChainLinks> chain_links;
    std::optional<ComplexMatrix> realizing_unitary;
};

/// Decisive for N <= 3; for larger N a numerical search may answer Yes,
/// otherwise the verdict is Unknown.
UnistochasticCertificate is_unistochastic(const BistochasticMatrix &mu);

struct SearchOptions {
    int max_iterations = 4000;
    int restarts = 6;
    double tolerance = 1e-10;
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

/// Alternating projections between {|G|^2 = mu} and the unitary group, started
/// from random phases. Returns a unitary G with max |G_ij|^2 - mu_ij| below
/// options.tolerance, or nothing.
std::optional<ComplexMatrix> search_unitary(const BistochasticMatrix &mu, const SearchOptions &options = {});

/// Unitary G with |G_ij|^2 = mu_ij. Closed form for N <= 3 with the first row
/// and column real and nonnegative; numerical search otherwise.
/// Throws NotUnistochastic (N <= 3) or SearchFailed (N >= 4).
ComplexMatrix realize_unitary(const BistochasticMatrix &mu);

/// max |G_ij|^2 - mu_ij| and ||G^dagger G - I||_max for a candidate realization.
struct RealizationResidual {
    double modulus = 0.0;
    double unitarity = 0.0;
};
RealizationResidual realization_residual(const ComplexMatrix &g, const BistochasticMatrix &mu);

/// det mu; |det| <= kDetTolerance marks a degenerate (irreversible) matrix.
double degeneracy(const BistochasticMatrix &mu);

/// A grid point over a subset of the N = 3 corners.
struct SurfaceSample {
    std::vector<double> barycentric;  // weights over the chosen corners
    BistochasticMatrix matrix;
    double det = 0.0;
    Verdict unistochastic = Verdict::Unknown;
    bool near_degenerate = false;  // |det| < 0.5 / resolution
};

/// Uniform simplex grid with `resolution` steps per edge over 1..4 distinct
/// N = 3 corners, in lexicographic order of the integer weights.
std::vector<SurfaceSample> sample_degenerate_surface(std::span<const std::size_t> corner_subset, int resolution);

/// Grid points that are both near-degenerate and unistochastic.
std::vector<SurfaceSample> unistochastic_degenerate_intersection(std::span<const std::size_t> corner_subset,
                                                                 int resolution);

/// Corners spanning the triangle of circulant matrices (identity and the two
/// 3-cycles), on which the unistochastic set is bounded by a 3-hypocycloid.
inline constexpr std::array<std::size_t, 3> kCirculantTriangle{0, 3, 4};

struct BoundaryPoint {
    std::array<double, 3> barycentric;
    BistochasticMatrix matrix;
    double margin = 0.0;
};

/// Grid points of the triangle whose chain links satisfy the triangle
/// condition with equality, |margin| <= 2 / resolution.
std::vector<BoundaryPoint> hypocycloid_boundary(int resolution,
                                                const std::array<std::size_t, 3> &triangle = kCirculantTriangle);

/// True when the chain links of mu form a degenerate triangle within tolerance.
bool on_unistochastic_boundary(const BistochasticMatrix &mu, double tolerance = kBoundaryTolerance);

/// Cusps of a sampled closed boundary curve: the three strongest local maxima
/// of distance from the triangle centroid, as a function of polar angle.
/// Points are barycentric coordinates over the triangle corners.
std::vector<std::array<double, 3>> locate_cusps(std::span<const BoundaryPoint> boundary);

}  // namespace wvx
