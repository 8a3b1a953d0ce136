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

#include "wvx/birkhoff.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "wvx/errors.hpp"

namespace wvx {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

double triangle_margin_of(const BistochasticMatrix &mu) { return triangle_margin(chain_links(mu)); }

Verdict triangle_verdict(const BistochasticMatrix &mu) {
    return triangle_margin_of(mu) >= -kTriangleTolerance ? Verdict::Yes : Verdict::No;
}

// Phases (beta, gamma) with l1 + l2 e^{i beta} + l3 e^{i gamma} = 0, assuming
// the three lengths satisfy the triangle inequalities up to rounding.
std::pair<double, double> closing_phases(double l1, double l2, double l3) {
    constexpr double tiny = 1e-300;
    if (l2 <= tiny && l3 <= tiny)
        return {0.0, 0.0};
    if (l3 <= tiny)
        return {std::numbers::pi, 0.0};
    if (l1 <= tiny || l2 <= tiny)
        return {0.0, std::numbers::pi};
    const double cos_gamma = std::clamp((l2 * l2 - l1 * l1 - l3 * l3) / (2.0 * l1 * l3), -1.0, 1.0);
    const double gamma = std::acos(cos_gamma);
    const Complex rest = -l1 - l3 * std::polar(1.0, gamma);
    const double beta = std::abs(rest) > 0.0 ? std::arg(rest) : 0.0;
    return {beta, gamma};
}

ComplexMatrix realize_two(const BistochasticMatrix &mu) {
    ComplexMatrix g(2, 2);
    g << std::sqrt(mu(0, 0)), std::sqrt(mu(0, 1)), -std::sqrt(mu(1, 0)), std::sqrt(mu(1, 1));
    return g;
}

ComplexMatrix realize_three(const BistochasticMatrix &mu) {
    const RealMatrix a = mu.values().cwiseMax(0.0).cwiseSqrt();
    const auto links = chain_links(mu);
    const auto [beta, gamma] = closing_phases(links[0], links[1], links[2]);

    Eigen::Vector3cd c1(a(0, 0), a(1, 0), a(2, 0));
    Eigen::Vector3cd c2(a(0, 1), a(1, 1) * std::polar(1.0, beta), a(2, 1) * std::polar(1.0, gamma));
    // conj(c1 x c2) is orthogonal to both columns and has unit norm
    Eigen::Vector3cd c3(std::conj(c1(1) * c2(2) - c1(2) * c2(1)), std::conj(c1(2) * c2(0) - c1(0) * c2(2)),
                        std::conj(c1(0) * c2(1) - c1(1) * c2(0)));
    if (std::abs(c3(0)) > 0.0)
        c3 *= std::polar(1.0, -std::arg(c3(0)));

    ComplexMatrix g(3, 3);
    g.col(0) = c1;
    g.col(1) = c2;
    g.col(2) = c3;
    return g;
}

void for_each_composition(std::size_t parts, int total, std::vector<int> &current,
                          const std::function<void(const std::vector<int> &)> &fn) {
    if (current.size() + 1 == parts) {
        current.push_back(total);
        fn(current);
        current.pop_back();
        return;
    }
    for (int k = total; k >= 0; --k) {
        current.push_back(k);
        for_each_composition(parts, total - k, current, fn);
        current.pop_back();
    }
}

std::vector<PermutationMatrix> select_corners(std::span<const std::size_t> subset) {
    if (subset.empty() || subset.size() > 4)
        throw InvalidInput("corner subset must contain 1 to 4 corners");
    const auto all = permutation_corners(3);
    std::vector<PermutationMatrix> out;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (subset[i] >= all.size())
            throw InvalidInput("corner index " + std::to_string(subset[i]) + " out of range 0..5");
        for (std::size_t k = 0; k < i; ++k)
            if (subset[k] == subset[i])
                throw InvalidInput("corner subset contains duplicates");
        out.push_back(all[subset[i]]);
    }
    return out;
}

template <typename Fn>
void for_each_grid_point(std::size_t parts, int resolution, Fn &&fn) {
    std::vector<int> current;
    for_each_composition(parts, parts == 1 ? 0 : resolution, current, [&](const std::vector<int> &c) {
        std::vector<double> w(c.size());
        if (parts == 1)
            w[0] = 1.0;
        else
            for (std::size_t i = 0; i < c.size(); ++i)
                w[i] = static_cast<double>(c[i]) / resolution;
        fn(w);
    });
}

}  // namespace

BistochasticMatrix::BistochasticMatrix(RealMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
        throw InvalidInput("bistochastic matrix must be square and non-empty");
    if (!entries_.allFinite() || entries_.minCoeff() < -kStochasticTolerance)
        throw InvalidInput("bistochastic matrix has negative or non-finite entries");
    const double err = stochastic_error(entries_);
    if (err > kStochasticTolerance)
        throw InvalidInput("row or column sums deviate from 1 by " + std::to_string(err));
}

BistochasticMatrix BistochasticMatrix::identity(std::size_t n) {
    return BistochasticMatrix(RealMatrix::Identity(idx(n), idx(n)));
}

BistochasticMatrix BistochasticMatrix::uniform(std::size_t n) {
    return BistochasticMatrix(RealMatrix::Constant(idx(n), idx(n), 1.0 / static_cast<double>(n)));
}

double stochastic_error(const RealMatrix &m) {
    const double rows = (m.rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double cols = (m.colwise().sum().array() - 1.0).abs().maxCoeff();
    return std::max(rows, cols);
}

PermutationMatrix::PermutationMatrix(std::vector<std::size_t> perm) : perm_(std::move(perm)) {
    std::vector<bool> seen(perm_.size(), false);
    for (auto p : perm_) {
        if (p >= perm_.size() || seen[p])
            throw InvalidInput("not a permutation");
        seen[p] = true;
    }
}

RealMatrix PermutationMatrix::matrix() const {
    RealMatrix m = RealMatrix::Zero(idx(dim()), idx(dim()));
    for (std::size_t i = 0; i < dim(); ++i)
        m(idx(i), idx(perm_[i])) = 1.0;
    return m;
}

PolytopePoint::PolytopePoint(std::vector<double> coefficients) : coefficients_(std::move(coefficients)) {
    if (coefficients_.empty())
        throw InvalidInput("polytope point needs at least one coefficient");
    double sum = 0.0;
    for (double p : coefficients_) {
        if (!(p >= -kStochasticTolerance && p <= 1.0 + kStochasticTolerance))
            throw InvalidInput("polytope coefficient outside [0, 1]: " + std::to_string(p));
        sum += p;
    }
    if (std::abs(sum - 1.0) > kStochasticTolerance)
        throw InvalidInput("polytope coefficients must sum to 1");
}

PolytopePoint PolytopePoint::vertex(std::size_t size, std::size_t i) {
    std::vector<double> c(size, 0.0);
    c.at(i) = 1.0;
    return PolytopePoint(std::move(c));
}

PolytopePoint PolytopePoint::uniform(std::size_t size) {
    return PolytopePoint(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

std::vector<PermutationMatrix> permutation_corners(std::size_t n) {
    if (n < 1 || n > kMaxCornerDim)
        throw InvalidInput("permutation corners are enumerated for 1 <= N <= " + std::to_string(kMaxCornerDim));
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i)
        perm[i] = i;
    std::vector<PermutationMatrix> out;
    do {
        out.emplace_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

BistochasticMatrix combine(const PolytopePoint &point, std::span<const PermutationMatrix> corners) {
    if (point.size() != corners.size())
        throw DimensionMismatch("point has " + std::to_string(point.size()) + " coefficients for " +
                                std::to_string(corners.size()) + " corners");
    const auto n = corners.front().dim();
    RealMatrix m = RealMatrix::Zero(idx(n), idx(n));
    for (std::size_t i = 0; i < corners.size(); ++i) {
        if (corners[i].dim() != n)
            throw DimensionMismatch("corners differ in dimension");
        for (std::size_t r = 0; r < n; ++r)
            m(idx(r), idx(corners[i].perm()[r])) += point[i];
    }
    return BistochasticMatrix(std::move(m));
}

RealVector canonicalize(const BistochasticMatrix &m, std::span<const PermutationMatrix> corners) {
    const auto n = m.dim();
    const Index rows = idx(n * n + 1);
    RealMatrix system = RealMatrix::Zero(rows, idx(corners.size()));
    RealVector rhs(rows);
    for (std::size_t i = 0; i < corners.size(); ++i) {
        if (corners[i].dim() != n)
            throw DimensionMismatch("corner dimension does not match matrix");
        const RealMatrix p = corners[i].matrix();
        system.col(idx(i)).head(idx(n * n)) = p.reshaped();
        system(rows - 1, idx(i)) = 1.0;
    }
    rhs.head(idx(n * n)) = m.values().reshaped();
    rhs(rows - 1) = 1.0;
    return system.completeOrthogonalDecomposition().solve(rhs);
}

double distance(const RealMatrix &a, const RealMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("distance between matrices of different shape");
    const RealMatrix d = a - b;
    return std::sqrt((d * d.transpose()).trace());
}

double distance(const BistochasticMatrix &a, const BistochasticMatrix &b) { return distance(a.values(), b.values()); }

std::size_t affine_dimension(std::span<const BistochasticMatrix> samples, double tolerance) {
    if (samples.empty())
        return 0;
    const auto n = samples.front().dim();
    RealMatrix data(idx(samples.size()), idx(n * n));
    for (std::size_t s = 0; s < samples.size(); ++s)
        data.row(idx(s)) = samples[s].values().reshaped().transpose();
    const RealMatrix centered = data.rowwise() - data.colwise().mean();
    const RealVector sv = Eigen::JacobiSVD<RealMatrix>(centered).singularValues();
    const double scale = std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    return static_cast<std::size_t>((sv.array() > tolerance * scale).count());
}

ChainLinks chain_links(const BistochasticMatrix &mu, std::size_t col_a, std::size_t col_b) {
    if (mu.dim() != 3)
        throw DimensionMismatch("chain links are defined for 3x3 matrices");
    if (col_a >= 3 || col_b >= 3 || col_a == col_b)
        throw InvalidInput("chain links need two distinct columns");
    ChainLinks links{};
    for (std::size_t i = 0; i < 3; ++i)
        links[i] = std::sqrt(std::max(0.0, mu(i, col_a) * mu(i, col_b)));
    return links;
}

double triangle_margin(const ChainLinks &links) {
    const auto [l1, l2, l3] = links;
    return std::min(l1 - std::abs(l2 - l3), l2 + l3 - l1);
}

const char *to_string(Verdict v) {
    switch (v) {
    case Verdict::Yes:
        return "yes";
    case Verdict::No:
        return "no";
    case Verdict::Unknown:
        break;
    }
    return "unknown";
}

UnistochasticCertificate is_unistochastic(const BistochasticMatrix &mu) {
    UnistochasticCertificate cert;
    switch (mu.dim()) {
    case 1:
    case 2:
        cert.verdict = Verdict::Yes;
        cert.realizing_unitary = realize_unitary(mu);
        return cert;
    case 3:
        cert.chain_links = chain_links(mu);
        cert.verdict = triangle_verdict(mu);
        if (cert.verdict == Verdict::Yes)
            cert.realizing_unitary = realize_three(mu);
        return cert;
    default:
        cert.realizing_unitary = search_unitary(mu);
        cert.verdict = cert.realizing_unitary ? Verdict::Yes : Verdict::Unknown;
        return cert;
    }
}

std::optional<ComplexMatrix> search_unitary(const BistochasticMatrix &mu, const SearchOptions &options) {
    const Index n = idx(mu.dim());
    const RealMatrix moduli = mu.values().cwiseMax(0.0).cwiseSqrt();
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);

    ComplexMatrix g(n, n);
    for (int restart = 0; restart < options.restarts; ++restart) {
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                g(i, j) = std::polar(moduli(i, j), angle(rng));

        double checkpoint = std::numeric_limits<double>::infinity();
        for (int it = 0; it < options.max_iterations; ++it) {
            Eigen::JacobiSVD<ComplexMatrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
            const ComplexMatrix u = svd.matrixU() * svd.matrixV().adjoint();
            const double err = (u.cwiseAbs2() - mu.values()).cwiseAbs().maxCoeff();
            if (err < options.tolerance)
                return u;
            // Stalled on a fixed point that is not a realization.
            if (it % 100 == 0) {
                if (err > 0.999 * checkpoint)
                    break;
                checkpoint = err;
            }
            for (Index i = 0; i < n; ++i)
                for (Index j = 0; j < n; ++j) {
                    const Complex z = u(i, j);
                    g(i, j) = std::abs(z) > 0.0 ? moduli(i, j) * (z / std::abs(z)) : Complex(moduli(i, j));
                }
        }
    }
    return std::nullopt;
}

ComplexMatrix realize_unitary(const BistochasticMatrix &mu) {
    switch (mu.dim()) {
    case 1:
        return ComplexMatrix::Identity(1, 1);
    case 2:
        return realize_two(mu);
    case 3:
        if (triangle_verdict(mu) == Verdict::No)
            throw NotUnistochastic("chain links do not form a triangle");
        return realize_three(mu);
    default:
        if (auto g = search_unitary(mu))
            return *g;
        throw SearchFailed("no unitary realization found for N = " + std::to_string(mu.dim()));
    }
}

RealizationResidual realization_residual(const ComplexMatrix &g, const BistochasticMatrix &mu) {
    const Index n = idx(mu.dim());
    if (g.rows() != n || g.cols() != n)
        throw DimensionMismatch("unitary and bistochastic matrix differ in dimension");
    return {(g.cwiseAbs2() - mu.values()).cwiseAbs().maxCoeff(),
            (g.adjoint() * g - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff()};
}

double degeneracy(const BistochasticMatrix &mu) { return mu.values().determinant(); }

std::vector<SurfaceSample> sample_degenerate_surface(std::span<const std::size_t> corner_subset, int resolution) {
    const auto corners = select_corners(corner_subset);
    if (resolution < 2)
        throw InvalidInput("resolution must be at least 2");
    const double band = 0.5 / resolution;
    std::vector<SurfaceSample> out;
    for_each_grid_point(corners.size(), resolution, [&](const std::vector<double> &w) {
        auto m = combine(PolytopePoint(w), corners);
        const double det = degeneracy(m);
        const Verdict v = triangle_verdict(m);
        out.push_back(SurfaceSample{w, std::move(m), det, v, std::abs(det) < band});
    });
    return out;
}

std::vector<SurfaceSample> unistochastic_degenerate_intersection(std::span<const std::size_t> corner_subset,
                                                                 int resolution) {
    auto samples = sample_degenerate_surface(corner_subset, resolution);
    std::erase_if(samples, [](const SurfaceSample &s) {
        return !(s.near_degenerate && s.unistochastic == Verdict::Yes);
    });
    return samples;
}

std::vector<BoundaryPoint> hypocycloid_boundary(int resolution, const std::array<std::size_t, 3> &triangle) {
    if (resolution < 3)
        throw InvalidInput("resolution must be at least 3");
    const auto corners = select_corners(triangle);
    const double band = 2.0 / resolution;
    std::vector<BoundaryPoint> out;
    for_each_grid_point(3, resolution, [&](const std::vector<double> &w) {
        auto m = combine(PolytopePoint(w), corners);
        const double margin = triangle_margin_of(m);
        if (std::abs(margin) <= band)
            out.push_back(BoundaryPoint{{w[0], w[1], w[2]}, std::move(m), margin});
    });
    return out;
}

bool on_unistochastic_boundary(const BistochasticMatrix &mu, double tolerance) {
    return std::abs(triangle_margin_of(mu)) <= tolerance;
}

std::vector<std::array<double, 3>> locate_cusps(std::span<const BoundaryPoint> boundary) {
    // Equilateral embedding of barycentric coordinates, centroid at the origin.
    const auto embed = [](const std::array<double, 3> &b) {
        const double x = b[1] + 0.5 * b[2] - 0.5;
        const double y = std::sqrt(3.0) / 2.0 * b[2] - std::sqrt(3.0) / 6.0;
        return std::pair{x, y};
    };
    constexpr int bins = 72;
    constexpr int window = 6;
    std::vector<int> best(bins, -1);
    std::vector<double> radius(bins, -1.0);
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        const auto [x, y] = embed(boundary[i].barycentric);
        const double r = std::hypot(x, y);
        const double t = std::atan2(y, x) + std::numbers::pi;
        const int bin = std::min(bins - 1, static_cast<int>(t / (2 * std::numbers::pi) * bins));
        if (r > radius[bin]) {
            radius[bin] = r;
            best[bin] = static_cast<int>(i);
        }
    }
    std::vector<int> peaks;
    for (int b = 0; b < bins; ++b) {
        if (best[b] < 0)
            continue;
        bool peak = true;
        for (int d = 1; d <= window && peak; ++d) {
            const int left = (b - d + bins) % bins;
            const int right = (b + d) % bins;
            if (radius[left] >= radius[b] || radius[right] > radius[b])
                peak = false;
        }
        if (peak)
            peaks.push_back(b);
    }
    std::sort(peaks.begin(), peaks.end(), [&](int a, int b) { return radius[a] > radius[b]; });
    if (peaks.size() > 3)
        peaks.resize(3);
    std::sort(peaks.begin(), peaks.end());
    std::vector<std::array<double, 3>> cusps;
    for (int b : peaks)
        cusps.push_back(boundary[static_cast<std::size_t>(best[b])].barycentric);
    return cusps;
}

}  // namespace wvx
