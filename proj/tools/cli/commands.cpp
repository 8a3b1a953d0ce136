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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "serialize.hpp"
#include "wvx/birkhoff.hpp"
#include "wvx/errors.hpp"
#include "wvx/hilbert.hpp"
#include "wvx/reconstruct.hpp"
#include "wvx/weakval.hpp"

namespace wvx::cli {

namespace {

// Raised when a computed result fails its own consistency check.
class InvariantViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

constexpr double kExpansionTolerance = 1e-10;
constexpr double kRoundtripTolerance = 1e-8;
constexpr double kUnitaryTolerance = 1e-9;
constexpr std::size_t kMaxCliCornerDim = 5;

struct OutputOptions {
    std::string format = "json";
    std::string path;
};

void add_output_flags(CLI::App *sub, OutputOptions &opts) {
    sub->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", opts.path, "Write the document here instead of stdout");
}

Format format_of(const OutputOptions &opts) { return opts.format == "csv" ? Format::Csv : Format::Json; }

std::string str(double x) { return format_double(x); }
std::string str(std::size_t x) { return std::to_string(x); }
std::string str(bool b) { return b ? "true" : "false"; }

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidInput("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json load_json(const std::string &path) {
    try {
        return Json::parse(read_file(path));
    } catch (const Json::parse_error &e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

bool has_file_prefix(const std::string &name) { return name.rfind("file:", 0) == 0; }

RealMatrix real_part_checked(const ComplexMatrix &m) {
    if (m.imag().cwiseAbs().maxCoeff() != 0.0)
        throw InvalidInput("matrix must be real");
    return m.real();
}

double require_theta(const std::optional<double> &theta, const std::string &what) {
    if (!theta)
        throw InvalidInput(what + " needs --theta");
    if (!std::isfinite(*theta))
        throw InvalidInput("--theta must be finite");
    return *theta;
}

// ---- weak-table ----------------------------------------------------------

BasisPair resolve_basis(const std::string &name, const std::optional<double> &theta) {
    if (name == "exclusive2")
        return exclusive_pair();
    if (name == "rotated2")
        return rotated_pair(2, require_theta(theta, name));
    if (name == "rotated3")
        return rotated_pair(3, require_theta(theta, name));
    if (has_file_prefix(name)) {
        const Json doc = load_json(name.substr(5));
        if (doc.is_object()) {
            if (!doc.contains("pre") || !doc.contains("post"))
                throw InvalidInput("basis file needs \"pre\" and \"post\" matrices");
            return BasisPair(Basis::from_columns(parse_matrix(doc.at("pre"))),
                             Basis::from_columns(parse_matrix(doc.at("post"))));
        }
        const ComplexMatrix post = parse_matrix(doc);
        return BasisPair(Basis::standard(static_cast<std::size_t>(post.rows())), Basis::from_columns(post));
    }
    throw InvalidInput("unknown basis '" + name + "'");
}

HermitianOperator resolve_operator(const std::string &name, std::size_t dim, const std::optional<double> &theta) {
    if (name == "sigma_x")
        return pauli_matrices().x;
    if (name == "sigma_y")
        return pauli_matrices().y;
    if (name == "sigma_z")
        return pauli_matrices().z;
    if (name == "sigma_theta")
        return rotated_operator(2, require_theta(theta, name));
    if (name == "L_x")
        return spin_one_matrices().x;
    if (name == "L_y")
        return spin_one_matrices().y;
    if (name == "L_z")
        return spin_one_matrices().z;
    if (name == "L_theta")
        return rotated_operator(3, require_theta(theta, name));
    if (name == "identity")
        return HermitianOperator::identity(dim);
    if (name.rfind("gellmann_", 0) == 0) {
        const std::string k = name.substr(9);
        if (k.size() == 1 && k[0] >= '1' && k[0] <= '8')
            return gell_mann_matrices()[static_cast<std::size_t>(k[0] - '1')];
        throw InvalidInput("gellmann_k needs k in 1..8");
    }
    if (has_file_prefix(name))
        return HermitianOperator(parse_matrix(load_json(name.substr(5))));
    throw InvalidInput("unknown operator '" + name + "'");
}

void weak_table(const std::string &op_name, const std::string &basis_name, const std::optional<double> &theta,
                Format format, std::ostream &os) {
    const BasisPair pair = resolve_basis(basis_name, theta);
    const std::size_t n = pair.dim();
    const HermitianOperator op = resolve_operator(op_name, n, theta);
    if (op.dim() != n)
        throw DimensionMismatch("operator '" + op_name + "' has dimension " + std::to_string(op.dim()) +
                                " but basis '" + basis_name + "' has dimension " + std::to_string(n));

    const WeakValueTable table = weak_value_table(op, pair);
    const OverlapMatrix mu = overlap_matrix(pair);
    const WOperatorSet wset(pair);

    const double scale = std::max(1.0, table.values().cwiseAbs().maxCoeff());
    const double expansion_residual = (expansion_sum(table) - op.matrix()).cwiseAbs().maxCoeff();
    if (expansion_residual > kExpansionTolerance * scale)
        throw InvariantViolation("expansion identity residual " + str(expansion_residual));
    if (mu.stochastic_error() > kStochasticTolerance)
        throw InvariantViolation("overlap matrix is not bistochastic");

    if (format == Format::Json) {
        Json w = Json::array();
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t j = 0; j < n; ++j)
                w.push_back(Json{{"l", l}, {"j", j}, {"matrix", to_json(wset(l, j))}});
        Json beyond = Json::array();
        for (const auto &[l, j] : beyond_classical(table))
            beyond.push_back(Json::array({l, j}));
        Json doc;
        doc["command"] = "weak-table";
        doc["operator"] = op_name;
        doc["basis"] = basis_name;
        doc["theta"] = theta ? Json(*theta) : Json(nullptr);
        doc["dim"] = n;
        doc["table"] = to_json(table.values());
        doc["mu"] = to_json(mu.values());
        doc["w_operators"] = std::move(w);
        doc["beyond_classical"] = std::move(beyond);
        doc["expansion_residual"] = expansion_residual;
        write_json(os, doc);
        return;
    }

    CsvTable csv;
    csv.header = {"l", "j", "value_re", "value_im", "mu"};
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const std::string base = "w_" + str(r) + "_" + str(c);
            csv.header.push_back(base + "_re");
            csv.header.push_back(base + "_im");
        }
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::string> row = {str(l), str(j), str(table(l, j).real()), str(table(l, j).imag()),
                                            str(mu(l, j))};
            const ComplexMatrix &w = wset(l, j);
            for (Eigen::Index r = 0; r < w.rows(); ++r)
                for (Eigen::Index c = 0; c < w.cols(); ++c) {
                    row.push_back(str(w(r, c).real()));
                    row.push_back(str(w(r, c).imag()));
                }
            csv.rows.push_back(std::move(row));
        }
    csv.write(os);
}

// ---- reconstruct ---------------------------------------------------------

void reconstruct(const std::vector<double> &tau_values, const std::optional<double> &theta, int dim, Format format,
                 std::ostream &os) {
    if (dim != 2 && dim != 3)
        throw InvalidInput("--dim must be 2 or 3");
    if (tau_values.size() != static_cast<std::size_t>(dim))
        throw InvalidInput("--tau needs " + std::to_string(dim) + " values");
    const double angle = require_theta(theta, "reconstruct");
    const BasisPair pair = rotated_pair(dim, angle);
    const RealVector tau = Eigen::Map<const RealVector>(tau_values.data(), dim);
    const ReconstructionProblem problem(pair, tau);

    const Irreversibility irr = is_irreversible(pair);
    const ReconstructionSolution sol = reconstruct_full(problem);
    const double roundtrip = (project(sol.rho_psi, pair) - tau).cwiseAbs().maxCoeff();
    if (roundtrip > kRoundtripTolerance)
        throw InvariantViolation("reconstructed state does not reproduce tau (" + str(roundtrip) + ")");
    const double condition = sol.rcond > 0.0 ? 1.0 / sol.rcond : std::numeric_limits<double>::infinity();

    if (format == Format::Json) {
        Json doc;
        doc["command"] = "reconstruct";
        doc["dim"] = dim;
        doc["theta"] = angle;
        doc["tau"] = to_json(tau);
        doc["rho_psi"] = to_json(sol.rho_psi);
        doc["rho_phi_offdiag"] = to_json(sol.rho_phi_offdiag);
        doc["det_mu"] = sol.det_mu;
        doc["condition_number"] = condition;
        doc["rcond"] = sol.rcond;
        doc["irreversible"] = irr.irreversible;
        doc["physical"] = sol.physical;
        doc["residual"] = sol.residual;
        write_json(os, doc);
        return;
    }

    CsvTable csv;
    std::vector<std::string> row;
    for (int k = 0; k < dim; ++k) {
        csv.header.push_back("rho_psi_" + std::to_string(k));
        row.push_back(str(sol.rho_psi(k)));
    }
    for (int m = 0; m < dim; ++m)
        for (int k = 0; k < dim; ++k) {
            if (m == k)
                continue;
            const std::string base = "rho_phi_" + std::to_string(m) + "_" + std::to_string(k);
            csv.header.push_back(base + "_re");
            csv.header.push_back(base + "_im");
            row.push_back(str(sol.rho_phi_offdiag(m, k).real()));
            row.push_back(str(sol.rho_phi_offdiag(m, k).imag()));
        }
    for (const auto &[name, value] : std::vector<std::pair<std::string, std::string>>{
             {"det_mu", str(sol.det_mu)},
             {"condition_number", str(condition)},
             {"rcond", str(sol.rcond)},
             {"irreversible", str(irr.irreversible)},
             {"physical", str(sol.physical)},
             {"residual", str(sol.residual)}}) {
        csv.header.push_back(name);
        row.push_back(value);
    }
    csv.rows.push_back(std::move(row));
    csv.write(os);
}

// ---- birkhoff ------------------------------------------------------------

std::size_t corner_dim_for(std::size_t count) {
    std::size_t factorial = 1;
    for (std::size_t n = 1; n <= kMaxCliCornerDim; ++n) {
        factorial *= n;
        if (factorial == count)
            return n;
    }
    throw InvalidInput("--coeffs needs N! values for some N in 1.." + std::to_string(kMaxCliCornerDim));
}

void classify(const std::vector<double> &coeffs, const std::string &matrix_path, Format format, std::ostream &os) {
    RealMatrix m;
    if (!coeffs.empty()) {
        const auto corners = permutation_corners(corner_dim_for(coeffs.size()));
        m = combine(PolytopePoint(coeffs), corners).values();
    } else if (!matrix_path.empty()) {
        m = real_part_checked(parse_matrix(load_json(matrix_path)));
        if (m.rows() != m.cols())
            throw InvalidInput("matrix must be square");
        if (!m.allFinite())
            throw InvalidInput("matrix entries must be finite");
    } else {
        throw InvalidInput("classify needs --coeffs or --matrix");
    }

    const std::size_t n = static_cast<std::size_t>(m.rows());
    const double sum_error = stochastic_error(m);
    const bool bistochastic = sum_error <= kStochasticTolerance && m.minCoeff() >= 0.0;

    std::optional<UnistochasticCertificate> cert;
    std::optional<double> det;
    std::optional<double> margin;
    if (bistochastic) {
        const BistochasticMatrix mu(m);
        cert = is_unistochastic(mu);
        det = degeneracy(mu);
        if (cert->chain_links)
            margin = triangle_margin(*cert->chain_links);
        if (cert->realizing_unitary) {
            const RealizationResidual res = realization_residual(*cert->realizing_unitary, mu);
            if (res.modulus > kUnitaryTolerance || res.unitarity > kUnitaryTolerance)
                throw InvariantViolation("realizing unitary does not reproduce the matrix");
        }
    }
    const bool irreversible = det && std::abs(*det) <= kDetTolerance;

    if (format == Format::Json) {
        const auto opt = [](const auto &v) { return v ? Json(*v) : Json(nullptr); };
        Json doc;
        doc["command"] = "birkhoff classify";
        doc["dim"] = n;
        doc["matrix"] = to_json(m);
        doc["bistochastic"] = bistochastic;
        doc["stochastic_error"] = sum_error;
        doc["unistochastic"] = cert ? Json(to_string(cert->verdict)) : Json(nullptr);
        doc["chain_links"] = cert && cert->chain_links ? Json(*cert->chain_links) : Json(nullptr);
        doc["triangle_margin"] = opt(margin);
        doc["det"] = opt(det);
        doc["irreversible"] = det ? Json(irreversible) : Json(nullptr);
        doc["realizing_unitary"] =
            cert && cert->realizing_unitary ? to_json(*cert->realizing_unitary) : Json(nullptr);
        write_json(os, doc);
        return;
    }

    CsvTable csv;
    std::vector<std::string> row;
    const auto put = [&](std::string name, std::string value) {
        csv.header.push_back(std::move(name));
        row.push_back(std::move(value));
    };
    put("dim", str(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            put("m_" + str(i) + "_" + str(j), str(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    put("bistochastic", str(bistochastic));
    put("stochastic_error", str(sum_error));
    put("unistochastic", cert ? to_string(cert->verdict) : "");
    for (std::size_t i = 0; i < 3; ++i)
        put("chain_link_" + str(i), cert && cert->chain_links ? str((*cert->chain_links)[i]) : "");
    put("triangle_margin", margin ? str(*margin) : "");
    put("det", det ? str(*det) : "");
    put("irreversible", det ? str(irreversible) : "");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::string base = "u_" + str(i) + "_" + str(j);
            std::string re, im;
            if (cert && cert->realizing_unitary) {
                const Complex z =
                    (*cert->realizing_unitary)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                re = str(z.real());
                im = str(z.imag());
            }
            put(base + "_re", re);
            put(base + "_im", im);
        }
    csv.rows.push_back(std::move(row));
    csv.write(os);
}

void check_resolution(int resolution, int lowest) {
    if (resolution < lowest || resolution > 512)
        throw InvalidInput("--resolution must be in " + std::to_string(lowest) + "..512");
}

std::vector<std::string> matrix_cells(const RealMatrix &m) {
    std::vector<std::string> cells;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            cells.push_back(str(m(i, j)));
    return cells;
}

std::vector<std::string> matrix_header(const std::string &prefix, Eigen::Index n) {
    std::vector<std::string> names;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            names.push_back(prefix + std::to_string(i) + "_" + std::to_string(j));
    return names;
}

void sample(const std::vector<std::size_t> &corners, int resolution, bool intersection_only, Format format,
            std::ostream &os) {
    check_resolution(resolution, 2);
    const std::vector<SurfaceSample> points = intersection_only
                                                  ? unistochastic_degenerate_intersection(corners, resolution)
                                                  : sample_degenerate_surface(corners, resolution);
    for (const auto &p : points)
        if (stochastic_error(p.matrix.values()) > kStochasticTolerance)
            throw InvariantViolation("sample is not bistochastic");

    if (format == Format::Json) {
        Json list = Json::array();
        for (const auto &p : points)
            list.push_back(Json{{"barycentric", p.barycentric},
                                {"matrix", to_json(p.matrix.values())},
                                {"det", p.det},
                                {"unistochastic", to_string(p.unistochastic)},
                                {"near_degenerate", p.near_degenerate}});
        Json doc;
        doc["command"] = "birkhoff sample";
        doc["corners"] = corners;
        doc["resolution"] = resolution;
        doc["intersection_only"] = intersection_only;
        doc["count"] = points.size();
        doc["points"] = std::move(list);
        write_json(os, doc);
        return;
    }

    CsvTable csv;
    for (std::size_t k = 0; k < corners.size(); ++k)
        csv.header.push_back("w_" + str(k));
    for (auto &name : matrix_header("m_", 3))
        csv.header.push_back(std::move(name));
    csv.header.insert(csv.header.end(), {"det", "unistochastic", "near_degenerate"});
    for (const auto &p : points) {
        std::vector<std::string> row;
        for (double w : p.barycentric)
            row.push_back(str(w));
        for (auto &cell : matrix_cells(p.matrix.values()))
            row.push_back(std::move(cell));
        row.insert(row.end(), {str(p.det), to_string(p.unistochastic), str(p.near_degenerate)});
        csv.rows.push_back(std::move(row));
    }
    csv.write(os);
}

// Polar angle of a barycentric point around the centroid of an equilateral
// embedding of the triangle.
double polar_angle(const std::array<double, 3> &w) {
    const double x = std::sqrt(3.0) / 2.0 * (w[2] - w[1]);
    const double y = w[0] - 0.5 * (w[1] + w[2]);
    return std::atan2(y, x);
}

void hypocycloid(const std::vector<std::size_t> &corners, int resolution, Format format, std::ostream &os) {
    check_resolution(resolution, 3);
    if (corners.size() != 3)
        throw InvalidInput("--corners needs exactly three indices");
    const std::array<std::size_t, 3> triangle{corners[0], corners[1], corners[2]};
    std::vector<BoundaryPoint> boundary = hypocycloid_boundary(resolution, triangle);
    const auto cusps = locate_cusps(boundary);
    std::stable_sort(boundary.begin(), boundary.end(), [](const BoundaryPoint &a, const BoundaryPoint &b) {
        return polar_angle(a.barycentric) < polar_angle(b.barycentric);
    });

    if (format == Format::Json) {
        Json line = Json::array();
        for (const auto &p : boundary)
            line.push_back(Json{{"barycentric", p.barycentric},
                                {"matrix", to_json(p.matrix.values())},
                                {"margin", p.margin}});
        Json doc;
        doc["command"] = "birkhoff hypocycloid";
        doc["corners"] = corners;
        doc["resolution"] = resolution;
        doc["count"] = boundary.size();
        doc["boundary"] = std::move(line);
        doc["cusps"] = cusps;
        write_json(os, doc);
        return;
    }

    CsvTable csv;
    csv.header = {"kind", "w_0", "w_1", "w_2"};
    for (auto &name : matrix_header("m_", 3))
        csv.header.push_back(std::move(name));
    csv.header.push_back("margin");
    for (const auto &p : boundary) {
        std::vector<std::string> row = {"boundary", str(p.barycentric[0]), str(p.barycentric[1]),
                                        str(p.barycentric[2])};
        for (auto &cell : matrix_cells(p.matrix.values()))
            row.push_back(std::move(cell));
        row.push_back(str(p.margin));
        csv.rows.push_back(std::move(row));
    }
    for (const auto &c : cusps) {
        std::vector<std::string> row = {"cusp", str(c[0]), str(c[1]), str(c[2])};
        row.resize(csv.header.size());
        csv.rows.push_back(std::move(row));
    }
    csv.write(os);
}

std::string perm_label(const std::vector<std::size_t> &perm) {
    std::string s;
    for (std::size_t p : perm)
        s += (s.empty() ? "" : " ") + std::to_string(p);
    return s;
}

void corners_cmd(std::size_t n, Format format, std::ostream &os) {
    if (n < 1 || n > kMaxCliCornerDim)
        throw InvalidInput("--n must be in 1.." + std::to_string(kMaxCliCornerDim));
    const auto corners = permutation_corners(n);
    const std::size_t count = corners.size();
    RealMatrix dist(count, count);
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = 0; b < count; ++b)
            dist(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                distance(corners[a].matrix(), corners[b].matrix());

    // Edge census over unordered pairs, grouped by length.
    std::vector<std::pair<double, std::size_t>> census;
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = a + 1; b < count; ++b) {
            const double d = dist(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            auto it = std::find_if(census.begin(), census.end(),
                                   [&](const auto &entry) { return std::abs(entry.first - d) < 1e-9; });
            if (it == census.end())
                census.emplace_back(d, 1);
            else
                ++it->second;
        }
    std::sort(census.begin(), census.end());

    if (format == Format::Json) {
        Json list = Json::array();
        for (std::size_t k = 0; k < count; ++k)
            list.push_back(Json{{"index", k}, {"perm", corners[k].perm()}, {"matrix", to_json(corners[k].matrix())}});
        Json lengths = Json::array();
        for (const auto &[length, c] : census)
            lengths.push_back(Json{{"length", length}, {"count", c}});
        Json doc;
        doc["command"] = "birkhoff corners";
        doc["n"] = n;
        doc["corners"] = std::move(list);
        doc["distances"] = to_json(dist);
        doc["edge_lengths"] = std::move(lengths);
        write_json(os, doc);
        return;
    }

    CsvTable csv;
    csv.header = {"i", "j", "perm_i", "perm_j", "distance"};
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = a + 1; b < count; ++b)
            csv.rows.push_back({str(a), str(b), perm_label(corners[a].perm()), perm_label(corners[b].perm()),
                                str(dist(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)))});
    csv.write(os);
}

void emit(const std::string &document, const OutputOptions &opts, std::ostream &out) {
    if (opts.path.empty()) {
        out << document;
        return;
    }
    std::ofstream file(opts.path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw InvalidInput("cannot write " + opts.path);
    file << document;
    if (!file)
        throw InvalidInput("failed writing " + opts.path);
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Weak-value tables, state reconstruction and Birkhoff polytope geometry", "wvx"};
    app.require_subcommand(1);

    // weak-table
    OutputOptions wt_out;
    std::string op_name, basis_name;
    double wt_theta = 0.0;
    auto *wt = app.add_subcommand("weak-table", "Weak values, overlap matrix and W-operators");
    wt->add_option("operator", op_name,
                   "sigma_x|sigma_y|sigma_z|sigma_theta|L_x|L_y|L_z|L_theta|identity|gellmann_<k>|file:<path>")
        ->required();
    wt->add_option("basis", basis_name, "exclusive2|rotated2|rotated3|file:<path>")->required();
    auto *wt_theta_opt = wt->add_option("--theta", wt_theta, "Rotation angle in radians");
    add_output_flags(wt, wt_out);

    // reconstruct
    OutputOptions rc_out;
    std::vector<double> tau;
    double rc_theta = 0.0;
    int rc_dim = 2;
    auto *rc = app.add_subcommand("reconstruct", "Recover the pre-measurement state from outcome statistics");
    rc->add_option("--tau", tau, "Measured distribution, comma separated")->delimiter(',')->required();
    auto *rc_theta_opt = rc->add_option("--theta", rc_theta, "Rotation angle in radians");
    rc->add_option("--dim", rc_dim, "Hilbert space dimension (2 or 3)");
    add_output_flags(rc, rc_out);

    // birkhoff
    auto *bk = app.add_subcommand("birkhoff", "Bistochastic matrices and the Birkhoff polytope");
    bk->require_subcommand(1);

    OutputOptions cl_out;
    std::vector<double> coeffs;
    std::string matrix_path;
    auto *cl = bk->add_subcommand("classify", "Classify a bistochastic matrix");
    auto *coeffs_opt = cl->add_option("--coeffs", coeffs, "Weights over the N! corners")->delimiter(',');
    auto *matrix_opt = cl->add_option("--matrix", matrix_path, "JSON file holding the matrix");
    coeffs_opt->excludes(matrix_opt);
    add_output_flags(cl, cl_out);

    OutputOptions sm_out;
    std::vector<std::size_t> sm_corners{0, 1, 2, 3};
    int sm_resolution = 64;
    bool intersection_only = false;
    auto *sm = bk->add_subcommand("sample", "Grid over a face of the N = 3 polytope");
    sm->add_option("--corners", sm_corners, "Corner indices 0..5")->delimiter(',');
    sm->add_option("--resolution", sm_resolution, "Grid steps per edge (2..512)");
    sm->add_flag("--intersection", intersection_only, "Keep only degenerate unistochastic points");
    add_output_flags(sm, sm_out);

    OutputOptions hy_out;
    std::vector<std::size_t> hy_corners(kCirculantTriangle.begin(), kCirculantTriangle.end());
    int hy_resolution = 256;
    auto *hy = bk->add_subcommand("hypocycloid", "Boundary of the unistochastic set in a triangle");
    hy->add_option("--corners", hy_corners, "Three corner indices 0..5")->delimiter(',');
    hy->add_option("--resolution", hy_resolution, "Grid steps per edge (3..512)");
    add_output_flags(hy, hy_out);

    OutputOptions co_out;
    std::size_t co_n = 3;
    auto *co = bk->add_subcommand("corners", "Permutation matrices and their pairwise distances");
    co->add_option("--n", co_n, "Matrix size");
    add_output_flags(co, co_out);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        std::ostringstream doc;
        const OutputOptions *opts = nullptr;
        if (wt->parsed()) {
            opts = &wt_out;
            const auto theta = wt_theta_opt->count() ? std::optional<double>(wt_theta) : std::nullopt;
            weak_table(op_name, basis_name, theta, format_of(wt_out), doc);
        } else if (rc->parsed()) {
            opts = &rc_out;
            const auto theta = rc_theta_opt->count() ? std::optional<double>(rc_theta) : std::nullopt;
            reconstruct(tau, theta, rc_dim, format_of(rc_out), doc);
        } else if (cl->parsed()) {
            opts = &cl_out;
            classify(coeffs, matrix_path, format_of(cl_out), doc);
        } else if (sm->parsed()) {
            opts = &sm_out;
            sample(sm_corners, sm_resolution, intersection_only, format_of(sm_out), doc);
        } else if (hy->parsed()) {
            opts = &hy_out;
            hypocycloid(hy_corners, hy_resolution, format_of(hy_out), doc);
        } else if (co->parsed()) {
            opts = &co_out;
            corners_cmd(co_n, format_of(co_out), doc);
        } else {
            err << "error: no command given\n";
            return kExitInput;
        }
        emit(doc.str(), *opts, out);
        return kExitOk;
    } catch (const OverlapTooSmall &e) {
        err << "error: overlap too small at post index " << e.post_index() << ", pre index " << e.pre_index()
            << " (|<phi|psi>| = " << format_double(e.modulus()) << ")\n";
        return kExitOverlap;
    } catch (const SingularMeasurement &e) {
        err << "error: singular measurement, det mu = " << format_double(e.determinant()) << "\n";
        return kExitSingular;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Json::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace wvx::cli
