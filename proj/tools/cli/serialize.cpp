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

#include "serialize.hpp"

#include <cstdio>
#include <ostream>

#include "wvx/errors.hpp"

namespace wvx::cli {

namespace {

void dump(std::ostream &os, const Json &j) {
    switch (j.type()) {
    case Json::value_t::object: {
        os << '{';
        bool first = true;
        for (const auto &[key, value] : j.items()) {
            if (!first)
                os << ',';
            first = false;
            os << Json(key).dump() << ':';
            dump(os, value);
        }
        os << '}';
        break;
    }
    case Json::value_t::array: {
        os << '[';
        bool first = true;
        for (const auto &value : j) {
            if (!first)
                os << ',';
            first = false;
            dump(os, value);
        }
        os << ']';
        break;
    }
    case Json::value_t::number_float:
        os << format_double(j.get<double>());
        break;
    default:
        os << j.dump();
    }
}

std::string csv_escape(const std::string &cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos)
        return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

Complex parse_scalar(const Json &cell) {
    if (cell.is_number())
        return {cell.get<double>(), 0.0};
    if (cell.is_object() && cell.contains("re") && cell.contains("im") && cell.at("re").is_number() &&
        cell.at("im").is_number())
        return {cell.at("re").get<double>(), cell.at("im").get<double>()};
    throw InvalidInput("matrix entries must be numbers or {\"re\", \"im\"} objects");
}

}  // namespace

std::string format_double(double x) {
    if (x == 0.0)
        x = 0.0;  // drop the sign of negative zero
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const RealMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const RealVector &v) {
    Json out = Json::array();
    for (double x : v)
        out.push_back(x);
    return out;
}

void write_json(std::ostream &os, const Json &doc) {
    dump(os, doc);
    os << '\n';
}

void CsvTable::write(std::ostream &os) const {
    const auto line = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            os << (i ? "," : "") << csv_escape(cells[i]);
        os << '\n';
    };
    line(header);
    for (const auto &row : rows)
        line(row);
}

ComplexMatrix parse_matrix(const Json &doc) {
    if (!doc.is_array() || doc.empty())
        throw InvalidInput("matrix must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(doc.size());
    Eigen::Index cols = -1;
    ComplexMatrix m;
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto &row = doc[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.empty())
            throw InvalidInput("matrix rows must be non-empty arrays");
        if (cols < 0) {
            cols = static_cast<Eigen::Index>(row.size());
            m.resize(rows, cols);
        } else if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw InvalidInput("matrix rows differ in length");
        }
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = parse_scalar(row[static_cast<std::size_t>(j)]);
    }
    return m;
}

}  // namespace wvx::cli
