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

// Output documents for the command-line tool. Floats are always written with
// 17 significant digits so every double round-trips exactly.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "wvx/hilbert.hpp"

namespace wvx::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv };

/// "%.17g"
std::string format_double(double x);

Json to_json(Complex z);
Json to_json(const ComplexMatrix &m);
Json to_json(const RealMatrix &m);
Json to_json(const RealVector &v);

/// Compact JSON with fixed float formatting, followed by a newline.
void write_json(std::ostream &os, const Json &doc);

/// A table whose cells are already formatted strings.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(std::ostream &os) const;
};

/// Parses a JSON matrix: rows of numbers or of {"re": x, "im": y} objects.
ComplexMatrix parse_matrix(const Json &doc);

}  // namespace wvx::cli
