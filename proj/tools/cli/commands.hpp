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

#include <iosfwd>
#include <string>
#include <vector>

namespace wvx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitOverlap = 2;
inline constexpr int kExitSingular = 3;
inline constexpr int kExitInput = 4;

/// Runs the tool on the arguments after the program name and returns the
/// process exit code. Documents go to `out` unless --out names a file;
/// diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace wvx::cli
