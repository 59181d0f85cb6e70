// Copyright 2026 The renyi-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <stdexcept>

#include <json.hpp>

#include "renyi/channels.hpp"
#include "renyi/linalg.hpp"

namespace renyi::io {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hermitian exchange format: {"dim": n, "re": [[...]], "im": [[...]]}.
// General matrices use {"rows": r, "cols": c, "re": ..., "im": ...}; a
// "dim" key is accepted in place of rows/cols for square input.

json to_json(const HermitianMatrix& m);
json matrix_to_json(const Matrix& m);
/// Validates Hermiticity (relative herm_tol).
HermitianMatrix hermitian_from_json(const json& j);
Matrix matrix_from_json(const json& j);

/// {"dims": [dim_in, dim_out], "kraus": [matrix, ...]}.
json to_json(const QuantumChannel& ch);
QuantumChannel channel_from_json(const json& j);

/// {"system_dim", "env_dim", "unitary", "env_state"}.
json to_json(const StinespringDilation& d);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

/// 17 significant digits, '.' decimal separator, locale independent.
std::string format_double(double v);

}  // namespace renyi::io
