// Copyright 2026 The benders-dx Authors
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

// Instance JSON:
//
//   {"n_x", "n_y", "c", "d", "A", "B", "b", "D", "h", "l", "u",
//    "integer_indices", "scenarios": [{"rows", "y_cols"}], "meta"}
//
// Matrices are lists of [row, col, value] triplets in row-major order; row
// counts come from the lengths of "b" and "h". Reals are written with 17
// significant digits.

#ifndef BDX_PROBLEMS_INSTANCE_IO_HPP_
#define BDX_PROBLEMS_INSTANCE_IO_HPP_

#include <string>

#include "bdx/benders/block_milp.hpp"
#include "json.hpp"

namespace bdx::problems {

nlohmann::json MilpToJson(const benders::BlockMilp& milp,
                          const nlohmann::json& meta = nlohmann::json::object());
// Throws InstanceShape on missing fields or inconsistent sizes.
benders::BlockMilp MilpFromJson(const nlohmann::json& j);

// Serializes with every floating-point number printed as %.17g.
std::string DumpJson(const nlohmann::json& j, int indent = 2);

void WriteJsonFile(const std::string& path, const nlohmann::json& j);
nlohmann::json ReadJsonFile(const std::string& path);

}  // namespace bdx::problems

#endif  // BDX_PROBLEMS_INSTANCE_IO_HPP_
