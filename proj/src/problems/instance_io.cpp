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

#include "bdx/problems/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bdx::problems {

namespace {

using nlohmann::json;

json Vector(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json Triplets(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) out.push_back(json::array({i, j, m(i, j)}));
    }
  }
  return out;
}

const json& Field(const json& j, const char* name) {
  if (!j.contains(name)) {
    throw InstanceShape(std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

Eigen::VectorXd ReadVector(const json& j, const char* name) {
  const json& arr = Field(j, name);
  if (!arr.is_array()) throw InstanceShape(std::string(name) + " is not a list");
  Eigen::VectorXd v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) v[i] = arr[i].get<double>();
  return v;
}

Eigen::MatrixXd ReadTriplets(const json& j, const char* name, int rows,
                             int cols) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  for (const json& t : Field(j, name)) {
    if (!t.is_array() || t.size() != 3) {
      throw InstanceShape(std::string(name) + " entries must be triplets");
    }
    const int r = t[0].get<int>();
    const int c = t[1].get<int>();
    if (r < 0 || r >= rows || c < 0 || c >= cols) {
      throw InstanceShape(std::string(name) + " triplet out of range");
    }
    m(r, c) = t[2].get<double>();
  }
  return m;
}

void Dump(const json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(indent * (depth + 1), ' ') : "";
  const std::string close = indent > 0 ? std::string(indent * depth, ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + json(it.key()).dump() + (indent > 0 ? ": " : ":");
        Dump(it.value(), indent, depth + 1, out);
      }
      out += nl + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const json& e : j) flat = flat && !e.is_structured();
      out += "[";
      bool first = true;
      for (const json& e : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) out += nl + pad;
        first = false;
        Dump(e, indent, depth + 1, out);
      }
      if (!flat) out += nl + close;
      out += "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += v > 0 ? "1e999" : (v < 0 ? "-1e999" : "null");
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

json MilpToJson(const benders::BlockMilp& milp, const json& meta) {
  json j;
  j["n_x"] = milp.n_x();
  j["n_y"] = milp.n_y();
  j["c"] = Vector(milp.c);
  j["d"] = Vector(milp.d);
  j["A"] = Triplets(milp.A);
  j["B"] = Triplets(milp.B);
  j["b"] = Vector(milp.b);
  j["D"] = Triplets(milp.D);
  j["h"] = Vector(milp.h);
  j["l"] = Vector(milp.l);
  j["u"] = Vector(milp.u);
  j["integer_indices"] = milp.integer_indices;
  json scen = json::array();
  for (const benders::Scenario& sc : milp.scenarios) {
    scen.push_back({{"rows", sc.rows}, {"y_cols", sc.y_cols}});
  }
  j["scenarios"] = scen;
  json m = meta.is_object() ? meta : json::object();
  if (!milp.name.empty() && !m.contains("name")) m["name"] = milp.name;
  j["meta"] = m;
  return j;
}

benders::BlockMilp MilpFromJson(const json& j) {
  if (!j.is_object()) throw InstanceShape("instance must be a JSON object");
  benders::BlockMilp milp;
  const int nx = Field(j, "n_x").get<int>();
  const int ny = Field(j, "n_y").get<int>();
  milp.c = ReadVector(j, "c");
  milp.d = ReadVector(j, "d");
  if (milp.c.size() != nx || milp.d.size() != ny) {
    throw InstanceShape("c or d length disagrees with n_x / n_y");
  }
  milp.b = ReadVector(j, "b");
  milp.h = ReadVector(j, "h");
  milp.A = ReadTriplets(j, "A", static_cast<int>(milp.b.size()), nx);
  milp.B = ReadTriplets(j, "B", static_cast<int>(milp.b.size()), ny);
  milp.D = ReadTriplets(j, "D", static_cast<int>(milp.h.size()), nx);
  milp.l = ReadVector(j, "l");
  milp.u = ReadVector(j, "u");
  milp.integer_indices = Field(j, "integer_indices").get<std::vector<int>>();
  if (j.contains("scenarios") && j.at("scenarios").is_array()) {
    for (const json& s : j.at("scenarios")) {
      benders::Scenario sc;
      sc.rows = Field(s, "rows").get<std::vector<int>>();
      sc.y_cols = Field(s, "y_cols").get<std::vector<int>>();
      milp.scenarios.push_back(std::move(sc));
    }
  }
  if (j.contains("meta") && j.at("meta").contains("name")) {
    milp.name = j.at("meta").at("name").get<std::string>();
  }
  milp.Validate();
  return milp;
}

std::string DumpJson(const json& j, int indent) {
  std::string out;
  Dump(j, indent, 0, out);
  return out;
}

void WriteJsonFile(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << DumpJson(j) << "\n";
}

json ReadJsonFile(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InstanceShape("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw InstanceShape(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace bdx::problems
