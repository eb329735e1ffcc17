// Copyright 2026 The tbounds Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// State files: {"d_local": d, "re": [[...]], "im": [[...]]}, row-major,
// numbers written with 17 significant digits so load(save(rho)) is exact.

#ifndef TBOUNDS_STATE_IO_HPP
#define TBOUNDS_STATE_IO_HPP

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "tbounds/errors.hpp"
#include "tbounds/states.hpp"

namespace tbounds {

/// Locale-independent shortest-safe decimal: 17 significant digits.
inline std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string state_to_text(const DensityMatrix& rho) {
  const auto& m = rho.matrix().data();
  const auto n = m.rows();
  std::string out = "{\n  \"d_local\": " + std::to_string(rho.d_local()) + ",\n";
  auto emit = [&](const char* key, auto part) {
    out += "  \"";
    out += key;
    out += "\": [\n";
    for (Eigen::Index i = 0; i < n; ++i) {
      out += "    [";
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j) out += ", ";
        out += format_double(part(m(i, j)));
      }
      out += i + 1 < n ? "],\n" : "]\n";
    }
    out += "  ]";
  };
  emit("re", [](complex z) { return z.real(); });
  out += ",\n";
  emit("im", [](complex z) { return z.imag(); });
  out += "\n}\n";
  return out;
}

inline nlohmann::ordered_json state_to_json(const DensityMatrix& rho) {
  const auto& m = rho.matrix().data();
  nlohmann::ordered_json j;
  j["d_local"] = rho.d_local();
  auto re = nlohmann::ordered_json::array();
  auto im = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto rr = nlohmann::ordered_json::array();
    auto ri = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

/// Builds a validated DensityMatrix from the state-file object. Structural
/// problems raise ParseError; physical ones raise ValidationError.
template <class Json>
DensityMatrix state_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("state file must hold a JSON object");
  for (const char* key : {"d_local", "re", "im"})
    if (!j.contains(key))
      throw ParseError(std::string("state file is missing key '") + key + "'");
  if (!j["d_local"].is_number_integer() || j["d_local"].template get<long long>() < 1)
    throw ParseError("'d_local' must be a positive integer");
  const auto d = static_cast<std::size_t>(j["d_local"].template get<long long>());
  const auto n = static_cast<Eigen::Index>(d * d);
  Eigen::MatrixXcd m(n, n);
  auto read = [&](const char* key, bool imag) {
    const auto& rows = j[key];
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n)
      throw ValidationError("shape", static_cast<double>(rows.is_array() ? rows.size() : 0));
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
        throw ValidationError("shape", static_cast<double>(row.is_array() ? row.size() : 0));
      for (Eigen::Index c = 0; c < n; ++c) {
        const auto& v = row[static_cast<std::size_t>(c)];
        if (!v.is_number()) throw ParseError(std::string("non-numeric entry in '") + key + "'");
        const double x = v.template get<double>();
        if (!std::isfinite(x)) throw ValidationError("finite", x);
        if (imag)
          m(r, c).imag(x);
        else
          m(r, c).real(x);
      }
    }
  };
  read("re", false);
  read("im", true);
  return DensityMatrix::from_matrix(ComplexMatrix(std::move(m)), d);
}

inline DensityMatrix parse_state(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed state JSON: ") + e.what());
  }
  return state_from_json(j);
}

inline DensityMatrix load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_state(ss.str());
}

inline void save_state(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write state file '" + path + "'");
  out << state_to_text(rho);
  if (!out) throw Error("failed writing state file '" + path + "'");
}

}  // namespace tbounds

#endif  // TBOUNDS_STATE_IO_HPP
