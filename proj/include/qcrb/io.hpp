// Copyright 2026 The qcrb authors
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

#ifndef QCRB_IO_HPP
#define QCRB_IO_HPP

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "qcrb/duallp.hpp"
#include "qcrb/model.hpp"
#include "qcrb/randbound.hpp"
#include "qcrb/randcheck.hpp"

namespace qcrb {

using json = nlohmann::json;

// File formats. Complex entries are [re, im] pairs, matrices row-major.
//   model file:  { "dim": d, "rho": [[[re,im],...],...],
//                  "derivatives": [matrix,...], "names": [...]? }
//   weight file: { "g": [[real,...],...] }
//   covariance:  { "V": [[real,...],...] }

inline json cmat_to_json(const CMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json rmat_to_json(const RMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json rvec_to_json(const RVec& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

inline CMat cmat_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    throw InvalidInputError(what + ": expected a nonempty matrix");
  const int d = static_cast<int>(j.size());
  CMat m(d);
  for (int r = 0; r < d; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != d)
      throw InvalidInputError(what + ": matrix is not square");
    for (int c = 0; c < d; ++c) {
      const json& e = j[r][c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw InvalidInputError(what + ": complex entries must be [re, im]");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

inline RMat rmat_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw InvalidInputError(what + ": expected a matrix of numbers");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  RMat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      throw InvalidInputError(what + ": ragged matrix");
    for (int c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw InvalidInputError(what + ": entries must be numbers");
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

inline QuantumModel model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rho") || !j.contains("derivatives"))
    throw InvalidInputError("model: expected keys \"rho\" and \"derivatives\"");
  CMat rho = cmat_from_json(j["rho"], "model rho");
  if (j.contains("dim") && j["dim"].get<int>() != rho.dim())
    throw InvalidInputError("model: \"dim\" does not match rho");
  std::vector<CMat> derivs;
  for (const json& dj : j["derivatives"])
    derivs.push_back(cmat_from_json(dj, "model derivative"));
  std::vector<std::string> names;
  if (j.contains("names"))
    for (const json& nj : j["names"]) names.push_back(nj.get<std::string>());
  return build_model(std::move(rho), std::move(derivs), std::move(names));
}

inline json model_to_json(const QuantumModel& m) {
  json j;
  j["dim"] = m.dim();
  j["rho"] = cmat_to_json(m.rho);
  j["derivatives"] = json::array();
  for (const CMat& d : m.derivs) j["derivatives"].push_back(cmat_to_json(d));
  if (!m.names.empty()) j["names"] = m.names;
  return j;
}

inline WeightForm weight_from_json(const json& j, int n) {
  if (!j.is_object() || !j.contains("g"))
    throw InvalidInputError("weight: expected key \"g\"");
  RMat g = rmat_from_json(j["g"], "weight g");
  if (g.rows() != n || g.cols() != n)
    throw InvalidInputError("weight: g must be n x n for the model");
  return make_weight(std::move(g));
}

inline RMat cov_from_json(const json& j, int n) {
  if (!j.is_object() || !j.contains("V"))
    throw InvalidInputError("covariance: expected key \"V\"");
  RMat v = rmat_from_json(j["V"], "covariance V");
  if (v.rows() != n || v.cols() != n)
    throw InvalidInputError("covariance: V must be n x n for the model");
  if (sym_defect(v) > 1e-9)
    throw InvalidInputError("covariance: V must be symmetric");
  return symmetrize(v);
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidInputError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

inline json bound_report_to_json(const BoundReport& r) {
  json j;
  j["bound"] = r.bound;
  j["W"] = rmat_to_json(r.W);
  j["V"] = rmat_to_json(r.V);
  j["method"] = r.method;
  return j;
}

inline json certificate_to_json(const DualCertificate& c, int rounds) {
  json j;
  j["a"] = rmat_to_json(c.a);
  j["S"] = cmat_to_json(c.S);
  j["spur"] = c.spur;
  j["margin"] = c.feasibility_margin;
  j["rounds"] = rounds;
  j["valid"] = c.valid;
  return j;
}

inline json randomness_to_json(const RandomnessReport& r) {
  json j;
  j["is_random"] = r.is_random;
  j["borderline"] = r.borderline;
  j["K"] = cmat_to_json(r.K);
  j["max_residual"] = r.max_residual;
  return j;
}

namespace detail {

inline void dump17_impl(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad_in + json(it.key()).dump() + ": ";
        dump17_impl(it.value(), out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalars = true;
      for (const auto& e : j)
        if (e.is_structured()) scalars = false;
      out += scalars ? "[" : "[\n";
      size_t i = 0;
      for (const auto& e : j) {
        if (!scalars) out += pad_in;
        dump17_impl(e, out, indent, depth + 1);
        if (++i < j.size()) out += scalars ? ", " : ",";
        if (!scalars) out += "\n";
      }
      out += scalars ? "]" : pad + "]";
      return;
    }
    case json::value_t::number_float: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      out += buf;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

// JSON text with floating point numbers printed to 17 significant digits,
// which reparses to the exact same doubles.
inline std::string dump17(const json& j, int indent = 2) {
  std::string out;
  detail::dump17_impl(j, out, indent, 0);
  return out;
}

}  // namespace qcrb

#endif  // QCRB_IO_HPP
