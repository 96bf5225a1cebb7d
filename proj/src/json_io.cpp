// Copyright 2026 The qwalk authors
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

#include "qwalk/json_io.hpp"

namespace qwalk {

json to_json(const cx& z) { return json::array({z.real(), z.imag()}); }

cx cx_from_json(const json& j) {
  if (j.is_number()) return cx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return cx(j[0].get<double>(), j[1].get<double>());
  throw dimension_error("json: expected a number or [re, im] pair");
}

json to_json(const Operator& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(to_json(a.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Operator matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw dimension_error("json: expected a nested array matrix");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  std::vector<cx> entries;
  entries.reserve(rows * cols);
  for (const auto& row : j) {
    if (row.size() != cols)
      throw dimension_error("json: ragged matrix rows");
    for (const auto& e : row) entries.push_back(cx_from_json(e));
  }
  return Operator::matrix(rows, cols, std::move(entries));
}

std::vector<cx> vector_from_json(const json& j) {
  if (!j.is_array()) throw dimension_error("json: expected an array vector");
  std::vector<cx> v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(cx_from_json(e));
  return v;
}

json to_json(const StepFunction& f) {
  json vals = json::array();
  for (const auto& v : f.values()) {
    json vec = json::array();
    for (const auto& e : v) vec.push_back(to_json(e));
    vals.push_back(vec);
  }
  return json{{"breakpoints", f.breakpoints()},
              {"values", vals},
              {"support_end", f.support_end()}};
}

StepFunction step_function_from_json(const json& j) {
  if (!j.contains("breakpoints") || !j.contains("values"))
    throw dimension_error("json: step function needs breakpoints and values");
  std::vector<double> bp = j.at("breakpoints").get<std::vector<double>>();
  std::vector<std::vector<cx>> vals;
  for (const auto& v : j.at("values")) {
    if (v.is_number())  // scalar shorthand for d_k = 1
      vals.push_back({cx(v.get<double>(), 0.0)});
    else
      vals.push_back(vector_from_json(v));
  }
  double send;
  if (j.contains("support_end"))
    send = j.at("support_end").get<double>();
  else
    send = bp.empty() ? 1.0 : bp.back() + 1.0;
  return StepFunction(std::move(bp), std::move(vals), send);
}

json to_json(const ExpVectorLabel& l) {
  json u = json::array();
  for (const auto& e : l.u) u.push_back(to_json(e));
  return json{{"u", u}, {"f", to_json(l.f)}};
}

ExpVectorLabel label_from_json(const json& j) {
  return ExpVectorLabel{vector_from_json(j.at("u")),
                        step_function_from_json(j.at("f"))};
}

GKSLData gksl_from_json(const json& j) {
  const std::size_t d_h = j.at("d_h").get<std::size_t>();
  const std::size_t d_k = j.at("d_k").get<std::size_t>();
  const std::size_t hk = d_h * d_k;
  const Operator g = matrix_from_json(j.at("g"));
  const Operator r = matrix_from_json(j.at("r"))
                         .with_factors({d_h}, {d_h, d_k});
  const Operator w = matrix_from_json(j.at("w"))
                         .with_factors({d_h, d_k}, {d_h, d_k});
  const json& pij = j.at("pi");
  if (pij.is_object() && pij.contains("q")) {
    // unitary-conjugation shorthand pi(a) = q* (a (x) I_k) q
    const Operator q = matrix_from_json(pij.at("q"))
                           .with_factors({d_h, d_k}, {d_h, d_k});
    return GKSLData::conjugation(d_h, d_k, g, q, r, w);
  }
  const Operator pi = matrix_from_json(pij.is_object() ? pij.at("action")
                                                       : pij);
  if (pi.rows() != hk * hk || pi.cols() != d_h * d_h)
    throw dimension_error("json: pi action matrix has the wrong shape");
  return GKSLData{d_h, d_k, g, pi, r, w};
}

Generator generator_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "explicit") {
    const std::size_t d_h = j.at("d_h").get<std::size_t>();
    const std::size_t d_k = j.at("d_k").get<std::size_t>();
    return Generator(d_h, d_k, matrix_from_json(j.at("action")));
  }
  if (kind == "gksl") return homgen(gksl_from_json(j));
  if (kind == "hp") {
    const std::size_t d_h = j.at("d_h").get<std::size_t>();
    const std::size_t d_k = j.at("d_k").get<std::size_t>();
    const Operator f = matrix_from_json(j.at("F"))
                           .with_factors({d_h, d_k + 1}, {d_h, d_k + 1});
    const std::string side = j.value("side", "left");
    return hp_generator(f, side == "right" ? HpSide::right : HpSide::left);
  }
  if (kind == "example7") {
    const double c = j.at("c").get<double>();
    if (j.contains("h")) return example7_walk_generator(c, j.at("h").get<double>());
    return example7_theta(c);
  }
  throw dimension_error("json: unknown generator kind '" + kind + "'");
}

SweepConfig sweep_config_from_json(const json& j) {
  SweepConfig cfg;
  const std::string fam = j.at("family").get<std::string>();
  if (fam == "euler")
    cfg.family = Family::euler;
  else if (fam == "repeated_interaction")
    cfg.family = Family::repeated_interaction;
  else if (fam == "example7")
    cfg.family = Family::example7;
  else
    throw dimension_error("json: unknown family '" + fam + "'");

  const std::string mode = j.value("adaptedness", "vacuum");
  cfg.adaptedness =
      mode == "identity" ? Adaptedness::identity : Adaptedness::vacuum;

  if (j.contains("limit")) {
    cfg.limit = generator_from_json(j.at("limit"));
    if (j.at("limit").at("kind").get<std::string>() == "gksl") {
      cfg.limit_is_homomorphic = true;
      if (cfg.adaptedness == Adaptedness::identity) {
        // identity-form theta = psi - . (x) delta
        const Generator psi = *cfg.limit;
        cfg.limit = Generator(
            psi.d_h(), psi.d_k(),
            psi.action() - tensor_embed_superop(
                               psi.d_h(), KhatBasis{psi.d_k()}.delta()));
      }
    }
  }
  if (j.contains("gksl")) {
    cfg.gksl = gksl_from_json(j.at("gksl"));
    cfg.limit_is_homomorphic = true;
  }
  if (j.contains("c")) cfg.c = j.at("c").get<double>();
  if (j.contains("limit_is_homomorphic"))
    cfg.limit_is_homomorphic = j.at("limit_is_homomorphic").get<bool>();

  cfg.h_grid = j.at("h_grid").get<std::vector<double>>();
  cfg.t_grid = j.at("t_grid").get<std::vector<double>>();
  for (const auto& tv : j.at("test_vectors"))
    cfg.test_vectors.emplace_back(label_from_json(tv.at("bra")),
                                  label_from_json(tv.at("ket")));
  for (const auto& am : j.at("a_list"))
    cfg.a_list.push_back(matrix_from_json(am));
  cfg.tol = j.value("tol", 1e-10);
  cfg.max_dim = j.value("max_dim", std::size_t{4096});
  cfg.workers = j.value("workers", std::size_t{1});
  cfg.seed = j.value("seed", std::uint64_t{0});
  return cfg;
}

}  // namespace qwalk
