// Copyright 2026 The coherence-forge developers
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

#include "cforge/json_io.hpp"

namespace cforge {

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return Json{{"d", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("re"))
    throw std::invalid_argument("matrix JSON must carry \"d\" and \"re\"");
  const std::size_t d = j.at("d").get<std::size_t>();
  const Json& re = j.at("re");
  if (!re.is_array() || re.size() != d)
    throw std::invalid_argument("matrix JSON: \"re\" must have d rows");
  const bool has_im = j.contains("im") && !j.at("im").is_null();
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const Json& row = re.at(i);
    if (!row.is_array() || row.size() != d)
      throw std::invalid_argument("matrix JSON: ragged \"re\" rows");
    for (std::size_t k = 0; k < d; ++k)
      m(i, k) = Complex(row.at(k).get<double>(), 0.0);
  }
  if (has_im) {
    const Json& im = j.at("im");
    if (!im.is_array() || im.size() != d)
      throw std::invalid_argument("matrix JSON: \"im\" must have d rows");
    for (std::size_t i = 0; i < d; ++i) {
      const Json& row = im.at(i);
      if (!row.is_array() || row.size() != d)
        throw std::invalid_argument("matrix JSON: ragged \"im\" rows");
      for (std::size_t k = 0; k < d; ++k)
        m(i, k) = Complex(m(i, k).real(), row.at(k).get<double>());
    }
  }
  return m;
}

DensityMatrix state_from_json(const Json& j) {
  return DensityMatrix(HermitianMatrix(matrix_from_json(j)));
}

HermitianMatrix hermitian_from_json(const Json& j) {
  return HermitianMatrix(matrix_from_json(j));
}

Json rep_to_json(const GroupRep& rep) {
  Json unitaries = Json::array();
  for (const auto& u : rep.unitaries()) unitaries.push_back(matrix_to_json(u));
  return Json{{"dim", rep.dim()},
              {"unitaries", std::move(unitaries)},
              {"labels", rep.labels()}};
}

GroupRep rep_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("rep JSON must be an object");
  if (j.contains("cyclic"))
    return GroupRep::cyclic(j.at("cyclic").get<std::size_t>());
  if (!j.contains("dim") || !j.contains("unitaries"))
    throw std::invalid_argument(
        "rep JSON must carry \"dim\" and \"unitaries\" (or \"cyclic\")");
  const std::size_t dim = j.at("dim").get<std::size_t>();
  std::vector<ComplexMatrix> unitaries;
  for (const auto& u : j.at("unitaries")) unitaries.push_back(matrix_from_json(u));
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return GroupRep(dim, std::move(unitaries), std::move(labels));
}

Json certificate_to_json(const RobustnessCertificate& cert) {
  Json out{
      {"value", cert.value},
      {"status", to_string(cert.status)},
      {"provenance", cert.provenance},
      {"dual_form", cert.dual_form},
      {"residuals",
       Json{{"duality_gap", cert.duality_gap},
            {"witness_value_error", cert.witness_value_error},
            {"primal_margin", cert.primal_margin},
            {"support_margin", cert.support_margin},
            {"sigma_symmetry_error", cert.sigma_symmetry_error},
            {"witness_upper_margin", cert.witness_upper_margin},
            {"witness_twirl_margin", cert.witness_twirl_margin},
            {"pseudomixture_error", cert.pseudomixture_error}}},
      {"iterations",
       Json{{"primal", cert.primal_iterations}, {"dual", cert.dual_iterations}}},
  };
  if (!cert.message.empty()) out["message"] = cert.message;
  out["sigma_star"] =
      cert.sigma_star ? matrix_to_json(cert.sigma_star->mat()) : Json(nullptr);
  out["tau_star"] =
      cert.tau_star ? matrix_to_json(cert.tau_star->mat()) : Json(nullptr);
  out["witness"] =
      cert.witness ? matrix_to_json(cert.witness->mat()) : Json(nullptr);
  out["x_star"] =
      cert.x_star ? matrix_to_json(cert.x_star->mat()) : Json(nullptr);
  return out;
}

Json bound_report_to_json(const BoundReport& report) {
  Json out{{"l1", report.l1_value},
           {"l1_lower", report.l1_lower},
           {"l1_upper", report.l1_upper},
           {"purity_chain", report.purity_chain},
           {"f_bound", report.f_bound},
           {"diag_entry_bound", report.diag_entry_bound},
           {"exact_class", report.exact_class}};
  out["exact_value"] =
      report.exact_value ? Json(*report.exact_value) : Json(nullptr);
  return out;
}

}  // namespace cforge
