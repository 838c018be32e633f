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

#pragma once

#include <json.hpp>

#include "cforge/discrimination.hpp"
#include "cforge/hermitian_core.hpp"
#include "cforge/robustness.hpp"
#include "cforge/symmetry.hpp"

namespace cforge {

using Json = nlohmann::json;

/// Matrix interchange format: {"d": n, "re": [[...]], "im": [[...]]} with
/// row-major 64-bit floats; serialization round-trips bit-exactly.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

DensityMatrix state_from_json(const Json& j);
HermitianMatrix hermitian_from_json(const Json& j);

/// Representations serialize as {"dim":..., "unitaries":[matrix...],
/// "labels":[...]}; the shorthand {"cyclic": d} is accepted on input.
Json rep_to_json(const GroupRep& rep);
GroupRep rep_from_json(const Json& j);

Json certificate_to_json(const RobustnessCertificate& cert);
Json bound_report_to_json(const BoundReport& report);

}  // namespace cforge
