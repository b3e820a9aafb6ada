/*
   Copyright 2026 The slmm authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef SLMM_SERIALIZE_HPP
#define SLMM_SERIALIZE_HPP

#include <string>

// Single-header nlohmann/json, vendored as <json.hpp>.
#include <json.hpp>

#include "slmm/fusion.hpp"
#include "slmm/groth.hpp"
#include "slmm/modular.hpp"
#include "slmm/qseries.hpp"

namespace slmm {

using Json = nlohmann::ordered_json;

Json smatrix_to_json(const SMatrix& s, long u, const std::string& algebra);
SMatrix smatrix_from_json(const Json& j);
Json smatrix_to_complex_json(const SMatrix& s, long u, const std::string& algebra);
std::string smatrix_to_csv(const SMatrix& s);

Json fusion_table_to_json(const FusionTable& t, const std::string& method);
FusionTable fusion_table_from_json(const Json& j);

Json groth_sum_to_json(const GrothSum& s);
GrothSum groth_sum_from_json(long u, const Json& j);
Json groth_class_to_json(const GrothClass& c);
GrothClass groth_class_from_json(long u, const Json& j);

Json qseries_to_json(const QSeries& s);
QSeries qseries_from_json(const Json& j);

}  // namespace slmm

#endif  // SLMM_SERIALIZE_HPP
