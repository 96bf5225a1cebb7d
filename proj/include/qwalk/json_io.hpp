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

#pragma once

#include <json.hpp>

#include "qwalk/lab.hpp"

namespace qwalk {

using nlohmann::json;

// Complex numbers travel as [re, im] (plain numbers are accepted on read);
// matrices as row-major nested arrays.
json to_json(const cx& z);
cx cx_from_json(const json& j);

json to_json(const Operator& a);                       // entries only
Operator matrix_from_json(const json& j);              // single-factor shape
std::vector<cx> vector_from_json(const json& j);

json to_json(const StepFunction& f);
StepFunction step_function_from_json(const json& j);

json to_json(const ExpVectorLabel& l);
ExpVectorLabel label_from_json(const json& j);

// {"kind": "explicit" | "gksl" | "hp" | "example7", ...}
Generator generator_from_json(const json& j);
GKSLData gksl_from_json(const json& j);

SweepConfig sweep_config_from_json(const json& j);

}  // namespace qwalk
