// Copyright 2026 The derplan Authors.
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

// Case files: one JSON document, optionally pointing at CSV matrices that are
// resolved relative to the document. The schema is described in
// cases/README.md.

#ifndef DERPLAN_CASE_IO_H_
#define DERPLAN_CASE_IO_H_

#include <string>

#include "derplan/core_model.h"

namespace derplan {

// Parses and validates a case. Throws std::invalid_argument with the full
// violation list when the case is malformed, std::runtime_error on I/O
// failures.
CaseData load_case(const std::string& path);

// Same, from JSON text; relative CSV paths resolve against `base_dir`.
CaseData parse_case(const std::string& json_text,
                    const std::string& base_dir = ".");

// Numeric CSV; a first row that does not parse as numbers is skipped.
Matrix read_csv_matrix(const std::string& path);

}  // namespace derplan

#endif  // DERPLAN_CASE_IO_H_
