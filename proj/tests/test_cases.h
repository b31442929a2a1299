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

// Small cases shared by the test binaries.

#ifndef DERPLAN_TESTS_TEST_CASES_H_
#define DERPLAN_TESTS_TEST_CASES_H_

#include <cstdint>
#include <string>

#include "derplan/core_model.h"

namespace derplan::testing {

// Three buses in a chain, four slots, two scenarios, envelope from the
// scenario spread plus a 20% load deviation at the two load buses.
CaseData toy_case();

// Random valid instance with `buses` buses (tree rooted at the substation),
// `slots` slots and `scenarios` scenarios. Same seed, same case.
CaseData random_case(uint32_t seed, int buses, int slots, int scenarios);

// A file under cases/ of the source tree.
CaseData bundled_case(const std::string& file);
std::string source_path(const std::string& relative);

}  // namespace derplan::testing

#endif  // DERPLAN_TESTS_TEST_CASES_H_
