/*
 * Copyright 2026 The CodePlan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <filesystem>
#include <string>

#include "codeplan/world/world_files.hpp"

namespace codeplan::testing {

inline std::filesystem::path fixture(const std::string& rel) {
    return std::filesystem::path(CODEPLAN_FIXTURES_DIR) / rel;
}

inline std::string read_fixture(const std::string& rel) { return world::read_text_file(fixture(rel)); }

}  // namespace codeplan::testing
