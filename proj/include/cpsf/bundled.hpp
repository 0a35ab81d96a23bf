/*
 *  Copyright (C) 2026  The cpsf authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 *
 */

// The lane keeping/assist example, compiled into the library.

#ifndef CPSF_BUNDLED_HPP
#define CPSF_BUNDLED_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cpsf::bundled {

struct Example {
    std::string name;
    std::string_view domain;
    std::vector<std::string_view> scenarios;
};

std::string_view lkas_domain();
std::string_view lkas_patch_domain();
std::string_view lkas_scenarios();

/// Looks up a bundled file by name: lkas.cpsf, lkas_patch.cpsf, lkas.cpss.
std::optional<std::string_view> file(std::string_view name);
std::vector<std::string> file_names();

/// The base domain and the Patch variant, each with the shared scenarios.
std::vector<Example> bundled_examples();

} // namespace cpsf::bundled

#endif
