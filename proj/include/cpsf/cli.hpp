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

#ifndef CPSF_CLI_HPP
#define CPSF_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cpsf::cli {

enum ExitStatus : int {
    Success = 0,
    Negative = 1,       // not entailed, or no solution
    UsageError = 2,     // usage, parse or validation error
    Inconsistent = 3,
    BudgetExceeded = 4,
};

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cpsf::cli

#endif
