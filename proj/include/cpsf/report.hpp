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

// Task results as JSON documents and as line-oriented text.

#ifndef CPSF_REPORT_HPP
#define CPSF_REPORT_HPP

#include "cpsf/reasoning_tasks.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cpsf::report {

struct Diagnostic {
    std::string severity; // "error" | "warning"
    std::string code;
    std::string message;
    std::string location; // file:line:col, may be empty
    bool operator==(const Diagnostic&) const = default;
};

/// One CLI invocation's result. Exactly the members relevant to `task` are set.
struct Report {
    std::string task;
    std::optional<tasks::Verdict> verdict;
    std::optional<std::vector<tasks::TriggeredAction>> triggered;
    std::optional<tasks::CompletionResult> completions;
    std::optional<tasks::MitigationResult> plans;
    std::optional<std::string> program;
    std::vector<Diagnostic> diagnostics;
    bool operator==(const Report&) const = default;
};

/// Parses `Attack` or `MakeTrue(cam[basicOne])` without a domain.
/// Throws Error("InvalidAction").
model::ActionDecl action_from_string(const std::string& text);

/// Pretty-printed JSON with a trailing newline.
std::string to_json(const Report& report);
/// Throws Error("InvalidJson").
Report from_json(const std::string& text);

/// Diagnostics are not included; they belong on the error stream.
std::string to_text(const Report& report);
std::string to_text(const Diagnostic& diagnostic);

} // namespace cpsf::report

#endif
