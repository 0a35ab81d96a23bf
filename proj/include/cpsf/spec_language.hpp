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

// Textual formats: `.cpsf` domain files, `.cpss` scenario files, and the
// query/goal expressions accepted on the command line.

#ifndef CPSF_SPEC_LANGUAGE_HPP
#define CPSF_SPEC_LANGUAGE_HPP

#include "cpsf/concern_model.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cpsf::lang {

struct SourceSpan {
    std::string file;
    int line = 1;   // 1-based
    int column = 1; // 1-based
    std::size_t length = 0;
    bool operator==(const SourceSpan&) const = default;
};

struct ParseError {
    SourceSpan span;
    std::string code;
    std::string message;
    std::vector<std::string> expected;

    /// `file:line:col: error[code]: message`
    std::string str() const;
};

template <class T> struct ParseResult {
    std::optional<T> value;
    std::vector<ParseError> errors;
    std::vector<ParseError> warnings;

    bool ok() const { return value.has_value() && errors.empty(); }
};

struct Occurrence {
    model::ActionDecl action;
    int step = 0;
    auto operator<=>(const Occurrence&) const = default;
    bool operator==(const Occurrence&) const = default;
};

struct Scenario {
    std::string name;
    std::map<model::SystemProp, bool> observations;
    std::set<Occurrence> history;

    /// Step of the last history occurrence, -1 for an empty history.
    int last_step() const;
    bool operator==(const Scenario&) const = default;
};

struct QueryExpr {
    model::Literal target;
    int step = 0;

    /// `-sat(Functional)@1`
    std::string str() const;
    bool operator==(const QueryExpr&) const = default;
};

ParseResult<model::DomainSpec> parse_domain(std::string_view text, const std::string& file = "<input>");

/// A scenario file may hold several `scenario NAME { ... }` blocks. A bare
/// list of obs/history statements is accepted as one scenario named "main".
ParseResult<std::vector<Scenario>> parse_scenarios(std::string_view text, const model::DomainSpec& spec,
                                                   const std::string& file = "<input>");

/// Exactly one scenario; more than one block is an error.
ParseResult<Scenario> parse_scenario(std::string_view text, const model::DomainSpec& spec,
                                     const std::string& file = "<input>");

/// `sat(Path)@N`, `prop[x]@N`, `-target@N`, `sat(all)@N`; the step defaults to 0.
/// Concern paths may be abbreviated by a unique suffix.
ParseResult<QueryExpr> parse_query(std::string_view text, const model::DomainSpec& spec);

/// A query without a step. A bare concern path or `all` is read as sat(...).
ParseResult<model::Literal> parse_goal(std::string_view text, const model::DomainSpec& spec);

/// `Attack`, `MakeFalse(cam[basicOne])`.
ParseResult<model::ActionDecl> parse_action(std::string_view text, const model::DomainSpec& spec);

std::string render_domain(const model::DomainSpec& spec);
std::string render_scenario(const Scenario& scenario);

} // namespace cpsf::lang

#endif
