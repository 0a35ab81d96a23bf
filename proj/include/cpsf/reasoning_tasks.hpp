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

// Design-time and run-time queries over an encoded domain. Checks use
// cautious entailment (truth in every answer set); completion and
// mitigation search for answer sets credulously.

#ifndef CPSF_REASONING_TASKS_HPP
#define CPSF_REASONING_TASKS_HPP

#include "cpsf/concern_model.hpp"
#include "cpsf/spec_language.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cpsf::tasks {

enum class Status { Entailed, NotEntailed, Inconsistent };
enum class Mode { Cautious, Credulous };

std::string to_string(Status status);
std::string to_string(Mode mode);

/// A failed concern and what made it fail: an addressing property that
/// does not hold, or a failed sub-concern (rendered as its path).
struct Cause {
    std::string concern;
    std::string cause;
    auto operator<=>(const Cause&) const = default;
};

struct Verdict {
    std::string query;
    Status status = Status::Inconsistent;
    Mode mode = Mode::Cautious;
    bool negation_entailed = false;
    std::size_t answer_sets = 0;
    int horizon = 0;
    /// holds/occurs literals of up to K answer sets; counterexamples first.
    std::vector<std::vector<std::string>> witnesses;
    std::vector<Cause> explanation;
    /// Filled by all_sat: aspects that fail in the first witness.
    std::vector<std::string> unsatisfied_aspects;
    std::vector<std::string> warnings;

    bool operator==(const Verdict&) const = default;
};

struct Completion {
    std::map<model::SystemProp, bool> assignment;
    bool operator==(const Completion&) const = default;
};

struct CompletionResult {
    std::string goal;
    std::vector<model::SystemProp> undetermined;
    std::vector<Completion> completions;
    std::vector<std::string> warnings;
    bool operator==(const CompletionResult&) const = default;
};

struct MitigationPlan {
    std::set<model::ActionDecl> actions;
    std::size_t cost = 0;
    int step = 0;      // s#
    int goal_step = 0; // s# + 1
    bool operator==(const MitigationPlan&) const = default;
};

struct MitigationResult {
    std::string goal;
    bool minimal = true;
    int step = 0;
    std::set<model::ActionDecl> candidates;
    std::vector<MitigationPlan> plans;
    std::vector<std::string> warnings;
    bool operator==(const MitigationResult&) const = default;
};

struct TriggeredAction {
    model::ActionDecl action;
    int step = 0;
    auto operator<=>(const TriggeredAction&) const = default;
    bool operator==(const TriggeredAction&) const = default;
};

struct Options {
    std::optional<int> horizon = std::nullopt;
    std::size_t witnesses = 5;
    std::uint64_t budget = 10'000'000;
    std::optional<std::size_t> max_solutions = std::nullopt;
};

/// Horizon used when none is given: the query step for an empty history,
/// otherwise enough for the history's effects and one more step.
int default_horizon(const lang::Scenario& scenario, int query_step);

/// Throws Error("HorizonTooSmall"), Error("ResourceBudgetExceeded").
Verdict check(const model::DomainSpec& spec, const lang::Scenario& scenario, const lang::QueryExpr& query,
              const Options& options = {});

Verdict all_sat(const model::DomainSpec& spec, const lang::Scenario& scenario, int step, const Options& options = {});

/// Throws Error("Inconsistent") if the observations alone admit no model.
CompletionResult complete_design(const model::DomainSpec& spec, const lang::Scenario& scenario,
                                 const model::Literal& goal, const Options& options = {});

Verdict what_if(const model::DomainSpec& spec, const lang::Scenario& scenario, const lang::QueryExpr& query,
                const Options& options = {});

/// Cautiously entailed occurrences during the history (steps up to one past
/// its last occurrence), minus the history itself. Throws Error("Inconsistent").
std::vector<TriggeredAction> triggered_actions(const model::DomainSpec& spec, const lang::Scenario& scenario,
                                               const Options& options = {});

/// Declared and generated actions, minus those in the history and those
/// occurring spontaneously through a trigger.
std::set<model::ActionDecl> default_candidates(const model::DomainSpec& spec, const lang::Scenario& scenario);

/// Throws Error("Inconsistent") if the history admits no model, Error("NoCandidates").
MitigationResult mitigate(const model::DomainSpec& spec, const lang::Scenario& scenario, const model::Literal& goal,
                          bool minimize, const std::optional<std::set<model::ActionDecl>>& candidates = std::nullopt,
                          const Options& options = {});

/// The scenario with every plan action appended to the history at s#.
lang::Scenario apply_plan(const lang::Scenario& scenario, const MitigationPlan& plan);

} // namespace cpsf::tasks

#endif
