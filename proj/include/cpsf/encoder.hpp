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

// Compiles a domain, a scenario and a task into a ground program over
//   holds(F, S)            fluent F holds at step S (classically negated: -holds)
//   occurs(A, S)           action A occurs at step S
//   impacted(pos|neg, P, S)

#ifndef CPSF_ENCODER_HPP
#define CPSF_ENCODER_HPP

#include "cpsf/concern_model.hpp"
#include "cpsf/logic_kernel.hpp"
#include "cpsf/spec_language.hpp"

#include <set>
#include <string>
#include <variant>
#include <vector>

namespace cpsf::enc {

struct Horizon {
    int max_step = 0;
};

struct BaseMode {};

struct CompletionMode {
    model::Literal goal;
    bool enforce_goal = true;
};

struct MitigationMode {
    model::Literal goal;
    int s_sharp = 0;
    std::set<model::ActionDecl> candidates;
    bool minimize = true;
};

using TaskMode = std::variant<BaseMode, CompletionMode, MitigationMode>;

struct Encoding {
    asp::GroundProgram program;
    int max_step = 0;
    std::set<model::SystemProp> open_atoms; // completion choices at step 0
    std::vector<std::string> warnings;
};

asp::Literal holds(asp::GroundProgram& program, const model::Fluent& fluent, int step, bool negative = false);
asp::Literal holds(asp::GroundProgram& program, const model::Literal& lit, int step);
asp::Literal occurs(asp::GroundProgram& program, const model::ActionDecl& action, int step, bool negative = false);
asp::Literal impacted(asp::GroundProgram& program, model::Sign sign, const model::SystemProp& prop, int step);

/// Mitigation step: one past the last history occurrence, 0 for an empty history.
int mitigation_step(const lang::Scenario& scenario);

/// Smallest horizon the mode admits. Base needs every history effect to land.
int minimum_horizon(const lang::Scenario& scenario, const TaskMode& mode);

/// Throws Error("HorizonTooSmall") or Error("UnknownGoal").
Encoding encode(const model::DomainSpec& spec, const lang::Scenario& scenario, Horizon horizon, const TaskMode& mode);

void encode_statement(asp::GroundProgram& program, const model::Statement& stmt, Horizon horizon);

/// Concern axioms, defaults, impact bridges, inertia, step-0 initialization
/// and observation facts. Atoms in `open_atoms` get no step-0 default.
void framework_axioms(asp::GroundProgram& program, const model::DomainSpec& spec, const lang::Scenario& scenario,
                      Horizon horizon, const std::set<model::SystemProp>& open_atoms = {});

void allsat_axioms(asp::GroundProgram& program, const model::DomainSpec& spec, Horizon horizon);

void task_axioms(asp::GroundProgram& program, const model::DomainSpec& spec, const TaskMode& mode,
                 const std::set<model::SystemProp>& open_atoms);

/// Unobserved properties and configurations without a default value.
std::set<model::SystemProp> undetermined_atoms(const model::DomainSpec& spec, const lang::Scenario& scenario);

/// Throws Error("UnknownGoal") if the literal names nothing in the domain.
void check_goal(const model::DomainSpec& spec, const model::Literal& goal);

} // namespace cpsf::enc

#endif
