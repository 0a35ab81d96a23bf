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

#include "cpsf/encoder.hpp"

#include "cpsf/error.hpp"

#include <algorithm>

namespace cpsf::enc {

using asp::GroundProgram;
using model::ActionDecl;
using model::Fluent;
using model::SystemProp;

asp::Literal holds(GroundProgram& program, const Fluent& fluent, int step, bool negative) {
    return program.literal("holds", {model::to_string(fluent), std::to_string(step)}, negative);
}

asp::Literal holds(GroundProgram& program, const model::Literal& lit, int step) {
    return holds(program, lit.fluent, step, !lit.positive);
}

asp::Literal occurs(GroundProgram& program, const ActionDecl& action, int step, bool negative) {
    return program.literal("occurs", {action.str(), std::to_string(step)}, negative);
}

asp::Literal impacted(GroundProgram& program, model::Sign sign, const SystemProp& prop, int step) {
    return program.literal("impacted", {sign == model::Sign::Pos ? "pos" : "neg", prop.str(), std::to_string(step)});
}

int mitigation_step(const lang::Scenario& scenario) { return scenario.last_step() + 1; }

int minimum_horizon(const lang::Scenario& scenario, const TaskMode& mode) {
    if (const auto* m = std::get_if<MitigationMode>(&mode))
        return m->s_sharp + 1;
    return std::max(0, scenario.last_step() + 1);
}

namespace {

std::vector<asp::Literal> condition_at(GroundProgram& program, const model::Condition& cond, int step) {
    std::vector<asp::Literal> out;
    for (const auto& lit : cond.literals)
        out.push_back(holds(program, lit, step));
    return out;
}

void add_effect_rules(GroundProgram& program, const ActionDecl& action, const SystemProp& effect, bool positive,
                      const model::Condition& cond, Horizon horizon) {
    for (int s = 0; s < horizon.max_step; ++s) {
        auto body = condition_at(program, cond, s);
        body.push_back(occurs(program, action, s));
        program.add_rule(asp::Rule{{holds(program, Fluent{effect}, s + 1, !positive)}, body, {}});
    }
}

bool fluent_declared(const model::DomainSpec& spec, const Fluent& f) {
    if (const auto* p = std::get_if<SystemProp>(&f))
        return spec.find_property(p->str()) != nullptr;
    if (const auto* s = std::get_if<model::Sat>(&f))
        return spec.forest.contains(s->concern);
    return true;
}

} // namespace

void check_goal(const model::DomainSpec& spec, const model::Literal& goal) {
    if (!fluent_declared(spec, goal.fluent))
        throw Error("UnknownGoal", "goal " + goal.str() + " does not name a declared fluent");
}

void encode_statement(GroundProgram& program, const model::Statement& stmt, Horizon horizon) {
    if (const auto* s = std::get_if<model::Impacts>(&stmt)) {
        for (int t = 0; t <= horizon.max_step; ++t)
            program.add_rule(asp::Rule{{impacted(program, s->sign, s->target, t)}, condition_at(program, s->condition, t), {}});
    } else if (const auto* s = std::get_if<model::Causes>(&stmt)) {
        add_effect_rules(program, s->action, s->effect, s->effect_positive, s->condition, horizon);
    } else if (const auto* s = std::get_if<model::Triggers>(&stmt)) {
        for (int t = 0; t <= horizon.max_step; ++t)
            program.add_rule(asp::Rule{{occurs(program, s->action, t)}, condition_at(program, s->condition, t), {}});
    }
    // Default statements are consumed by framework_axioms.
}

std::set<SystemProp> undetermined_atoms(const model::DomainSpec& spec, const lang::Scenario& scenario) {
    auto defaults = model::default_values(spec);
    std::set<SystemProp> out;
    for (const auto& p : spec.properties)
        if (!scenario.observations.count(p) && !defaults.count(Fluent{p}))
            out.insert(p);
    return out;
}

void framework_axioms(GroundProgram& program, const model::DomainSpec& spec, const lang::Scenario& scenario,
                      Horizon horizon, const std::set<SystemProp>& open_atoms) {
    auto defaults = model::default_values(spec);
    std::set<std::pair<model::Sign, SystemProp>> bridged;
    for (const auto& stmt : spec.statements)
        if (const auto* s = std::get_if<model::Impacts>(&stmt))
            bridged.emplace(s->sign, s->target);

    for (int t = 0; t <= horizon.max_step; ++t) {
        // A concern fails when an addressing property does not hold ...
        for (const auto& link : spec.links)
            program.add_rule(asp::Rule{{holds(program, Fluent{model::Sat{link.concern}}, t, true)},
                                       {},
                                       {holds(program, Fluent{link.property}, t)}});
        // ... or when one of its sub-concerns fails.
        for (const auto& [parent, child] : spec.forest.edges)
            program.add_rule(asp::Rule{{holds(program, Fluent{model::Sat{parent}}, t, true)},
                                       {holds(program, Fluent{model::Sat{child}}, t, true)},
                                       {}});
        for (const auto& [fluent, value] : defaults)
            program.add_rule(asp::Rule{{holds(program, fluent, t, !value)}, {}, {holds(program, fluent, t, value)}});
        for (const auto& [sign, prop] : bridged)
            program.add_rule(asp::Rule{{holds(program, Fluent{prop}, t, sign == model::Sign::Neg)},
                                       {impacted(program, sign, prop, t)},
                                       {}});
    }

    for (const auto& c : spec.properties) {
        if (c.kind != model::PropKind::Configuration)
            continue;
        add_effect_rules(program, ActionDecl::make_true(c), c, true, {}, horizon);
        add_effect_rules(program, ActionDecl::make_false(c), c, false, {}, horizon);
    }

    for (const auto& p : spec.properties) {
        Fluent f{p};
        if (defaults.count(f))
            continue;
        for (int t = 0; t < horizon.max_step; ++t) {
            program.add_rule(asp::Rule{{holds(program, f, t + 1)}, {holds(program, f, t)}, {holds(program, f, t + 1, true)}});
            program.add_rule(asp::Rule{{holds(program, f, t + 1, true)}, {holds(program, f, t, true)}, {holds(program, f, t + 1)}});
        }
        if (!scenario.observations.count(p) && !open_atoms.count(p))
            program.add_rule(asp::Rule{{holds(program, f, 0)}, {}, {holds(program, f, 0, true)}});
    }

    for (const auto& [p, value] : scenario.observations)
        program.add_fact(holds(program, Fluent{p}, 0, !value));
}

void allsat_axioms(GroundProgram& program, const model::DomainSpec& spec, Horizon horizon) {
    const Fluent all{model::SatAll{}};
    for (int t = 0; t <= horizon.max_step; ++t) {
        program.add_rule(asp::Rule{{holds(program, all, t)}, {}, {holds(program, all, t, true)}});
        for (const auto& aspect : spec.forest.aspects)
            program.add_rule(asp::Rule{{holds(program, all, t, true)},
                                       {holds(program, Fluent{model::Sat{aspect}}, t, true)},
                                       {}});
    }
}

void task_axioms(GroundProgram& program, const model::DomainSpec& spec, const TaskMode& mode,
                 const std::set<SystemProp>& open_atoms) {
    if (const auto* m = std::get_if<CompletionMode>(&mode)) {
        check_goal(spec, m->goal);
        for (const auto& p : open_atoms)
            program.add_choice(holds(program, Fluent{p}, 0));
        if (m->enforce_goal)
            program.add_constraint({}, {holds(program, m->goal, 0)});
    } else if (const auto* m = std::get_if<MitigationMode>(&mode)) {
        check_goal(spec, m->goal);
        for (const auto& a : m->candidates) {
            if (!spec.find_action(a.str()))
                throw Error("UnknownAction", "candidate action " + a.str() + " is not declared");
            program.add_choice(occurs(program, a, m->s_sharp));
        }
        program.add_constraint({}, {holds(program, m->goal, m->s_sharp + 1)});
        if (m->minimize)
            for (const auto& a : m->candidates)
                program.add_weak(asp::WeakConstraint{{occurs(program, a, m->s_sharp)}, {}, 1, 1});
    }
}

Encoding encode(const model::DomainSpec& spec, const lang::Scenario& scenario, Horizon horizon, const TaskMode& mode) {
    if (horizon.max_step < 0)
        throw Error("HorizonTooSmall", "the horizon must be non-negative");
    int needed = minimum_horizon(scenario, mode);
    if (horizon.max_step < needed)
        throw Error("HorizonTooSmall", "horizon " + std::to_string(horizon.max_step) + " is below the required " +
                                           std::to_string(needed));
    if (const auto* m = std::get_if<MitigationMode>(&mode); m && m->s_sharp <= scenario.last_step())
        throw Error("InvalidMitigationStep", "mitigation must come after the last history occurrence");

    Encoding enc;
    enc.max_step = horizon.max_step;
    if (std::holds_alternative<CompletionMode>(mode))
        enc.open_atoms = undetermined_atoms(spec, scenario);

    for (const auto& stmt : spec.statements)
        encode_statement(enc.program, stmt, horizon);
    framework_axioms(enc.program, spec, scenario, horizon, enc.open_atoms);
    allsat_axioms(enc.program, spec, horizon);
    for (const auto& occ : scenario.history) {
        if (!spec.find_action(occ.action.str()))
            throw Error("UnknownAction", "history action " + occ.action.str() + " is not declared");
        enc.program.add_fact(occurs(enc.program, occ.action, occ.step));
    }
    task_axioms(enc.program, spec, mode, enc.open_atoms);

    // Effects of actions triggered at the last step fall outside the program.
    std::set<std::string> with_effects;
    for (const auto& stmt : spec.statements)
        if (const auto* s = std::get_if<model::Causes>(&stmt))
            with_effects.insert(s->action.str());
    for (const auto& stmt : spec.statements) {
        const auto* s = std::get_if<model::Triggers>(&stmt);
        if (!s)
            continue;
        bool has_effects = with_effects.count(s->action.str()) || s->action.origin != model::ActionOrigin::Declared;
        if (has_effects)
            enc.warnings.push_back("effects of " + s->action.str() + " triggered at step " +
                                   std::to_string(horizon.max_step) + " lie beyond the horizon");
    }
    return enc;
}

} // namespace cpsf::enc
