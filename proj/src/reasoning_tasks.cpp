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

#include "cpsf/reasoning_tasks.hpp"

#include "cpsf/encoder.hpp"
#include "cpsf/error.hpp"
#include "cpsf/logic_kernel.hpp"

#include <algorithm>

namespace cpsf::tasks {

using model::ActionDecl;
using model::Fluent;

std::string to_string(Status status) {
    switch (status) {
    case Status::Entailed:
        return "Entailed";
    case Status::NotEntailed:
        return "NotEntailed";
    case Status::Inconsistent:
        break;
    }
    return "Inconsistent";
}

std::string to_string(Mode mode) { return mode == Mode::Cautious ? "cautious" : "credulous"; }

int default_horizon(const lang::Scenario& scenario, int query_step) {
    if (scenario.history.empty())
        return query_step;
    return std::max(scenario.last_step() + 2, query_step);
}

namespace {

asp::SolveOptions solve_options(const Options& options, std::optional<std::size_t> limit = std::nullopt) {
    asp::SolveOptions o;
    o.limit = limit;
    o.node_budget = options.budget;
    return o;
}

bool consistent(const enc::Encoding& enc, const Options& options) {
    return !asp::enumerate_answer_sets(enc.program, solve_options(options, 1)).empty();
}

std::vector<std::string> project(const asp::GroundProgram& program, const asp::AnswerSet& answer) {
    std::vector<std::string> out;
    for (const auto& lit : asp::render(program, answer)) {
        std::string_view body = lit;
        if (body.starts_with('-'))
            body.remove_prefix(1);
        if (body.starts_with("holds(") || body.starts_with("occurs("))
            out.push_back(lit);
    }
    return out;
}

class Explainer {
public:
    Explainer(const model::DomainSpec& spec, asp::GroundProgram& program, const asp::AnswerSet& answer, int step)
        : spec_(spec), program_(program), answer_(answer), step_(step) {}

    std::vector<Cause> explain(const Fluent& target) {
        if (std::holds_alternative<model::SatAll>(target)) {
            if (failed(target))
                for (const auto& aspect : spec_.forest.aspects)
                    if (failed(Fluent{model::Sat{aspect}})) {
                        out_.push_back({"all", aspect.str()});
                        walk(aspect);
                    }
        } else if (const auto* s = std::get_if<model::Sat>(&target)) {
            if (failed(target))
                walk(s->concern);
        }
        return std::move(out_);
    }

private:
    bool failed(const Fluent& f) { return answer_.contains(enc::holds(program_, f, step_, true)); }

    void walk(const model::ConcernId& c) {
        for (const auto& p : model::addressing_properties(spec_, c))
            if (!answer_.contains(enc::holds(program_, Fluent{p}, step_)))
                out_.push_back({c.str(), p.str()});
        for (const auto& child : model::children(spec_.forest, c))
            if (failed(Fluent{model::Sat{child}})) {
                out_.push_back({c.str(), child.str()});
                walk(child);
            }
    }

    const model::DomainSpec& spec_;
    asp::GroundProgram& program_;
    const asp::AnswerSet& answer_;
    int step_;
    std::vector<Cause> out_;
};

Verdict entail(const model::DomainSpec& spec, const lang::Scenario& scenario, const lang::QueryExpr& query,
               const Options& options) {
    enc::check_goal(spec, query.target);
    int horizon = options.horizon.value_or(default_horizon(scenario, query.step));
    if (query.step > horizon)
        throw Error("HorizonTooSmall", "query step " + std::to_string(query.step) + " exceeds the horizon " +
                                           std::to_string(horizon));
    auto enc = enc::encode(spec, scenario, enc::Horizon{horizon}, enc::BaseMode{});
    auto models = asp::enumerate_answer_sets(enc.program, solve_options(options));

    Verdict v;
    v.query = query.str();
    v.mode = Mode::Cautious;
    v.horizon = horizon;
    v.answer_sets = models.size();
    v.warnings = enc.warnings;
    if (models.empty()) {
        v.status = Status::Inconsistent;
        return v;
    }
    asp::Literal lit = enc::holds(enc.program, query.target, query.step);
    bool all_true = true, all_false = true;
    for (const auto& m : models) {
        all_true = all_true && m.contains(lit);
        all_false = all_false && m.contains(lit.complement());
    }
    v.status = all_true ? Status::Entailed : Status::NotEntailed;
    v.negation_entailed = all_false;

    std::stable_partition(models.begin(), models.end(), [&](const asp::AnswerSet& m) { return !m.contains(lit); });
    for (std::size_t i = 0; i < models.size() && i < options.witnesses; ++i)
        v.witnesses.push_back(project(enc.program, models[i]));
    v.explanation = Explainer(spec, enc.program, models.front(), query.step).explain(query.target.fluent);
    return v;
}

} // namespace

Verdict check(const model::DomainSpec& spec, const lang::Scenario& scenario, const lang::QueryExpr& query,
              const Options& options) {
    return entail(spec, scenario, query, options);
}

Verdict all_sat(const model::DomainSpec& spec, const lang::Scenario& scenario, int step, const Options& options) {
    lang::QueryExpr query{model::Literal{Fluent{model::SatAll{}}, true}, step};
    Verdict v = entail(spec, scenario, query, options);
    for (const auto& c : v.explanation)
        if (c.concern == "all")
            v.unsatisfied_aspects.push_back(c.cause);
    return v;
}

Verdict what_if(const model::DomainSpec& spec, const lang::Scenario& scenario, const lang::QueryExpr& query,
                const Options& options) {
    Verdict v = entail(spec, scenario, query, options);
    if (scenario.history.empty())
        v.warnings.push_back("the history is empty; this is a plain check");
    return v;
}

CompletionResult complete_design(const model::DomainSpec& spec, const lang::Scenario& scenario,
                                 const model::Literal& goal, const Options& options) {
    enc::check_goal(spec, goal);
    enc::Horizon horizon{options.horizon.value_or(default_horizon(scenario, 0))};
    auto open = enc::encode(spec, scenario, horizon, enc::CompletionMode{goal, false});
    if (!consistent(open, options))
        throw Error("Inconsistent", "the observations admit no model");

    auto enc = enc::encode(spec, scenario, horizon, enc::CompletionMode{goal, true});
    CompletionResult result;
    result.goal = goal.str();
    result.undetermined.assign(enc.open_atoms.begin(), enc.open_atoms.end());
    result.warnings = enc.warnings;

    std::set<std::map<model::SystemProp, bool>> seen;
    asp::solve(enc.program, solve_options(options), [&](const asp::AnswerSet& m) {
        Completion c;
        for (const auto& p : enc.open_atoms)
            c.assignment[p] = m.contains(enc::holds(enc.program, Fluent{p}, 0));
        if (seen.insert(c.assignment).second)
            result.completions.push_back(std::move(c));
        return !(options.max_solutions && result.completions.size() >= *options.max_solutions);
    });
    std::sort(result.completions.begin(), result.completions.end(),
              [](const Completion& a, const Completion& b) { return a.assignment < b.assignment; });
    return result;
}

std::vector<TriggeredAction> triggered_actions(const model::DomainSpec& spec, const lang::Scenario& scenario,
                                               const Options& options) {
    int horizon = options.horizon.value_or(default_horizon(scenario, 0));
    auto enc = enc::encode(spec, scenario, enc::Horizon{horizon}, enc::BaseMode{});
    auto models = asp::enumerate_answer_sets(enc.program, solve_options(options));
    if (models.empty())
        throw Error("Inconsistent", "the scenario admits no model");

    int window = std::min(horizon, scenario.last_step() + 1);
    std::vector<TriggeredAction> out;
    for (asp::AtomId id = 0; id < enc.program.atoms.size(); ++id) {
        const auto& atom = enc.program.atoms.atom(id);
        if (atom.predicate != "occurs" || atom.args.size() != 2)
            continue;
        int step = std::stoi(atom.args[1]);
        const ActionDecl* action = spec.find_action(atom.args[0]);
        if (!action || step > window || scenario.history.count(lang::Occurrence{*action, step}))
            continue;
        asp::Literal lit{id, false};
        if (std::all_of(models.begin(), models.end(), [&](const asp::AnswerSet& m) { return m.contains(lit); }))
            out.push_back({*action, step});
    }
    std::sort(out.begin(), out.end(), [](const TriggeredAction& a, const TriggeredAction& b) {
        return std::tie(a.step, a.action) < std::tie(b.step, b.action);
    });
    return out;
}

std::set<ActionDecl> default_candidates(const model::DomainSpec& spec, const lang::Scenario& scenario) {
    std::set<ActionDecl> out;
    std::set<ActionDecl> spontaneous;
    for (const auto& stmt : spec.statements)
        if (const auto* t = std::get_if<model::Triggers>(&stmt))
            spontaneous.insert(t->action);
    for (const auto& a : spec.actions) {
        bool in_history = std::any_of(scenario.history.begin(), scenario.history.end(),
                                      [&](const lang::Occurrence& o) { return o.action == a; });
        if (!in_history && !spontaneous.count(a))
            out.insert(a);
    }
    return out;
}

MitigationResult mitigate(const model::DomainSpec& spec, const lang::Scenario& scenario, const model::Literal& goal,
                          bool minimize, const std::optional<std::set<ActionDecl>>& candidates,
                          const Options& options) {
    enc::check_goal(spec, goal);
    MitigationResult result;
    result.goal = goal.str();
    result.minimal = minimize;
    result.step = enc::mitigation_step(scenario);
    result.candidates = candidates.value_or(default_candidates(spec, scenario));
    if (result.candidates.empty())
        throw Error("NoCandidates", "there are no candidate mitigation actions");

    enc::Horizon horizon{options.horizon.value_or(result.step + 1)};
    auto base = enc::encode(spec, scenario, horizon, enc::BaseMode{});
    if (!consistent(base, options))
        throw Error("Inconsistent", "the history admits no model");

    enc::MitigationMode mode{goal, result.step, result.candidates, minimize};
    auto enc = enc::encode(spec, scenario, horizon, mode);
    result.warnings = enc.warnings;

    std::set<std::set<ActionDecl>> seen;
    auto collect = [&](const asp::AnswerSet& m) {
        MitigationPlan plan;
        plan.step = result.step;
        plan.goal_step = result.step + 1;
        for (const auto& a : result.candidates)
            if (m.contains(enc::occurs(enc.program, a, result.step)))
                plan.actions.insert(a);
        plan.cost = plan.actions.size();
        if (seen.insert(plan.actions).second)
            result.plans.push_back(std::move(plan));
        return !(options.max_solutions && result.plans.size() >= *options.max_solutions);
    };
    if (minimize) {
        for (const auto& m : asp::optimal_answer_sets(enc.program, solve_options(options)))
            if (!collect(m))
                break;
    } else {
        asp::solve(enc.program, solve_options(options), collect);
    }
    std::sort(result.plans.begin(), result.plans.end(), [](const MitigationPlan& a, const MitigationPlan& b) {
        return std::tie(a.cost, a.actions) < std::tie(b.cost, b.actions);
    });
    return result;
}

lang::Scenario apply_plan(const lang::Scenario& scenario, const MitigationPlan& plan) {
    lang::Scenario out = scenario;
    for (const auto& a : plan.actions)
        out.history.insert(lang::Occurrence{a, plan.step});
    return out;
}

} // namespace cpsf::tasks
