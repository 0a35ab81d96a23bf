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

#include "cpsf/report.hpp"

#include "cpsf/error.hpp"

#include <json.hpp>

#include <sstream>

namespace cpsf::report {

using json = nlohmann::ordered_json;
using model::ActionDecl;
using model::SystemProp;

namespace {

tasks::Status status_from(const std::string& s) {
    if (s == "Entailed")
        return tasks::Status::Entailed;
    if (s == "NotEntailed")
        return tasks::Status::NotEntailed;
    if (s == "Inconsistent")
        return tasks::Status::Inconsistent;
    throw Error("InvalidJson", "unknown status " + s);
}

tasks::Mode mode_from(const std::string& s) {
    if (s == "cautious")
        return tasks::Mode::Cautious;
    if (s == "credulous")
        return tasks::Mode::Credulous;
    throw Error("InvalidJson", "unknown mode " + s);
}

SystemProp prop_from(const std::string& text) {
    auto p = SystemProp::parse(text);
    if (!p)
        throw Error("InvalidJson", "not a property: " + text);
    return *p;
}

json actions_json(const std::set<ActionDecl>& actions) {
    json arr = json::array();
    for (const auto& a : actions)
        arr.push_back(a.str());
    return arr;
}

std::set<ActionDecl> actions_from(const json& arr) {
    std::set<ActionDecl> out;
    for (const auto& a : arr)
        out.insert(action_from_string(a.get<std::string>()));
    return out;
}

json verdict_json(const tasks::Verdict& v) {
    json j;
    j["query"] = v.query;
    j["status"] = tasks::to_string(v.status);
    j["mode"] = tasks::to_string(v.mode);
    j["negation_entailed"] = v.negation_entailed;
    j["answer_sets"] = v.answer_sets;
    j["horizon"] = v.horizon;
    json expl = json::array();
    for (const auto& c : v.explanation)
        expl.push_back(json{{"concern", c.concern}, {"cause", c.cause}});
    j["explanation"] = expl;
    j["unsatisfied_aspects"] = v.unsatisfied_aspects;
    j["warnings"] = v.warnings;
    return j;
}

tasks::Verdict verdict_from(const json& j) {
    tasks::Verdict v;
    v.query = j.at("query").get<std::string>();
    v.status = status_from(j.at("status").get<std::string>());
    v.mode = mode_from(j.at("mode").get<std::string>());
    v.negation_entailed = j.at("negation_entailed").get<bool>();
    v.answer_sets = j.at("answer_sets").get<std::size_t>();
    v.horizon = j.at("horizon").get<int>();
    for (const auto& c : j.at("explanation"))
        v.explanation.push_back({c.at("concern").get<std::string>(), c.at("cause").get<std::string>()});
    v.unsatisfied_aspects = j.at("unsatisfied_aspects").get<std::vector<std::string>>();
    v.warnings = j.at("warnings").get<std::vector<std::string>>();
    return v;
}

json triggered_json(const std::vector<tasks::TriggeredAction>& list) {
    json arr = json::array();
    for (const auto& t : list)
        arr.push_back(json{{"action", t.action.str()}, {"step", t.step}});
    return arr;
}

std::vector<tasks::TriggeredAction> triggered_from(const json& arr) {
    std::vector<tasks::TriggeredAction> out;
    for (const auto& t : arr)
        out.push_back({action_from_string(t.at("action").get<std::string>()), t.at("step").get<int>()});
    return out;
}

json completions_json(const tasks::CompletionResult& r) {
    json j;
    j["goal"] = r.goal;
    json undetermined = json::array();
    for (const auto& p : r.undetermined)
        undetermined.push_back(p.str());
    j["undetermined"] = undetermined;
    json sols = json::array();
    for (const auto& c : r.completions) {
        json assignment = json::object();
        for (const auto& [p, v] : c.assignment)
            assignment[p.str()] = v;
        sols.push_back(json{{"assignment", assignment}});
    }
    j["solutions"] = sols;
    j["warnings"] = r.warnings;
    return j;
}

tasks::CompletionResult completions_from(const json& j) {
    tasks::CompletionResult r;
    r.goal = j.at("goal").get<std::string>();
    for (const auto& p : j.at("undetermined"))
        r.undetermined.push_back(prop_from(p.get<std::string>()));
    for (const auto& s : j.at("solutions")) {
        tasks::Completion c;
        for (const auto& [k, v] : s.at("assignment").items())
            c.assignment[prop_from(k)] = v.get<bool>();
        r.completions.push_back(std::move(c));
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
}

json plans_json(const tasks::MitigationResult& r) {
    json j;
    j["goal"] = r.goal;
    j["minimal"] = r.minimal;
    j["step"] = r.step;
    j["candidates"] = actions_json(r.candidates);
    json plans = json::array();
    for (const auto& p : r.plans)
        plans.push_back(json{{"actions", actions_json(p.actions)},
                             {"cost", p.cost},
                             {"step", p.step},
                             {"goal_step", p.goal_step}});
    j["plans"] = plans;
    j["warnings"] = r.warnings;
    return j;
}

tasks::MitigationResult plans_from(const json& j) {
    tasks::MitigationResult r;
    r.goal = j.at("goal").get<std::string>();
    r.minimal = j.at("minimal").get<bool>();
    r.step = j.at("step").get<int>();
    r.candidates = actions_from(j.at("candidates"));
    for (const auto& p : j.at("plans")) {
        tasks::MitigationPlan plan;
        plan.actions = actions_from(p.at("actions"));
        plan.cost = p.at("cost").get<std::size_t>();
        plan.step = p.at("step").get<int>();
        plan.goal_step = p.at("goal_step").get<int>();
        r.plans.push_back(std::move(plan));
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? sep : "") + items[i];
    return out;
}

std::string join_actions(const std::set<ActionDecl>& actions) {
    std::vector<std::string> names;
    for (const auto& a : actions)
        names.push_back(a.str());
    return join(names, ", ");
}

void verdict_text(std::ostream& os, const tasks::Verdict& v) {
    os << "query: " << v.query << '\n';
    os << "status: " << tasks::to_string(v.status) << " (" << tasks::to_string(v.mode) << ")\n";
    if (v.status != tasks::Status::Inconsistent)
        os << "negation entailed: " << (v.negation_entailed ? "yes" : "no") << '\n';
    os << "answer sets: " << v.answer_sets << '\n';
    os << "horizon: " << v.horizon << '\n';
    if (!v.explanation.empty()) {
        os << "explanation:\n";
        for (const auto& c : v.explanation)
            os << "  " << c.concern << " fails because of " << c.cause << '\n';
    }
}

} // namespace

ActionDecl action_from_string(const std::string& text) {
    for (auto [prefix, positive] : {std::pair{"MakeTrue(", true}, std::pair{"MakeFalse(", false}}) {
        std::string_view p = prefix;
        if (text.starts_with(p) && text.ends_with(')')) {
            auto inner = SystemProp::parse(text.substr(p.size(), text.size() - p.size() - 1),
                                           model::PropKind::Configuration);
            if (!inner)
                throw Error("InvalidAction", "malformed action " + text);
            return positive ? ActionDecl::make_true(*inner) : ActionDecl::make_false(*inner);
        }
    }
    if (!model::is_identifier(text))
        throw Error("InvalidAction", "malformed action " + text);
    return ActionDecl::declared(text);
}

std::string to_json(const Report& r) {
    json j;
    j["task"] = r.task;
    if (r.verdict)
        j["verdict"] = verdict_json(*r.verdict);
    if (r.triggered)
        j["triggered"] = triggered_json(*r.triggered);
    if (r.completions)
        j["completions"] = completions_json(*r.completions);
    if (r.plans)
        j["plans"] = plans_json(*r.plans);
    if (r.program)
        j["program"] = *r.program;
    j["witnesses"] = r.verdict ? json(r.verdict->witnesses) : json::array();
    json diags = json::array();
    for (const auto& d : r.diagnostics)
        diags.push_back(
            json{{"severity", d.severity}, {"code", d.code}, {"message", d.message}, {"location", d.location}});
    j["diagnostics"] = diags;
    return j.dump(2) + "\n";
}

Report from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        Report r;
        r.task = j.at("task").get<std::string>();
        if (j.contains("verdict")) {
            r.verdict = verdict_from(j["verdict"]);
            r.verdict->witnesses = j.at("witnesses").get<std::vector<std::vector<std::string>>>();
        }
        if (j.contains("triggered"))
            r.triggered = triggered_from(j["triggered"]);
        if (j.contains("completions"))
            r.completions = completions_from(j["completions"]);
        if (j.contains("plans"))
            r.plans = plans_from(j["plans"]);
        if (j.contains("program"))
            r.program = j["program"].get<std::string>();
        for (const auto& d : j.at("diagnostics"))
            r.diagnostics.push_back({d.at("severity").get<std::string>(), d.at("code").get<std::string>(),
                                     d.at("message").get<std::string>(), d.at("location").get<std::string>()});
        return r;
    } catch (const json::exception& e) {
        throw Error("InvalidJson", e.what());
    }
}

std::string to_text(const Diagnostic& d) {
    std::string out = d.location.empty() ? "" : d.location + ": ";
    return out + d.severity + "[" + d.code + "]: " + d.message;
}

std::string to_text(const Report& r) {
    std::ostringstream os;
    if (r.program)
        os << *r.program;
    if (r.verdict) {
        verdict_text(os, *r.verdict);
        if (!r.verdict->unsatisfied_aspects.empty())
            os << "unsatisfied aspects: " << join(r.verdict->unsatisfied_aspects, ", ") << '\n';
    }
    if (r.triggered) {
        os << "triggered actions:";
        if (r.triggered->empty())
            os << " none";
        os << '\n';
        for (const auto& t : *r.triggered)
            os << "  " << t.action.str() << " @ " << t.step << '\n';
    }
    if (r.completions) {
        const auto& c = *r.completions;
        std::vector<std::string> open;
        for (const auto& p : c.undetermined)
            open.push_back(p.str());
        os << "goal: " << c.goal << '\n';
        os << "undetermined: " << (open.empty() ? "none" : join(open, ", ")) << '\n';
        os << "completions: " << c.completions.size() << '\n';
        for (std::size_t i = 0; i < c.completions.size(); ++i) {
            std::vector<std::string> parts;
            for (const auto& [p, v] : c.completions[i].assignment)
                parts.push_back(p.str() + "=" + (v ? "true" : "false"));
            os << "completion " << i + 1 << ": " << (parts.empty() ? "(nothing to choose)" : join(parts, ", "))
               << '\n';
        }
    }
    if (r.plans) {
        const auto& m = *r.plans;
        os << "goal: " << m.goal << '\n';
        os << "mitigation step: " << m.step << '\n';
        os << "candidates: " << join_actions(m.candidates) << '\n';
        os << "minimal: " << (m.minimal ? "yes" : "no") << '\n';
        os << "plans: " << m.plans.size() << '\n';
        for (std::size_t i = 0; i < m.plans.size(); ++i)
            os << "plan " << i + 1 << " (cost " << m.plans[i].cost
               << "): " << (m.plans[i].actions.empty() ? "(no action)" : join_actions(m.plans[i].actions)) << '\n';
    }
    if (r.verdict && !r.verdict->witnesses.empty()) {
        for (std::size_t i = 0; i < r.verdict->witnesses.size(); ++i) {
            os << "witness " << i + 1 << ":\n";
            for (const auto& lit : r.verdict->witnesses[i])
                os << "  " << lit << '\n';
        }
    }
    return os.str();
}

} // namespace cpsf::report
