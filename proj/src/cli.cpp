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

#include "cpsf/cli.hpp"

#include "cpsf/bundled.hpp"
#include "cpsf/encoder.hpp"
#include "cpsf/error.hpp"
#include "cpsf/reasoning_tasks.hpp"
#include "cpsf/report.hpp"
#include "cpsf/spec_language.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cpsf::cli {

namespace fs = std::filesystem;

namespace {

struct Config {
    std::string task;
    std::string domain;
    std::string scenario;
    std::string query;
    std::string goal;
    int horizon = -1;
    int step = 0;
    std::string format = "text";
    bool minimal = false;
    bool show_triggered = false;
    bool dump_program = false;
    std::string candidates;
    std::uint64_t budget = 0;
    std::size_t witnesses = 5;
    std::size_t max_solutions = 0;
};

// A failure that ends the run with an exit status and a diagnostic.
struct Failure {
    int status;
    std::vector<report::Diagnostic> diagnostics;
};

[[noreturn]] void fail(int status, std::string code, std::string message, std::string location = "") {
    throw Failure{status, {{"error", std::move(code), std::move(message), std::move(location)}}};
}

report::Diagnostic diagnostic(const lang::ParseError& e, const std::string& severity) {
    std::string loc = e.span.file + ":" + std::to_string(e.span.line) + ":" + std::to_string(e.span.column);
    std::string message = e.message;
    if (!e.expected.empty()) {
        message += " (expected ";
        for (std::size_t i = 0; i < e.expected.size(); ++i)
            message += (i ? ", '" : "'") + e.expected[i] + "'";
        message += ")";
    }
    return {severity, e.code, message, loc};
}

template <class T> T take(lang::ParseResult<T> result, std::vector<report::Diagnostic>& diags) {
    for (const auto& w : result.warnings)
        diags.push_back(diagnostic(w, "warning"));
    if (!result.ok()) {
        Failure f{UsageError, diags};
        for (const auto& e : result.errors)
            f.diagnostics.push_back(diagnostic(e, "error"));
        throw f;
    }
    return std::move(*result.value);
}

struct Source {
    std::string text;
    std::string name;
    fs::path dir;
    bool bundled = false;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(UsageError, "FileNotFound", "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Source load_domain(const std::string& arg) {
    constexpr std::string_view prefix = "bundled:";
    std::string bundled_name;
    if (arg.starts_with(prefix)) {
        bundled_name = arg.substr(prefix.size());
    } else if (fs::is_regular_file(arg)) {
        fs::path p(arg);
        return Source{read_file(p), arg, p.parent_path(), false};
    } else if (bundled::file(arg)) {
        bundled_name = arg;
    } else {
        fail(UsageError, "FileNotFound", "no such domain file: " + arg);
    }
    auto text = bundled::file(bundled_name);
    if (!text)
        fail(UsageError, "FileNotFound", "no bundled file named " + bundled_name);
    return Source{std::string(*text), "bundled:" + bundled_name, {}, true};
}

std::optional<lang::Scenario> pick(const std::vector<lang::Scenario>& all, const std::string& name) {
    for (const auto& s : all)
        if (s.name == name)
            return s;
    return std::nullopt;
}

lang::Scenario load_scenario(const Config& cfg, const Source& domain, const model::DomainSpec& spec,
                             std::vector<report::Diagnostic>& diags) {
    if (cfg.scenario.empty())
        return lang::Scenario{"empty", {}, {}};

    std::string path = cfg.scenario, name;
    if (auto hash = path.find('#'); hash != std::string::npos) {
        name = path.substr(hash + 1);
        path = path.substr(0, hash);
    }
    if (fs::is_regular_file(path)) {
        auto all = take(lang::parse_scenarios(read_file(path), spec, path), diags);
        if (name.empty()) {
            if (all.size() != 1)
                fail(UsageError, "AmbiguousScenario", path + " holds several scenarios; use " + path + "#NAME");
            return all.front();
        }
        if (auto s = pick(all, name))
            return *s;
        fail(UsageError, "UnknownScenario", "no scenario " + name + " in " + path);
    }
    if (!name.empty())
        fail(UsageError, "FileNotFound", "no such scenario file: " + path);

    // A bare name: look in the scenario files next to the domain, then in the bundled ones.
    if (!domain.bundled) {
        std::vector<fs::path> files;
        fs::path dir = domain.dir.empty() ? fs::path(".") : domain.dir;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".cpss")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            auto all = take(lang::parse_scenarios(read_file(f), spec, f.string()), diags);
            if (auto s = pick(all, cfg.scenario))
                return *s;
        }
    }
    auto all = lang::parse_scenarios(bundled::lkas_scenarios(), spec, "bundled:lkas.cpss");
    if (all.ok())
        if (auto s = pick(*all.value, cfg.scenario))
            return *s;
    fail(UsageError, "UnknownScenario", "no scenario named " + cfg.scenario);
}

tasks::Options task_options(const Config& cfg) {
    tasks::Options o;
    if (cfg.horizon >= 0)
        o.horizon = cfg.horizon;
    o.witnesses = cfg.witnesses;
    o.budget = cfg.budget;
    if (cfg.max_solutions > 0)
        o.max_solutions = cfg.max_solutions;
    return o;
}

std::set<model::ActionDecl> parse_candidates(const std::string& text, const model::DomainSpec& spec,
                                             std::vector<report::Diagnostic>& diags) {
    std::set<model::ActionDecl> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos)
            continue;
        out.insert(take(lang::parse_action(item, spec), diags));
    }
    if (out.empty())
        fail(UsageError, "NoCandidates", "--candidates lists no action");
    return out;
}

int verdict_status(tasks::Status s) {
    switch (s) {
    case tasks::Status::Entailed:
        return Success;
    case tasks::Status::NotEntailed:
        return Negative;
    case tasks::Status::Inconsistent:
        break;
    }
    return Inconsistent;
}

int execute(const Config& cfg, report::Report& rep, std::ostream& err) {
    auto domain = load_domain(cfg.domain);
    auto spec = take(lang::parse_domain(domain.text, domain.name), rep.diagnostics);
    auto scenario = load_scenario(cfg, domain, spec, rep.diagnostics);
    auto options = task_options(cfg);

    auto dump = [&](int horizon, const enc::TaskMode& mode) {
        if (cfg.dump_program)
            err << asp::dump(enc::encode(spec, scenario, enc::Horizon{horizon}, mode).program);
    };

    if (cfg.task == "validate") {
        for (const auto& d : rep.diagnostics)
            if (d.severity == "error")
                return UsageError;
        return Success;
    }
    if (cfg.task == "dump") {
        int horizon = cfg.horizon >= 0 ? cfg.horizon : tasks::default_horizon(scenario, 0);
        rep.program = asp::dump(enc::encode(spec, scenario, enc::Horizon{horizon}, enc::BaseMode{}).program);
        return Success;
    }
    if (cfg.task == "check" || cfg.task == "whatif") {
        if (cfg.query.empty() && cfg.task == "check")
            fail(UsageError, "MissingQuery", "check needs --query");
        if (!cfg.query.empty()) {
            auto query = take(lang::parse_query(cfg.query, spec), rep.diagnostics);
            dump(options.horizon.value_or(tasks::default_horizon(scenario, query.step)), enc::BaseMode{});
            rep.verdict = cfg.task == "check" ? tasks::check(spec, scenario, query, options)
                                              : tasks::what_if(spec, scenario, query, options);
        }
        if (cfg.task == "whatif" && (cfg.show_triggered || cfg.query.empty())) {
            if (cfg.query.empty())
                dump(options.horizon.value_or(tasks::default_horizon(scenario, 0)), enc::BaseMode{});
            rep.triggered = tasks::triggered_actions(spec, scenario, options);
        }
        return rep.verdict ? verdict_status(rep.verdict->status) : Success;
    }
    if (cfg.task == "allsat") {
        dump(options.horizon.value_or(tasks::default_horizon(scenario, cfg.step)), enc::BaseMode{});
        rep.verdict = tasks::all_sat(spec, scenario, cfg.step, options);
        return verdict_status(rep.verdict->status);
    }
    if (cfg.task == "complete") {
        auto goal = take(lang::parse_goal(cfg.goal, spec), rep.diagnostics);
        dump(options.horizon.value_or(tasks::default_horizon(scenario, 0)), enc::CompletionMode{goal, true});
        rep.completions = tasks::complete_design(spec, scenario, goal, options);
        return rep.completions->completions.empty() ? Negative : Success;
    }
    if (cfg.task == "mitigate") {
        auto goal = take(lang::parse_goal(cfg.goal, spec), rep.diagnostics);
        std::optional<std::set<model::ActionDecl>> candidates;
        if (!cfg.candidates.empty())
            candidates = parse_candidates(cfg.candidates, spec, rep.diagnostics);
        int s_sharp = enc::mitigation_step(scenario);
        enc::MitigationMode mode{goal, s_sharp, candidates.value_or(tasks::default_candidates(spec, scenario)),
                                 cfg.minimal};
        if (!mode.candidates.empty())
            dump(options.horizon.value_or(s_sharp + 1), mode);
        rep.plans = tasks::mitigate(spec, scenario, goal, cfg.minimal, candidates, options);
        return rep.plans->plans.empty() ? Negative : Success;
    }
    fail(UsageError, "UnknownTask", "unknown subcommand " + cfg.task);
}

int status_for(const std::string& code) {
    if (code == "ResourceBudgetExceeded")
        return BudgetExceeded;
    if (code == "Inconsistent")
        return Inconsistent;
    return UsageError;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    if (const char* env = std::getenv("CPSF_BUDGET")) {
        try {
            cfg.budget = std::stoull(env);
        } catch (const std::exception&) {
            err << "error[InvalidBudget]: CPSF_BUDGET is not a number\n";
            return UsageError;
        }
    } else {
        cfg.budget = asp::SolveOptions{}.node_budget;
    }

    CLI::App app{"Reason about cyber-physical system designs against a concern forest.", "cpsf"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    auto common = [&](CLI::App* sub, bool needs_scenario) {
        sub->add_option("domain", cfg.domain, "Domain file (.cpsf); bundled:NAME selects a bundled file")->required();
        auto* sc = sub->add_option("--scenario,-s", cfg.scenario,
                                   "Scenario file, FILE#NAME, or a scenario name found beside the domain");
        if (needs_scenario)
            sc->required();
        sub->add_option("--horizon", cfg.horizon, "Last time step of the encoding")->check(CLI::NonNegativeNumber);
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--dump-program", cfg.dump_program, "Print the ground program on the error stream");
        sub->add_option("--budget", cfg.budget, "Search node budget (also CPSF_BUDGET)");
        sub->add_option("--witnesses", cfg.witnesses, "Answer sets to show as witnesses");
    };

    auto* check = app.add_subcommand("check", "Is a fluent entailed at a step?");
    common(check, false);
    check->add_option("--query,-q", cfg.query, "e.g. sat(Functional)@0")->required();

    auto* allsat = app.add_subcommand("allsat", "Is every aspect satisfied at a step?");
    common(allsat, false);
    allsat->add_option("--step", cfg.step, "Step to check")->check(CLI::NonNegativeNumber);

    auto* complete = app.add_subcommand("complete", "Complete a partial design so that a goal holds");
    common(complete, true);
    complete->add_option("--goal,-g", cfg.goal, "Concern path, sat(...), property, or all")->required();
    complete->add_option("--max-solutions", cfg.max_solutions, "Stop after this many completions");

    auto* whatif = app.add_subcommand("whatif", "Project a history of actions");
    common(whatif, true);
    whatif->add_option("--query,-q", cfg.query, "e.g. sat(Functional)@1");
    whatif->add_flag("--show-triggered", cfg.show_triggered, "List actions triggered during the history");

    auto* mitigate = app.add_subcommand("mitigate", "Find actions that restore a goal after the history");
    common(mitigate, true);
    mitigate->add_option("--restore,--goal,-g", cfg.goal, "Concern path, sat(...), property, or all")->required();
    mitigate->add_flag("--minimal", cfg.minimal, "Only plans with the fewest actions");
    mitigate->add_option("--candidates", cfg.candidates, "Comma-separated candidate actions");
    mitigate->add_option("--max-solutions", cfg.max_solutions, "Stop after this many plans");

    auto* validate = app.add_subcommand("validate", "Parse and validate a domain (and scenario)");
    common(validate, false);

    auto* dump = app.add_subcommand("dump", "Print the ground program of the base encoding");
    common(dump, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Success : UsageError;
    }
    cfg.task = app.get_subcommands().front()->get_name();

    report::Report rep;
    rep.task = cfg.task;
    int status = Success;
    try {
        status = execute(cfg, rep, err);
    } catch (const Failure& f) {
        status = f.status;
        rep.diagnostics = f.diagnostics;
    } catch (const Error& e) {
        status = status_for(e.code());
        rep.diagnostics.push_back({"error", e.code(), e.what(), ""});
    }

    // Warnings produced by the tasks travel with the results; collect them once.
    auto add_warnings = [&](const std::vector<std::string>& ws) {
        for (const auto& w : ws)
            rep.diagnostics.push_back({"warning", "TaskWarning", w, ""});
    };
    if (rep.verdict)
        add_warnings(rep.verdict->warnings);
    if (rep.completions)
        add_warnings(rep.completions->warnings);
    if (rep.plans)
        add_warnings(rep.plans->warnings);

    if (cfg.format == "json") {
        out << report::to_json(rep);
    } else {
        out << report::to_text(rep);
        for (const auto& d : rep.diagnostics)
            err << report::to_text(d) << '\n';
    }
    return status;
}

} // namespace cpsf::cli
