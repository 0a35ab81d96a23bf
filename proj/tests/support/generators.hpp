// Random inputs shared by the unit tests and the acceptance runner.

#ifndef CPSF_TEST_GENERATORS_HPP
#define CPSF_TEST_GENERATORS_HPP

#include "cpsf/bundled.hpp"
#include "cpsf/concern_model.hpp"
#include "cpsf/logic_kernel.hpp"
#include "cpsf/spec_language.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpsf::testing {

struct ProgramShape {
    int max_atoms = 12;
    int max_rules = 20;
    double max_naf_density = 0.5;
    int max_choices = 2;
    int max_weak = 3;
};

inline asp::GroundProgram random_program(std::mt19937& rng, const ProgramShape& shape = {}) {
    std::uniform_int_distribution<int> atoms_d(1, shape.max_atoms);
    std::uniform_int_distribution<int> rules_d(0, shape.max_rules);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int n_atoms = atoms_d(rng);
    double naf_density = unit(rng) * shape.max_naf_density;

    asp::GroundProgram p;
    std::vector<asp::AtomId> ids;
    for (int i = 0; i < n_atoms; ++i)
        ids.push_back(p.atoms.intern(asp::GroundAtom{"a" + std::to_string(i), {}}));
    std::uniform_int_distribution<int> pick(0, n_atoms - 1);
    auto lit = [&] { return asp::Literal{ids[pick(rng)], unit(rng) < 0.2}; };
    auto body = [&](int max_len, std::vector<asp::Literal>& pos, std::vector<asp::Literal>& naf) {
        int len = std::uniform_int_distribution<int>(0, max_len)(rng);
        for (int k = 0; k < len; ++k)
            (unit(rng) < naf_density ? naf : pos).push_back(lit());
    };

    int n_rules = rules_d(rng);
    int n_choices = std::uniform_int_distribution<int>(0, shape.max_choices)(rng);
    for (int r = 0; r < n_rules; ++r) {
        asp::Rule rule;
        body(3, rule.pos, rule.naf);
        double kind = unit(rng);
        if (kind < 0.15)
            ; // constraint
        else
            rule.head.push_back(lit());
        if (rule.head.empty() && rule.pos.empty() && rule.naf.empty())
            rule.head.push_back(lit());
        p.add_rule(rule);
    }
    for (int c = 0; c < n_choices; ++c) {
        std::vector<asp::Literal> pos, naf;
        body(2, pos, naf);
        p.add_choice(asp::Literal{ids[pick(rng)], false}, pos, naf);
    }
    int n_weak = std::uniform_int_distribution<int>(0, shape.max_weak)(rng);
    for (int w = 0; w < n_weak; ++w) {
        asp::WeakConstraint wc;
        body(2, wc.pos, wc.naf);
        if (wc.pos.empty() && wc.naf.empty())
            wc.pos.push_back(lit());
        p.add_weak(wc);
    }
    return p;
}

/// Random domain built only from valid pieces, so it always validates.
inline model::DomainSpec random_spec(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto between = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    model::DomainSpec spec;

    int n_aspects = between(0, 3);
    std::vector<model::ConcernId> concerns;
    for (int a = 0; a < n_aspects; ++a) {
        std::string name = "Aspect" + std::to_string(a);
        spec.forest.add_aspect(name);
        concerns.push_back(model::ConcernId({name}));
    }
    int n_concerns = n_aspects ? between(0, 6) : 0;
    for (int c = 0; c < n_concerns; ++c) {
        auto parent = concerns[between(0, static_cast<int>(concerns.size()) - 1)];
        auto path = parent.path;
        path.push_back("C" + std::to_string(c));
        model::ConcernId id(path);
        spec.forest.add_path(id);
        concerns.push_back(id);
    }

    std::vector<model::SystemProp> props, configs;
    int n_props = between(0, 4);
    for (int i = 0; i < n_props; ++i) {
        std::vector<std::string> sys{"dev" + std::to_string(between(0, 2))};
        if (unit(rng) < 0.4)
            sys.push_back("part" + std::to_string(i));
        model::SystemProp p{sys, "p" + std::to_string(i), model::PropKind::Property};
        spec.add_property(p);
        props.push_back(p);
        if (!concerns.empty() && unit(rng) < 0.7)
            spec.add_link(concerns[between(0, static_cast<int>(concerns.size()) - 1)], p);
    }
    int n_configs = between(0, 2);
    for (int i = 0; i < n_configs; ++i) {
        model::SystemProp c{{"dev"}, "cfg" + std::to_string(i), model::PropKind::Configuration};
        spec.add_configuration(c);
        configs.push_back(c);
    }
    int n_actions = between(0, 2);
    std::vector<model::ActionDecl> actions;
    for (int i = 0; i < n_actions; ++i) {
        spec.add_action("Act" + std::to_string(i));
        actions.push_back(model::ActionDecl::declared("Act" + std::to_string(i)));
    }
    for (const auto& c : configs) {
        actions.push_back(model::ActionDecl::make_true(c));
        actions.push_back(model::ActionDecl::make_false(c));
    }

    std::vector<model::Fluent> atoms;
    for (const auto& p : props)
        atoms.push_back(p);
    for (const auto& c : configs)
        atoms.push_back(c);
    for (std::size_t i = 1; i < concerns.size(); ++i)
        atoms.push_back(model::Sat{concerns[i]});
    if (atoms.empty())
        return spec;

    auto condition = [&] {
        model::Condition cond;
        int len = between(1, 3);
        for (int k = 0; k < len; ++k) {
            auto f = atoms[between(0, static_cast<int>(atoms.size()) - 1)];
            model::Literal l{f, unit(rng) < 0.6};
            bool clash = false;
            for (const auto& x : cond.literals)
                clash = clash || x.fluent == l.fluent;
            if (!clash)
                cond.literals.push_back(l);
        }
        return cond;
    };
    std::vector<model::SystemProp> targets = props;
    targets.insert(targets.end(), configs.begin(), configs.end());
    if (targets.empty())
        return spec;
    std::set<std::string> defaulted;
    int n_statements = between(0, 5);
    for (int s = 0; s < n_statements; ++s) {
        int kind = between(0, 3);
        auto target = targets[between(0, static_cast<int>(targets.size()) - 1)];
        if (kind == 0) {
            spec.statements.emplace_back(
                model::Impacts{condition(), unit(rng) < 0.5 ? model::Sign::Pos : model::Sign::Neg, target});
        } else if (kind == 1) {
            model::Fluent f = target;
            if (concerns.size() > 1 && unit(rng) < 0.3)
                f = model::Sat{concerns[between(1, static_cast<int>(concerns.size()) - 1)]};
            if (defaulted.insert(model::to_string(f)).second)
                spec.statements.emplace_back(model::Default{f, unit(rng) < 0.7});
        } else if (kind == 2 && !actions.empty()) {
            auto a = actions[between(0, static_cast<int>(actions.size()) - 1)];
            model::Condition cond;
            if (unit(rng) < 0.5)
                cond = condition();
            spec.statements.emplace_back(model::Causes{a, target, unit(rng) < 0.5, cond});
        } else if (kind == 3 && !actions.empty()) {
            auto a = actions[between(0, static_cast<int>(actions.size()) - 1)];
            spec.statements.emplace_back(model::Triggers{condition(), a});
        }
    }
    return spec;
}

inline model::DomainSpec load_domain(std::string_view text) {
    auto r = lang::parse_domain(text, "bundled");
    if (!r.ok())
        throw std::runtime_error("bundled domain does not parse: " + r.errors.front().str());
    return *r.value;
}

inline model::DomainSpec lkas() { return load_domain(bundled::lkas_domain()); }
inline model::DomainSpec lkas_patch() { return load_domain(bundled::lkas_patch_domain()); }

inline lang::Scenario lkas_scenario(const model::DomainSpec& spec, const std::string& name) {
    auto r = lang::parse_scenarios(bundled::lkas_scenarios(), spec, "bundled");
    if (!r.ok())
        throw std::runtime_error("bundled scenarios do not parse");
    for (const auto& s : *r.value)
        if (s.name == name)
            return s;
    throw std::runtime_error("no bundled scenario " + name);
}

} // namespace cpsf::testing

#endif
