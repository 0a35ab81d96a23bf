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

#include "cpsf/concern_model.hpp"

#include "cpsf/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace cpsf::model {

namespace {

bool all_identifiers(const std::vector<std::string>& segments) {
    return !segments.empty() && std::all_of(segments.begin(), segments.end(), [](const std::string& s) {
        return is_identifier(s);
    });
}

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

bool is_identifier(std::string_view text) {
    if (text.empty() || !std::isalpha(static_cast<unsigned char>(text.front())))
        return false;
    return std::all_of(text.begin(), text.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) != 0; });
}

ConcernId ConcernId::parse(std::string_view dotted) {
    ConcernId id;
    if (dotted.empty())
        return id;
    std::size_t start = 0;
    for (;;) {
        std::size_t dot = dotted.find('.', start);
        id.path.emplace_back(dotted.substr(start, dot == std::string_view::npos ? dotted.npos : dot - start));
        if (dot == std::string_view::npos)
            break;
        start = dot + 1;
    }
    return id;
}

std::string ConcernId::str() const {
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i)
            out += '.';
        out += path[i];
    }
    return out;
}

std::optional<SystemProp> SystemProp::parse(std::string_view text, PropKind kind) {
    auto open = text.find('[');
    if (open == std::string_view::npos || text.empty() || text.back() != ']')
        return std::nullopt;
    SystemProp p;
    p.kind = kind;
    p.name = std::string(text.substr(open + 1, text.size() - open - 2));
    std::string_view path = text.substr(0, open);
    std::size_t start = 0;
    for (;;) {
        std::size_t us = path.find('_', start);
        p.system_path.emplace_back(path.substr(start, us == std::string_view::npos ? path.npos : us - start));
        if (us == std::string_view::npos)
            break;
        start = us + 1;
    }
    if (!all_identifiers(p.system_path) || !is_identifier(p.name))
        return std::nullopt;
    return p;
}

std::string SystemProp::str() const {
    std::string out;
    for (std::size_t i = 0; i < system_path.size(); ++i) {
        if (i)
            out += '_';
        out += system_path[i];
    }
    out += '[';
    out += name;
    out += ']';
    return out;
}

std::string to_string(const Fluent& fluent) {
    return std::visit(overloaded{
                          [](const SystemProp& p) { return p.str(); },
                          [](const Sat& s) { return "sat(" + s.concern.str() + ")"; },
                          [](const SatAll&) { return std::string("sat(all)"); },
                      },
                      fluent);
}

std::string Literal::str() const { return (positive ? "" : "-") + to_string(fluent); }

// ---------------------------------------------------------------------------
// ConcernForest

void ConcernForest::add_aspect(const std::string& name) {
    ConcernId id({name});
    aspects.insert(id);
    concerns.insert(id);
}

void ConcernForest::add_path(const ConcernId& id) {
    ConcernId prefix;
    for (const auto& segment : id.path) {
        ConcernId next = prefix;
        next.path.push_back(segment);
        concerns.insert(next);
        if (!prefix.empty())
            edges.emplace(prefix, next);
        prefix = std::move(next);
    }
}

std::optional<ConcernId> ConcernForest::parent_of(const ConcernId& id) const {
    for (const auto& [parent, child] : edges)
        if (child == id)
            return parent;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// ActionDecl

ActionDecl ActionDecl::declared(std::string name) { return ActionDecl{std::move(name), ActionOrigin::Declared, std::nullopt}; }

ActionDecl ActionDecl::make_true(const SystemProp& config) {
    return ActionDecl{"MakeTrue", ActionOrigin::MakeTrue, config};
}

ActionDecl ActionDecl::make_false(const SystemProp& config) {
    return ActionDecl{"MakeFalse", ActionOrigin::MakeFalse, config};
}

std::string ActionDecl::str() const {
    if (origin == ActionOrigin::Declared || !config)
        return name;
    return name + "(" + config->str() + ")";
}

// ---------------------------------------------------------------------------
// DomainSpec

void DomainSpec::add_property(const SystemProp& p) {
    SystemProp copy = p;
    copy.kind = PropKind::Property;
    properties.insert(std::move(copy));
}

void DomainSpec::add_configuration(SystemProp c) {
    c.kind = PropKind::Configuration;
    actions.insert(ActionDecl::make_true(c));
    actions.insert(ActionDecl::make_false(c));
    properties.insert(std::move(c));
}

void DomainSpec::add_action(const std::string& name) { actions.insert(ActionDecl::declared(name)); }

void DomainSpec::add_link(const ConcernId& concern, const SystemProp& property) {
    links.insert(AddressLink{concern, property});
}

const SystemProp* DomainSpec::find_property(std::string_view rendered) const {
    for (const auto& p : properties)
        if (p.str() == rendered)
            return &p;
    return nullptr;
}

const ActionDecl* DomainSpec::find_action(std::string_view rendered) const {
    for (const auto& a : actions)
        if (a.str() == rendered)
            return &a;
    return nullptr;
}

bool operator==(const DomainSpec& a, const DomainSpec& b) {
    if (!(a.forest == b.forest) || a.links != b.links || a.actions != b.actions || a.statements != b.statements)
        return false;
    if (a.properties.size() != b.properties.size())
        return false;
    return std::equal(a.properties.begin(), a.properties.end(), b.properties.begin(),
                      [](const SystemProp& x, const SystemProp& y) { return x == y && x.kind == y.kind; });
}

// ---------------------------------------------------------------------------
// Validation

std::size_t ValidationReport::error_count() const {
    return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(),
                                                  [](const Diagnostic& d) { return d.severity == Severity::Error; }));
}

std::size_t ValidationReport::warning_count() const { return diagnostics.size() - error_count(); }

bool ValidationReport::has(std::string_view code) const {
    return std::any_of(diagnostics.begin(), diagnostics.end(), [&](const Diagnostic& d) { return d.code == code; });
}

namespace {

class Validator {
public:
    explicit Validator(const DomainSpec& spec) : spec_(spec) {}

    ValidationReport run() {
        check_forest();
        check_properties();
        check_links();
        check_actions();
        for (const auto& stmt : spec_.statements)
            check_statement(stmt);
        check_unused();
        return std::move(report_);
    }

private:
    void error(std::string code, std::string entity, std::string message) {
        report_.diagnostics.push_back({Severity::Error, std::move(code), std::move(entity), std::move(message)});
    }
    void warning(std::string code, std::string entity, std::string message) {
        report_.diagnostics.push_back({Severity::Warning, std::move(code), std::move(entity), std::move(message)});
    }

    void check_forest() {
        const auto& forest = spec_.forest;
        std::set<std::string> aspect_names;
        for (const auto& a : forest.aspects) {
            if (a.path.size() != 1 || !is_identifier(a.leaf())) {
                error("InvalidConcernId", a.str(), "aspect must be a single identifier");
                continue;
            }
            aspect_names.insert(a.leaf());
            if (!forest.contains(a))
                error("UnknownConcern", a.str(), "aspect is not listed among the concerns");
        }
        for (const auto& c : forest.concerns) {
            if (!all_identifiers(c.path)) {
                error("InvalidConcernId", c.str(), "concern path segments must be identifiers");
                continue;
            }
            if (!aspect_names.count(c.aspect()))
                error("UnknownAspect", c.str(), "first segment '" + c.aspect() + "' is not a declared aspect");
        }

        std::map<ConcernId, std::vector<ConcernId>> parents;
        std::map<ConcernId, std::vector<ConcernId>> kids;
        for (const auto& [p, ch] : forest.edges) {
            bool ok = true;
            if (!forest.contains(p)) {
                error("UnknownConcern", p.str(), "edge endpoint is not a declared concern");
                ok = false;
            }
            if (!forest.contains(ch)) {
                error("UnknownConcern", ch.str(), "edge endpoint is not a declared concern");
                ok = false;
            }
            if (!ok)
                continue;
            parents[ch].push_back(p);
            kids[p].push_back(ch);
        }
        for (const auto& [ch, ps] : parents) {
            if (ps.size() > 1)
                error("MultipleParents", ch.str(), "concern has more than one parent");
            if (forest.aspects.count(ch))
                error("AspectHasParent", ch.str(), "aspect appears as a sub-concern");
        }
        for (const auto& c : forest.concerns)
            if (!parents.count(c) && !forest.aspects.count(c))
                error("RootNotAspect", c.str(), "concern has no parent and is not an aspect");

        // Cycle detection by colored DFS.
        std::map<ConcernId, int> color;
        std::set<ConcernId> reported;
        std::function<void(const ConcernId&)> dfs = [&](const ConcernId& n) {
            color[n] = 1;
            for (const auto& k : kids[n]) {
                if (color[k] == 1) {
                    if (reported.insert(k).second)
                        error("CyclicForest", k.str(), "sub-concern edges form a cycle through " + k.str());
                } else if (color[k] == 0) {
                    dfs(k);
                }
            }
            color[n] = 2;
        };
        for (const auto& c : forest.concerns)
            if (color[c] == 0)
                dfs(c);
    }

    void check_properties() {
        for (const auto& p : spec_.properties)
            if (!all_identifiers(p.system_path) || !is_identifier(p.name))
                error("InvalidIdentifier", p.str(), "malformed property name");
    }

    void check_links() {
        for (const auto& link : spec_.links) {
            if (!spec_.forest.contains(link.concern))
                error("UnknownConcern", link.concern.str(), "addressed concern is not declared");
            const SystemProp* p = spec_.find_property(link.property.str());
            if (!p)
                error("UnknownProperty", link.property.str(), "addressing property is not declared");
            else if (p->kind != PropKind::Property)
                error("AddressByConfiguration", p->str(), "only properties may address concerns");
        }
    }

    void check_actions() {
        for (const auto& a : spec_.actions) {
            if (a.origin == ActionOrigin::Declared) {
                if (!is_identifier(a.name))
                    error("InvalidIdentifier", a.name, "malformed action name");
                continue;
            }
            if (!a.config) {
                error("MakeOnNonConfig", a.str(), "MakeTrue/MakeFalse without a configuration");
                continue;
            }
            const SystemProp* p = spec_.find_property(a.config->str());
            if (!p)
                error("UnknownProperty", a.config->str(), a.str() + " refers to an undeclared configuration");
            else if (p->kind != PropKind::Configuration)
                error("MakeOnNonConfig", a.str(), a.config->str() + " is not a configuration");
        }
        for (const auto& p : spec_.properties) {
            if (p.kind != PropKind::Configuration)
                continue;
            if (!spec_.actions.count(ActionDecl::make_true(p)) || !spec_.actions.count(ActionDecl::make_false(p)))
                error("MissingMakeAction", p.str(), "configuration lacks MakeTrue/MakeFalse actions");
        }
    }

    void check_fluent(const Fluent& f) {
        if (const auto* p = std::get_if<SystemProp>(&f)) {
            used_props_.insert(p->str());
            if (!spec_.find_property(p->str()))
                error("UnknownProperty", p->str(), "reference to an undeclared property");
        } else if (const auto* s = std::get_if<Sat>(&f)) {
            if (!spec_.forest.contains(s->concern))
                error("UnknownConcern", s->concern.str(), "reference to an undeclared concern");
        }
    }

    void check_action(const ActionDecl& a) {
        used_actions_.insert(a.str());
        if (!spec_.actions.count(a))
            error("UnknownAction", a.str(), "reference to an undeclared action");
    }

    void check_condition(const Condition& cond, bool allow_empty) {
        if (cond.empty() && !allow_empty)
            error("EmptyCondition", "", "condition must contain at least one literal");
        for (const auto& lit : cond.literals) {
            check_fluent(lit.fluent);
            if (std::holds_alternative<SatAll>(lit.fluent))
                error("InvalidReference", lit.str(), "sat(all) cannot appear in a condition");
        }
        for (std::size_t i = 0; i < cond.literals.size(); ++i)
            for (std::size_t j = i + 1; j < cond.literals.size(); ++j)
                if (cond.literals[i] == cond.literals[j].complement())
                    error("ContradictoryCondition", cond.literals[i].str(),
                          "condition contains both a literal and its complement");
    }

    void check_statement(const Statement& stmt) {
        std::visit(overloaded{
                       [&](const Impacts& s) {
                           check_condition(s.condition, false);
                           check_fluent(s.target);
                       },
                       [&](const Default& s) {
                           if (std::holds_alternative<SatAll>(s.target)) {
                               error("InvalidReference", "sat(all)", "sat(all) has a fixed default");
                               return;
                           }
                           check_fluent(s.target);
                           auto [it, fresh] = defaults_.emplace(to_string(s.target), s.value);
                           if (!fresh && it->second != s.value)
                               error("ConflictingDefault", to_string(s.target), "fluent defaults to both true and false");
                       },
                       [&](const Causes& s) {
                           check_action(s.action);
                           check_fluent(s.effect);
                           check_condition(s.condition, true);
                       },
                       [&](const Triggers& s) {
                           check_condition(s.condition, false);
                           check_action(s.action);
                       },
                   },
                   stmt);
    }

    void check_unused() {
        for (const auto& link : spec_.links)
            used_props_.insert(link.property.str());
        for (const auto& p : spec_.properties)
            if (!used_props_.count(p.str()))
                warning("UnusedProperty", p.str(), "declared but never referenced");
        for (const auto& a : spec_.actions)
            if (a.origin == ActionOrigin::Declared && !used_actions_.count(a.str()))
                warning("UnusedAction", a.str(), "declared but never referenced");
    }

    const DomainSpec& spec_;
    ValidationReport report_;
    std::set<std::string> used_props_;
    std::set<std::string> used_actions_;
    std::map<std::string, bool> defaults_;
};

} // namespace

ValidationReport validate(const DomainSpec& spec) { return Validator(spec).run(); }

std::vector<ConcernId> children(const ConcernForest& forest, const ConcernId& c) {
    if (!forest.contains(c))
        throw Error("UnknownConcern", "unknown concern " + c.str());
    std::vector<ConcernId> out;
    for (const auto& [parent, child] : forest.edges)
        if (parent == c)
            out.push_back(child);
    return out;
}

std::vector<SystemProp> addressing_properties(const DomainSpec& spec, const ConcernId& c) {
    if (!spec.forest.contains(c))
        throw Error("UnknownConcern", "unknown concern " + c.str());
    std::vector<SystemProp> out;
    for (const auto& link : spec.links)
        if (link.concern == c)
            out.push_back(link.property);
    return out;
}

std::vector<Fluent> fluents(const DomainSpec& spec) {
    std::vector<Fluent> out;
    for (const auto& p : spec.properties)
        out.emplace_back(p);
    for (const auto& c : spec.forest.concerns)
        out.emplace_back(Sat{c});
    std::sort(out.begin(), out.end(), [](const Fluent& a, const Fluent& b) { return to_string(a) < to_string(b); });
    return out;
}

std::optional<ConcernId> resolve_concern(const ConcernForest& forest, const ConcernId& partial) {
    if (partial.empty())
        return std::nullopt;
    if (forest.contains(partial))
        return partial;
    std::optional<ConcernId> found;
    for (const auto& c : forest.concerns) {
        if (c.path.size() < partial.path.size())
            continue;
        if (!std::equal(partial.path.rbegin(), partial.path.rend(), c.path.rbegin()))
            continue;
        if (found)
            return std::nullopt; // ambiguous
        found = c;
    }
    return found;
}

std::map<Fluent, bool> default_values(const DomainSpec& spec) {
    std::map<Fluent, bool> out;
    for (const auto& c : spec.forest.concerns)
        out[Sat{c}] = true;
    for (const auto& stmt : spec.statements)
        if (const auto* d = std::get_if<Default>(&stmt))
            out[d->target] = d->value;
    return out;
}

} // namespace cpsf::model
