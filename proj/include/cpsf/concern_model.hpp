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

// In-memory model of a CPS Framework ontology: the concern forest,
// properties and configurations of the system under study, actions, and
// the dependency statements that link them.

#ifndef CPSF_CONCERN_MODEL_HPP
#define CPSF_CONCERN_MODEL_HPP

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cpsf::model {

/// True for a letter followed by letters or digits.
bool is_identifier(std::string_view text);

/// Dotted concern path, e.g. Trustworthiness.Security.Cybersecurity.
struct ConcernId {
    std::vector<std::string> path;

    ConcernId() = default;
    explicit ConcernId(std::vector<std::string> segments) : path(std::move(segments)) {}

    /// Splits on '.' without validating the segments.
    static ConcernId parse(std::string_view dotted);

    std::string str() const;
    bool empty() const { return path.empty(); }
    const std::string& aspect() const { return path.front(); }
    const std::string& leaf() const { return path.back(); }

    auto operator<=>(const ConcernId&) const = default;
};

enum class PropKind { Property, Configuration };

/// `seg1_seg2[prop]`. Identity is the rendered name; the kind is a tag.
struct SystemProp {
    std::vector<std::string> system_path;
    std::string name;
    PropKind kind = PropKind::Property;

    /// Parses `a_b[c]`; nullopt if the text is not of that shape.
    static std::optional<SystemProp> parse(std::string_view text, PropKind kind = PropKind::Property);

    std::string str() const;

    friend bool operator==(const SystemProp& a, const SystemProp& b) { return a.str() == b.str(); }
    friend std::strong_ordering operator<=>(const SystemProp& a, const SystemProp& b) {
        return a.str() <=> b.str();
    }
};

struct Sat {
    ConcernId concern;
    auto operator<=>(const Sat&) const = default;
};

/// The meta-aspect standing for satisfaction of the whole forest.
struct SatAll {
    auto operator<=>(const SatAll&) const = default;
};

using Fluent = std::variant<SystemProp, Sat, SatAll>;

std::string to_string(const Fluent& fluent);

struct Literal {
    Fluent fluent;
    bool positive = true;

    Literal complement() const { return Literal{fluent, !positive}; }
    std::string str() const;

    auto operator<=>(const Literal&) const = default;
};

struct ConcernForest {
    std::set<ConcernId> aspects;
    std::set<ConcernId> concerns; // includes the aspects
    std::set<std::pair<ConcernId, ConcernId>> edges;

    void add_aspect(const std::string& name);
    /// Declares every proper prefix of `id` and the chain of edges to it.
    void add_path(const ConcernId& id);
    bool contains(const ConcernId& id) const { return concerns.count(id) != 0; }
    std::optional<ConcernId> parent_of(const ConcernId& id) const;

    bool operator==(const ConcernForest&) const = default;
};

struct AddressLink {
    ConcernId concern;
    SystemProp property;
    auto operator<=>(const AddressLink&) const = default;
    bool operator==(const AddressLink&) const = default;
};

enum class ActionOrigin { Declared, MakeTrue, MakeFalse };

struct ActionDecl {
    std::string name;
    ActionOrigin origin = ActionOrigin::Declared;
    std::optional<SystemProp> config; // set for MakeTrue / MakeFalse

    static ActionDecl declared(std::string name);
    static ActionDecl make_true(const SystemProp& config);
    static ActionDecl make_false(const SystemProp& config);

    /// `Attack`, `MakeFalse(cam[basicOne])`.
    std::string str() const;

    friend bool operator==(const ActionDecl& a, const ActionDecl& b) { return a.str() == b.str(); }
    friend std::strong_ordering operator<=>(const ActionDecl& a, const ActionDecl& b) {
        return a.str() <=> b.str();
    }
};

struct Condition {
    std::vector<Literal> literals;
    bool empty() const { return literals.empty(); }
    bool operator==(const Condition&) const = default;
};

enum class Sign { Pos, Neg };

struct Impacts {
    Condition condition;
    Sign sign = Sign::Neg;
    SystemProp target;
    bool operator==(const Impacts&) const = default;
};

struct Default {
    Fluent target; // SystemProp or Sat
    bool value = true;
    bool operator==(const Default&) const = default;
};

struct Causes {
    ActionDecl action;
    SystemProp effect;
    bool effect_positive = true;
    Condition condition; // may be empty
    bool operator==(const Causes&) const = default;
};

struct Triggers {
    Condition condition;
    ActionDecl action;
    bool operator==(const Triggers&) const = default;
};

using Statement = std::variant<Impacts, Default, Causes, Triggers>;

struct DomainSpec {
    ConcernForest forest;
    std::set<SystemProp> properties; // both kinds
    std::set<AddressLink> links;
    std::set<ActionDecl> actions;    // declared plus generated MakeTrue/MakeFalse
    std::vector<Statement> statements;

    void add_property(const SystemProp& p);
    /// Adds the configuration and its MakeTrue/MakeFalse actions.
    void add_configuration(SystemProp c);
    void add_action(const std::string& name);
    void add_link(const ConcernId& concern, const SystemProp& property);

    const SystemProp* find_property(std::string_view rendered) const;
    const ActionDecl* find_action(std::string_view rendered) const;

    /// Structural equality, including property kinds.
    friend bool operator==(const DomainSpec& a, const DomainSpec& b);
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string entity;
    std::string message;
    bool operator==(const Diagnostic&) const = default;
};

struct ValidationReport {
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return error_count() == 0; }
    std::size_t error_count() const;
    std::size_t warning_count() const;
    bool has(std::string_view code) const;
    bool operator==(const ValidationReport&) const = default;
};

ValidationReport validate(const DomainSpec& spec);

/// Direct sub-concerns. Throws Error("UnknownConcern").
std::vector<ConcernId> children(const ConcernForest& forest, const ConcernId& c);

/// Properties linked by addrBy. Throws Error("UnknownConcern").
std::vector<SystemProp> addressing_properties(const DomainSpec& spec, const ConcernId& c);

/// All SystemProps plus sat(c) for every concern, ordered by rendered form.
std::vector<Fluent> fluents(const DomainSpec& spec);

/// Resolves a possibly abbreviated concern path: exact match first, then
/// the unique declared concern whose trailing segments equal `partial`.
std::optional<ConcernId> resolve_concern(const ConcernForest& forest, const ConcernId& partial);

/// Default value per default-valued fluent: every sat(c) is implicitly
/// true unless a `default` statement says otherwise.
std::map<Fluent, bool> default_values(const DomainSpec& spec);

} // namespace cpsf::model

#endif
