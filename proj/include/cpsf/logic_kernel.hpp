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

// Ground answer-set programs with classical negation, default negation,
// integrity constraints, complementary choice heads (l | -l) and unit-weight
// weak constraints, together with a stable-model enumerator and a
// brute-force reference implementation used for differential testing.

#ifndef CPSF_LOGIC_KERNEL_HPP
#define CPSF_LOGIC_KERNEL_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace cpsf::asp {

using AtomId = std::uint32_t;

struct GroundAtom {
    std::string predicate;
    std::vector<std::string> args;

    /// `pred(a1,a2)` or `pred` when there are no arguments.
    std::string str() const;
    auto operator<=>(const GroundAtom&) const = default;
};

/// Interns atoms by rendered form; ids are dense and follow insertion order.
class AtomTable {
public:
    AtomId intern(const GroundAtom& atom);
    std::optional<AtomId> find(std::string_view rendered) const;
    const GroundAtom& atom(AtomId id) const { return atoms_.at(id); }
    const std::string& name(AtomId id) const { return names_.at(id); }
    std::size_t size() const { return atoms_.size(); }

private:
    std::vector<GroundAtom> atoms_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, AtomId> index_;
};

struct Literal {
    AtomId atom = 0;
    bool negative = false; // classical negation

    Literal complement() const { return Literal{atom, !negative}; }
    auto operator<=>(const Literal&) const = default;
};

/// head empty: integrity constraint; one literal: normal rule;
/// two complementary literals: choice `l | -l`.
struct Rule {
    std::vector<Literal> head;
    std::vector<Literal> pos;
    std::vector<Literal> naf;

    bool is_constraint() const { return head.empty(); }
    bool is_choice() const { return head.size() == 2; }
    bool operator==(const Rule&) const = default;
};

struct WeakConstraint {
    std::vector<Literal> pos;
    std::vector<Literal> naf;
    int weight = 1;
    int level = 1;
    bool operator==(const WeakConstraint&) const = default;
};

class GroundProgram {
public:
    AtomTable atoms;

    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<WeakConstraint>& weak() const { return weak_; }

    Literal literal(const std::string& predicate, std::vector<std::string> args, bool negative = false);

    /// Validates the head shape and normalizes bodies (sorted, deduplicated).
    /// Throws Error("InvalidRule").
    void add_rule(Rule rule);
    void add_fact(Literal head) { add_rule(Rule{{head}, {}, {}}); }
    void add_constraint(std::vector<Literal> pos, std::vector<Literal> naf = {});
    void add_choice(Literal l, std::vector<Literal> pos = {}, std::vector<Literal> naf = {});
    /// Throws Error("InvalidRule") on an empty body.
    void add_weak(WeakConstraint w);

    std::string render(Literal lit) const;

private:
    std::vector<Rule> rules_;
    std::vector<WeakConstraint> weak_;
};

struct AnswerSet {
    std::vector<Literal> literals; // sorted
    std::size_t cost = 0;

    bool contains(Literal lit) const;
    bool operator==(const AnswerSet&) const = default;
};

/// Rendered literals of an answer set, lexicographically ordered.
std::vector<std::string> render(const GroundProgram& program, const AnswerSet& answer);

/// Gelfond-Lifschitz reduct. The result has no default negation and no
/// choice heads; integrity constraints that survive keep an empty head.
/// A choice whose literals are both absent from the candidate reduces to
/// both heads, so such a candidate can never be reproduced.
/// Throws Error("InconsistentCandidate").
std::vector<Rule> reduct(const GroundProgram& program, std::span<const Literal> candidate);

/// Least literal set closed under the (definite) rules; constraints are
/// ignored. nullopt when the closure contains a complementary pair.
/// Throws Error("NotDefinite") if a rule has naf literals or a choice head.
std::optional<std::vector<Literal>> minimal_model(std::span<const Rule> definite);

bool is_answer_set(const GroundProgram& program, std::span<const Literal> candidate);

/// Number of weak constraints whose body the candidate satisfies (unit weights).
std::size_t violation_cost(const GroundProgram& program, std::span<const Literal> candidate);

struct SolveOptions {
    std::optional<std::size_t> limit = std::nullopt;
    std::uint64_t node_budget = 10'000'000;
};

/// Visits answer sets in the deterministic search order; the visitor
/// returns false to stop. Throws Error("ResourceBudgetExceeded").
void solve(const GroundProgram& program, const SolveOptions& options,
           const std::function<bool(const AnswerSet&)>& visit);

std::vector<AnswerSet> enumerate_answer_sets(const GroundProgram& program, const SolveOptions& options = {});

/// All answer sets of globally minimal cost.
std::vector<AnswerSet> optimal_answer_sets(const GroundProgram& program, const SolveOptions& options = {});

inline constexpr std::size_t brute_force_atom_cap = 22;

/// Exhaustive reference enumeration, sorted. Throws Error("TooLargeForOracle")
/// above brute_force_atom_cap atoms.
std::vector<AnswerSet> brute_force_answer_sets(const GroundProgram& program);

/// One rule per line: `h :- b, not c.`, `:- b.`, `h | -h :- b.`, `:~ b.`
void dump(std::ostream& os, const GroundProgram& program);
std::string dump(const GroundProgram& program);

} // namespace cpsf::asp

#endif
