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

#include "cpsf/logic_kernel.hpp"

#include "cpsf/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cpsf::asp {

std::string GroundAtom::str() const {
    if (args.empty())
        return predicate;
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i)
            out += ',';
        out += args[i];
    }
    return out + ")";
}

AtomId AtomTable::intern(const GroundAtom& atom) {
    std::string key = atom.str();
    auto it = index_.find(key);
    if (it != index_.end())
        return it->second;
    auto id = static_cast<AtomId>(atoms_.size());
    atoms_.push_back(atom);
    names_.push_back(key);
    index_.emplace(std::move(key), id);
    return id;
}

std::optional<AtomId> AtomTable::find(std::string_view rendered) const {
    auto it = index_.find(std::string(rendered));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------------------
// GroundProgram

namespace {

void normalize(std::vector<Literal>& lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
}

bool contains_sorted(const std::vector<Literal>& sorted, Literal lit) {
    return std::binary_search(sorted.begin(), sorted.end(), lit);
}

} // namespace

Literal GroundProgram::literal(const std::string& predicate, std::vector<std::string> args, bool negative) {
    return Literal{atoms.intern(GroundAtom{predicate, std::move(args)}), negative};
}

void GroundProgram::add_rule(Rule rule) {
    if (rule.head.size() > 2)
        throw Error("InvalidRule", "rule heads hold at most two literals");
    if (rule.head.size() == 2 && rule.head[0] != rule.head[1].complement())
        throw Error("InvalidRule", "a two-literal head must be a complementary pair");
    auto check = [&](const std::vector<Literal>& lits) {
        for (auto l : lits)
            if (l.atom >= atoms.size())
                throw Error("InvalidRule", "literal refers to an atom outside the table");
    };
    check(rule.head);
    check(rule.pos);
    check(rule.naf);
    if (rule.is_choice())
        std::sort(rule.head.begin(), rule.head.end());
    normalize(rule.pos);
    normalize(rule.naf);
    rules_.push_back(std::move(rule));
}

void GroundProgram::add_constraint(std::vector<Literal> pos, std::vector<Literal> naf) {
    add_rule(Rule{{}, std::move(pos), std::move(naf)});
}

void GroundProgram::add_choice(Literal l, std::vector<Literal> pos, std::vector<Literal> naf) {
    add_rule(Rule{{l, l.complement()}, std::move(pos), std::move(naf)});
}

void GroundProgram::add_weak(WeakConstraint w) {
    if (w.pos.empty() && w.naf.empty())
        throw Error("InvalidRule", "weak constraint body must not be empty");
    normalize(w.pos);
    normalize(w.naf);
    w.weight = 1;
    w.level = 1;
    weak_.push_back(std::move(w));
}

std::string GroundProgram::render(Literal lit) const { return (lit.negative ? "-" : "") + atoms.name(lit.atom); }

bool AnswerSet::contains(Literal lit) const { return contains_sorted(literals, lit); }

std::vector<std::string> render(const GroundProgram& program, const AnswerSet& answer) {
    std::vector<std::string> out;
    out.reserve(answer.literals.size());
    for (auto l : answer.literals)
        out.push_back(program.render(l));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Declarative semantics

std::vector<Rule> reduct(const GroundProgram& program, std::span<const Literal> candidate) {
    std::vector<Literal> m(candidate.begin(), candidate.end());
    normalize(m);
    for (auto l : m)
        if (l.negative && contains_sorted(m, l.complement()))
            throw Error("InconsistentCandidate", "candidate contains a complementary pair");

    std::vector<Rule> out;
    for (const auto& r : program.rules()) {
        bool blocked = std::any_of(r.naf.begin(), r.naf.end(), [&](Literal l) { return contains_sorted(m, l); });
        if (blocked)
            continue;
        if (!r.is_choice()) {
            out.push_back(Rule{r.head, r.pos, {}});
            continue;
        }
        bool first = contains_sorted(m, r.head[0]);
        bool second = contains_sorted(m, r.head[1]);
        if (first != second) {
            out.push_back(Rule{{first ? r.head[0] : r.head[1]}, r.pos, {}});
        } else {
            out.push_back(Rule{{r.head[0]}, r.pos, {}});
            out.push_back(Rule{{r.head[1]}, r.pos, {}});
        }
    }
    return out;
}

std::optional<std::vector<Literal>> minimal_model(std::span<const Rule> definite) {
    for (const auto& r : definite)
        if (!r.naf.empty() || r.head.size() > 1)
            throw Error("NotDefinite", "minimal_model expects a definite program");

    std::set<Literal> model;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : definite) {
            if (r.head.empty() || model.count(r.head[0]))
                continue;
            if (std::all_of(r.pos.begin(), r.pos.end(), [&](Literal l) { return model.count(l) != 0; })) {
                model.insert(r.head[0]);
                changed = true;
            }
        }
    }
    for (auto l : model)
        if (!l.negative && model.count(l.complement()))
            return std::nullopt;
    return std::vector<Literal>(model.begin(), model.end());
}

namespace {

bool body_holds(const std::vector<Literal>& pos, const std::vector<Literal>& naf, const std::vector<Literal>& m) {
    return std::all_of(pos.begin(), pos.end(), [&](Literal l) { return contains_sorted(m, l); }) &&
           std::none_of(naf.begin(), naf.end(), [&](Literal l) { return contains_sorted(m, l); });
}

} // namespace

bool is_answer_set(const GroundProgram& program, std::span<const Literal> candidate) {
    std::vector<Literal> m(candidate.begin(), candidate.end());
    normalize(m);
    auto closure = minimal_model(reduct(program, m));
    if (!closure || *closure != m)
        return false;
    return std::none_of(program.rules().begin(), program.rules().end(),
                        [&](const Rule& r) { return r.is_constraint() && body_holds(r.pos, r.naf, m); });
}

std::size_t violation_cost(const GroundProgram& program, std::span<const Literal> candidate) {
    std::vector<Literal> m(candidate.begin(), candidate.end());
    normalize(m);
    std::size_t cost = 0;
    for (const auto& w : program.weak())
        if (body_holds(w.pos, w.naf, m))
            cost += static_cast<std::size_t>(w.weight);
    return cost;
}

// ---------------------------------------------------------------------------
// Search engine
//
// Classical negation is compiled away: literal (a, neg) becomes variable
// 2a+neg, with a constraint forbidding both. A choice l | -l becomes the even
// loop l :- B, not -l and -l :- B, not l. Decisions are made only on
// variables that occur under `not`; between decisions the engine computes a
// lower bound (rules whose naf part is surely false) and an upper bound
// (rules not surely blocked) of every stable model below the node, which
// fixes further naf variables or detects conflicts.

namespace {

constexpr int bottom = -1;

struct CompiledRule {
    int head = bottom;
    std::vector<int> pos;
    std::vector<int> naf;
};

struct CompiledWeak {
    std::vector<int> pos;
    std::vector<int> naf;
};

enum class Value : std::int8_t { Unknown, True, False };

int var_of(Literal l) { return static_cast<int>(2 * l.atom + (l.negative ? 1 : 0)); }
Literal lit_of(int v) { return Literal{static_cast<AtomId>(v / 2), (v % 2) != 0}; }

std::vector<int> vars_of(const std::vector<Literal>& lits) {
    std::vector<int> out;
    out.reserve(lits.size());
    for (auto l : lits)
        out.push_back(var_of(l));
    return out;
}

class Engine {
public:
    Engine(const GroundProgram& program, const SolveOptions& options) : program_(program), options_(options) {
        num_vars_ = static_cast<int>(2 * program.atoms.size());
        std::vector<char> in_head(static_cast<std::size_t>(num_vars_), 0);
        for (const auto& r : program.rules()) {
            auto pos = vars_of(r.pos);
            auto naf = vars_of(r.naf);
            if (r.is_constraint()) {
                rules_.push_back({bottom, pos, naf});
            } else if (r.is_choice()) {
                int a = var_of(r.head[0]);
                int b = var_of(r.head[1]);
                auto naf_a = naf;
                naf_a.push_back(b);
                auto naf_b = naf;
                naf_b.push_back(a);
                rules_.push_back({a, pos, naf_a});
                rules_.push_back({b, pos, naf_b});
                in_head[a] = in_head[b] = 1;
            } else {
                rules_.push_back({var_of(r.head[0]), pos, naf});
                in_head[var_of(r.head[0])] = 1;
            }
        }
        for (int v = 0; v < num_vars_; v += 2)
            if (in_head[v] && in_head[v + 1])
                rules_.push_back({bottom, {v, v + 1}, {}});
        for (const auto& w : program.weak())
            weak_.push_back({vars_of(w.pos), vars_of(w.naf)});

        occurs_.assign(static_cast<std::size_t>(num_vars_), {});
        is_naf_.assign(static_cast<std::size_t>(num_vars_), 0);
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            auto& r = rules_[i];
            std::sort(r.pos.begin(), r.pos.end());
            r.pos.erase(std::unique(r.pos.begin(), r.pos.end()), r.pos.end());
            for (int v : r.pos)
                occurs_[v].push_back(i);
            for (int v : r.naf)
                is_naf_[v] = 1;
        }
        for (int v = 0; v < num_vars_; ++v)
            if (is_naf_[v])
                branch_order_.push_back(v);
        // Lexicographic by rendered literal, so the order does not depend on
        // interning order.
        std::sort(branch_order_.begin(), branch_order_.end(), [&](int a, int b) {
            return program_.render(lit_of(a)) < program_.render(lit_of(b));
        });
    }

    /// optimize: prune by cost and report only models of minimal cost.
    void run(bool optimize, const std::function<bool(const AnswerSet&)>& visit) {
        optimize_ = optimize;
        visit_ = &visit;
        best_cost_ = std::numeric_limits<std::size_t>::max();
        std::vector<Value> assign(static_cast<std::size_t>(num_vars_), Value::Unknown);
        search(assign);
        if (optimize_)
            for (const auto& m : optimal_)
                if (!visit(m))
                    break;
    }

private:
    // Least model of the rules enabled by `enabled`, written into `derived`.
    template <class Enabled>
    bool least_model(const Enabled& enabled, std::vector<char>& derived) const {
        derived.assign(static_cast<std::size_t>(num_vars_), 0);
        std::vector<std::size_t> missing(rules_.size());
        std::vector<int> queue;
        bool bottom_derived = false;
        auto fire = [&](std::size_t i) {
            int h = rules_[i].head;
            if (h == bottom) {
                bottom_derived = true;
            } else if (!derived[h]) {
                derived[h] = 1;
                queue.push_back(h);
            }
        };
        std::vector<char> active(rules_.size(), 0);
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            if (!enabled(rules_[i]))
                continue;
            active[i] = 1;
            missing[i] = rules_[i].pos.size();
            if (missing[i] == 0)
                fire(i);
        }
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            for (std::size_t i : occurs_[v])
                if (active[i] && --missing[i] == 0)
                    fire(i);
        }
        return bottom_derived;
    }

    // Returns false on conflict.
    bool propagate(std::vector<Value>& assign, std::vector<char>& lower, std::vector<char>& upper) const {
        for (;;) {
            bool changed = false;
            bool conflict = least_model(
                [&](const CompiledRule& r) {
                    return std::all_of(r.naf.begin(), r.naf.end(), [&](int v) { return assign[v] == Value::False; });
                },
                lower);
            if (conflict)
                return false;
            for (int v : branch_order_) {
                if (!lower[v])
                    continue;
                if (assign[v] == Value::False)
                    return false;
                if (assign[v] == Value::Unknown) {
                    assign[v] = Value::True;
                    changed = true;
                }
            }
            least_model(
                [&](const CompiledRule& r) {
                    return std::none_of(r.naf.begin(), r.naf.end(), [&](int v) { return assign[v] == Value::True; });
                },
                upper);
            for (int v : branch_order_) {
                if (upper[v])
                    continue;
                if (assign[v] == Value::True)
                    return false;
                if (assign[v] == Value::Unknown) {
                    assign[v] = Value::False;
                    changed = true;
                }
            }
            // Constraints with exactly one open naf literal force it true.
            for (const auto& r : rules_) {
                if (r.head != bottom)
                    continue;
                if (!std::all_of(r.pos.begin(), r.pos.end(), [&](int v) { return lower[v] != 0; }))
                    continue;
                int open = -1;
                bool dead = false;
                for (int v : r.naf) {
                    if (assign[v] == Value::True) {
                        dead = true;
                        break;
                    }
                    if (assign[v] == Value::Unknown) {
                        if (open >= 0) {
                            dead = true;
                            break;
                        }
                        open = v;
                    }
                }
                if (!dead && open >= 0) {
                    assign[open] = Value::True;
                    changed = true;
                }
            }
            if (!changed)
                return true;
        }
    }

    std::size_t cost_lower_bound(const std::vector<Value>& assign, const std::vector<char>& lower,
                                 const std::vector<char>& upper) const {
        std::size_t cost = 0;
        for (const auto& w : weak_) {
            bool pos = std::all_of(w.pos.begin(), w.pos.end(), [&](int v) { return lower[v] != 0; });
            bool naf = std::all_of(w.naf.begin(), w.naf.end(),
                                   [&](int v) { return assign[v] == Value::False || !upper[v]; });
            if (pos && naf)
                ++cost;
        }
        return cost;
    }

    // Returns false when enumeration must stop.
    bool search(std::vector<Value> assign) {
        if (++nodes_ > options_.node_budget)
            throw Error("ResourceBudgetExceeded",
                        "search node budget of " + std::to_string(options_.node_budget) + " exhausted");
        std::vector<char> lower, upper;
        if (!propagate(assign, lower, upper))
            return true;
        if (optimize_ && cost_lower_bound(assign, lower, upper) > best_cost_)
            return true;

        auto open = std::find_if(branch_order_.begin(), branch_order_.end(),
                                 [&](int v) { return assign[v] == Value::Unknown; });
        if (open == branch_order_.end())
            return emit(lower);

        for (Value choice : {Value::True, Value::False}) {
            auto next = assign;
            next[*open] = choice;
            if (!search(std::move(next)))
                return false;
        }
        return true;
    }

    bool emit(const std::vector<char>& model) {
        AnswerSet answer;
        for (int v = 0; v < num_vars_; ++v)
            if (model[v])
                answer.literals.push_back(lit_of(v));
        if (!is_answer_set(program_, answer.literals))
            throw std::logic_error("search produced a candidate that fails the stability check");
        answer.cost = violation_cost(program_, answer.literals);

        if (optimize_) {
            if (answer.cost < best_cost_) {
                best_cost_ = answer.cost;
                optimal_.clear();
            }
            if (answer.cost == best_cost_)
                optimal_.push_back(std::move(answer));
            return true;
        }
        ++emitted_;
        if (!(*visit_)(answer))
            return false;
        return !(options_.limit && emitted_ >= *options_.limit);
    }

    const GroundProgram& program_;
    const SolveOptions& options_;
    int num_vars_ = 0;
    std::vector<CompiledRule> rules_;
    std::vector<CompiledWeak> weak_;
    std::vector<std::vector<std::size_t>> occurs_;
    std::vector<char> is_naf_;
    std::vector<int> branch_order_;

    bool optimize_ = false;
    const std::function<bool(const AnswerSet&)>* visit_ = nullptr;
    std::uint64_t nodes_ = 0;
    std::size_t emitted_ = 0;
    std::size_t best_cost_ = 0;
    std::vector<AnswerSet> optimal_;
};

} // namespace

void solve(const GroundProgram& program, const SolveOptions& options,
           const std::function<bool(const AnswerSet&)>& visit) {
    if (options.limit && *options.limit == 0)
        return;
    Engine(program, options).run(false, visit);
}

std::vector<AnswerSet> enumerate_answer_sets(const GroundProgram& program, const SolveOptions& options) {
    std::vector<AnswerSet> out;
    solve(program, options, [&](const AnswerSet& a) {
        out.push_back(a);
        return true;
    });
    return out;
}

std::vector<AnswerSet> optimal_answer_sets(const GroundProgram& program, const SolveOptions& options) {
    std::vector<AnswerSet> out;
    Engine(program, options).run(true, [&](const AnswerSet& a) {
        out.push_back(a);
        return !(options.limit && out.size() >= *options.limit);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Reference enumeration
//
// The reduct depends on a candidate only through the literals that occur
// under `not` or in choice heads, so every stable model M is reproduced as
// minimal_model(reduct(P, G)) for G = M restricted to those literals. Every
// consistent G is tried and each result is checked with is_answer_set.

std::vector<AnswerSet> brute_force_answer_sets(const GroundProgram& program) {
    if (program.atoms.size() > brute_force_atom_cap)
        throw Error("TooLargeForOracle", "brute-force oracle is limited to " +
                                             std::to_string(brute_force_atom_cap) + " atoms");
    std::set<Literal> guess_set;
    for (const auto& r : program.rules()) {
        guess_set.insert(r.naf.begin(), r.naf.end());
        if (r.is_choice())
            guess_set.insert(r.head.begin(), r.head.end());
    }
    // Group by atom: each atom is absent, positive or negative in G.
    std::vector<std::vector<Literal>> options;
    {
        std::map<AtomId, std::vector<Literal>> by_atom;
        for (auto l : guess_set)
            by_atom[l.atom].push_back(l);
        for (auto& [atom, lits] : by_atom)
            options.push_back(lits);
    }

    std::set<std::vector<Literal>> found;
    std::vector<Literal> guess;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == options.size()) {
            auto m = minimal_model(reduct(program, guess));
            if (m && is_answer_set(program, *m))
                found.insert(*m);
            return;
        }
        rec(i + 1);
        for (auto l : options[i]) {
            guess.push_back(l);
            rec(i + 1);
            guess.pop_back();
        }
    };
    rec(0);

    std::vector<AnswerSet> out;
    for (const auto& m : found)
        out.push_back(AnswerSet{m, violation_cost(program, m)});
    return out;
}

// ---------------------------------------------------------------------------
// Debug dump

namespace {

void dump_body(std::ostream& os, const GroundProgram& program, const std::vector<Literal>& pos,
               const std::vector<Literal>& naf) {
    bool first = true;
    for (auto l : pos) {
        os << (first ? "" : ", ") << program.render(l);
        first = false;
    }
    for (auto l : naf) {
        os << (first ? "" : ", ") << "not " << program.render(l);
        first = false;
    }
}

} // namespace

void dump(std::ostream& os, const GroundProgram& program) {
    for (const auto& r : program.rules()) {
        if (r.is_choice())
            os << program.render(r.head[0]) << " | " << program.render(r.head[1]);
        else if (!r.is_constraint())
            os << program.render(r.head[0]);
        if (r.pos.empty() && r.naf.empty()) {
            os << (r.is_constraint() ? ":-." : ".") << '\n';
            continue;
        }
        os << (r.is_constraint() ? ":- " : " :- ");
        dump_body(os, program, r.pos, r.naf);
        os << ".\n";
    }
    for (const auto& w : program.weak()) {
        os << ":~ ";
        dump_body(os, program, w.pos, w.naf);
        os << ".\n";
    }
}

std::string dump(const GroundProgram& program) {
    std::ostringstream os;
    dump(os, program);
    return os.str();
}

} // namespace cpsf::asp
