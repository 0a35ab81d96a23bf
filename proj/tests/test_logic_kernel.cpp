#include "cpsf/error.hpp"
#include "cpsf/logic_kernel.hpp"
#include "support/generators.hpp"

#include <doctest.h>

#include <set>

using namespace cpsf;
using namespace cpsf::asp;

namespace {

struct Fixture {
    GroundProgram prog;
    Literal lit(const std::string& name, bool neg = false) { return prog.literal(name, {}, neg); }
    std::vector<std::set<std::string>> family(const std::vector<AnswerSet>& sets) {
        std::vector<std::set<std::string>> out;
        for (const auto& s : sets) {
            auto r = render(prog, s);
            out.emplace_back(r.begin(), r.end());
        }
        return out;
    }
};

using Family = std::vector<std::set<std::string>>;

std::set<std::vector<Literal>> as_family(const std::vector<AnswerSet>& sets) {
    std::set<std::vector<Literal>> out;
    for (const auto& s : sets)
        out.insert(s.literals);
    return out;
}

} // namespace

TEST_CASE("rules are validated and normalized") {
    Fixture f;
    auto p = f.lit("p"), q = f.lit("q");
    CHECK_THROWS_AS(f.prog.add_rule(Rule{{p, q}, {}, {}}), Error);
    CHECK_THROWS_AS(f.prog.add_rule(Rule{{p, q, p}, {}, {}}), Error);
    CHECK_THROWS_AS(f.prog.add_weak(WeakConstraint{}), Error);
    f.prog.add_rule(Rule{{p}, {q, q}, {}});
    CHECK(f.prog.rules().back().pos.size() == 1);
    CHECK(f.prog.atoms.find("p").has_value());
    CHECK(f.prog.render(f.lit("p", true)) == "-p");
    CHECK(GroundAtom{"holds", {"cam[encr]", "0"}}.str() == "holds(cam[encr],0)");
}

TEST_CASE("reduct") {
    Fixture f;
    auto p = f.lit("p"), q = f.lit("q"), r = f.lit("r");
    f.prog.add_fact(p);
    f.prog.add_rule(Rule{{q}, {p}, {r}});
    auto red = reduct(f.prog, std::vector<Literal>{p, q});
    REQUIRE(red.size() == 2);
    CHECK(red[0] == Rule{{p}, {}, {}});
    CHECK(red[1] == Rule{{q}, {p}, {}});

    auto blocked = reduct(f.prog, std::vector<Literal>{p, r});
    CHECK(blocked.size() == 1);

    Fixture loop;
    auto lp = loop.lit("p");
    loop.prog.add_rule(Rule{{lp}, {}, {lp}});
    auto lr = reduct(loop.prog, std::vector<Literal>{});
    REQUIRE(lr.size() == 1);
    CHECK(lr[0] == Rule{{lp}, {}, {}});

    Fixture choice;
    auto cp = choice.lit("p"), cn = choice.lit("p", true);
    choice.prog.add_choice(cp);
    auto cr = reduct(choice.prog, std::vector<Literal>{cn});
    REQUIRE(cr.size() == 1);
    CHECK(cr[0] == Rule{{cn}, {}, {}});
    // Exactly the two intended models.
    CHECK(choice.family(brute_force_answer_sets(choice.prog)) == Family{{"p"}, {"-p"}});

    CHECK_THROWS_AS(reduct(choice.prog, std::vector<Literal>{cp, cn}), Error);
}

TEST_CASE("minimal model") {
    Fixture f;
    auto p = f.lit("p"), q = f.lit("q");
    std::vector<Rule> prog{{{p}, {}, {}}, {{q}, {p}, {}}};
    auto m = minimal_model(prog);
    REQUIRE(m);
    CHECK(*m == std::vector<Literal>{p, q});

    std::vector<Rule> clash{{{p}, {}, {}}, {{f.lit("p", true)}, {}, {}}};
    CHECK_FALSE(minimal_model(clash));
    CHECK(minimal_model(std::vector<Rule>{})->empty());
    std::vector<Rule> with_naf{{{p}, {}, {q}}};
    CHECK_THROWS_AS(minimal_model(with_naf), Error);
}

TEST_CASE("stability check") {
    Fixture f;
    auto p = f.lit("p"), q = f.lit("q"), r = f.lit("r");
    f.prog.add_rule(Rule{{q}, {p}, {r}});
    f.prog.add_fact(p);
    CHECK(is_answer_set(f.prog, std::vector<Literal>{p, q}));
    CHECK_FALSE(is_answer_set(f.prog, std::vector<Literal>{p}));

    Fixture loop;
    auto lp = loop.lit("p");
    loop.prog.add_rule(Rule{{lp}, {}, {lp}});
    CHECK_FALSE(is_answer_set(loop.prog, std::vector<Literal>{}));
    CHECK_FALSE(is_answer_set(loop.prog, std::vector<Literal>{lp}));

    Fixture con;
    auto a = con.lit("a");
    con.prog.add_fact(a);
    con.prog.add_constraint({a});
    CHECK_FALSE(is_answer_set(con.prog, std::vector<Literal>{a}));
}

TEST_CASE("enumeration") {
    Fixture even;
    auto p = even.lit("p"), q = even.lit("q");
    even.prog.add_rule(Rule{{p}, {}, {q}});
    even.prog.add_rule(Rule{{q}, {}, {p}});
    CHECK(even.family(enumerate_answer_sets(even.prog)) == Family{{"p"}, {"q"}});
    CHECK(even.family(brute_force_answer_sets(even.prog)) == Family{{"p"}, {"q"}});
    CHECK(enumerate_answer_sets(even.prog, SolveOptions{.limit = 1}).size() == 1);

    Fixture odd;
    auto op = odd.lit("p");
    odd.prog.add_rule(Rule{{op}, {}, {op}});
    CHECK(enumerate_answer_sets(odd.prog).empty());

    GroundProgram empty;
    auto e = enumerate_answer_sets(empty);
    REQUIRE(e.size() == 1);
    CHECK(e[0].literals.empty());
    REQUIRE(brute_force_answer_sets(empty).size() == 1);

    Fixture neg;
    auto a = neg.lit("a"), na = neg.lit("a", true), b = neg.lit("b");
    neg.prog.add_rule(Rule{{na}, {}, {a}});
    neg.prog.add_rule(Rule{{b}, {na}, {}});
    CHECK(neg.family(enumerate_answer_sets(neg.prog)) == Family{{"-a", "b"}});
}

TEST_CASE("optimization") {
    Fixture f;
    auto p = f.lit("p");
    f.prog.add_choice(p);
    f.prog.add_weak(WeakConstraint{{p}, {}, 1, 1});
    auto best = optimal_answer_sets(f.prog);
    REQUIRE(best.size() == 1);
    CHECK(f.family(best) == Family{{"-p"}});
    CHECK(best[0].cost == 0);

    Fixture plain;
    auto x = plain.lit("x"), y = plain.lit("y");
    plain.prog.add_rule(Rule{{x}, {}, {y}});
    plain.prog.add_rule(Rule{{y}, {}, {x}});
    auto all = enumerate_answer_sets(plain.prog);
    auto opt = optimal_answer_sets(plain.prog);
    CHECK(as_family(all) == as_family(opt));
    for (const auto& s : opt)
        CHECK(s.cost == 0);
}

TEST_CASE("the node budget fails loudly") {
    GroundProgram prog;
    for (int i = 0; i < 12; ++i)
        prog.add_choice(prog.literal("c" + std::to_string(i), {}));
    try {
        enumerate_answer_sets(prog, SolveOptions{.node_budget = 50});
        FAIL("expected the budget to run out");
    } catch (const Error& e) {
        CHECK(e.code() == "ResourceBudgetExceeded");
    }
    CHECK(enumerate_answer_sets(prog).size() == 4096);
}

TEST_CASE("the oracle has a size cap") {
    GroundProgram prog;
    for (std::size_t i = 0; i <= brute_force_atom_cap; ++i)
        prog.add_fact(prog.literal("a" + std::to_string(i), {}));
    try {
        brute_force_answer_sets(prog);
        FAIL("expected TooLargeForOracle");
    } catch (const Error& e) {
        CHECK(e.code() == "TooLargeForOracle");
    }
}

TEST_CASE("debug dump") {
    Fixture f;
    auto p = f.lit("p"), q = f.lit("q"), r = f.lit("r", true);
    f.prog.add_fact(p);
    f.prog.add_rule(Rule{{q}, {p}, {r}});
    f.prog.add_constraint({q}, {p});
    f.prog.add_choice(f.lit("c"), {p});
    f.prog.add_weak(WeakConstraint{{q}, {}, 1, 1});
    CHECK(dump(f.prog) == "p.\n"
                          "q :- p, not -r.\n"
                          ":- q, not p.\n"
                          "c | -c :- p.\n"
                          ":~ q.\n");
}

TEST_CASE("the search agrees with the oracle on random programs") {
    std::mt19937 rng(20261015);
    for (int i = 0; i < 300; ++i) {
        auto prog = testing::random_program(rng);
        auto fast = enumerate_answer_sets(prog);
        auto slow = brute_force_answer_sets(prog);
        INFO(dump(prog));
        REQUIRE(as_family(fast) == as_family(slow));
        CHECK(as_family(fast).size() == fast.size());
        for (const auto& s : fast) {
            CHECK(is_answer_set(prog, s.literals));
            CHECK(s.cost == violation_cost(prog, s.literals));
        }
        auto best = optimal_answer_sets(prog);
        std::set<std::vector<Literal>> want;
        if (!slow.empty()) {
            auto min_cost = std::min_element(slow.begin(), slow.end(), [](auto& a, auto& b) { return a.cost < b.cost; })->cost;
            for (const auto& s : slow)
                if (s.cost == min_cost)
                    want.insert(s.literals);
        }
        REQUIRE(as_family(best) == want);
        CHECK(enumerate_answer_sets(prog).size() == fast.size());
    }
}

TEST_CASE("enumeration order is deterministic") {
    std::mt19937 rng(5);
    for (int i = 0; i < 50; ++i) {
        auto prog = testing::random_program(rng);
        CHECK(enumerate_answer_sets(prog) == enumerate_answer_sets(prog));
    }
}

TEST_CASE("least models grow with the program") {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        GroundProgram prog;
        std::vector<Literal> lits;
        for (int a = 0; a < 6; ++a)
            lits.push_back(prog.literal("a" + std::to_string(a), {}));
        std::uniform_int_distribution<int> pick(0, 5), len(0, 2);
        std::vector<Rule> rules;
        std::optional<std::vector<Literal>> previous = std::vector<Literal>{};
        for (int k = 0; k < 10; ++k) {
            Rule r{{lits[pick(rng)]}, {}, {}};
            for (int b = len(rng); b > 0; --b)
                r.pos.push_back(lits[pick(rng)]);
            rules.push_back(r);
            auto m = minimal_model(rules);
            REQUIRE(m);
            CHECK(std::includes(m->begin(), m->end(), previous->begin(), previous->end()));
            previous = m;
        }
    }
}
