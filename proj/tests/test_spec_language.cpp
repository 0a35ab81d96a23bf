#include "cpsf/bundled.hpp"
#include "cpsf/spec_language.hpp"
#include "support/generators.hpp"

#include <doctest.h>

using namespace cpsf;
using namespace cpsf::lang;

namespace {

bool has_code(const std::vector<ParseError>& errors, const std::string& code) {
    return std::any_of(errors.begin(), errors.end(), [&](const ParseError& e) { return e.code == code; });
}

} // namespace

TEST_CASE("the bundled domain parses") {
    auto r = parse_domain(bundled::lkas_domain(), "lkas.cpsf");
    REQUIRE(r.ok());
    CHECK(r.warnings.empty());
    const auto& spec = *r.value;
    CHECK(spec.forest.aspects.size() == 3);
    CHECK(spec.forest.contains(model::ConcernId::parse("Trustworthiness.Security.Cybersecurity")));
    CHECK(spec.properties.size() == 7);
    CHECK(spec.statements.size() == 4);
    CHECK(spec.find_action("MakeFalse(cam[basicOne])"));
    CHECK(spec.find_property("cam[basicOne]")->kind == model::PropKind::Configuration);

    auto patch = parse_domain(bundled::lkas_patch_domain(), "lkas_patch.cpsf");
    REQUIRE(patch.ok());
    CHECK(patch.value->find_action("Patch"));
    CHECK(patch.value->statements.size() == 5);
}

TEST_CASE("an empty domain") {
    auto r = parse_domain("");
    REQUIRE(r.ok());
    CHECK(*r.value == model::DomainSpec{});
    CHECK(render_domain(*r.value) == "# cpsf domain\n");
}

TEST_CASE("an unclosed bracket is one error at the bracket") {
    auto r = parse_domain("property cam[encr addresses X.", "f.cpsf");
    CHECK_FALSE(r.ok());
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].span.line == 1);
    CHECK(r.errors[0].span.column == 13);
    CHECK(r.errors[0].expected == std::vector<std::string>{"]"});
    CHECK(r.errors[0].str().rfind("f.cpsf:1:13: error[", 0) == 0);
}

TEST_CASE("one error per broken statement, then recovery") {
    const char* text = "aspect A.\n"
                       "property dev[x].\n"
                       "concern A.B\n"
                       "action Stop.\n"
                       "property dev[ addresses A.\n"
                       "config dev[mode] = true.\n"
                       "action Go.\n"
                       "dev[x] impacts dev[x].\n"
                       "Go causes dev[x].\n";
    auto r = parse_domain(text, "e.cpsf");
    CHECK_FALSE(r.ok());
    // Line 3 lacks its terminator; the error shows at the next token.
    REQUIRE(r.errors.size() == 4);
    CHECK(r.errors[0].span.line == 4);
    CHECK(r.errors[1].span.line == 5);
    CHECK(r.errors[2].span.line == 6);
    CHECK(r.errors[3].span.line == 8);
}

TEST_CASE("lexical and semantic errors have spans") {
    auto lexical = parse_domain("aspect A;\n");
    CHECK(has_code(lexical.errors, "UnexpectedCharacter"));

    auto r = parse_domain("aspect A.\n"
                          "concern Z.Q.\n"
                          "property d[p] addresses A.Nope.\n"
                          "d[q] impacts- d[p].\n"
                          "Boom causes d[p].\n"
                          "default d[p] = true.\n"
                          "default d[p] = false.\n"
                          "-sat(A) & sat(A) triggers Boom.\n",
                          "s.cpsf");
    CHECK(has_code(r.errors, "UnknownAspect"));
    CHECK(has_code(r.errors, "UnknownConcern"));
    CHECK(has_code(r.errors, "UnknownProperty"));
    CHECK(has_code(r.errors, "UnknownAction"));
    CHECK(has_code(r.errors, "ConflictingDefault"));
    CHECK(has_code(r.errors, "ContradictoryCondition"));
    for (const auto& e : r.errors) {
        CHECK(e.span.line >= 1);
        CHECK(e.span.column >= 1);
        CHECK_FALSE(e.message.empty());
    }
    auto dup = parse_domain("property d[p].\nconfig d[p].\n");
    CHECK(has_code(dup.errors, "DuplicateDeclaration"));
}

TEST_CASE("validation warnings surface as parse warnings") {
    auto r = parse_domain("property d[p].\naction Idle.\n");
    REQUIRE(r.ok());
    CHECK(r.warnings.size() == 2);
}

TEST_CASE("scenarios") {
    auto spec = testing::lkas();
    auto all = parse_scenarios(bundled::lkas_scenarios(), spec, "lkas.cpss");
    REQUIRE(all.ok());
    REQUIRE(all.value->size() == 3);
    const auto& design = (*all.value)[0];
    CHECK(design.name == "design1");
    CHECK(design.observations.size() == 6);
    CHECK(design.history.empty());
    CHECK(design.last_step() == -1);

    const auto& attacked = (*all.value)[2];
    REQUIRE(attacked.history.size() == 1);
    CHECK(attacked.history.begin()->action.str() == "Attack");
    CHECK(attacked.history.begin()->step == 0);

    auto bare = parse_scenario("obs cam[rate25fps] = true. obs cam[rate25fps] = true.", spec);
    REQUIRE(bare.ok());
    CHECK(bare.value->name == "main");
    CHECK(bare.value->observations.size() == 1);

    auto contra = parse_scenario("obs cam[rate25fps]=true. obs cam[rate25fps]=false.", spec);
    CHECK(has_code(contra.errors, "ContradictoryObs"));

    auto unknown = parse_scenario("obs cam[zoom] = true.\nhistory Dance @ 0.\n", spec);
    CHECK(unknown.errors.size() == 2);
    CHECK(has_code(unknown.errors, "UnknownAtom"));

    auto many = parse_scenario(bundled::lkas_scenarios(), spec);
    CHECK(has_code(many.errors, "ScenarioCount"));

    auto make = parse_scenario("history MakeFalse(cam[basicOne]) @ 3.", spec);
    REQUIRE(make.ok());
    CHECK(make.value->last_step() == 3);
}

TEST_CASE("queries") {
    auto spec = testing::lkas();
    auto q = parse_query("sat(Trustworthiness.Security.Cybersecurity.Confidentiality)@0", spec);
    REQUIRE(q.ok());
    CHECK(q.value->step == 0);
    CHECK(q.value->target.positive);
    CHECK(std::holds_alternative<model::Sat>(q.value->target.fluent));

    auto all = parse_query("sat(all)@0", spec);
    REQUIRE(all.ok());
    CHECK(std::holds_alternative<model::SatAll>(all.value->target.fluent));

    auto prop = parse_query("cam[allFramesStored]", spec);
    REQUIRE(prop.ok());
    CHECK(prop.value->step == 0);
    CHECK(prop.value->str() == "cam[allFramesStored]@0");

    auto neg = parse_query("-sat(Functional)@1", spec);
    REQUIRE(neg.ok());
    CHECK(neg.value->str() == "-sat(Functional)@1");

    auto abbreviated = parse_query("sat(Confidentiality)@2", spec);
    REQUIRE(abbreviated.ok());
    CHECK(abbreviated.value->str() == "sat(Trustworthiness.Security.Cybersecurity.Confidentiality)@2");

    CHECK(has_code(parse_query("sat(Nope)@0", spec).errors, "UnknownAtom"));
    CHECK(has_code(parse_query("cam[zoom]", spec).errors, "UnknownAtom"));
    CHECK_FALSE(parse_query("sat(Functional)@", spec).ok());
    CHECK_FALSE(parse_query("sat(Functional) extra", spec).ok());
}

TEST_CASE("goals and actions") {
    auto spec = testing::lkas();
    auto g = parse_goal("all", spec);
    REQUIRE(g.ok());
    CHECK(std::holds_alternative<model::SatAll>(g.value->fluent));
    auto t = parse_goal("Trustworthiness", spec);
    REQUIRE(t.ok());
    CHECK(t.value->str() == "sat(Trustworthiness)");
    CHECK(parse_goal("sat(Functional)", spec).ok());
    CHECK(parse_goal("cam[allFramesStored]", spec).ok());
    CHECK(has_code(parse_goal("Nowhere", spec).errors, "UnknownGoal"));

    auto a = parse_action("MakeFalse(cam[basicOne])", spec);
    REQUIRE(a.ok());
    CHECK(a.value->origin == model::ActionOrigin::MakeFalse);
    CHECK(parse_action("Attack", spec).ok());
    CHECK_FALSE(parse_action("MakeTrue(cam[encr])", spec).ok());
}

TEST_CASE("rendering is canonical") {
    auto spec = testing::lkas();
    std::string second = render_domain(spec);
    auto again = parse_domain(second);
    REQUIRE(again.ok());
    CHECK(*again.value == spec);
    CHECK(render_domain(*again.value) == second);

    model::DomainSpec one;
    one.forest.add_aspect("A");
    CHECK(render_domain(one) == "# cpsf domain\naspect A.\n");

    auto scen = testing::lkas_scenario(spec, "attacked");
    auto text = render_scenario(scen);
    auto back = parse_scenario(text, spec);
    REQUIRE(back.ok());
    CHECK(*back.value == scen);
    CHECK(render_scenario(*back.value) == text);
}

TEST_CASE("parse after render is the identity on random domains") {
    std::mt19937 rng(42);
    for (int i = 0; i < 200; ++i) {
        auto spec = testing::random_spec(rng);
        auto text = render_domain(spec);
        auto r = parse_domain(text);
        INFO(text);
        REQUIRE(r.ok());
        CHECK(*r.value == spec);
        CHECK(render_domain(*r.value) == text);
    }
}
