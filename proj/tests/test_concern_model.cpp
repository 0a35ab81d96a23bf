#include "cpsf/concern_model.hpp"
#include "cpsf/error.hpp"
#include "support/generators.hpp"

#include <doctest.h>

using namespace cpsf;
using namespace cpsf::model;

namespace {

ConcernId cid(const char* dotted) { return ConcernId::parse(dotted); }

std::set<ConcernId> child_set(const ConcernForest& f, const char* c) {
    auto v = children(f, cid(c));
    return {v.begin(), v.end()};
}

} // namespace

TEST_CASE("identifiers and rendered names") {
    CHECK(is_identifier("cam"));
    CHECK(is_identifier("rate25fps"));
    CHECK_FALSE(is_identifier("25fps"));
    CHECK_FALSE(is_identifier(""));
    CHECK_FALSE(is_identifier("a_b"));

    auto p = SystemProp::parse("SAM_mem[encr]");
    REQUIRE(p);
    CHECK(p->system_path == std::vector<std::string>{"SAM", "mem"});
    CHECK(p->name == "encr");
    CHECK(p->str() == "SAM_mem[encr]");
    CHECK_FALSE(SystemProp::parse("cam[encr"));
    CHECK_FALSE(SystemProp::parse("cam"));

    // Equality is by rendered name only.
    SystemProp a{{"cam"}, "basicOne", PropKind::Property};
    SystemProp b{{"cam"}, "basicOne", PropKind::Configuration};
    CHECK(a == b);

    CHECK(cid("Trustworthiness.Security").str() == "Trustworthiness.Security");
    CHECK(to_string(Fluent{Sat{cid("Functional")}}) == "sat(Functional)");
    CHECK(to_string(Fluent{SatAll{}}) == "sat(all)");
    CHECK(Literal{Fluent{a}, false}.str() == "-cam[basicOne]");
    CHECK(ActionDecl::make_false(b).str() == "MakeFalse(cam[basicOne])");
}

TEST_CASE("the bundled domain validates without errors") {
    auto spec = testing::lkas();
    auto report = validate(spec);
    CHECK(report.error_count() == 0);
    CHECK(report.warning_count() == 0);
    CHECK(spec.properties.size() == 7);
    CHECK(spec.forest.aspects.size() == 3);
}

TEST_CASE("a self-loop is a cyclic forest") {
    ConcernForest f;
    f.add_aspect("Trustworthiness");
    f.add_path(cid("Trustworthiness.Security"));
    f.edges.insert({cid("Trustworthiness.Security"), cid("Trustworthiness.Security")});
    DomainSpec spec;
    spec.forest = f;
    CHECK(validate(spec).has("CyclicForest"));
}

TEST_CASE("make actions only exist for configurations") {
    DomainSpec spec;
    SystemProp p{{"cam"}, "encr", PropKind::Property};
    spec.add_property(p);
    spec.actions.insert(ActionDecl::make_true(p));
    CHECK(validate(spec).has("MakeOnNonConfig"));

    DomainSpec missing;
    SystemProp c{{"cam"}, "basicOne", PropKind::Configuration};
    missing.properties.insert(c);
    CHECK(validate(missing).has("MissingMakeAction"));
}

TEST_CASE("structural errors carry stable codes") {
    DomainSpec spec;
    spec.forest.add_aspect("A");
    spec.forest.concerns.insert(cid("B.C"));
    CHECK(validate(spec).has("UnknownAspect"));

    DomainSpec links;
    links.forest.add_aspect("A");
    SystemProp cfg{{"dev"}, "mode", PropKind::Configuration};
    links.add_configuration(cfg);
    links.links.insert(AddressLink{cid("A"), cfg});
    links.links.insert(AddressLink{cid("A.Missing"), SystemProp{{"x"}, "y", PropKind::Property}});
    auto r = validate(links);
    CHECK(r.has("AddressByConfiguration"));
    CHECK(r.has("UnknownConcern"));
    CHECK(r.has("UnknownProperty"));

    DomainSpec stmts;
    SystemProp q{{"dev"}, "q", PropKind::Property};
    stmts.add_property(q);
    stmts.statements.emplace_back(Impacts{Condition{{Literal{q, true}, Literal{q, false}}}, Sign::Neg, q});
    stmts.statements.emplace_back(Impacts{Condition{}, Sign::Pos, q});
    stmts.statements.emplace_back(Default{Fluent{q}, true});
    stmts.statements.emplace_back(Default{Fluent{q}, false});
    stmts.statements.emplace_back(Triggers{Condition{{Literal{q, true}}}, ActionDecl::declared("Ghost")});
    stmts.statements.emplace_back(Default{Fluent{SatAll{}}, false});
    auto s = validate(stmts);
    CHECK(s.has("ContradictoryCondition"));
    CHECK(s.has("EmptyCondition"));
    CHECK(s.has("ConflictingDefault"));
    CHECK(s.has("UnknownAction"));
    CHECK(s.has("InvalidReference"));
}

TEST_CASE("unused declarations are warnings") {
    DomainSpec spec;
    spec.add_property(SystemProp{{"dev"}, "lonely", PropKind::Property});
    spec.add_action("Idle");
    auto r = validate(spec);
    CHECK(r.ok());
    CHECK(r.has("UnusedProperty"));
    CHECK(r.has("UnusedAction"));
    CHECK(validate(spec) == r);
}

TEST_CASE("children follow the declared edges") {
    auto spec = testing::lkas();
    CHECK(child_set(spec.forest, "Trustworthiness") == std::set<ConcernId>{cid("Trustworthiness.Security")});
    CHECK(child_set(spec.forest, "Trustworthiness.Security.Cybersecurity.Confidentiality").empty());
    CHECK_THROWS_AS(children(spec.forest, cid("Nope")), Error);

    ConcernForest full;
    full.add_aspect("Trustworthiness");
    for (const char* c : {"Safety", "Security", "Privacy", "Resilience", "Reliability"})
        full.add_path(ConcernId({"Trustworthiness", c}));
    CHECK(children(full, cid("Trustworthiness")).size() == 5);
}

TEST_CASE("addressing properties") {
    auto spec = testing::lkas();
    auto names = [&](const char* c) {
        std::set<std::string> out;
        for (const auto& p : addressing_properties(spec, cid(c)))
            out.insert(p.str());
        return out;
    };
    CHECK(names("Trustworthiness.Security.Cybersecurity.Confidentiality") ==
          std::set<std::string>{"SAM_mem[encr]", "cam_mem[encr]"});
    CHECK(names("Trustworthiness.Security.Cybersecurity.Integrity") ==
          std::set<std::string>{"SAM_boot[sec]", "cam_boot[sec]"});
    CHECK(names("Trustworthiness").empty());
    try {
        addressing_properties(spec, cid("Nope"));
        FAIL("expected an exception");
    } catch (const Error& e) {
        CHECK(e.code() == "UnknownConcern");
    }
}

TEST_CASE("fluents enumerate properties and concerns in order") {
    auto spec = testing::lkas();
    std::vector<std::string> names;
    for (const auto& f : fluents(spec))
        names.push_back(to_string(f));
    CHECK(std::is_sorted(names.begin(), names.end()));
    for (const char* want : {"cam[allFramesStored]", "cam[basicOne]", "sat(Functional)",
                             "sat(Trustworthiness.Security.Cybersecurity.Confidentiality)"})
        CHECK(std::find(names.begin(), names.end(), want) != names.end());
    CHECK(fluents(DomainSpec{}).empty());

    DomainSpec one;
    one.forest.add_aspect("A");
    auto f = fluents(one);
    REQUIRE(f.size() == 1);
    CHECK(to_string(f[0]) == "sat(A)");
}

TEST_CASE("concern references resolve by unique suffix") {
    auto spec = testing::lkas();
    CHECK(resolve_concern(spec.forest, cid("Confidentiality")) ==
          cid("Trustworthiness.Security.Cybersecurity.Confidentiality"));
    CHECK(resolve_concern(spec.forest, cid("Cybersecurity.Integrity")) ==
          cid("Trustworthiness.Security.Cybersecurity.Integrity"));
    CHECK(resolve_concern(spec.forest, cid("Functional")) == cid("Functional"));
    CHECK_FALSE(resolve_concern(spec.forest, cid("Privacy")));

    ConcernForest twin;
    twin.add_aspect("A");
    twin.add_aspect("B");
    twin.add_path(cid("A.X"));
    twin.add_path(cid("B.X"));
    CHECK_FALSE(resolve_concern(twin, cid("X")));
}

TEST_CASE("default values") {
    auto spec = testing::lkas();
    auto d = default_values(spec);
    CHECK(d.at(Fluent{SystemProp{{"cam"}, "allFramesStored", PropKind::Property}}) == true);
    CHECK(d.at(Fluent{Sat{cid("Functional")}}) == true);
    CHECK_FALSE(d.count(Fluent{SystemProp{{"cam"}, "rate25fps", PropKind::Property}}));
}

TEST_CASE("every random forest is a tree under each aspect") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        auto spec = testing::random_spec(rng);
        auto r = validate(spec);
        REQUIRE(r.ok());
        for (const auto& c : spec.forest.concerns) {
            int hops = 0;
            auto cur = c;
            while (auto p = spec.forest.parent_of(cur)) {
                cur = *p;
                REQUIRE(++hops < 100);
            }
            CHECK(spec.forest.aspects.count(cur));
        }
    }
}
