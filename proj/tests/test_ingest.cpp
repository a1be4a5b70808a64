#include "ucm/ingest.hpp"

#include <doctest.h>

#include "testutil.hpp"

using namespace ucm;

TEST_CASE("telephone model file parses faithfully") {
    auto model = ucmtest::telephone_model();
    REQUIRE(model.maps.size() == 4);
    CHECK(model.root_map()->name == "telephone");
    int non_root = 0;
    for (const auto& m : model.maps) non_root += m.root ? 0 : 1;
    CHECK(non_root == 3);
    CHECK(model.find_map("default_originating"));
    CHECK(model.find_map("ocs"));
    CHECK(model.find_map("terminating"));

    const Node* so = model.maps[0].find_node("SO");
    REQUIRE(so);
    REQUIRE(so->stub.has_value());
    CHECK(so->stub->dynamic);
    REQUIRE(so->stub->bindings.size() == 2);
    CHECK(so->stub->bindings[0].plugin == "default_originating");
    CHECK(so->stub->bindings[0].probability == doctest::Approx(0.6));
    CHECK(so->stub->bindings[1].probability == doctest::Approx(0.4));

    const MapGraph* term = model.find_map("terminating");
    const Node* in2 = term->find_node("in2");
    REQUIRE(in2);
    CHECK(in2->kind == NodeKind::Start);
    CHECK(in2->trigger == 1.0);
}

TEST_CASE("empty document is a syntax error") {
    CHECK_THROWS_AS(parse_model("", "empty.json"), SyntaxError);
    try {
        parse_model("  \n ", "empty.json");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.expected == "'maps'");
        CHECK(e.where.file == "empty.json");
    }
}

TEST_CASE("malformed JSON reports line and column") {
    try {
        parse_model("{\n  \"maps\": [\n", "broken.json");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.where.line >= 2);
    }
}

TEST_CASE("edge referencing an undeclared node") {
    const char* text = R"({
      "maps": [{"name": "m", "root": true,
        "nodes": [{"id": "a", "kind": "start"}],
        "edges": [{"from": "a", "to": "zz"}]}]
    })";
    try {
        parse_model(text, "m.json");
        FAIL("expected UnknownReference");
    } catch (const UnknownReference& e) {
        CHECK(e.name == "zz");
        CHECK(e.where.line == 4);
    }
}

TEST_CASE("duplicate node id") {
    const char* text = R"({
      "maps": [{"name": "m", "root": true,
        "nodes": [{"id": "a", "kind": "start"}, {"id": "a", "kind": "end"}],
        "edges": []}]
    })";
    CHECK_THROWS_AS(parse_model(text, "m.json"), DuplicateId);
}

TEST_CASE("unknown node kind is a syntax error") {
    const char* text = R"({"maps": [{"name": "m", "root": true,
      "nodes": [{"id": "a", "kind": "banana"}], "edges": []}]})";
    CHECK_THROWS_AS(parse_model(text, "m.json"), SyntaxError);
}

TEST_CASE("model round-trips through serialization") {
    auto model = ucmtest::telephone_model();
    auto reparsed = parse_model(serialize_model(model), "reparsed.json");
    CHECK(model == reparsed);
    CHECK(serialize_model(model) == serialize_model(reparsed));
}

TEST_CASE("random models round-trip through serialization") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ucmtest::GenOptions opts;
        opts.conditioned_forks = seed % 2 == 0;
        auto model = ucmtest::ModelGen(seed, opts).generate();
        auto reparsed = parse_model(serialize_model(model));
        CHECK(model == reparsed);
    }
}

TEST_CASE("scenario file yields the five definitions") {
    auto model = ucmtest::telephone_model();
    auto defs = ucmtest::telephone_scenarios(model);
    REQUIRE(defs.size() == 5);
    CHECK(defs[0].name == "NormalIdleCall");
    CHECK(defs[1].name == "NormalBusyCall");
    CHECK(defs[2].name == "OCSDeniedCall");
    CHECK(defs[3].name == "OCSAllowedIdleCall");
    CHECK(defs[4].name == "OCSAllowedBusyCall");

    CHECK(defs[0].start == "req");
    CHECK(defs[0].bindings.at("SO") == "default_originating");
    CHECK(defs[0].conditions.at("idle") == true);
    CHECK(defs[2].bindings.count("ST") == 0);
    CHECK(defs[2].conditions.at("allowed") == false);
}

TEST_CASE("scenario parsing rejects bad references") {
    auto model = ucmtest::telephone_model();

    SUBCASE("unknown plug-in") {
        const char* text =
            R"([{"name": "x", "start": "req", "bindings": {"SO": "xyz"}, "conditions": {}}])";
        try {
            parse_scenarios(text, model);
            FAIL("expected UnknownPlugin");
        } catch (const UnknownPlugin& e) {
            CHECK(e.stub == "SO");
            CHECK(e.plugin == "xyz");
        }
    }
    SUBCASE("unknown stub") {
        const char* text = R"([{"name": "x", "start": "req", "bindings": {"ZZ": "ocs"}}])";
        CHECK_THROWS_AS(parse_scenarios(text, model), UnknownStub);
    }
    SUBCASE("unknown variable") {
        const char* text = R"([{"name": "x", "start": "req", "conditions": {"mystery": true}}])";
        CHECK_THROWS_AS(parse_scenarios(text, model), UnknownVariable);
    }
    SUBCASE("duplicate scenario name") {
        const char* text = R"([{"name": "x", "start": "req"}, {"name": "x", "start": "req"}])";
        CHECK_THROWS_AS(parse_scenarios(text, model), DuplicateScenarioName);
    }
    SUBCASE("start point must exist on the root map") {
        const char* text = R"([{"name": "x", "start": "in2"}])";
        CHECK_THROWS_AS(parse_scenarios(text, model), UnknownReference);
    }
    SUBCASE("post entries must be end points") {
        const char* text = R"([{"name": "x", "start": "req", "post": ["vrfy"]}])";
        CHECK_THROWS_AS(parse_scenarios(text, model), UnknownReference);
    }
}

TEST_CASE("object model file parses into the containment tree") {
    auto model = ucmtest::telephone_model();
    auto objects = ucmtest::telephone_objects(model);
    auto so_children = objects.children_of("SO");
    REQUIRE(so_children.size() == 2);
    CHECK(so_children[0] == "default_originating");
    CHECK(so_children[1] == "ocs");
    CHECK(objects.parent.at("ring") == "UserT");
    CHECK(objects.parent.count("ring_fork") == 0);  // structure is never an object
}

TEST_CASE("object model parsing rejects bad trees") {
    auto model = ucmtest::telephone_model();
    SUBCASE("two parents") {
        const char* text =
            R"([{"object": "ring", "parent": "UserT"}, {"object": "ring", "parent": "terminating"}])";
        CHECK_THROWS_AS(parse_object_model(text, model), MultipleParents);
    }
    SUBCASE("containment cycle") {
        const char* text =
            R"([{"object": "ocs", "parent": "SO"}, {"object": "SO", "parent": "ocs"}])";
        CHECK_THROWS_AS(parse_object_model(text, model), CycleDetected);
    }
    SUBCASE("unknown object") {
        const char* text = R"([{"object": "ghost", "parent": "SO"}])";
        CHECK_THROWS_AS(parse_object_model(text, model), UnknownObject);
    }
}

TEST_CASE("missing files raise IoError") {
    CHECK_THROWS_AS(load_model("/nonexistent/model.json"), IoError);
}
