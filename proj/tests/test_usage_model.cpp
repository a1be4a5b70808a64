#include "ucm/usage_model.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

#include "testutil.hpp"

using namespace ucm;

namespace {

UcmModel linear_model() {
    UcmModel model;
    MapGraph m;
    m.name = "m";
    m.root = true;
    m.nodes = {
        {"s", NodeKind::Start, "", 1.0, std::nullopt},
        {"r1", NodeKind::Responsibility, "", 1.0, std::nullopt},
        {"e", NodeKind::End, "", 1.0, std::nullopt},
    };
    m.edges = {{"s", "r1", 1.0, std::nullopt}, {"r1", "e", 1.0, std::nullopt}};
    model.maps.push_back(std::move(m));
    return model;
}

// All probability literals appearing anywhere in the model.
std::set<double> probability_literals(const UcmModel& model) {
    std::set<double> literals{1.0};
    for (const auto& m : model.maps) {
        for (const auto& e : m.edges) literals.insert(e.probability);
        for (const auto& n : m.nodes) {
            literals.insert(n.trigger);
            if (n.stub)
                for (const auto& b : n.stub->bindings) literals.insert(b.probability);
        }
    }
    return literals;
}

}  // namespace

TEST_CASE("single path becomes a three-state linear chain") {
    auto um = convert(linear_model());
    CHECK(um.top.states.size() == 3);
    REQUIRE(um.top.transitions.size() == 2);
    CHECK(um.top.transitions[0].probability == 1.0);
    CHECK(um.top.transitions[1].probability == 1.0);
    CHECK(um.subs.empty());
}

TEST_CASE("OR-fork probabilities are copied unchanged") {
    UcmModel model = linear_model();
    auto& m = model.maps[0];
    m.nodes.push_back({"f", NodeKind::OrFork, "", 1.0, std::nullopt});
    m.nodes.push_back({"e2", NodeKind::End, "", 1.0, std::nullopt});
    m.edges = {{"s", "f", 1.0, std::nullopt},
               {"f", "r1", 0.8, std::nullopt},
               {"f", "e2", 0.2, std::nullopt},
               {"r1", "e", 1.0, std::nullopt}};
    auto um = convert(model);
    auto fork = um.top.state_index("f");
    REQUIRE(fork.has_value());
    std::vector<double> probs;
    for (const auto& t : um.top.transitions)
        if (t.from == *fork) probs.push_back(t.probability);
    CHECK(probs == std::vector<double>{0.8, 0.2});
}

TEST_CASE("telephone conversion mirrors every map") {
    auto model = ucmtest::telephone_model();
    auto um = convert(model);

    CHECK(um.top.name == "telephone");
    REQUIRE(um.subs.size() == 3);

    // One state per node, one transition per edge, for every map.
    for (const auto& map : model.maps) {
        const ChainGraph* chain = um.chain_for(map.name);
        REQUIRE(chain);
        CHECK(chain->states.size() == map.nodes.size());
        CHECK(chain->transitions.size() == map.edges.size());
    }
    CHECK(um.top.states.size() == 5);
    CHECK(um.chain_for("default_originating")->states.size() == 2);
    CHECK(um.chain_for("ocs")->states.size() == 6);
    CHECK(um.chain_for("terminating")->states.size() == 9);

    // Dynamic-stub selection probabilities come from the bindings.
    REQUIRE(um.stub_states.count("SO"));
    const auto& so = um.stub_states.at("SO");
    REQUIRE(so.size() == 2);
    CHECK(so[0].plugin == "default_originating");
    CHECK(so[0].probability == 0.6);
    CHECK(so[1].probability == 0.4);

    auto stub_state = um.top.state_index("SO");
    REQUIRE(stub_state.has_value());
    CHECK(um.top.states[*stub_state].kind == StateKind::Stub);
}

TEST_CASE("flattening the telephone fixture") {
    auto model = ucmtest::telephone_model();
    auto chain = flatten(convert(model));

    CHECK(chain.states.size() == 22);
    CHECK(chain.transitions.size() == 24);

    for (const auto& s : chain.states) {
        CHECK(s.kind != StateKind::Stub);
        CHECK_FALSE(s.source.empty());
    }

    // The dynamic stub expands into a selection with the binding probabilities.
    auto sel = chain.state_index("SO:x1");
    REQUIRE(sel.has_value());
    CHECK(chain.states[*sel].kind == StateKind::Selection);
    REQUIRE(chain.out[*sel].size() == 2);
    CHECK(chain.transitions[chain.out[*sel][0]].probability == 0.6);
    CHECK(chain.transitions[chain.out[*sel][1]].probability == 0.4);
    CHECK(chain.states[chain.transitions[chain.out[*sel][0]].to].id == "SO/default in1");

    // The static stub becomes a single probability-1 selection transition.
    auto st = chain.state_index("ST:x2");
    REQUIRE(st.has_value());
    REQUIRE(chain.out[*st].size() == 1);
    CHECK(chain.transitions[chain.out[*st][0]].probability == 1.0);

    // Copy-only: every flat probability is a literal from the source model.
    auto literals = probability_literals(model);
    for (const auto& t : chain.transitions) CHECK(literals.count(t.probability) == 1);

    REQUIRE(chain.start_states.size() == 1);
    CHECK(chain.states[chain.start_states[0]].id == "req");
}

TEST_CASE("exhaustive path enumeration of the telephone chain") {
    auto chain = flatten(convert(ucmtest::telephone_model()));
    auto paths = ucmtest::enumerate_paths(chain);
    REQUIRE(paths.size() == 5);

    std::vector<double> masses;
    double total = 0.0;
    for (const auto& p : paths) {
        masses.push_back(p.mass);
        total += p.mass;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    std::sort(masses.begin(), masses.end());
    std::vector<double> expected{0.056, 0.12, 0.12, 0.224, 0.48};
    REQUIRE(masses.size() == expected.size());
    for (std::size_t i = 0; i < masses.size(); ++i)
        CHECK(masses[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("a plug-in used by two stubs is instantiated twice") {
    UcmModel model;
    MapGraph root;
    root.name = "root";
    root.root = true;
    StubDetail detail;
    detail.dynamic = false;
    detail.inputs = {"x"};
    detail.outputs = {"o"};
    PluginBinding binding;
    binding.plugin = "p";
    binding.in["x"] = "p_s";
    binding.out["p_e"] = "o";
    detail.bindings = {binding};
    root.nodes = {
        {"s", NodeKind::Start, "", 1.0, std::nullopt},
        {"A", NodeKind::Stub, "", 1.0, detail},
        {"r", NodeKind::Responsibility, "", 1.0, std::nullopt},
        {"B", NodeKind::Stub, "", 1.0, detail},
        {"e", NodeKind::End, "", 1.0, std::nullopt},
    };
    root.edges = {{"s", "A", 1.0, std::nullopt},
                  {"A", "r", 1.0, std::nullopt},
                  {"r", "B", 1.0, std::nullopt},
                  {"B", "e", 1.0, std::nullopt}};
    MapGraph plugin;
    plugin.name = "p";
    plugin.nodes = {{"p_s", NodeKind::Start, "", 1.0, std::nullopt},
                    {"p_e", NodeKind::End, "", 1.0, std::nullopt}};
    plugin.edges = {{"p_s", "p_e", 1.0, std::nullopt}};
    model.maps = {root, plugin};

    REQUIRE(validate_model(model).ok());
    auto chain = flatten(convert(model));
    CHECK(chain.state_index("A/p_s").has_value());
    CHECK(chain.state_index("B/p_s").has_value());
    CHECK(chain.state_index("A/p_e").has_value());

    auto paths = ucmtest::enumerate_paths(chain);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].mass == 1.0);
    CHECK(paths[0].visits.at("p_s") == 2);  // visits aggregate per source object
}

TEST_CASE("unmapped plug-in end points absorb") {
    UcmModel model;
    MapGraph root;
    root.name = "root";
    root.root = true;
    StubDetail detail;
    detail.dynamic = false;
    detail.inputs = {"x"};
    detail.outputs = {};
    PluginBinding binding;
    binding.plugin = "p";
    binding.in["x"] = "p_s";
    detail.bindings = {binding};
    root.nodes = {{"s", NodeKind::Start, "", 1.0, std::nullopt},
                  {"A", NodeKind::Stub, "", 1.0, detail}};
    root.edges = {{"s", "A", 1.0, std::nullopt}};
    MapGraph plugin;
    plugin.name = "p";
    plugin.nodes = {{"p_s", NodeKind::Start, "", 1.0, std::nullopt},
                    {"p_e", NodeKind::End, "", 1.0, std::nullopt}};
    plugin.edges = {{"p_s", "p_e", 1.0, std::nullopt}};
    model.maps = {root, plugin};

    REQUIRE(validate_model(model).ok());
    auto chain = flatten(convert(model));
    auto end = chain.state_index("A/p_e");
    REQUIRE(end.has_value());
    CHECK(chain.out[*end].empty());
    CHECK(check_stochastic(chain).ok());

    auto paths = ucmtest::enumerate_paths(chain);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].mass == 1.0);
}

TEST_CASE("flatten rejects recursive plug-ins") {
    UcmModel model;
    MapGraph root;
    root.name = "root";
    root.root = true;
    StubDetail to_p;
    to_p.dynamic = false;
    to_p.inputs = {"x"};
    to_p.outputs = {};
    PluginBinding bind_p;
    bind_p.plugin = "p";
    bind_p.in["x"] = "p_s";
    to_p.bindings = {bind_p};
    root.nodes = {{"s", NodeKind::Start, "", 1.0, std::nullopt},
                  {"A", NodeKind::Stub, "", 1.0, to_p}};
    root.edges = {{"s", "A", 1.0, std::nullopt}};

    MapGraph plugin;
    plugin.name = "p";
    plugin.nodes = {{"p_s", NodeKind::Start, "", 1.0, std::nullopt},
                    {"B", NodeKind::Stub, "", 1.0, to_p}};
    plugin.edges = {{"p_s", "B", 1.0, std::nullopt}};
    model.maps = {root, plugin};

    auto um = convert(model);
    CHECK_THROWS_AS(flatten(um), RecursivePlugin);
    CHECK_FALSE(validate_model(model).ok());  // also flagged statically
}

TEST_CASE("check_stochastic") {
    SUBCASE("flattened telephone fixture is clean") {
        auto chain = flatten(convert(ucmtest::telephone_model()));
        CHECK(check_stochastic(chain).ok());
    }
    SUBCASE("single 0.9 outgoing transition is one issue") {
        FlatChain chain;
        chain.states = {{"a", StateKind::Responsibility, "a", "m", 1.0},
                        {"b", StateKind::Responsibility, "b", "m", 1.0}};
        chain.transitions = {{0, 1, 0.9, std::nullopt}};
        chain.finalize();
        auto report = check_stochastic(chain);
        REQUIRE(report.issues.size() == 1);
        CHECK(report.issues[0].where == "a");
    }
    SUBCASE("fork summing to 0.9 is one issue") {
        FlatChain chain;
        chain.states = {{"f", StateKind::OrFork, "f", "m", 1.0},
                        {"b", StateKind::End, "b", "m", 1.0},
                        {"c", StateKind::End, "c", "m", 1.0}};
        chain.transitions = {{0, 1, 0.6, std::nullopt}, {0, 2, 0.3, std::nullopt}};
        chain.finalize();
        CHECK(check_stochastic(chain).issues.size() == 1);
    }
    SUBCASE("empty chain is clean") {
        FlatChain chain;
        chain.finalize();
        CHECK(check_stochastic(chain).ok());
    }
}

TEST_CASE("random valid models flatten into stochastically valid chains") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        ucmtest::GenOptions opts;
        opts.allow_loops = seed % 4 == 0;
        opts.conditioned_forks = seed % 2 == 0;
        auto model = ucmtest::ModelGen(seed, opts).generate();
        REQUIRE(validate_model(model).ok());
        auto chain = flatten(convert(model));
        auto report = check_stochastic(chain);
        for (const auto& issue : report.issues)
            MESSAGE("seed ", seed, " ", issue.where, ": ", issue.message);
        CHECK(report.ok());
    }
}

TEST_CASE("total path mass is 1 on random acyclic models") {
    for (std::uint64_t seed = 100; seed < 125; ++seed) {
        auto model = ucmtest::ModelGen(seed).generate();  // conditioned, no loops
        REQUIRE(validate_model(model).ok());
        auto chain = flatten(convert(model));
        auto paths = ucmtest::enumerate_paths(chain);
        double total = 0.0;
        for (const auto& p : paths) total += p.mass;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

        auto literals = probability_literals(model);
        for (const auto& t : chain.transitions) CHECK(literals.count(t.probability) == 1);
    }
}
