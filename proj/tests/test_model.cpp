#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "salss/builtin.hpp"
#include "salss/errors.hpp"
#include "salss/model.hpp"
#include "salss/model_io.hpp"

using namespace salss;

namespace {

bool has_code(const std::vector<Violation>& vs, ViolationCode code) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.code == code; });
}

SaModel tiny() {
    ModelBuilder b("tiny");
    b.clock("x", Uniform{0, 1});
    b.location("a").location("b");
    b.initial("a");
    b.edge("a", {"x"}, {"x"}, "b");
    b.goal("win", {"b"});
    return b.build();
}

}  // namespace

TEST(Distribution, Check) {
    EXPECT_FALSE(check(Uniform{0, 1}));
    EXPECT_TRUE(check(Uniform{1, 1}));
    EXPECT_TRUE(check(Uniform{-1, 1}));
    EXPECT_TRUE(check(Uniform{0, INFINITY}));
    EXPECT_FALSE(check(Constant{0}));
    EXPECT_TRUE(check(Constant{-0.5}));
    EXPECT_FALSE(check(Exponential{2}));
    EXPECT_TRUE(check(Exponential{0}));
}

TEST(Distribution, SampleRecipes) {
    SplitMix64 a{99};
    SplitMix64 b{99};
    const double u = b.uniform01();
    EXPECT_DOUBLE_EQ(sample(Uniform{2, 6}, a), 2 + u * 4);
    const double u2 = b.uniform01();
    EXPECT_DOUBLE_EQ(sample(Exponential{3}, a), -std::log(1 - u2) / 3);
    const auto before = a.state();
    EXPECT_EQ(sample(Constant{0.25}, a), 0.25);
    EXPECT_EQ(a.state(), before);
}

TEST(Distribution, Describe) {
    EXPECT_EQ(describe(Uniform{0, 1}), "Uni(0, 1)");
}

TEST(Validate, BuiltinsAreValid) {
    for (const auto& name : builtin_names()) {
        EXPECT_TRUE(validate(builtin(name)).empty()) << name;
    }
}

TEST(Validate, DegenerateUniform) {
    SaModel m = tiny();
    m.delays[0] = Uniform{1, 1};
    const auto vs = validate(m);
    ASSERT_EQ(vs.size(), 1u);
    EXPECT_EQ(vs[0].code, ViolationCode::BadDistribution);
}

TEST(Validate, DuplicateAction) {
    SaModel m = tiny();
    Edge dup = m.edges[0][0];
    dup.guard.clear();
    m.edges[0].push_back(dup);
    EXPECT_TRUE(has_code(validate(m), ViolationCode::DuplicateAction));
}

TEST(Validate, WeightsMustSumToOne) {
    SaModel m = tiny();
    m.edges[0][0].targets = {{1, 0.5}, {0, 0.4}};
    EXPECT_TRUE(has_code(validate(m), ViolationCode::BadWeights));
    m.edges[0][0].targets = {{1, 0.5}, {0, 0.5 + 1e-12}};
    EXPECT_TRUE(validate(m).empty());
    m.edges[0][0].targets = {{1, 1.5}, {0, -0.5}};
    EXPECT_TRUE(has_code(validate(m), ViolationCode::BadWeights));
}

TEST(Validate, ReferencesAreChecked) {
    SaModel m = tiny();
    m.edges[0][0].guard = {7};
    m.edges[0][0].targets = {{9, 1.0}};
    m.initial = 5;
    const auto vs = validate(m);
    EXPECT_TRUE(has_code(vs, ViolationCode::UnknownClock));
    EXPECT_TRUE(has_code(vs, ViolationCode::UnknownLocation));
    EXPECT_TRUE(has_code(vs, ViolationCode::BadInitial));
}

TEST(Validate, EmptyTargets) {
    SaModel m = tiny();
    m.edges[0][0].targets.clear();
    EXPECT_TRUE(has_code(validate(m), ViolationCode::EmptyTargets));
}

TEST(Builder, RejectsInvalid) {
    ModelBuilder b("bad");
    b.clock("x", Uniform{2, 1});
    b.location("a");
    EXPECT_THROW(b.build(), ModelError);
}

TEST(Builtin, Shapes) {
    const SaModel m0 = builtin("M0");
    EXPECT_EQ(m0.locations.size(), 6u);
    EXPECT_EQ(m0.clocks.size(), 2u);
    for (const auto& d : m0.delays) EXPECT_EQ(d, (DistributionSpec{Uniform{0, 1}}));

    const SaModel m2 = builtin("M2");
    ASSERT_EQ(m2.clocks, (std::vector<std::string>{"x", "y", "z"}));
    EXPECT_EQ(m2.delays[0], (DistributionSpec{Uniform{0, 8}}));
    EXPECT_EQ(m2.delays[1], (DistributionSpec{Uniform{0, 1}}));
    EXPECT_EQ(m2.delays[2], (DistributionSpec{Uniform{0, 4}}));

    const SaModel m3 = builtin("M3");
    EXPECT_EQ(m3.locations.size(), 8u);
    EXPECT_EQ(m3.clocks.size(), 3u);
    for (const auto& d : m3.delays) EXPECT_EQ(d, (DistributionSpec{Uniform{0, 1}}));
}

TEST(Builtin, GoalsAndDistinctActions) {
    for (const auto& name : builtin_names()) {
        const SaModel m = builtin(name);
        const GoalSet win = goal_set(m, "win");
        const GoalSet lose = goal_set(m, "lose");
        EXPECT_TRUE(win.contains(*m.location_index("yes"))) << name;
        EXPECT_TRUE(lose.contains(*m.location_index("no"))) << name;
        EXPECT_TRUE(m.edges[*m.location_index("yes")].empty());
        for (const auto& edges : m.edges) {
            std::set<ActionId> seen;
            for (const auto& e : edges) EXPECT_TRUE(seen.insert(e.action).second) << name;
        }
    }
}

TEST(Builtin, Unknown) {
    EXPECT_THROW(builtin("M7"), NotFound);
    EXPECT_THROW(goal_set(builtin("M0"), "nope"), NotFound);
}

TEST(ModelIo, RoundTripBuiltins) {
    for (const auto& name : builtin_names()) {
        const SaModel m = builtin(name);
        EXPECT_EQ(parse_model(serialize_model(m)), m) << name;
    }
}

TEST(ModelIo, SaveLoad) {
    const auto path = std::filesystem::temp_directory_path() / "salss_test_M4.json";
    save_model(builtin("M4"), path);
    EXPECT_EQ(load_model(path), builtin("M4"));
    std::filesystem::remove(path);
}

TEST(ModelIo, Fixture) {
    const SaModel m = load_model(SALSS_FIXTURE_DIR "/M1.json");
    EXPECT_TRUE(validate(m).empty());
    EXPECT_EQ(m, builtin("M1"));
}

TEST(ModelIo, MissingInitial) {
    const std::string text = R"({"clocks": {}, "locations": ["a"], "edges": [], "goals": {}})";
    EXPECT_THROW(parse_model(text), ParseError);
}

TEST(ModelIo, SyntaxErrorPosition) {
    const std::string text = "{\n  \"clocks\": {},\n  \"locations\": [\"a\",]\n}";
    try {
        parse_model(text);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_GT(e.column(), 1u);
    }
}

TEST(ModelIo, ViolationsAreReported) {
    const std::string text = R"({
      "clocks": {"x": {"dist": "uniform", "lo": 1, "hi": 1}},
      "locations": ["a", "b"], "initial": "a",
      "edges": [{"from": "a", "action": "go", "guard": ["q"], "restart": [], "targets": [{"to": "b", "weight": 1}]}],
      "goals": {"win": ["b"]}})";
    try {
        parse_model(text);
        FAIL() << "expected ValidationFailed";
    } catch (const ValidationFailed& e) {
        EXPECT_TRUE(has_code(e.violations(), ViolationCode::BadDistribution));
        EXPECT_TRUE(has_code(e.violations(), ViolationCode::UnknownClock));
    }
}

TEST(ModelIo, ResolveModel) {
    EXPECT_EQ(resolve_model("M3"), builtin("M3"));
    EXPECT_THROW(resolve_model("/nonexistent/model.json"), NotFound);
}
