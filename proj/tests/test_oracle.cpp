#include <gtest/gtest.h>

#include <sstream>

#include "properties.hpp"
#include "salss/builtin.hpp"
#include "salss/errors.hpp"
#include "salss/oracle.hpp"

using namespace salss;

namespace {

std::size_t choice(const SaModel& m, const NamedStrategy& s, const char* location, Valuation v, Valuation e,
                   double t = 0.0, std::optional<ActionId> last = std::nullopt) {
    const State st{*m.location_index(location), std::move(v), std::move(e)};
    return s.choose(StrategyView{st, t, last});
}

std::size_t edge_to(const SaModel& m, const char* from, const char* to) {
    const auto& edges = m.edges[*m.location_index(from)];
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].targets[0].location == *m.location_index(to)) return i;
    }
    return edges.size();
}

}  // namespace

TEST(NamedStrategy, M1Threshold) {
    const SaModel m = builtin("M1");
    const NamedStrategy s = named_strategy(m, "x-threshold-1/2");
    EXPECT_EQ(s.declared.spec(), "ml:e");
    EXPECT_EQ(choice(m, s, "l1", {0, 0}, {0.3, 0}), edge_to(m, "l1", "l2"));
    EXPECT_EQ(choice(m, s, "l1", {0, 0}, {0.5, 0}), edge_to(m, "l1", "l2"));
    EXPECT_EQ(choice(m, s, "l1", {0, 0}, {0.7, 0}), edge_to(m, "l1", "l3"));
}

TEST(NamedStrategy, M2RuleB) {
    const SaModel m = builtin("M2");
    const NamedStrategy a = named_strategy(m, "left-iff-x-before-z");
    const NamedStrategy b = named_strategy(m, "left-iff-x-before-z-and-vx<35/12");
    // x expires before z, v(x) = 3.0 >= 35/12
    const Valuation v{3.0, 0.0, 0.0};
    const Valuation e{3.5, 0.4, 1.0};
    EXPECT_EQ(choice(m, a, "l2", v, e), edge_to(m, "l2", "l3"));
    EXPECT_EQ(choice(m, b, "l2", v, e), edge_to(m, "l2", "l4"));
    EXPECT_EQ(choice(m, b, "l2", {2.0, 0, 0}, {2.5, 0.4, 1.0}), edge_to(m, "l2", "l3"));
}

TEST(NamedStrategy, M4TimeRules) {
    const SaModel m = builtin("M4");
    const NamedStrategy s = named_strategy(m, "ℓ3-iff-t≤1/2");
    EXPECT_EQ(s.rule, "l3-iff-t<=1/2");
    EXPECT_EQ(choice(m, s, "l2", {0.7, 0, 0}, {1, 1, 1}, 0.7), edge_to(m, "l2", "l4"));
    EXPECT_EQ(choice(m, s, "l2", {0.4, 0, 0}, {1, 1, 1}, 0.4), edge_to(m, "l2", "l3"));
    const NamedStrategy mirrored = named_strategy(m, "l3-iff-t>1/2");
    EXPECT_EQ(choice(m, mirrored, "l2", {0.7, 0, 0}, {1, 1, 1}, 0.7), edge_to(m, "l2", "l3"));
}

TEST(NamedStrategy, Unknown) {
    EXPECT_THROW(named_strategy(builtin("M1"), "always-l3"), NotFound);
    EXPECT_THROW(named_strategy(builtin("M5"), "by-incoming-edge"), NotFound);
    EXPECT_FALSE(strategy_names("M4").empty());
    EXPECT_TRUE(strategy_names("M5").empty());
}

// Choices only depend on what the declared class can see.
TEST(NamedStrategy, ConfinedToDeclaredClass) {
    SplitMix64 rng{19};
    for (const auto& model_name : builtin_names()) {
        const SaModel m = builtin(model_name);
        for (const auto& rule : strategy_names(model_name)) {
            const NamedStrategy s = named_strategy(m, rule);
            for (int i = 0; i < 10000; ++i) {
                RunContext a = testkit::random_context(m, rng);
                a.last_jump = static_cast<ActionId>(rng.next() % 2);
                const RunContext b = testkit::perturb_invisible(a, s.declared, {1}, rng, true);
                const StrategyView va{a.state, a.elapsed, a.last_jump};
                const StrategyView vb{b.state, b.elapsed, b.last_jump};
                ASSERT_EQ(s.choose(va), s.choose(vb)) << model_name << " " << rule;
            }
        }
    }
}

TEST(McReference, M1) {
    const SaModel m = builtin("M1");
    const Estimate e = mc_reference(m, named_strategy(m, "x-threshold-1/2"), 100000, 1);
    EXPECT_NEAR(e.p_hat, 0.75, 0.004);
    EXPECT_EQ(e.truncated, 0u);
}

TEST(McReference, M4ConstantChoices) {
    const SaModel m = builtin("M4");
    const double l3 = mc_reference(m, named_strategy(m, "always-l3"), 200000, 2).p_hat;
    const double l4 = mc_reference(m, named_strategy(m, "always-l4"), 200000, 3).p_hat;
    EXPECT_NEAR(std::max(l3, l4), 17.0 / 24.0, 0.005);
    EXPECT_NEAR(l3 + l4, 1.0, 0.01);
}

TEST(McReference, InformedStrategiesWin) {
    for (const char* name : {"M3", "M6"}) {
        const SaModel m = builtin(name);
        EXPECT_EQ(mc_reference(m, named_strategy(m, "by-incoming-edge"), 10000, 4).p_hat, 1.0) << name;
    }
    const SaModel m0 = builtin("M0");
    EXPECT_EQ(mc_reference(m0, named_strategy(m0, "left-iff-x-before-y"), 10000, 5).p_hat, 1.0);
}

TEST(ReferenceTable, Lookup) {
    EXPECT_DOUBLE_EQ(reference_lookup("M4", "uninformed").value, 17.0 / 24.0);
    EXPECT_EQ(reference_lookup("M0", "non-prophetic").exact, "1/2");
    EXPECT_EQ(reference_lookup("M3", "hist-t-e").value, 1.0);
    EXPECT_TRUE(reference_lookup("M4", "time-aware").approximate);
    EXPECT_THROW(reference_lookup("M9", "x"), NotFound);
    for (const auto& e : reference_table()) {
        EXPECT_GE(e.value, 0.0);
        EXPECT_LE(e.value, 1.0);
        EXPECT_NO_THROW(named_strategy(builtin(e.model), e.strategy)) << e.model << " " << e.strategy;
    }
}

TEST(ReferenceTable, Csv) {
    std::ostringstream out;
    write_reference_csv(out, reference_table());
    const std::string csv = out.str();
    EXPECT_EQ(csv.rfind("model,scenario,exact,value,approximate,tolerance,strategy\n", 0), 0u);
    EXPECT_NE(csv.find("M2,rule-a,77/96,"), std::string::npos);
}
