#include "salss/builtin.hpp"

#include "salss/errors.hpp"

namespace salss {

namespace {

// Shared tail: from `decide`, e0 goes to `left` and e1 to `right`; in `left`
// the first expiring of {x, y} decides, x wins; in `right` y wins.
void race_gadget(ModelBuilder& b, std::string_view left, std::string_view right) {
    b.edge(left, {"x"}, {}, "yes");
    b.edge(left, {"y"}, {}, "no");
    b.edge(right, {"y"}, {}, "yes");
    b.edge(right, {"x"}, {}, "no");
}

void outcome_locations(ModelBuilder& b) {
    b.location("yes").location("no");
    b.goal("win", {"yes"}).goal("lose", {"no"});
}

SaModel make_m0() {
    ModelBuilder b("M0");
    b.clock("x", Uniform{0, 1}).clock("y", Uniform{0, 1});
    b.location("l0").location("l1").location("l2").location("l3");
    outcome_locations(b);
    b.initial("l0");
    b.edge("l0", {}, {"x", "y"}, "l1");
    b.edge("l1", {}, {}, "l2");
    b.edge("l1", {}, {}, "l3");
    race_gadget(b, "l2", "l3");
    return b.build();
}

SaModel make_m1() {
    ModelBuilder b("M1");
    b.clock("x", Uniform{0, 1}).clock("y", Uniform{0, 1});
    b.location("l0").location("l1").location("l2").location("l3");
    outcome_locations(b);
    b.initial("l0");
    b.edge("l0", {}, {"x"}, "l1");
    b.edge("l1", {}, {"y"}, "l2");
    b.edge("l1", {}, {"y"}, "l3");
    race_gadget(b, "l2", "l3");
    return b.build();
}

SaModel make_m2() {
    ModelBuilder b("M2");
    b.clock("x", Uniform{0, 8}).clock("y", Uniform{0, 1}).clock("z", Uniform{0, 4});
    b.location("l0").location("l1").location("l2").location("l3").location("l4");
    outcome_locations(b);
    b.initial("l0");
    b.edge("l0", {}, {"x", "z"}, "l1");
    b.edge("l1", {"x"}, {"z"}, "l2");
    b.edge("l1", {"z"}, {"z"}, "l2");
    b.edge("l2", {}, {"y"}, "l3");
    b.edge("l2", {}, {"y"}, "l4");
    race_gadget(b, "l3", "l4");
    return b.build();
}

SaModel make_m3() {
    ModelBuilder b("M3");
    b.clock("x", Uniform{0, 1}).clock("y", Uniform{0, 1}).clock("z", Uniform{0, 1});
    b.location("l0").location("l1").location("l2").location("l3").location("l4").location("l5");
    outcome_locations(b);
    b.initial("l0");
    b.edge("l0", {}, {"z"}, "l1");
    b.edge("l1", {"z"}, {"x", "y", "z"}, "l2");
    b.edge("l2", {"x"}, {"y"}, "l3");
    b.edge("l2", {"y"}, {"x"}, "l3");
    b.edge("l3", {}, {}, "l4");
    b.edge("l3", {}, {}, "l5");
    race_gadget(b, "l4", "l5");
    return b.build();
}

SaModel make_m4() {
    ModelBuilder b("M4");
    b.clock("x", Uniform{0, 2}).clock("y", Uniform{0, 1}).clock("z", Uniform{0, 2});
    b.location("l0").location("l1").location("l2").location("l3").location("l4");
    outcome_locations(b);
    b.initial("l0");
    b.edge("l0", {}, {"x", "z"}, "l1");
    b.edge("l1", {"z"}, {"y", "z"}, "l2");
    b.edge("l2", {}, {}, "l3");
    b.edge("l2", {}, {}, "l4");
    race_gadget(b, "l3", "l4");
    return b.build();
}

// M5 is drawn starting at l1.
SaModel make_m5() {
    ModelBuilder b("M5");
    b.clock("x", Uniform{0, 1}).clock("y", Uniform{0, 1});
    b.location("l1").location("l2").location("l3").location("l4").location("l5");
    outcome_locations(b);
    b.initial("l1");
    b.edge("l1", {}, {"x", "y"}, "l2");
    b.edge("l2", {"y"}, {"y"}, "l3");
    b.edge("l3", {}, {"y"}, "l4");
    b.edge("l3", {}, {"y"}, "l5");
    race_gadget(b, "l4", "l5");
    return b.build();
}

SaModel make_m6() {
    ModelBuilder b("M6");
    b.clock("x", Uniform{0, 1}).clock("y", Uniform{0, 1});
    b.location("l0").location("l1").location("l2").location("l3").location("l4");
    outcome_locations(b);
    b.initial("l0");
    b.edge("l0", {}, {"x", "y"}, "l1");
    b.edge("l1", {"x"}, {}, "l2");
    b.edge("l1", {"y"}, {}, "l2");
    b.edge("l2", {}, {}, "l3");
    b.edge("l2", {}, {}, "l4");
    race_gadget(b, "l3", "l4");
    return b.build();
}

}  // namespace

SaModel builtin(std::string_view name) {
    if (name == "M0") return make_m0();
    if (name == "M1") return make_m1();
    if (name == "M2") return make_m2();
    if (name == "M3") return make_m3();
    if (name == "M4") return make_m4();
    if (name == "M5") return make_m5();
    if (name == "M6") return make_m6();
    throw NotFound("unknown builtin model '" + std::string{name} + "' (expected M0..M6)");
}

std::vector<std::string> builtin_names() {
    return {"M0", "M1", "M2", "M3", "M4", "M5", "M6"};
}

}  // namespace salss
