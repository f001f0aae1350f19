#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "acpat/catalog.hpp"
#include "acpat/pattern.hpp"
#include "doctest.h"
#include "util.hpp"

using namespace acpat;

TEST_CASE("builtin names round-trip") {
    for (PatternName n : all_pattern_names()) {
        auto back = pattern_name_from_string(to_string(n));
        REQUIRE(back.has_value());
        CHECK(*back == n);
        // Every builtin constructs.
        CHECK(builtin_pattern(n).num_points() > 0);
    }
    CHECK_FALSE(pattern_name_from_string("no-such-pattern").has_value());
}

TEST_CASE("serialize round-trips every builtin") {
    for (PatternName n : all_pattern_names()) {
        const Pattern& p = builtin_pattern(n);
        Pattern back = parse_pattern(serialize_pattern(p));
        CHECK(back.canonical_key() == p.canonical_key());
        CHECK(back.num_points() == p.num_points());
        CHECK(back.num_variables() == p.num_variables());
    }
}

TEST_CASE("order cycles are rejected") {
    PatternBuilder vb;
    vb.variable("x", {"a"}).variable("y", {"b"}).pos("a", "b");
    vb.var_less("x", "y").var_less("y", "x");
    CHECK_THROWS_AS(vb.build(), ParseError);

    PatternBuilder db;
    db.variable("x", {"a", "b"}).variable("y", {"c"}).pos("a", "c");
    db.dom_less("a", "b").dom_less("b", "a");
    CHECK_THROWS_AS(db.build(), ParseError);
}

TEST_CASE("orders are stored transitively closed") {
    Pattern p = PatternBuilder()
                    .variable("x", {"a", "b", "c"})
                    .variable("y", {"d"})
                    .pos("a", "d")
                    .dom_less("a", "b")
                    .dom_less("b", "c")
                    .build();
    int a = p.find_point("a"), b = p.find_point("b"), c = p.find_point("c");
    CHECK(p.dom_less(a, b));
    CHECK(p.dom_less(b, c));
    CHECK(p.dom_less(a, c));
    CHECK_FALSE(p.dom_less(c, a));
}

TEST_CASE("implied disequalities") {
    // Domain-ordered pairs are disequal.
    Pattern p1 = PatternBuilder()
                     .variable("x", {"a", "b"})
                     .variable("y", {"c"})
                     .pos("a", "c")
                     .dom_less("a", "b")
                     .build();
    CHECK(p1.diseq(p1.find_point("a"), p1.find_point("b")));
    CHECK_FALSE(p1.explicit_diseq(p1.find_point("a"), p1.find_point("b")));

    // A common neighbour seen positively by one and negatively by the other
    // separates the pair.
    Pattern p2 = PatternBuilder()
                     .variable("x", {"a", "b"})
                     .variable("y", {"c"})
                     .pos("a", "c")
                     .neg("b", "c")
                     .build();
    CHECK(p2.diseq(p2.find_point("a"), p2.find_point("b")));

    // Without either reason the points stay unconstrained.
    Pattern p3 = PatternBuilder()
                     .variable("x", {"a", "b"})
                     .variable("y", {"c"})
                     .pos("a", "c")
                     .pos("b", "c")
                     .build();
    CHECK_FALSE(p3.diseq(p3.find_point("a"), p3.find_point("b")));
}

TEST_CASE("mergeable and dangling points") {
    // Indistinguishable pair: both positive to the same foreign point.
    Pattern twin = PatternBuilder()
                       .variable("x", {"a", "b"})
                       .variable("y", {"c"})
                       .pos("a", "c")
                       .pos("b", "c")
                       .build();
    CHECK(twin.mergeable(twin.find_point("a"), twin.find_point("b")));
    CHECK_FALSE(twin.is_simple());

    // Compatibility entries may only join points of distinct variables.
    PatternBuilder samevar;
    samevar.variable("x", {"a"}).variable("y", {"c", "d"}).pos("a", "c").neg("c", "d");
    CHECK_THROWS_AS(samevar.build(), ParseError);

    // A positive-only point with a single defined entry dangles.
    Pattern hang = PatternBuilder()
                       .variable("x", {"a", "b"})
                       .variable("y", {"c"})
                       .variable("z", {"e"})
                       .neg("a", "c")
                       .pos("b", "c")
                       .pos("e", "c")
                       .build();
    auto dp = hang.dangling_points();
    CHECK(std::find(dp.begin(), dp.end(), hang.find_point("e")) != dp.end());
    CHECK_FALSE(hang.is_simple());

    // The maximal classification targets are all simple.
    for (PatternName n : {PatternName::BTP, PatternName::EMC, PatternName::BTX,
                          PatternName::BTI, PatternName::LX, PatternName::MC})
        CHECK(builtin_pattern(n).is_simple());
}

TEST_CASE("inversions are involutions and commute") {
    for (PatternName n : {PatternName::BTP, PatternName::EMC, PatternName::BTX,
                          PatternName::BTI, PatternName::LX, PatternName::Q,
                          PatternName::V_GT, PatternName::T1}) {
        const Pattern& p = builtin_pattern(n);
        CHECK(p.inv_dom().inv_dom().canonical_key() == p.canonical_key());
        CHECK(p.inv_var().inv_var().canonical_key() == p.canonical_key());
        CHECK(p.inv_dom().inv_var().canonical_key() ==
              p.inv_var().inv_dom().canonical_key());
    }
}

TEST_CASE("canonical key ignores declaration order") {
    Pattern a = PatternBuilder()
                    .variable("x", {"p", "q"})
                    .variable("y", {"r"})
                    .pos("p", "r")
                    .neg("q", "r")
                    .dom_less("p", "q")
                    .build();
    Pattern b = PatternBuilder()
                    .variable("v", {"w"})
                    .variable("u", {"t", "s"})
                    .neg("t", "w")
                    .pos("s", "w")
                    .dom_less("s", "t")
                    .build();
    CHECK(a.canonical_key() == b.canonical_key());

    // A genuinely different pattern separates.
    Pattern c = PatternBuilder()
                    .variable("x", {"p", "q"})
                    .variable("y", {"r"})
                    .pos("p", "r")
                    .neg("q", "r")
                    .dom_less("q", "p")
                    .build();
    CHECK(c.canonical_key() != a.canonical_key());
    // But it is the domain inversion of the first.
    CHECK(c.canonical_key() == a.inv_dom().canonical_key());
}

TEST_CASE("unordered projection drops both orders") {
    const Pattern& emc = builtin_pattern(PatternName::EMC);
    Pattern u = emc.unordered();
    CHECK_FALSE(u.var_order_total());
    for (int p = 0; p < u.num_points(); ++p)
        for (int q = 0; q < u.num_points(); ++q) CHECK_FALSE(u.dom_less(p, q));
    for (int x = 0; x < u.num_variables(); ++x)
        for (int y = 0; y < u.num_variables(); ++y) CHECK_FALSE(u.var_less(x, y));
    // Compatibility is untouched.
    CHECK(u.pos_edges().size() == emc.pos_edges().size());
    CHECK(u.neg_edges().size() == emc.neg_edges().size());
    // Projecting twice changes nothing further.
    CHECK(u.unordered().canonical_key() == u.canonical_key());
}

TEST_CASE("point lookup") {
    const Pattern& btp = builtin_pattern(PatternName::BTP);
    for (int p = 0; p < btp.num_points(); ++p) {
        auto [var, name] = btp.point_label(p);
        CHECK(btp.find_point(name) == p);
        CHECK(btp.var_of(p) == btp.var_of(btp.point_id(btp.var_of(p), 0)));
    }
    CHECK(btp.find_point("zzz") == -1);
}
