#include <algorithm>
#include <set>
#include <vector>

#include "acpat/instance.hpp"
#include "acpat/occurrence.hpp"
#include "acpat/recognition.hpp"
#include "doctest.h"
#include "util.hpp"

using namespace acpat;
using testutil::Lcg;
using testutil::permutations;
using testutil::random_instance;

namespace {

bool constraint_holds(const OrderingConstraint& c, const std::vector<int>& pos) {
    switch (c.kind) {
        case OrderingConstraint::GreaterMin:
            return pos[c.target] > std::min(pos[c.a], pos[c.b]);
        case OrderingConstraint::LessMax:
            return pos[c.target] < std::max(pos[c.a], pos[c.b]);
        case OrderingConstraint::Precedence:
            return pos[c.target] > pos[c.a];
    }
    return false;
}

Cnf one_clause() {
    Cnf cnf;
    cnf.nvars = 3;
    cnf.clauses = {{{1, 2, 3}}};
    return cnf;
}

Cnf all_eight() {
    Cnf cnf;
    cnf.nvars = 3;
    for (int s = 0; s < 8; ++s)
        cnf.clauses.push_back({(s & 1) ? -1 : 1, (s & 2) ? -2 : 2, (s & 4) ? -3 : 3});
    return cnf;
}

std::vector<bool> truth_of(int mask) {
    std::vector<bool> t(4);
    for (int i = 0; i < 3; ++i) t[i + 1] = (mask >> i) & 1;
    return t;
}

}  // namespace

TEST_CASE("dimacs parsing") {
    Cnf cnf = parse_dimacs("c comment\np cnf 4 2\n1 -2 3 0\n-1 2 4 0\n");
    CHECK(cnf.nvars == 4);
    REQUIRE(cnf.clauses.size() == 2);
    CHECK(cnf.clauses[0] == std::array<int, 3>{1, -2, 3});
    CHECK(cnf.clauses[1] == std::array<int, 3>{-1, 2, 4});

    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 0\n"), ParseError);        // two literals
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 -1 2 0\n"), ParseError);     // repeated prop
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 3\n"), ParseError);        // unterminated
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 3 0\n"), ParseError);      // out of range
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 2\n1 2 3 0\n"), ParseError);      // count mismatch
    CHECK_THROWS_AS(parse_dimacs(""), ParseError);
}

TEST_CASE("collected constraints characterise occurrence over all variable orders") {
    // The bridge the whole recognition module stands on: an order satisfies
    // the collected ordering constraints exactly when the target does not
    // occur under it.
    Lcg rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        Instance inst = random_instance(3 + rng.below(2), 3, 0.55, rng);
        DomOrder dord = universe_dom_order(inst.universe());
        for (RecogTarget target :
             {RecogTarget::BTP, RecogTarget::BTI, RecogTarget::BTX, RecogTarget::EMC}) {
            OrderingProblem op = collect_var_order_witnesses(inst, target, dord);
            const Pattern& pat = builtin_pattern(pattern_of(target));
            for (const auto& vo : permutations(inst.num_variables())) {
                auto pos = order_positions(vo, inst.num_variables());
                bool sat = ordering_satisfied(op, pos);
                bool occ = occurs_in_instance(pat, inst, vo, dord).occurs;
                REQUIRE(sat == !occ);
            }
        }
    }
}

TEST_CASE("ordering_satisfied matches the direct evaluation") {
    Lcg rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        Instance inst = random_instance(4, 3, 0.5, rng);
        for (RecogTarget target : {RecogTarget::BTP, RecogTarget::EMC}) {
            OrderingProblem op =
                collect_var_order_witnesses(inst, target, universe_dom_order(inst.universe()));
            for (const auto& vo : permutations(4)) {
                auto pos = order_positions(vo, 4);
                bool direct = true;
                for (const auto& c : op.constraints)
                    direct = direct && constraint_holds(c, pos);
                CHECK(ordering_satisfied(op, pos) == direct);
            }
        }
    }
}

TEST_CASE("emitted constraints are closed under the family extremum") {
    Lcg rng(43);
    int sampled = 0;
    for (int trial = 0; trial < 20; ++trial) {
        Instance inst = random_instance(4 + rng.below(2), 3, 0.5, rng);
        int n = inst.num_variables();
        auto perms = permutations(n);
        for (RecogTarget target :
             {RecogTarget::BTP, RecogTarget::BTI, RecogTarget::BTX, RecogTarget::EMC}) {
            OrderingProblem op =
                collect_var_order_witnesses(inst, target, universe_dom_order(inst.universe()));
            for (const auto& c : op.constraints) {
                for (int pick = 0; pick < 8; ++pick) {
                    const auto& p1 = perms[rng.below(static_cast<int>(perms.size()))];
                    const auto& p2 = perms[rng.below(static_cast<int>(perms.size()))];
                    auto q1 = order_positions(p1, n), q2 = order_positions(p2, n);
                    if (!constraint_holds(c, q1) || !constraint_holds(c, q2)) continue;
                    std::vector<int> ext(n);
                    for (int i = 0; i < n; ++i)
                        ext[i] = op.family == ClosureFamily::MaxClosed
                                     ? std::max(q1[i], q2[i])
                                     : std::min(q1[i], q2[i]);
                    CHECK(constraint_holds(c, ext));
                    ++sampled;
                }
            }
        }
    }
    CHECK(sampled > 100);
}

TEST_CASE("find_var_order agrees with exhaustive search") {
    Lcg rng(44);
    for (int trial = 0; trial < 25; ++trial) {
        Instance inst = random_instance(3 + rng.below(3), 3, 0.55, rng);
        DomOrder dord = universe_dom_order(inst.universe());
        for (RecogTarget target :
             {RecogTarget::BTP, RecogTarget::BTI, RecogTarget::BTX, RecogTarget::EMC}) {
            const Pattern& pat = builtin_pattern(pattern_of(target));
            bool exists = false;
            for (const auto& vo : permutations(inst.num_variables()))
                if (!occurs_in_instance(pat, inst, vo, dord).occurs) exists = true;
            auto got = find_var_order(inst, target, dord);
            REQUIRE(got.has_value() == exists);
            if (got) CHECK_FALSE(occurs_in_instance(pat, inst, *got, dord).occurs);
        }
    }
}

TEST_CASE("find_dom_order agrees with exhaustive search") {
    Lcg rng(45);
    for (int trial = 0; trial < 25; ++trial) {
        Instance inst = random_instance(4, 3, 0.5, rng);
        VarOrder vo = identity_var_order(4);
        for (RecogTarget target : {RecogTarget::BTI, RecogTarget::BTX}) {
            const Pattern& pat = builtin_pattern(pattern_of(target));
            bool exists = false;
            for (const auto& dp : permutations(inst.universe().size())) {
                DomOrder dord;
                for (int i : dp) dord.push_back(inst.universe().values()[i]);
                if (!occurs_in_instance(pat, inst, vo, dord).occurs) exists = true;
            }
            auto got = find_dom_order(inst, target, vo);
            REQUIRE(got.has_value() == exists);
            if (got) CHECK_FALSE(occurs_in_instance(pat, inst, vo, *got).occurs);
        }
        CHECK_THROWS_AS(find_dom_order(inst, RecogTarget::EMC, vo), std::invalid_argument);
        CHECK_THROWS_AS(find_dom_order(inst, RecogTarget::BTP, vo), std::invalid_argument);
    }
}

TEST_CASE("gadget construction shape") {
    Gadget g = gen_gadget(RecogTarget::EMC, one_clause());
    const Instance& inst = g.instance;
    CHECK(inst.num_variables() == 6);
    REQUIRE(g.var_order.has_value());
    CHECK(*g.var_order == identity_var_order(6));
    // Gadget variables x1, x3, x5 carry the 2n+1 basics plus b, c, d.
    for (int pos : {0, 2, 4}) CHECK(inst.domain(pos).size() == 10);
    CHECK(is_arc_consistent(inst));
    CHECK(g.meta.a_max == 7);
    REQUIRE(g.meta.clauses.size() == 1);
    CHECK(g.meta.clauses[0].b == 8);
    CHECK(g.meta.clauses[0].c == 9);
    CHECK(g.meta.clauses[0].d == 10);

    for (RecogTarget t : {RecogTarget::BTI, RecogTarget::BTX}) {
        Gadget h = gen_gadget(t, one_clause());
        CHECK_FALSE(h.var_order.has_value());
        CHECK(is_arc_consistent(h.instance));
    }
    CHECK(is_arc_consistent(gen_gadget(RecogTarget::EMC, all_eight()).instance));
    CHECK(is_arc_consistent(gen_gadget(RecogTarget::BTX, all_eight()).instance));
    CHECK(is_arc_consistent(gen_gadget(RecogTarget::BTI, all_eight()).instance));
    CHECK_THROWS_AS(gen_gadget(RecogTarget::BTP, one_clause()), std::invalid_argument);
}

TEST_CASE("assignment_to_order emits a universe permutation with the top value last") {
    for (RecogTarget t : {RecogTarget::EMC, RecogTarget::BTI}) {
        Gadget g = gen_gadget(t, all_eight());
        for (int mask = 0; mask < 8; ++mask) {
            DomOrder ord = assignment_to_order(truth_of(mask), g.meta);
            REQUIRE(ord.size() == static_cast<size_t>(g.instance.universe().size()));
            std::set<Value> seen(ord.begin(), ord.end());
            CHECK(seen.size() == ord.size());
            CHECK(ord.back() == g.meta.a_max);
            // Literal placement follows the assignment.
            auto dp = dom_positions(ord, g.instance.universe());
            for (int i = 1; i <= 3; ++i) {
                bool tv = truth_of(mask)[i];
                bool above = dp[g.instance.universe().rank(g.meta.pos_value[i])] >
                             dp[g.instance.universe().rank(g.meta.neg_value[i])];
                CHECK(above == tv);
            }
        }
    }
}

TEST_CASE("emc gadget fidelity for a single clause") {
    Gadget g = gen_gadget(RecogTarget::EMC, one_clause());
    const Pattern& emc = builtin_pattern(pattern_of(RecogTarget::EMC));
    for (int mask = 0; mask < 8; ++mask) {
        bool sat = mask != 0;
        auto r = occurs_in_instance(emc, g.instance, *g.var_order,
                                    assignment_to_order(truth_of(mask), g.meta));
        CHECK(r.occurs == !sat);
    }
}

TEST_CASE("bti and btx gadget fidelity, satisfiable direction") {
    for (RecogTarget t : {RecogTarget::BTI, RecogTarget::BTX}) {
        const Pattern& pat = builtin_pattern(pattern_of(t));
        Gadget g = gen_gadget(t, one_clause());
        VarOrder vo = identity_var_order(g.instance.num_variables());
        auto ord = find_dom_order(g.instance, t, vo);
        REQUIRE(ord.has_value());
        CHECK_FALSE(occurs_in_instance(pat, g.instance, vo, *ord).occurs);
        // Cross-check: every satisfying assignment's induced order also avoids
        // the pattern under the same variable order.
        for (int mask = 1; mask < 8; ++mask)
            CHECK_FALSE(occurs_in_instance(pat, g.instance, vo,
                                           assignment_to_order(truth_of(mask), g.meta))
                            .occurs);
    }
}

TEST_CASE("bti and btx gadgets on the unsatisfiable formula admit no order") {
    for (RecogTarget t : {RecogTarget::BTI, RecogTarget::BTX}) {
        const Pattern& pat = builtin_pattern(pattern_of(t));
        Gadget g = gen_gadget(t, all_eight());
        VarOrder vo = identity_var_order(g.instance.num_variables());
        CHECK_FALSE(find_dom_order(g.instance, t, vo).has_value());
        for (int mask = 0; mask < 8; ++mask)
            CHECK(occurs_in_instance(pat, g.instance, vo,
                                     assignment_to_order(truth_of(mask), g.meta))
                      .occurs);
    }
}

TEST_CASE("target name round-trips") {
    for (RecogTarget t :
         {RecogTarget::BTP, RecogTarget::BTI, RecogTarget::BTX, RecogTarget::EMC}) {
        auto back = recog_target_from_string(to_string(t));
        REQUIRE(back.has_value());
        CHECK(*back == t);
    }
    CHECK_FALSE(recog_target_from_string("lx").has_value());
}
