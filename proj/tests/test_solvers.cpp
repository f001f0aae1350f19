#include <algorithm>
#include <set>
#include <vector>

#include "acpat/catalog.hpp"
#include "acpat/instance.hpp"
#include "acpat/solvers.hpp"
#include "doctest.h"
#include "util.hpp"

using namespace acpat;
using testutil::Lcg;
using testutil::random_instance;
using testutil::witness_valid;

namespace {

// Remap a variable-order prefix onto the sub-instance produced by prefix(),
// which keeps the selected variables in original index order.
VarOrder prefix_order(const VarOrder& vo, int len, int nvars) {
    std::vector<int> keep(vo.begin(), vo.begin() + len);
    std::sort(keep.begin(), keep.end());
    std::vector<int> remap(nvars, -1);
    for (int i = 0; i < len; ++i) remap[keep[i]] = i;
    VarOrder out;
    for (int i = 0; i < len; ++i) out.push_back(remap[vo[i]]);
    return out;
}

}  // namespace

TEST_CASE("ordered class solvers are exact on pattern-free instances") {
    struct Cfg {
        PatternName pattern;
        SolveOutcome (*run)(const Instance&, const VarOrder&, const DomOrder&);
    };
    const Cfg cfgs[] = {{PatternName::EMC, solve_emc},
                        {PatternName::BTX, solve_btx},
                        {PatternName::BTI, solve_bti}};
    for (const Cfg& cfg : cfgs) {
        const Pattern& p = builtin_pattern(cfg.pattern);
        for (unsigned seed = 0; seed < 50; ++seed) {
            int n = 3 + seed % 4, d = 2 + seed % 3;
            GeneratedInstance gen = gen_pattern_free_instance(p, n, d, 0.5, seed);
            REQUIRE_FALSE(
                occurs_in_instance(p, gen.instance, gen.var_order, gen.dom_order).occurs);
            AcResult ac = enforce_ac(gen.instance);
            if (ac.trace.wipeout) {
                CHECK(brute_force_solve(gen.instance).status == SearchStatus::Unsat);
                continue;
            }
            SolveOutcome out = cfg.run(ac.instance, gen.var_order, gen.dom_order);
            REQUIRE(out.status == OutcomeStatus::Solution);
            CHECK(check_assignment(ac.instance, out.solution));
            CHECK(check_assignment(gen.instance, out.solution));
            // One pass over the order, no revisits: backtrack-free.
            CHECK(out.trace.size() == static_cast<size_t>(n));
            std::set<int> seen;
            for (const auto& step : out.trace) CHECK(seen.insert(step.var).second);
        }
    }
}

TEST_CASE("mac-based class solvers are exact on pattern-free instances") {
    for (unsigned seed = 0; seed < 50; ++seed) {
        int n = 3 + seed % 4, d = 2 + seed % 3;
        {
            GeneratedInstance gen = gen_pattern_free_instance(
                builtin_pattern(PatternName::LX), n, d, 0.5, seed);
            SolveOutcome out = solve_lx(gen.instance);
            bool unsat = brute_force_solve(gen.instance).status == SearchStatus::Unsat;
            REQUIRE(out.status != OutcomeStatus::PreconditionViolated);
            CHECK((out.status == OutcomeStatus::Wipeout) == unsat);
            if (out.status == OutcomeStatus::Solution)
                CHECK(check_assignment(gen.instance, out.solution));
        }
        {
            GeneratedInstance gen = gen_pattern_free_instance(
                builtin_pattern(PatternName::BTP), n, d, 0.5, seed);
            SolveOutcome out = solve_btp(gen.instance, gen.var_order);
            bool unsat = brute_force_solve(gen.instance).status == SearchStatus::Unsat;
            REQUIRE(out.status != OutcomeStatus::PreconditionViolated);
            CHECK((out.status == OutcomeStatus::Wipeout) == unsat);
            if (out.status == OutcomeStatus::Solution)
                CHECK(check_assignment(gen.instance, out.solution));
        }
    }
}

TEST_CASE("solve_lx is mac with the first/first policies") {
    Lcg rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        Instance inst = random_instance(3 + rng.below(3), 2 + rng.below(3), 0.5, rng);
        SolveOutcome a = solve_lx(inst);
        SolveOutcome b = solve_mac(inst, first_unassigned_variable, first_domain_value);
        CHECK(a.status == b.status);
        if (a.status == OutcomeStatus::Solution) CHECK(a.solution == b.solution);
    }
}

TEST_CASE("solvers never claim solutions on the unsatisfiable catalogue") {
    for (CatalogName cn : all_catalog_names()) {
        const Instance& inst = catalog_instance(cn);
        VarOrder vo = identity_var_order(inst.num_variables());
        DomOrder dord = universe_dom_order(inst.universe());
        for (auto* run : {solve_emc, solve_btx, solve_bti}) {
            SolveOutcome out = run(inst, vo, dord);
            CHECK(out.status != OutcomeStatus::Solution);
            if (out.witness) {
                CHECK(out.witness->occurs);
            }
        }
        CHECK(solve_lx(inst).status != OutcomeStatus::Solution);
        CHECK(solve_btp(inst, vo).status != OutcomeStatus::Solution);
    }
}

TEST_CASE("precondition reports carry genuine occurrences") {
    // The two-colouring of a triangle is arc consistent and unsatisfiable, so
    // mac runs into a dead end without any wipeout upfront.
    const Instance& tri = catalog_instance(CatalogName::I_2COL_3);
    SolveOutcome out = solve_lx(tri);
    REQUIRE(out.status == OutcomeStatus::PreconditionViolated);
    REQUIRE(out.witness.has_value());
    CHECK(witness_valid(builtin_pattern(PatternName::LX), tri, out.witness->witness,
                        identity_var_order(tri.num_variables()),
                        universe_dom_order(tri.universe())));

    VarOrder vo = identity_var_order(tri.num_variables());
    DomOrder dord = universe_dom_order(tri.universe());
    for (auto [name, run] :
         {std::pair<PatternName, SolveOutcome (*)(const Instance&, const VarOrder&,
                                                  const DomOrder&)>{PatternName::EMC, solve_emc},
          {PatternName::BTX, solve_btx},
          {PatternName::BTI, solve_bti}}) {
        SolveOutcome o = run(tri, vo, dord);
        REQUIRE(o.status == OutcomeStatus::PreconditionViolated);
        REQUIRE(o.witness.has_value());
        CHECK(witness_valid(builtin_pattern(name), tri, o.witness->witness, vo, dord));
    }
}

TEST_CASE("emc construction is prefix-local") {
    const Pattern& emc = builtin_pattern(PatternName::EMC);
    int checked = 0;
    for (unsigned seed = 0; seed < 60 && checked < 30; ++seed) {
        GeneratedInstance gen =
            gen_pattern_free_instance(emc, 4 + seed % 3, 3, 0.55, seed + 500);
        AcResult ac = enforce_ac(gen.instance);
        if (ac.trace.wipeout) continue;
        ++checked;
        const Instance& inst = ac.instance;
        auto full = emc_assignment_values(inst, gen.var_order, gen.dom_order);
        REQUIRE(full.size() == static_cast<size_t>(inst.num_variables()));
        for (int len = 1; len <= inst.num_variables(); ++len) {
            Instance sub = inst.prefix(gen.var_order, len);
            VarOrder sub_vo = prefix_order(gen.var_order, len, inst.num_variables());
            auto part = emc_assignment_values(sub, sub_vo, gen.dom_order);
            REQUIRE(part.size() == static_cast<size_t>(len));
            for (int i = 0; i < len; ++i) CHECK(part[i] == full[i]);
        }
    }
    REQUIRE(checked == 30);
}

TEST_CASE("solver traces record feasible choices") {
    for (unsigned seed = 0; seed < 20; ++seed) {
        GeneratedInstance gen = gen_pattern_free_instance(
            builtin_pattern(PatternName::BTI), 4, 3, 0.5, seed + 900);
        AcResult ac = enforce_ac(gen.instance);
        if (ac.trace.wipeout) continue;
        SolveOutcome out = solve_bti(ac.instance, gen.var_order, gen.dom_order);
        REQUIRE(out.status == OutcomeStatus::Solution);
        for (const auto& step : out.trace) {
            CHECK_FALSE(step.candidates.empty());
            CHECK(std::find(step.candidates.begin(), step.candidates.end(), step.chosen) !=
                  step.candidates.end());
            CHECK(out.solution[step.var] == step.chosen);
        }
    }
}

TEST_CASE("order arguments are validated") {
    Lcg rng(77);
    Instance inst = random_instance(3, 3, 0.6, rng);
    CHECK_THROWS_AS(solve_emc(inst, {0, 1}, universe_dom_order(inst.universe())),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_btx(inst, {0, 0, 1}, universe_dom_order(inst.universe())),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_bti(inst, identity_var_order(3), DomOrder{1, 2}),
                    std::invalid_argument);
}
