#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "acpat/instance.hpp"
#include "acpat/occurrence.hpp"

namespace acpat {

enum class RecogTarget { BTP, BTI, BTX, EMC };
std::optional<RecogTarget> recog_target_from_string(const std::string& s);
std::string to_string(RecogTarget t);
PatternName pattern_of(RecogTarget t);

enum class ClosureFamily { MinClosed, MaxClosed };

// Constraints over position variables O_0..O_{n-1}, each ranging over
// positions {0..n-1}; equal positions are allowed during solving and broken
// by variable index afterwards.
struct OrderingConstraint {
    enum Kind { GreaterMin, LessMax, Precedence } kind;
    // GreaterMin: O_target > min(O_a, O_b)
    // LessMax:    O_target < max(O_a, O_b)
    // Precedence: O_target > O_a
    int target, a, b;

    bool operator<(const OrderingConstraint& o) const {
        return std::tie(kind, target, a, b) < std::tie(o.kind, o.target, o.a, o.b);
    }
};

struct OrderingProblem {
    int n = 0;
    ClosureFamily family = ClosureFamily::MinClosed;
    std::vector<OrderingConstraint> constraints;
};

// Scans the instance for every value configuration that would complete the
// target pattern and records the variable-order demand ruling it out.
OrderingProblem collect_var_order_witnesses(const Instance& inst, RecogTarget target,
                                            const DomOrder& dord);

// Generalised arc consistency plus the extremal assignment for the family.
std::optional<std::vector<int>> solve_ordering(const OrderingProblem& op);

bool ordering_satisfied(const OrderingProblem& op, const std::vector<int>& positions);

// Total variable order under which the target pattern does not occur, if one
// exists; the result is certified by a fresh occurrence check.
std::optional<VarOrder> find_var_order(const Instance& inst, RecogTarget target,
                                       const DomOrder& dord);

// Total domain order avoiding the target (BTI or BTX) under a fixed variable
// order; reduces to acyclicity of the demanded value precedences.
std::optional<DomOrder> find_dom_order(const Instance& inst, RecogTarget target,
                                       const VarOrder& vo);

// --- Hardness gadgets ------------------------------------------------------

struct Cnf {
    int nvars = 0;
    std::vector<std::array<int, 3>> clauses;  // signed literals, 1-based
};

Cnf parse_dimacs(const std::string& text);

struct GadgetClause {
    std::array<Value, 3> lit;   // value asserting each literal
    std::array<Value, 3> neg;   // value asserting its negation
    Value b, c, d;              // clause-local cycle values
};

struct GadgetMetadata {
    int nprops = 0;
    Value a_max = 0;
    std::vector<Value> pos_value, neg_value;  // per proposition
    std::vector<GadgetClause> clauses;
};

struct Gadget {
    Instance instance;
    std::optional<VarOrder> var_order;  // fixed for the EMC reduction
    GadgetMetadata meta;
};

Gadget gen_gadget(RecogTarget target, const Cnf& cnf);

// Domain order induced by a truth assignment (indexed by proposition, 1-based
// ignored at slot 0): satisfied clauses order their b/c/d cycle freely, so a
// deterministic completion is chosen per clause.
DomOrder assignment_to_order(const std::vector<bool>& truth, const GadgetMetadata& meta);

}  // namespace acpat
