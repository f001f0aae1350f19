#include "acpat/solvers.hpp"

#include <algorithm>

namespace acpat {

namespace {

// Comparator data for one total domain order.
struct DomRank {
    std::vector<int> pos;  // by universe rank
    const ValueUniverse* u;
    int of(Value v) const { return pos[u->rank(v)]; }
};

Value max_by(const std::vector<Value>& vals, const DomRank& rank) {
    return *std::max_element(vals.begin(), vals.end(), [&](Value a, Value b) {
        return rank.of(a) < rank.of(b);
    });
}

SolveOutcome violated(std::string diag, std::optional<InstanceOccurrence> witness,
                      std::vector<SolveStep> trace) {
    SolveOutcome out;
    out.status = OutcomeStatus::PreconditionViolated;
    out.diagnostic = std::move(diag);
    out.witness = std::move(witness);
    out.trace = std::move(trace);
    return out;
}

std::optional<InstanceOccurrence> locate(PatternName name, const Instance& inst,
                                         const VarOrder& vo, const DomOrder& dord) {
    auto occ = occurs_in_instance(builtin_pattern(name), inst, vo, dord);
    if (!occ.occurs) return std::nullopt;
    return occ;
}

}  // namespace

std::vector<Value> emc_assignment_values(const Instance& inst, const VarOrder& vo,
                                         const DomOrder& dord) {
    DomRank rank{dom_positions(dord, inst.universe()), &inst.universe()};
    std::vector<Value> a;
    for (int i = 0; i < static_cast<int>(vo.size()); ++i) {
        int xi = vo[i];
        if (inst.domain(xi).empty()) return a;
        Value best = max_by(inst.domain(xi), rank);
        for (int j = 0; j < i; ++j) {
            int xj = vo[j];
            // Maximal value of x_i supported by the value picked at x_j.
            Value cand = 0;
            bool found = false;
            for (Value v : inst.domain(xi)) {
                if (!inst.compatible(xj, a[j], xi, v)) continue;
                if (!found || rank.of(v) > rank.of(cand)) {
                    cand = v;
                    found = true;
                }
            }
            if (!found) return a;  // arc consistency violated; stop short
            if (rank.of(cand) < rank.of(best)) best = cand;
        }
        a.push_back(best);
    }
    return a;
}

SolveOutcome solve_emc(const Instance& inst, const VarOrder& vo, const DomOrder& dord) {
    order_positions(vo, inst.num_variables());
    auto values = emc_assignment_values(inst, vo, dord);
    std::vector<SolveStep> trace;
    for (int i = 0; i < static_cast<int>(values.size()); ++i)
        trace.push_back({vo[i], {}, values[i]});
    if (static_cast<int>(values.size()) < inst.num_variables())
        return violated("no supported value: instance is not arc consistent",
                        std::nullopt, std::move(trace));
    Assignment sol(inst.num_variables());
    for (int i = 0; i < inst.num_variables(); ++i) sol[vo[i]] = values[i];
    if (!check_assignment(inst, sol))
        return violated("constructed assignment violates a constraint",
                        locate(PatternName::EMC, inst, vo, dord), std::move(trace));
    return {OutcomeStatus::Solution, std::move(sol), "", std::nullopt, std::move(trace)};
}

SolveOutcome solve_btx(const Instance& inst, const VarOrder& vo, const DomOrder& dord) {
    order_positions(vo, inst.num_variables());
    DomRank rank{dom_positions(dord, inst.universe()), &inst.universe()};
    std::vector<std::vector<Value>> doms;
    for (int i = 0; i < inst.num_variables(); ++i) doms.push_back(inst.domain(i));
    Assignment sol(inst.num_variables());
    std::vector<SolveStep> trace;
    for (int i = 0; i < static_cast<int>(vo.size()); ++i) {
        int xi = vo[i];
        if (doms[xi].empty())
            return violated("domain of " + inst.variable_name(xi) + " wiped during restriction",
                            locate(PatternName::BTX, inst, vo, dord), std::move(trace));
        Value v = max_by(doms[xi], rank);
        trace.push_back({xi, doms[xi], v});
        sol[xi] = v;
        for (int k = i + 1; k < static_cast<int>(vo.size()); ++k) {
            int xk = vo[k];
            std::erase_if(doms[xk],
                          [&](Value b) { return !inst.compatible(xi, v, xk, b); });
        }
    }
    if (!check_assignment(inst, sol))
        return violated("constructed assignment violates a constraint",
                        locate(PatternName::BTX, inst, vo, dord), std::move(trace));
    return {OutcomeStatus::Solution, std::move(sol), "", std::nullopt, std::move(trace)};
}

SolveOutcome solve_bti(const Instance& inst, const VarOrder& vo, const DomOrder& dord) {
    order_positions(vo, inst.num_variables());
    DomRank rank{dom_positions(dord, inst.universe()), &inst.universe()};
    Assignment sol(inst.num_variables());
    std::vector<SolveStep> trace;
    for (int i = 0; i < static_cast<int>(vo.size()); ++i) {
        int xi = vo[i];
        std::vector<Value> cands;
        for (Value v : inst.domain(xi)) {
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                ok = inst.compatible(vo[j], sol[vo[j]], xi, v);
            if (ok) cands.push_back(v);
        }
        if (cands.empty())
            return violated("no value of " + inst.variable_name(xi) +
                                " is compatible with earlier choices",
                            locate(PatternName::BTI, inst, vo, dord), std::move(trace));
        Value v = max_by(cands, rank);
        trace.push_back({xi, cands, v});
        sol[xi] = v;
    }
    return {OutcomeStatus::Solution, std::move(sol), "", std::nullopt, std::move(trace)};
}

int first_unassigned_variable(const Instance& inst, const std::vector<char>& assigned) {
    for (int i = 0; i < inst.num_variables(); ++i)
        if (!assigned[i]) return i;
    return -1;
}

Value first_domain_value(const Instance& inst, int var) { return inst.domain(var).front(); }

SolveOutcome solve_mac(const Instance& inst, const VarPolicy& var_policy,
                       const ValPolicy& val_policy) {
    auto [cur, trace0] = enforce_ac(inst);
    if (trace0.wipeout) {
        SolveOutcome out;
        out.status = OutcomeStatus::Wipeout;
        out.diagnostic = "arc consistency wipes out " + inst.variable_name(trace0.wiped_var);
        return out;
    }
    std::vector<char> assigned(inst.num_variables(), 0);
    std::vector<SolveStep> trace;
    for (int step = 0; step < inst.num_variables(); ++step) {
        int var = var_policy(cur, assigned);
        Value v = val_policy(cur, var);
        trace.push_back({var, cur.domain(var), v});
        auto [next, ac] = enforce_ac(cur.restrict_to_value(var, v));
        if (ac.wipeout)
            return violated("arc consistency wipes out " + cur.variable_name(ac.wiped_var) +
                                " after assigning " + cur.variable_name(var),
                            std::nullopt, std::move(trace));
        cur = std::move(next);
        assigned[var] = 1;
    }
    Assignment sol(inst.num_variables());
    for (int i = 0; i < inst.num_variables(); ++i) sol[i] = cur.domain(i).front();
    if (!check_assignment(inst, sol))
        return violated("assignment check failed", std::nullopt, std::move(trace));
    return {OutcomeStatus::Solution, std::move(sol), "", std::nullopt, std::move(trace)};
}

SolveOutcome solve_lx(const Instance& inst) {
    auto out = solve_mac(inst, first_unassigned_variable, first_domain_value);
    if (out.status == OutcomeStatus::PreconditionViolated)
        out.witness = locate(PatternName::LX, inst, identity_var_order(inst.num_variables()),
                             universe_dom_order(inst.universe()));
    return out;
}

SolveOutcome solve_btp(const Instance& inst, const VarOrder& vo) {
    auto pos = order_positions(vo, inst.num_variables());
    auto policy = [pos](const Instance& cur, const std::vector<char>& assigned) {
        int best = -1;
        for (int i = 0; i < cur.num_variables(); ++i)
            if (!assigned[i] && (best == -1 || pos[i] < pos[best])) best = i;
        return best;
    };
    auto out = solve_mac(inst, policy, first_domain_value);
    if (out.status == OutcomeStatus::PreconditionViolated)
        out.witness = locate(PatternName::BTP, inst, vo, universe_dom_order(inst.universe()));
    return out;
}

}  // namespace acpat
