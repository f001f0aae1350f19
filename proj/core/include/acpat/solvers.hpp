#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "acpat/instance.hpp"
#include "acpat/occurrence.hpp"

namespace acpat {

enum class OutcomeStatus { Solution, Wipeout, PreconditionViolated };

struct SolveStep {
    int var;
    std::vector<Value> candidates;
    Value chosen;
};

struct SolveOutcome {
    OutcomeStatus status = OutcomeStatus::PreconditionViolated;
    Assignment solution;
    std::string diagnostic;
    std::optional<InstanceOccurrence> witness;  // pattern occurrence, if located
    std::vector<SolveStep> trace;
};

// Backtrack-free construction working backwards through the variable order:
// start from the top value of the last-free position and repeatedly take, for
// each next variable, the minimum over earlier variables of its maximal
// supported value.
SolveOutcome solve_emc(const Instance& inst, const VarOrder& vo, const DomOrder& dord);
// The raw value sequence the construction produces, without validation.
std::vector<Value> emc_assignment_values(const Instance& inst, const VarOrder& vo,
                                         const DomOrder& dord);

// Assign the maximal remaining value, then cut later domains down to its
// supports before moving on.
SolveOutcome solve_btx(const Instance& inst, const VarOrder& vo, const DomOrder& dord);

// Assign the maximal value compatible with everything chosen so far.
SolveOutcome solve_bti(const Instance& inst, const VarOrder& vo, const DomOrder& dord);

using VarPolicy = std::function<int(const Instance&, const std::vector<char>& assigned)>;
using ValPolicy = std::function<Value(const Instance&, int var)>;

int first_unassigned_variable(const Instance&, const std::vector<char>& assigned);
Value first_domain_value(const Instance&, int var);

// Maintain arc consistency: assign, re-propagate, never undo.
SolveOutcome solve_mac(const Instance& inst, const VarPolicy& var_policy,
                       const ValPolicy& val_policy);

// MAC with the first-variable / first-value policies.
SolveOutcome solve_lx(const Instance& inst);

// MAC along a fixed variable order.
SolveOutcome solve_btp(const Instance& inst, const VarOrder& vo);

}  // namespace acpat
