#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace acpat {

using Value = int;

// Shared ordered list of values; the declaration order doubles as the default
// domain order.
class ValueUniverse {
public:
    ValueUniverse() = default;
    explicit ValueUniverse(std::vector<Value> values);

    int size() const { return static_cast<int>(values_.size()); }
    const std::vector<Value>& values() const { return values_; }
    bool contains(Value v) const { return rank_.count(v) != 0; }
    int rank(Value v) const;

private:
    std::vector<Value> values_;
    std::unordered_map<Value, int> rank_;
};

// Total variable order: variable indices listed from first to last.
using VarOrder = std::vector<int>;
// Total domain order over universe values, listed from smallest to largest.
using DomOrder = std::vector<Value>;

// Assignment indexed by variable; only meaningful when complete.
using Assignment = std::vector<Value>;

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Binary CSP instance over a shared universe.  At most one relation per
// unordered pair of variables; a pair without a stored relation is complete.
// Relations are stored for (i, j) with i < j and read symmetrically.
class Instance {
public:
    // Relation matrices are indexed by universe rank: m[a_rank * |U| + b_rank].
    Instance(std::vector<std::string> variables,
             ValueUniverse universe,
             std::vector<std::vector<Value>> domains,
             std::map<std::pair<int, int>, std::vector<char>> relations);

    int num_variables() const { return static_cast<int>(variables_.size()); }
    const std::vector<std::string>& variables() const { return variables_; }
    const std::string& variable_name(int i) const { return variables_[i]; }
    int var_index(const std::string& name) const;
    const ValueUniverse& universe() const { return universe_; }
    const std::vector<Value>& domain(int i) const { return domains_[i]; }
    bool in_domain(int i, Value v) const;

    bool has_relation(int x, int y) const;
    bool compatible(int x, Value a, int y, Value b) const;
    const std::map<std::pair<int, int>, std::vector<char>>& relations() const {
        return relations_;
    }

    // Returns a copy with D(var) = {v}.
    Instance restrict_to_value(int var, Value v) const;
    // Returns a copy with the given domains (used by propagation).
    Instance with_domains(std::vector<std::vector<Value>> domains) const;
    // Returns a copy with one relation entry forced to true.
    Instance with_allowed_pair(int x, Value a, int y, Value b) const;
    // Sub-instance on a prefix of the given variable order.
    Instance prefix(const VarOrder& order, int len) const;

private:
    std::vector<std::string> variables_;
    ValueUniverse universe_;
    std::vector<std::vector<Value>> domains_;
    std::map<std::pair<int, int>, std::vector<char>> relations_;
    std::unordered_map<std::string, int> var_index_;

    void validate() const;
};

Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst, bool pretty = false);

struct AcRemoval {
    int var;
    Value value;
    int blame;  // neighbouring variable with no remaining support
};

struct AcTrace {
    std::vector<AcRemoval> removals;
    bool wipeout = false;
    int wiped_var = -1;
};

// AC-3.  Returns the instance with pruned domains plus the removal trace.
// On wipeout the wiped variable keeps an empty domain in the trace but the
// returned instance preserves validity by reporting through the trace only.
struct AcResult {
    Instance instance;
    AcTrace trace;
};
AcResult enforce_ac(const Instance& inst);
// Deterministic variant that seeds the worklist in a caller-chosen order;
// used to exercise confluence.
AcResult enforce_ac_seeded(const Instance& inst, unsigned order_seed);

bool is_arc_consistent(const Instance& inst);

enum class SearchStatus { Solution, Unsat, BudgetExceeded };

struct SearchResult {
    SearchStatus status;
    Assignment solution;  // valid only when status == Solution
    long long nodes = 0;
};

SearchResult brute_force_solve(const Instance& inst, long long node_cap = -1);

struct CountResult {
    bool exceeded = false;
    long long count = 0;
    long long nodes = 0;
};

CountResult count_solutions(const Instance& inst, long long node_cap = -1);

bool check_assignment(const Instance& inst, const Assignment& a);

// Helpers for order handling.
std::vector<int> order_positions(const VarOrder& order, int n);
std::vector<int> dom_positions(const DomOrder& order, const ValueUniverse& u);
VarOrder identity_var_order(int n);
DomOrder universe_dom_order(const ValueUniverse& u);

}  // namespace acpat
