#include "acpat/instance.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace acpat {

using nlohmann::json;

ValueUniverse::ValueUniverse(std::vector<Value> values) : values_(std::move(values)) {
    for (int i = 0; i < static_cast<int>(values_.size()); ++i) {
        if (!rank_.emplace(values_[i], i).second)
            throw ParseError("duplicate universe value " + std::to_string(values_[i]));
    }
}

int ValueUniverse::rank(Value v) const {
    auto it = rank_.find(v);
    if (it == rank_.end())
        throw ParseError("value " + std::to_string(v) + " not in universe");
    return it->second;
}

Instance::Instance(std::vector<std::string> variables,
                   ValueUniverse universe,
                   std::vector<std::vector<Value>> domains,
                   std::map<std::pair<int, int>, std::vector<char>> relations)
    : variables_(std::move(variables)),
      universe_(std::move(universe)),
      domains_(std::move(domains)),
      relations_(std::move(relations)) {
    for (int i = 0; i < num_variables(); ++i) {
        if (!var_index_.emplace(variables_[i], i).second)
            throw ParseError("duplicate variable name " + variables_[i]);
    }
    validate();
}

void Instance::validate() const {
    const int u = universe_.size();
    if (static_cast<int>(domains_.size()) != num_variables())
        throw ParseError("domain count does not match variable count");
    for (int i = 0; i < num_variables(); ++i) {
        std::set<Value> seen;
        for (Value v : domains_[i]) {
            universe_.rank(v);
            if (!seen.insert(v).second)
                throw ParseError("duplicate value in domain of " + variables_[i]);
        }
    }
    for (const auto& [key, m] : relations_) {
        auto [x, y] = key;
        if (x < 0 || y < 0 || x >= num_variables() || y >= num_variables() || x >= y)
            throw ParseError("bad relation scope");
        if (static_cast<int>(m.size()) != u * u)
            throw ParseError("relation matrix has wrong shape");
    }
}

int Instance::var_index(const std::string& name) const {
    auto it = var_index_.find(name);
    if (it == var_index_.end()) throw ParseError("unknown variable " + name);
    return it->second;
}

bool Instance::in_domain(int i, Value v) const {
    const auto& d = domains_[i];
    return std::find(d.begin(), d.end(), v) != d.end();
}

bool Instance::has_relation(int x, int y) const {
    if (x > y) std::swap(x, y);
    return relations_.count({x, y}) != 0;
}

bool Instance::compatible(int x, Value a, int y, Value b) const {
    if (x > y) {
        std::swap(x, y);
        std::swap(a, b);
    }
    auto it = relations_.find({x, y});
    if (it == relations_.end()) return true;
    const int u = universe_.size();
    return it->second[universe_.rank(a) * u + universe_.rank(b)] != 0;
}

Instance Instance::restrict_to_value(int var, Value v) const {
    auto doms = domains_;
    doms[var] = {v};
    return with_domains(std::move(doms));
}

Instance Instance::with_domains(std::vector<std::vector<Value>> domains) const {
    Instance copy = *this;
    copy.domains_ = std::move(domains);
    return copy;
}

Instance Instance::with_allowed_pair(int x, Value a, int y, Value b) const {
    if (x > y) {
        std::swap(x, y);
        std::swap(a, b);
    }
    Instance copy = *this;
    auto it = copy.relations_.find({x, y});
    if (it == copy.relations_.end()) return copy;
    const int u = universe_.size();
    it->second[universe_.rank(a) * u + universe_.rank(b)] = 1;
    return copy;
}

Instance Instance::prefix(const VarOrder& order, int len) const {
    std::vector<int> keep(order.begin(), order.begin() + len);
    std::sort(keep.begin(), keep.end());
    std::vector<int> remap(num_variables(), -1);
    std::vector<std::string> vars;
    std::vector<std::vector<Value>> doms;
    for (int i = 0; i < len; ++i) {
        remap[keep[i]] = i;
        vars.push_back(variables_[keep[i]]);
        doms.push_back(domains_[keep[i]]);
    }
    std::map<std::pair<int, int>, std::vector<char>> rels;
    for (const auto& [key, m] : relations_) {
        int x = remap[key.first], y = remap[key.second];
        if (x >= 0 && y >= 0) rels[{x, y}] = m;
    }
    return Instance(std::move(vars), universe_, std::move(doms), std::move(rels));
}

// --- JSON ------------------------------------------------------------------

Instance parse_instance(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("top level must be an object");
    if (!j.contains("universe") || !j["universe"].is_array())
        throw ParseError("missing universe");
    if (!j.contains("variables") || !j["variables"].is_array())
        throw ParseError("missing variables");

    std::vector<Value> uvals;
    for (const auto& v : j["universe"]) {
        if (!v.is_number_integer()) throw ParseError("universe values must be integers");
        uvals.push_back(v.get<Value>());
    }
    ValueUniverse universe(uvals);

    std::vector<std::string> vars;
    for (const auto& v : j["variables"]) {
        if (!v.is_string()) throw ParseError("variable names must be strings");
        vars.push_back(v.get<std::string>());
    }

    std::vector<std::vector<Value>> doms(vars.size(), uvals);
    std::unordered_map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(vars.size()); ++i) index[vars[i]] = i;
    if (j.contains("domains")) {
        if (!j["domains"].is_object()) throw ParseError("domains must be an object");
        for (const auto& [name, dvals] : j["domains"].items()) {
            auto it = index.find(name);
            if (it == index.end()) throw ParseError("domain for unknown variable " + name);
            if (!dvals.is_array()) throw ParseError("domain must be an array");
            std::vector<Value> d;
            for (const auto& v : dvals) d.push_back(v.get<Value>());
            if (d.empty()) throw ParseError("empty domain for " + name);
            doms[it->second] = std::move(d);
        }
    }
    // Domains are kept in universe order regardless of input order.
    for (auto& d : doms)
        std::sort(d.begin(), d.end(),
                  [&](Value a, Value b) { return universe.rank(a) < universe.rank(b); });

    std::map<std::pair<int, int>, std::vector<char>> rels;
    const int u = universe.size();
    if (j.contains("constraints")) {
        if (!j["constraints"].is_array()) throw ParseError("constraints must be an array");
        for (const auto& c : j["constraints"]) {
            if (!c.is_object() || !c.contains("scope") || !c.contains("allowed"))
                throw ParseError("constraint needs scope and allowed");
            const auto& scope = c["scope"];
            if (!scope.is_array() || scope.size() != 2)
                throw ParseError("scope must list two variables");
            auto ix = index.find(scope[0].get<std::string>());
            auto iy = index.find(scope[1].get<std::string>());
            if (ix == index.end() || iy == index.end())
                throw ParseError("constraint scope names unknown variable");
            int x = ix->second, y = iy->second;
            if (x == y) throw ParseError("constraint scope repeats a variable");
            bool flipped = x > y;
            if (flipped) std::swap(x, y);
            if (rels.count({x, y}))
                throw ParseError("duplicate constraint on {" + vars[x] + "," + vars[y] + "}");
            std::vector<char> m(u * u, 0);
            for (const auto& t : c["allowed"]) {
                if (!t.is_array() || t.size() != 2)
                    throw ParseError("allowed tuples must be pairs");
                Value a = t[0].get<Value>(), b = t[1].get<Value>();
                if (flipped) std::swap(a, b);
                m[universe.rank(a) * u + universe.rank(b)] = 1;
            }
            rels[{x, y}] = std::move(m);
        }
    }
    return Instance(std::move(vars), std::move(universe), std::move(doms), std::move(rels));
}

std::string serialize_instance(const Instance& inst, bool pretty) {
    json j;
    j["universe"] = inst.universe().values();
    j["variables"] = inst.variables();
    json doms = json::object();
    for (int i = 0; i < inst.num_variables(); ++i)
        doms[inst.variable_name(i)] = inst.domain(i);
    j["domains"] = doms;
    json cons = json::array();
    const int u = inst.universe().size();
    for (const auto& [key, m] : inst.relations()) {
        auto [x, y] = key;
        std::vector<std::pair<Value, Value>> allowed;
        bool complete = true;
        for (Value a : inst.domain(x))
            for (Value b : inst.domain(y)) {
                if (m[inst.universe().rank(a) * u + inst.universe().rank(b)])
                    allowed.emplace_back(a, b);
                else
                    complete = false;
            }
        if (complete) continue;  // canonical form omits trivial constraints
        std::sort(allowed.begin(), allowed.end());
        json tuples = json::array();
        for (auto [a, b] : allowed) tuples.push_back(json::array({a, b}));
        cons.push_back({{"scope", json::array({inst.variable_name(x), inst.variable_name(y)})},
                        {"allowed", tuples}});
    }
    j["constraints"] = cons;
    return pretty ? j.dump(2) : j.dump();
}

// --- Arc consistency -------------------------------------------------------

namespace {

// Revises D(x) against y; records removals blamed on y.
bool revise(const Instance& inst, std::vector<std::vector<Value>>& doms, int x, int y,
            AcTrace& trace) {
    bool changed = false;
    auto& dx = doms[x];
    for (auto it = dx.begin(); it != dx.end();) {
        bool supported = false;
        for (Value b : doms[y]) {
            if (inst.compatible(x, *it, y, b)) {
                supported = true;
                break;
            }
        }
        if (supported) {
            ++it;
        } else {
            trace.removals.push_back({x, *it, y});
            it = dx.erase(it);
            changed = true;
        }
    }
    return changed;
}

AcResult enforce_ac_arcs(const Instance& inst, std::vector<std::pair<int, int>> arcs) {
    std::vector<std::vector<Value>> doms;
    for (int i = 0; i < inst.num_variables(); ++i) doms.push_back(inst.domain(i));
    AcTrace trace;
    std::deque<std::pair<int, int>> work(arcs.begin(), arcs.end());
    std::set<std::pair<int, int>> queued(arcs.begin(), arcs.end());
    while (!work.empty()) {
        auto [x, y] = work.front();
        work.pop_front();
        queued.erase({x, y});
        if (!revise(inst, doms, x, y, trace)) continue;
        if (doms[x].empty()) {
            trace.wipeout = true;
            trace.wiped_var = x;
            return {inst.with_domains(std::move(doms)), std::move(trace)};
        }
        for (const auto& [key, m] : inst.relations()) {
            (void)m;
            int z = -1;
            if (key.first == x) z = key.second;
            if (key.second == x) z = key.first;
            if (z < 0 || z == y) continue;
            if (queued.insert({z, x}).second) work.emplace_back(z, x);
        }
    }
    return {inst.with_domains(std::move(doms)), std::move(trace)};
}

std::vector<std::pair<int, int>> all_arcs(const Instance& inst) {
    std::vector<std::pair<int, int>> arcs;
    for (const auto& [key, m] : inst.relations()) {
        (void)m;
        arcs.emplace_back(key.first, key.second);
        arcs.emplace_back(key.second, key.first);
    }
    return arcs;
}

}  // namespace

AcResult enforce_ac(const Instance& inst) { return enforce_ac_arcs(inst, all_arcs(inst)); }

AcResult enforce_ac_seeded(const Instance& inst, unsigned order_seed) {
    auto arcs = all_arcs(inst);
    // Fisher-Yates with a tiny deterministic generator.
    unsigned long long s = order_seed * 6364136223846793005ULL + 1442695040888963407ULL;
    for (int i = static_cast<int>(arcs.size()) - 1; i > 0; --i) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        std::swap(arcs[i], arcs[(s >> 33) % (i + 1)]);
    }
    return enforce_ac_arcs(inst, std::move(arcs));
}

bool is_arc_consistent(const Instance& inst) {
    for (const auto& [key, m] : inst.relations()) {
        (void)m;
        auto [x, y] = key;
        for (Value a : inst.domain(x)) {
            bool ok = false;
            for (Value b : inst.domain(y))
                if (inst.compatible(x, a, y, b)) { ok = true; break; }
            if (!ok) return false;
        }
        for (Value b : inst.domain(y)) {
            bool ok = false;
            for (Value a : inst.domain(x))
                if (inst.compatible(x, a, y, b)) { ok = true; break; }
            if (!ok) return false;
        }
    }
    for (int i = 0; i < inst.num_variables(); ++i)
        if (inst.domain(i).empty()) return false;
    return true;
}

// --- Search ----------------------------------------------------------------

namespace {

struct Searcher {
    const Instance& inst;
    long long cap;
    long long nodes = 0;
    long long count = 0;
    bool exceeded = false;
    bool stop_at_first;
    Assignment current, found;

    bool dfs(int var) {
        if (var == inst.num_variables()) {
            ++count;
            found = current;
            return stop_at_first;
        }
        for (Value v : inst.domain(var)) {
            ++nodes;
            if (cap >= 0 && nodes > cap) {
                exceeded = true;
                return true;
            }
            bool ok = true;
            for (int u = 0; u < var && ok; ++u)
                ok = inst.compatible(u, current[u], var, v);
            if (!ok) continue;
            current[var] = v;
            if (dfs(var + 1)) return true;
        }
        return false;
    }
};

}  // namespace

SearchResult brute_force_solve(const Instance& inst, long long node_cap) {
    Searcher s{inst, node_cap, 0, 0, false, true,
               Assignment(inst.num_variables(), 0), {}};
    s.dfs(0);
    if (s.exceeded) return {SearchStatus::BudgetExceeded, {}, s.nodes};
    if (s.count > 0) return {SearchStatus::Solution, s.found, s.nodes};
    return {SearchStatus::Unsat, {}, s.nodes};
}

CountResult count_solutions(const Instance& inst, long long node_cap) {
    Searcher s{inst, node_cap, 0, 0, false, false,
               Assignment(inst.num_variables(), 0), {}};
    s.dfs(0);
    return {s.exceeded, s.count, s.nodes};
}

bool check_assignment(const Instance& inst, const Assignment& a) {
    if (static_cast<int>(a.size()) != inst.num_variables()) return false;
    for (int i = 0; i < inst.num_variables(); ++i)
        if (!inst.in_domain(i, a[i])) return false;
    for (int i = 0; i < inst.num_variables(); ++i)
        for (int j = i + 1; j < inst.num_variables(); ++j)
            if (!inst.compatible(i, a[i], j, a[j])) return false;
    return true;
}

// --- Order helpers ---------------------------------------------------------

std::vector<int> order_positions(const VarOrder& order, int n) {
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("variable order has wrong length");
    std::vector<int> pos(n, -1);
    for (int p = 0; p < n; ++p) {
        int v = order[p];
        if (v < 0 || v >= n || pos[v] != -1)
            throw std::invalid_argument("variable order is not a permutation");
        pos[v] = p;
    }
    return pos;
}

std::vector<int> dom_positions(const DomOrder& order, const ValueUniverse& u) {
    if (static_cast<int>(order.size()) != u.size())
        throw std::invalid_argument("domain order has wrong length");
    std::vector<int> pos(u.size(), -1);
    for (int p = 0; p < static_cast<int>(order.size()); ++p) {
        int r = u.rank(order[p]);
        if (pos[r] != -1) throw std::invalid_argument("domain order repeats a value");
        pos[r] = p;
    }
    return pos;
}

VarOrder identity_var_order(int n) {
    VarOrder o(n);
    for (int i = 0; i < n; ++i) o[i] = i;
    return o;
}

DomOrder universe_dom_order(const ValueUniverse& u) { return u.values(); }

}  // namespace acpat
