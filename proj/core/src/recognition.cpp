#include "acpat/recognition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace acpat {

std::optional<RecogTarget> recog_target_from_string(const std::string& s) {
    if (s == "btp") return RecogTarget::BTP;
    if (s == "bti") return RecogTarget::BTI;
    if (s == "btx") return RecogTarget::BTX;
    if (s == "emc") return RecogTarget::EMC;
    return std::nullopt;
}

std::string to_string(RecogTarget t) {
    switch (t) {
        case RecogTarget::BTP: return "btp";
        case RecogTarget::BTI: return "bti";
        case RecogTarget::BTX: return "btx";
        case RecogTarget::EMC: return "emc";
    }
    return "?";
}

PatternName pattern_of(RecogTarget t) {
    switch (t) {
        case RecogTarget::BTP: return PatternName::BTP;
        case RecogTarget::BTI: return PatternName::BTI;
        case RecogTarget::BTX: return PatternName::BTX;
        case RecogTarget::EMC: return PatternName::EMC;
    }
    throw std::logic_error("bad target");
}

namespace {

struct DomRank {
    std::vector<int> pos;
    const ValueUniverse* u;
    int of(Value v) const { return pos[u->rank(v)]; }
};

// Enumerates value configurations completing the shared three-variable frame
// (alpha/beta at vy, eps at vx, gamma/delta at vz).  `var_ok` filters the
// placement of vx relative to vy/vz; emit receives each witness once.
template <typename VarOk, typename Emit>
void broken_witnesses(const Instance& inst, bool gamma_above_delta,
                      const DomRank* rank, bool stop_per_pair, VarOk var_ok,
                      Emit emit) {
    const int n = inst.num_variables();
    for (int vy = 0; vy < n; ++vy)
        for (int vz = 0; vz < n; ++vz) {
            if (vy == vz) continue;
            for (Value alpha : inst.domain(vy))
                for (Value gamma : inst.domain(vz)) {
                    if (inst.compatible(vy, alpha, vz, gamma)) continue;
                    for (Value beta : inst.domain(vy)) {
                        if (beta == alpha) continue;
                        if (!inst.compatible(vy, beta, vz, gamma)) continue;
                        if (rank && !(rank->of(alpha) > rank->of(beta))) continue;
                        for (Value delta : inst.domain(vz)) {
                            if (delta == gamma) continue;
                            if (!inst.compatible(vy, alpha, vz, delta)) continue;
                            if (gamma_above_delta && rank &&
                                !(rank->of(gamma) > rank->of(delta)))
                                continue;
                            bool done = false;
                            for (int vx = 0; vx < n && !done; ++vx) {
                                if (vx == vy || vx == vz || !var_ok(vy, vx, vz)) continue;
                                for (Value eps : inst.domain(vx)) {
                                    if (!inst.compatible(vy, alpha, vx, eps)) continue;
                                    if (!inst.compatible(vx, eps, vz, gamma)) continue;
                                    if (inst.compatible(vx, eps, vz, delta)) continue;
                                    emit(vy, vx, vz, alpha, beta);
                                    if (stop_per_pair) done = true;
                                    break;
                                }
                            }
                        }
                    }
                }
        }
}

}  // namespace

OrderingProblem collect_var_order_witnesses(const Instance& inst, RecogTarget target,
                                            const DomOrder& dord) {
    OrderingProblem op;
    op.n = inst.num_variables();
    op.family = target == RecogTarget::BTP ? ClosureFamily::MaxClosed
                                           : ClosureFamily::MinClosed;
    DomRank rank{dom_positions(dord, inst.universe()), &inst.universe()};
    std::set<OrderingConstraint> seen;
    auto add = [&](OrderingConstraint c) {
        if (c.kind != OrderingConstraint::Precedence && c.a > c.b) std::swap(c.a, c.b);
        if (seen.insert(c).second) op.constraints.push_back(c);
    };

    if (target == RecogTarget::BTP) {
        const int n = inst.num_variables();
        for (int vz = 0; vz < n; ++vz)
            for (int vxr = 0; vxr < n; ++vxr)
                for (int vyr = 0; vyr < n; ++vyr) {
                    if (vz == vxr || vz == vyr || vxr == vyr) continue;
                    bool found = false;
                    for (Value a : inst.domain(vxr)) {
                        for (Value b : inst.domain(vyr)) {
                            if (!inst.compatible(vyr, b, vxr, a)) continue;
                            for (Value gamma : inst.domain(vz)) {
                                if (!inst.compatible(vxr, a, vz, gamma)) continue;
                                if (inst.compatible(vyr, b, vz, gamma)) continue;
                                for (Value delta : inst.domain(vz)) {
                                    if (delta == gamma) continue;
                                    if (inst.compatible(vxr, a, vz, delta)) continue;
                                    if (!inst.compatible(vyr, b, vz, delta)) continue;
                                    found = true;
                                    break;
                                }
                                if (found) break;
                            }
                            if (found) break;
                        }
                        if (found) break;
                    }
                    if (found)
                        add({OrderingConstraint::LessMax, vz, vxr, vyr});
                }
        return op;
    }

    bool emc = target == RecogTarget::EMC;
    broken_witnesses(
        inst, emc, &rank, false, [](int, int, int) { return true; },
        [&](int vy, int vx, int vz, Value, Value) {
            switch (target) {
                case RecogTarget::BTX:
                    add({OrderingConstraint::GreaterMin, vy, vx, vz});
                    break;
                case RecogTarget::BTI:
                    add({OrderingConstraint::Precedence, vx, vz, -1});
                    break;
                case RecogTarget::EMC:
                    add({OrderingConstraint::Precedence, vy, vz, -1});
                    break;
                default:
                    break;
            }
        });
    return op;
}

bool ordering_satisfied(const OrderingProblem& op, const std::vector<int>& pos) {
    for (const auto& c : op.constraints) {
        switch (c.kind) {
            case OrderingConstraint::GreaterMin:
                if (!(pos[c.target] > std::min(pos[c.a], pos[c.b]))) return false;
                break;
            case OrderingConstraint::LessMax:
                if (!(pos[c.target] < std::max(pos[c.a], pos[c.b]))) return false;
                break;
            case OrderingConstraint::Precedence:
                if (!(pos[c.target] > pos[c.a])) return false;
                break;
        }
    }
    return true;
}

std::optional<std::vector<int>> solve_ordering(const OrderingProblem& op) {
    const int n = op.n;
    std::vector<std::vector<char>> dom(n, std::vector<char>(n, 1));
    auto values = [&](int v) {
        std::vector<int> out;
        for (int p = 0; p < n; ++p)
            if (dom[v][p]) out.push_back(p);
        return out;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : op.constraints) {
            std::vector<int> scope = c.kind == OrderingConstraint::Precedence
                                         ? std::vector<int>{c.target, c.a}
                                         : std::vector<int>{c.target, c.a, c.b};
            for (int idx = 0; idx < static_cast<int>(scope.size()); ++idx) {
                int v = scope[idx];
                for (int p = 0; p < n; ++p) {
                    if (!dom[v][p]) continue;
                    bool supported = false;
                    std::vector<int> pos(n, 0);  // scratch positions by role
                    auto holds = [&](int pt, int pa, int pb) {
                        switch (c.kind) {
                            case OrderingConstraint::GreaterMin:
                                return pt > std::min(pa, pb);
                            case OrderingConstraint::LessMax:
                                return pt < std::max(pa, pb);
                            case OrderingConstraint::Precedence:
                                return pt > pa;
                        }
                        return false;
                    };
                    if (c.kind == OrderingConstraint::Precedence) {
                        int other = scope[1 - idx];
                        for (int q = 0; q < n && !supported; ++q) {
                            if (!dom[other][q]) continue;
                            int pt = idx == 0 ? p : q, pa = idx == 0 ? q : p;
                            supported = holds(pt, pa, 0);
                        }
                    } else {
                        int o1 = scope[(idx + 1) % 3], o2 = scope[(idx + 2) % 3];
                        for (int q = 0; q < n && !supported; ++q) {
                            if (!dom[o1][q]) continue;
                            for (int r = 0; r < n && !supported; ++r) {
                                if (!dom[o2][r]) continue;
                                int ps[3];
                                ps[idx] = p;
                                ps[(idx + 1) % 3] = q;
                                ps[(idx + 2) % 3] = r;
                                supported = holds(ps[0], ps[1], ps[2]);
                            }
                        }
                    }
                    (void)pos;
                    if (!supported) {
                        dom[v][p] = 0;
                        changed = true;
                    }
                }
                if (values(v).empty()) return std::nullopt;
            }
        }
    }

    std::vector<int> out(n);
    for (int v = 0; v < n; ++v) {
        auto vals = values(v);
        out[v] = op.family == ClosureFamily::MinClosed ? vals.front() : vals.back();
    }
    if (!ordering_satisfied(op, out)) return std::nullopt;
    return out;
}

std::optional<VarOrder> find_var_order(const Instance& inst, RecogTarget target,
                                       const DomOrder& dord) {
    auto op = collect_var_order_witnesses(inst, target, dord);
    auto pos = solve_ordering(op);
    if (!pos) return std::nullopt;
    VarOrder order = identity_var_order(inst.num_variables());
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return (*pos)[a] < (*pos)[b]; });
    if (occurs_in_instance(builtin_pattern(pattern_of(target)), inst, order, dord).occurs)
        throw std::logic_error("variable order certification failed");
    return order;
}

std::optional<DomOrder> find_dom_order(const Instance& inst, RecogTarget target,
                                       const VarOrder& vo) {
    if (target != RecogTarget::BTI && target != RecogTarget::BTX)
        throw std::invalid_argument("domain-order search supports bti and btx");
    auto vpos = order_positions(vo, inst.num_variables());
    std::set<std::pair<Value, Value>> arcs;  // (low, high) demands
    auto var_ok = [&](int vy, int vx, int vz) {
        return target == RecogTarget::BTI
                   ? vpos[vx] < vpos[vz]
                   : vpos[vy] < vpos[vx] && vpos[vy] < vpos[vz];
    };
    broken_witnesses(inst, false, nullptr, true, var_ok,
                     [&](int, int, int, Value alpha, Value beta) {
                         arcs.insert({alpha, beta});
                     });

    // Topological completion over the whole universe, smallest rank first.
    const auto& uni = inst.universe();
    const int u = uni.size();
    std::vector<std::vector<int>> succ(u);
    std::vector<int> indeg(u, 0);
    for (auto [lo, hi] : arcs) {
        succ[uni.rank(lo)].push_back(uni.rank(hi));
        ++indeg[uni.rank(hi)];
    }
    std::set<int> ready;
    for (int r = 0; r < u; ++r)
        if (indeg[r] == 0) ready.insert(r);
    DomOrder order;
    while (!ready.empty()) {
        int r = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(uni.values()[r]);
        for (int s : succ[r])
            if (--indeg[s] == 0) ready.insert(s);
    }
    if (static_cast<int>(order.size()) != u) return std::nullopt;  // demand cycle
    if (occurs_in_instance(builtin_pattern(pattern_of(target)), inst, vo, order).occurs)
        throw std::logic_error("domain order certification failed");
    return order;
}

// --- Gadgets ---------------------------------------------------------------

Cnf parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Cnf cnf;
    int expected_clauses = -1;
    std::vector<int> lits;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, fmt;
            if (!(ls >> p >> fmt >> cnf.nvars >> expected_clauses) || fmt != "cnf")
                throw ParseError("bad DIMACS header");
            continue;
        }
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (lits.size() != 3)
                    throw ParseError("each clause must have exactly three literals");
                std::set<int> props{std::abs(lits[0]), std::abs(lits[1]), std::abs(lits[2])};
                if (props.size() != 3)
                    throw ParseError("clause repeats a proposition");
                for (int l : lits)
                    if (std::abs(l) > cnf.nvars)
                        throw ParseError("literal out of range");
                cnf.clauses.push_back({lits[0], lits[1], lits[2]});
                lits.clear();
            } else {
                lits.push_back(lit);
            }
        }
    }
    if (!lits.empty()) throw ParseError("clause not terminated by 0");
    if (expected_clauses >= 0 &&
        expected_clauses != static_cast<int>(cnf.clauses.size()))
        throw ParseError("clause count does not match header");
    if (cnf.nvars <= 0 || cnf.clauses.empty()) throw ParseError("empty formula");
    return cnf;
}

Gadget gen_gadget(RecogTarget target, const Cnf& cnf) {
    if (target == RecogTarget::BTP)
        throw std::invalid_argument("no hardness gadget for btp");
    const int n = cnf.nvars;
    const int m = static_cast<int>(cnf.clauses.size());
    const int nvar = 6 * m;
    GadgetMetadata meta;
    meta.nprops = n;
    meta.a_max = 2 * n + 1;
    meta.pos_value.resize(n + 1);
    meta.neg_value.resize(n + 1);
    std::vector<Value> uvals;
    for (int i = 1; i <= n; ++i) {
        meta.pos_value[i] = i;
        meta.neg_value[i] = n + i;
    }
    for (int v = 1; v <= 2 * n + 1; ++v) uvals.push_back(v);
    for (int i = 0; i < m; ++i) {
        GadgetClause gc;
        gc.b = 2 * n + 2 + 3 * i;
        gc.c = gc.b + 1;
        gc.d = gc.b + 2;
        uvals.push_back(gc.b);
        uvals.push_back(gc.c);
        uvals.push_back(gc.d);
        for (int j = 0; j < 3; ++j) {
            int lit = cnf.clauses[i][j];
            int prop = std::abs(lit);
            gc.lit[j] = lit > 0 ? meta.pos_value[prop] : meta.neg_value[prop];
            gc.neg[j] = lit > 0 ? meta.neg_value[prop] : meta.pos_value[prop];
        }
        meta.clauses.push_back(gc);
    }
    ValueUniverse universe(uvals);
    const int usz = universe.size();
    const Value amax = meta.a_max;

    std::map<std::pair<int, int>, std::vector<char>> rels;
    // Conjoined on collision, which the replicated variant can produce.
    auto place = [&](int s, int t, auto allowed) {
        bool flip = s > t;
        if (flip) std::swap(s, t);
        std::vector<char> mat(usz * usz, 0);
        for (int ra = 0; ra < usz; ++ra)
            for (int rb = 0; rb < usz; ++rb) {
                Value a = universe.values()[ra], b = universe.values()[rb];
                bool ok = flip ? allowed(b, a) : allowed(a, b);
                mat[ra * usz + rb] = ok ? 1 : 0;
            }
        auto it = rels.find({s, t});
        if (it == rels.end()) {
            rels[{s, t}] = std::move(mat);
        } else {
            for (int k = 0; k < usz * usz; ++k)
                it->second[k] = it->second[k] && mat[k];
        }
    };

    for (int k = 0; k + 1 < nvar; ++k)
        place(k, k + 1, [amax](Value a, Value b) {
            return a == b || a == amax || b == amax;
        });

    // Chain variables hold the proposition values plus the universal value;
    // the three gadget variables of each clause also hold its b, c, d, and the
    // chain successor of each disjunct's second variable holds the f value so
    // the intended occurrence (third pattern variable on that successor) exists.
    std::vector<Value> basic;
    for (int v = 1; v <= 2 * n + 1; ++v) basic.push_back(v);
    std::vector<std::vector<Value>> doms(nvar, basic);
    auto add_value = [&](int pos1, Value v) {
        auto& d = doms[pos1 - 1];
        if (std::find(d.begin(), d.end(), v) == d.end()) d.push_back(v);
    };

    for (int i = 0; i < m; ++i) {
        const auto& gc = meta.clauses[i];
        // 1-based chain positions for the three clause variables.
        int p = 2 * (i + 1) - 1, q = 4 * (i + 1) - 1, r = 6 * (i + 1) - 1;
        for (int pos1 : {p, q, r}) {
            add_value(pos1, gc.b);
            add_value(pos1, gc.c);
            add_value(pos1, gc.d);
        }
        struct Disjunct { int s, t; Value v, vbar, e, f; };
        // The avoidance demand of the disjunct on (s, t) pairs the truth of the
        // literal with an order literal: a value demand e > f for the EMC
        // arrangement, a variable demand s > t for the cyclic one.
        std::array<Disjunct, 3> dis =
            target == RecogTarget::EMC
                ? std::array<Disjunct, 3>{{
                      {p, q, gc.lit[0], gc.neg[0], gc.b, gc.c},
                      {p, r, gc.lit[1], gc.neg[1], gc.c, gc.d},
                      {q, r, gc.lit[2], gc.neg[2], gc.d, gc.b},
                  }}
                : std::array<Disjunct, 3>{{
                      {p, q, gc.lit[0], gc.neg[0], gc.b, gc.c},
                      {q, r, gc.lit[1], gc.neg[1], gc.c, gc.d},
                      {r, p, gc.lit[2], gc.neg[2], gc.d, gc.b},
                  }};
        for (const auto& dj : dis) {
            auto allowed = [amax, dj](Value a, Value b) {
                return a == amax || b == amax || (a == dj.v && b == dj.e) ||
                       (a == dj.v && b == dj.f) || (a == dj.vbar && b == dj.e);
            };
            place(dj.s - 1, dj.t - 1, allowed);
            if (dj.t + 1 <= nvar) add_value(dj.t + 1, dj.f);
            if (target != RecogTarget::EMC) {
                place(dj.s, dj.t - 1, allowed);      // chain successor of s
                place(dj.t, dj.s - 1, allowed);      // chain successor of t
            }
        }
    }

    for (auto& d : doms)
        std::sort(d.begin(), d.end(), [&](Value a, Value b) {
            return universe.rank(a) < universe.rank(b);
        });

    std::vector<std::string> names;
    for (int k = 1; k <= nvar; ++k) names.push_back("x" + std::to_string(k));
    Gadget g{Instance(std::move(names), universe, std::move(doms), std::move(rels)),
             std::nullopt, std::move(meta)};
    if (target == RecogTarget::EMC) g.var_order = identity_var_order(nvar);
    return g;
}

DomOrder assignment_to_order(const std::vector<bool>& truth, const GadgetMetadata& meta) {
    DomOrder order;
    for (int i = 1; i <= meta.nprops; ++i) {
        bool t = i < static_cast<int>(truth.size()) && truth[i];
        if (t) {
            order.push_back(meta.neg_value[i]);
            order.push_back(meta.pos_value[i]);
        } else {
            order.push_back(meta.pos_value[i]);
            order.push_back(meta.neg_value[i]);
        }
    }
    for (const auto& gc : meta.clauses) {
        // Demands e > f from each falsified disjunct.
        std::vector<std::pair<Value, Value>> demands;
        std::array<std::pair<Value, Value>, 3> cyc = {{{gc.b, gc.c}, {gc.c, gc.d}, {gc.d, gc.b}}};
        for (int j = 0; j < 3; ++j) {
            // The literal value tells its polarity and proposition directly.
            int prop = 0;
            for (int i = 1; i <= meta.nprops; ++i)
                if (gc.lit[j] == meta.pos_value[i] || gc.lit[j] == meta.neg_value[i])
                    prop = i;
            bool positive = gc.lit[j] == meta.pos_value[prop];
            bool tv = prop < static_cast<int>(truth.size()) && truth[prop];
            if (positive != tv) demands.push_back(cyc[j]);
        }
        if (demands.size() == 3) demands.pop_back();  // unsatisfied clause: best effort
        // Pick the lexicographically first low-to-high arrangement meeting
        // every demand.
        std::array<Value, 3> arr = {gc.b, gc.c, gc.d};
        bool placed = false;
        std::sort(arr.begin(), arr.end());
        do {
            bool ok = true;
            auto rk = [&](Value v) {
                for (int k = 0; k < 3; ++k)
                    if (arr[k] == v) return k;
                return -1;
            };
            for (auto [hi, lo] : demands)
                if (!(rk(hi) > rk(lo))) ok = false;
            if (ok) {
                placed = true;
                break;
            }
        } while (std::next_permutation(arr.begin(), arr.end()));
        if (!placed) arr = {gc.d, gc.c, gc.b};
        for (Value v : arr) order.push_back(v);
    }
    order.push_back(meta.a_max);
    return order;
}

}  // namespace acpat
