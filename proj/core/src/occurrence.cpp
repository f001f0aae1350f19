#include "acpat/occurrence.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>

namespace acpat {

namespace {

bool close_acyclic(std::vector<char>& lt, int n) {
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (lt[i * n + k])
                for (int j = 0; j < n; ++j)
                    if (lt[k * n + j]) lt[i * n + j] = 1;
    for (int i = 0; i < n; ++i)
        if (lt[i * n + i]) return false;
    return true;
}

// All linear extensions of a strict order given as a closed matrix over the
// element ids in `elems`.
void linear_extensions(const std::vector<int>& elems,
                       const std::function<bool(int, int)>& lt,
                       std::vector<int>& prefix, std::vector<char>& used,
                       std::vector<std::vector<int>>& out) {
    if (prefix.size() == elems.size()) {
        out.push_back(prefix);
        return;
    }
    for (int i = 0; i < static_cast<int>(elems.size()); ++i) {
        if (used[i]) continue;
        bool minimal = true;
        for (int j = 0; j < static_cast<int>(elems.size()) && minimal; ++j)
            if (!used[j] && j != i && lt(elems[j], elems[i])) minimal = false;
        if (!minimal) continue;
        used[i] = 1;
        prefix.push_back(elems[i]);
        linear_extensions(elems, lt, prefix, used, out);
        prefix.pop_back();
        used[i] = 0;
    }
}

std::vector<std::vector<int>> all_linear_extensions(const std::vector<int>& elems,
                                                    const std::function<bool(int, int)>& lt) {
    std::vector<std::vector<int>> out;
    std::vector<int> prefix;
    std::vector<char> used(elems.size(), 0);
    linear_extensions(elems, lt, prefix, used, out);
    return out;
}

// Partitions of one variable's points into blocks of pairwise-allowed pairs.
void partitions(const std::vector<int>& pts,
                const std::function<bool(int, int)>& allowed, size_t next,
                std::vector<std::vector<int>>& blocks,
                std::vector<std::vector<std::vector<int>>>& out) {
    if (next == pts.size()) {
        out.push_back(blocks);
        return;
    }
    int p = pts[next];
    const size_t nblocks = blocks.size();  // recursion appends; don't revisit
    for (size_t i = 0; i < nblocks; ++i) {
        bool ok = true;
        for (int q : blocks[i])
            if (!allowed(p, q)) { ok = false; break; }
        if (!ok) continue;
        blocks[i].push_back(p);
        partitions(pts, allowed, next + 1, blocks, out);
        blocks[i].pop_back();
    }
    blocks.push_back({p});
    partitions(pts, allowed, next + 1, blocks, out);
    blocks.pop_back();
}

}  // namespace

std::vector<LinearExtension> consistent_linear_extensions(const Pattern& p) {
    const int nv = p.num_variables();
    const int np = p.num_points();

    auto allowed = [&](int a, int b) {
        return p.mergeable(a, b) && !p.dom_less(a, b) && !p.dom_less(b, a) &&
               !p.diseq(a, b);
    };
    std::vector<std::vector<std::vector<std::vector<int>>>> per_var(nv);
    for (int v = 0; v < nv; ++v) {
        std::vector<std::vector<int>> blocks;
        partitions(p.points_of(v), allowed, 0, blocks, per_var[v]);
    }

    std::vector<LinearExtension> result;
    std::vector<int> choice(nv, 0);
    while (true) {
        // Assemble the quotient for the current partition choice.
        std::vector<int> rep(np, -1);
        std::vector<std::vector<std::string>> qnames(nv);
        std::vector<std::vector<int>> qpoints(nv);  // quotient id per block
        int qn = 0;
        for (int v = 0; v < nv; ++v) {
            for (const auto& block : per_var[v][choice[v]]) {
                auto [vn, pn] = p.point_label(block.front());
                (void)vn;
                qnames[v].push_back(pn);
                for (int orig : block) rep[orig] = qn;
                qpoints[v].push_back(qn);
                ++qn;
            }
        }

        // Lift compatibility; a sign clash means this partition is unusable.
        std::vector<signed char> qcpt(qn * qn, Pattern::Undef);
        bool viable = true;
        for (int a = 0; a < np && viable; ++a)
            for (int b = 0; b < np && viable; ++b) {
                signed char c = p.cpt(a, b);
                if (c == Pattern::Undef) continue;
                signed char& e = qcpt[rep[a] * qn + rep[b]];
                if (e != Pattern::Undef && e != c)
                    viable = false;
                else
                    e = c;
            }

        std::vector<char> qdom(qn * qn, 0);
        if (viable) {
            for (int a = 0; a < np; ++a)
                for (int b = 0; b < np; ++b)
                    if (p.dom_less(a, b)) qdom[rep[a] * qn + rep[b]] = 1;
            viable = close_acyclic(qdom, qn);
        }

        if (viable) {
            std::vector<int> qvar(qn);
            for (int v = 0; v < nv; ++v)
                for (int q : qpoints[v]) qvar[q] = v;

            std::vector<int> vars(nv);
            std::iota(vars.begin(), vars.end(), 0);
            auto vorders = all_linear_extensions(
                vars, [&](int a, int b) { return p.var_less(a, b); });
            std::vector<std::vector<std::vector<int>>> dorders(nv);
            for (int v = 0; v < nv; ++v)
                dorders[v] = all_linear_extensions(
                    qpoints[v], [&](int a, int b) { return qdom[a * qn + b] != 0; });

            std::vector<int> dsel(nv, 0);
            while (true) {
                for (const auto& vo : vorders) {
                    std::vector<std::tuple<int, int, bool>> edges;
                    for (int a = 0; a < qn; ++a)
                        for (int b = a + 1; b < qn; ++b) {
                            if (qcpt[a * qn + b] == Pattern::Pos) edges.emplace_back(a, b, true);
                            if (qcpt[a * qn + b] == Pattern::Neg) edges.emplace_back(a, b, false);
                        }
                    std::vector<std::pair<int, int>> vop, dop, nep;
                    for (int i = 0; i + 1 < nv; ++i) vop.emplace_back(vo[i], vo[i + 1]);
                    for (int v = 0; v < nv; ++v) {
                        const auto& ord = dorders[v][dsel[v]];
                        for (int i = 0; i + 1 < static_cast<int>(ord.size()); ++i)
                            dop.emplace_back(ord[i], ord[i + 1]);
                    }
                    for (int a = 0; a < np; ++a)
                        for (int b = a + 1; b < np; ++b)
                            if (p.explicit_diseq(a, b) && rep[a] != rep[b])
                                nep.emplace_back(rep[a], rep[b]);
                    // Re-index quotient points per variable for construction.
                    std::vector<int> local(qn);
                    for (int v = 0; v < nv; ++v)
                        for (int i = 0; i < static_cast<int>(qpoints[v].size()); ++i)
                            local[qpoints[v][i]] = i;
                    std::vector<int> global(qn);
                    {
                        int off = 0;
                        for (int v = 0; v < nv; ++v) {
                            for (int i = 0; i < static_cast<int>(qpoints[v].size()); ++i)
                                global[qpoints[v][i]] = off + i;
                            off += static_cast<int>(qpoints[v].size());
                        }
                    }
                    auto remap_pt = [&](int q) { return global[q]; };
                    for (auto& [a, b, s] : edges) { a = remap_pt(a); b = remap_pt(b); (void)s; }
                    for (auto& [a, b] : dop) { a = remap_pt(a); b = remap_pt(b); }
                    for (auto& [a, b] : nep) { a = remap_pt(a); b = remap_pt(b); }
                    Pattern qp(p.var_names(), qnames, edges, vop, dop, nep);
                    std::vector<int> rmap(np);
                    for (int a = 0; a < np; ++a) rmap[a] = global[rep[a]];
                    result.push_back({std::move(qp), std::move(rmap)});
                }
                int v = nv - 1;
                while (v >= 0) {
                    if (++dsel[v] < static_cast<int>(dorders[v].size())) break;
                    dsel[v] = 0;
                    --v;
                }
                if (v < 0) break;
            }
        }

        int v = nv - 1;
        while (v >= 0) {
            if (++choice[v] < static_cast<int>(per_var[v].size())) break;
            choice[v] = 0;
            --v;
        }
        if (v < 0) break;
    }
    return result;
}

TargetView target_from_extension(const LinearExtension& ext) {
    const Pattern& q = ext.pattern;
    TargetView t;
    t.nvars = q.num_variables();
    t.npoints = q.num_points();
    t.var_of.resize(t.npoints);
    t.points_of_var.resize(t.nvars);
    for (int p = 0; p < t.npoints; ++p) {
        t.var_of[p] = q.var_of(p);
        t.points_of_var[q.var_of(p)].push_back(p);
    }
    t.var_pos.assign(t.nvars, 0);
    for (int x = 0; x < t.nvars; ++x)
        for (int y = 0; y < t.nvars; ++y)
            if (q.var_less(y, x)) ++t.var_pos[x];
    t.dom_pos.assign(t.npoints, 0);
    for (int a = 0; a < t.npoints; ++a)
        for (int b = 0; b < t.npoints; ++b)
            if (q.var_of(a) == q.var_of(b) && q.dom_less(b, a)) ++t.dom_pos[a];
    t.cpt.assign(t.npoints * t.npoints, Pattern::Undef);
    t.neg_adj.resize(t.npoints);
    for (int a = 0; a < t.npoints; ++a)
        for (int b = 0; b < t.npoints; ++b) {
            t.cpt[a * t.npoints + b] = q.cpt(a, b);
            if (q.cpt(a, b) == Pattern::Neg) t.neg_adj[a].push_back(b);
        }
    return t;
}

TargetView target_from_instance(const Instance& inst, const VarOrder& vo,
                                const DomOrder& dord) {
    TargetView t;
    t.nvars = inst.num_variables();
    t.var_pos = order_positions(vo, t.nvars);
    auto dpos = dom_positions(dord, inst.universe());
    t.points_of_var.resize(t.nvars);
    for (int v = 0; v < t.nvars; ++v)
        for (Value a : inst.domain(v)) {
            t.points_of_var[v].push_back(t.npoints);
            t.var_of.push_back(v);
            t.dom_pos.push_back(dpos[inst.universe().rank(a)]);
            t.origin.emplace_back(v, a);
            ++t.npoints;
        }
    t.cpt.assign(t.npoints * t.npoints, Pattern::Undef);
    t.neg_adj.resize(t.npoints);
    for (int a = 0; a < t.npoints; ++a)
        for (int b = 0; b < t.npoints; ++b) {
            if (t.var_of[a] == t.var_of[b]) continue;
            bool ok = inst.compatible(t.var_of[a], t.origin[a].second, t.var_of[b],
                                      t.origin[b].second);
            t.cpt[a * t.npoints + b] = ok ? Pattern::Pos : Pattern::Neg;
            if (!ok) t.neg_adj[a].push_back(b);
        }
    return t;
}

namespace {

struct HomSearch {
    const Pattern& src;
    const TargetView& tgt;
    std::vector<int> img;         // src point -> target point
    std::vector<int> var_img;     // src var -> target var
    std::vector<int> var_uses;    // src var -> assigned point count
    std::vector<int> used_by;     // target var -> src var
    std::vector<int> assigned;    // src points in assignment order

    HomSearch(const Pattern& s, const TargetView& t)
        : src(s), tgt(t),
          img(s.num_points(), -1),
          var_img(s.num_variables(), -1),
          var_uses(s.num_variables(), 0),
          used_by(t.nvars, -1) {}

    bool admissible(int s, int t) const {
        int sv = src.var_of(s), tv = tgt.var_of[t];
        if (var_img[sv] != -1) {
            if (var_img[sv] != tv) return false;
        } else if (used_by[tv] != -1) {
            return false;
        }
        for (int u : assigned) {
            int tu = img[u];
            signed char c = src.cpt(s, u);
            if (c != Pattern::Undef && tgt.entry(t, tu) != c) return false;
            int uv = src.var_of(u);
            if (uv == sv) {
                if (src.dom_less(s, u) && !(tgt.dom_pos[t] < tgt.dom_pos[tu])) return false;
                if (src.dom_less(u, s) && !(tgt.dom_pos[tu] < tgt.dom_pos[t])) return false;
                if (src.diseq(s, u) && t == tu) return false;
            } else {
                int tuv = tgt.var_of[tu];
                if (src.var_less(sv, uv) && !(tgt.var_pos[tv] < tgt.var_pos[tuv])) return false;
                if (src.var_less(uv, sv) && !(tgt.var_pos[tuv] < tgt.var_pos[tv])) return false;
            }
        }
        return true;
    }

    std::vector<int> candidates(int s) const {
        int sv = src.var_of(s);
        // Prefer enumerating from a sparse negative adjacency list.
        const std::vector<int>* base = nullptr;
        size_t best = SIZE_MAX;
        for (int u : assigned) {
            if (src.cpt(s, u) == Pattern::Neg && tgt.neg_adj[img[u]].size() < best) {
                base = &tgt.neg_adj[img[u]];
                best = base->size();
            }
        }
        std::vector<int> out;
        auto consider = [&](int t) {
            if (admissible(s, t)) out.push_back(t);
        };
        if (base) {
            for (int t : *base) consider(t);
        } else if (var_img[sv] != -1) {
            for (int t : tgt.points_of_var[var_img[sv]]) consider(t);
        } else {
            for (int tv = 0; tv < tgt.nvars; ++tv) {
                if (used_by[tv] != -1) continue;
                for (int t : tgt.points_of_var[tv]) consider(t);
            }
        }
        return out;
    }

    bool solve() {
        if (static_cast<int>(assigned.size()) == src.num_points()) return true;
        int pick = -1;
        std::vector<int> pick_cands;
        for (int s = 0; s < src.num_points(); ++s) {
            if (img[s] != -1) continue;
            auto c = candidates(s);
            if (pick == -1 || c.size() < pick_cands.size()) {
                pick = s;
                pick_cands = std::move(c);
                if (pick_cands.empty()) return false;
            }
        }
        int sv = src.var_of(pick);
        for (int t : pick_cands) {
            int tv = tgt.var_of[t];
            bool bound = var_img[sv] == -1;
            img[pick] = t;
            if (bound) {
                var_img[sv] = tv;
                used_by[tv] = sv;
            }
            ++var_uses[sv];
            assigned.push_back(pick);
            if (solve()) return true;
            assigned.pop_back();
            --var_uses[sv];
            if (bound) {
                var_img[sv] = -1;
                used_by[tv] = -1;
            }
            img[pick] = -1;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> find_homomorphism(const Pattern& src,
                                                  const TargetView& tgt) {
    if (src.num_variables() > tgt.nvars) return std::nullopt;
    HomSearch h(src, tgt);
    if (!h.solve()) return std::nullopt;
    return h.img;
}

OccursResult occurs(const Pattern& src, const Pattern& tgt) {
    OccursResult res;
    auto exts = consistent_linear_extensions(tgt);
    for (auto& ext : exts) {
        auto view = target_from_extension(ext);
        auto hom = find_homomorphism(src, view);
        if (!hom) {
            res.occurs = false;
            res.failing = std::move(ext);
            return res;
        }
        res.extensions.push_back(std::move(ext));
        res.homs.push_back(std::move(*hom));
    }
    res.occurs = true;
    return res;
}

InstanceOccurrence occurs_in_instance(const Pattern& src, const Instance& inst,
                                      const VarOrder& vo, const DomOrder& dord) {
    InstanceOccurrence res;
    auto view = target_from_instance(inst, vo, dord);
    auto hom = find_homomorphism(src, view);
    if (!hom) return res;
    res.occurs = true;
    for (int s = 0; s < src.num_points(); ++s) res.witness.push_back(view.origin[(*hom)[s]]);
    return res;
}

InClassResult in_class(const Pattern& src, const Instance& inst, long long cap) {
    InClassResult res;
    VarOrder vo = identity_var_order(inst.num_variables());
    std::sort(vo.begin(), vo.end());
    do {
        std::vector<int> dperm(inst.universe().size());
        std::iota(dperm.begin(), dperm.end(), 0);
        do {
            if (cap >= 0 && res.pairs_tried >= cap) {
                res.cap_exceeded = true;
                return res;
            }
            ++res.pairs_tried;
            DomOrder dord;
            for (int r : dperm) dord.push_back(inst.universe().values()[r]);
            if (!occurs_in_instance(src, inst, vo, dord).occurs) {
                res.in_class = true;
                res.var_order = vo;
                res.dom_order = dord;
                return res;
            }
        } while (std::next_permutation(dperm.begin(), dperm.end()));
    } while (std::next_permutation(vo.begin(), vo.end()));
    return res;
}

}  // namespace acpat
