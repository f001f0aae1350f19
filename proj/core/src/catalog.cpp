#include "acpat/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace acpat {

namespace {

struct InstanceBuilder {
    std::vector<Value> universe;
    std::vector<std::string> names;
    std::vector<std::vector<Value>> doms;
    std::map<std::pair<int, int>, std::vector<char>> rels;

    InstanceBuilder& var(std::string name, std::vector<Value> dom) {
        names.push_back(std::move(name));
        doms.push_back(std::move(dom));
        return *this;
    }

    template <typename Allowed>
    InstanceBuilder& constraint(int s, int t, Allowed allowed) {
        bool flip = s > t;
        if (flip) std::swap(s, t);
        ValueUniverse u(universe);
        const int n = u.size();
        std::vector<char> m(n * n, 0);
        for (int ra = 0; ra < n; ++ra)
            for (int rb = 0; rb < n; ++rb) {
                Value a = universe[ra], b = universe[rb];
                m[ra * n + rb] = (flip ? allowed(b, a) : allowed(a, b)) ? 1 : 0;
            }
        rels[{s, t}] = std::move(m);
        return *this;
    }

    Instance build() {
        return Instance(names, ValueUniverse(universe), doms, rels);
    }
};

Instance make_catalog(CatalogName name) {
    switch (name) {
        case CatalogName::I_K4: {
            InstanceBuilder b;
            b.universe = {1, 2, 3};
            for (int i = 1; i <= 4; ++i) b.var("x" + std::to_string(i), {1, 2, 3});
            for (auto [i, j] : {std::pair{1, 2}, {2, 3}, {3, 4}, {4, 1}})
                b.constraint(i - 1, j - 1,
                             [](Value a, Value c) { return a == 1 || c == 3; });
            for (auto [i, j] : {std::pair{1, 3}, {2, 4}})
                b.constraint(i - 1, j - 1,
                             [](Value a, Value c) { return a == 2 || c == 2; });
            return b.build();
        }
        case CatalogName::I_4: {
            InstanceBuilder b;
            b.universe = {0, 1, 2, 3};
            b.var("x0", {1, 2, 3});
            for (int i = 1; i <= 3; ++i) b.var("x" + std::to_string(i), {0, 1});
            for (int i = 1; i <= 3; ++i)
                for (int j = i + 1; j <= 3; ++j)
                    b.constraint(i, j, [](Value a, Value c) { return a == 1 || c == 1; });
            for (int i = 1; i <= 3; ++i)
                b.constraint(0, i, [i](Value a, Value c) { return a == i || c == 0; });
            return b.build();
        }
        case CatalogName::I_SAT_2D: {
            InstanceBuilder b;
            b.universe = {0, 1};
            for (int i = 1; i <= 5; ++i) b.var("x" + std::to_string(i), {0, 1});
            b.constraint(0, 1, [](Value a, Value c) { return a == 1 || c == 1; });
            b.constraint(2, 3, [](Value a, Value c) { return a == 1 || c == 1; });
            b.constraint(0, 4, [](Value a, Value c) { return a == 0 || c == 1; });
            b.constraint(1, 4, [](Value a, Value c) { return a == 0 || c == 1; });
            b.constraint(2, 4, [](Value a, Value c) { return a == 0 || c == 0; });
            b.constraint(3, 4, [](Value a, Value c) { return a == 0 || c == 0; });
            return b.build();
        }
        case CatalogName::I_5: {
            InstanceBuilder b;
            b.universe = {0, 1, 2, 3};
            for (int i = 1; i <= 3; ++i) b.var("w" + std::to_string(i), {0, 1});
            b.var("x1", {1, 2, 3});
            b.var("x2", {1, 2, 3});
            for (int i = 1; i <= 3; ++i) {
                b.constraint(i - 1, 3, [i](Value a, Value c) { return a == 0 || c == i; });
                b.constraint(i - 1, 4, [i](Value a, Value c) { return a == 1 || c == i; });
            }
            return b.build();
        }
        case CatalogName::I_SAT_6: {
            InstanceBuilder b;
            b.universe = {0, 1};
            for (int i = 1; i <= 6; ++i) b.var("x" + std::to_string(i), {0, 1});
            b.constraint(0, 1, [](Value a, Value c) { return a == 0 || c == 0; });
            b.constraint(0, 2, [](Value a, Value c) { return a == 1 || c == 1; });
            b.constraint(1, 2, [](Value a, Value c) { return a == 1 || c == 1; });
            b.constraint(2, 3, [](Value a, Value c) { return a == 0 || c == 0; });
            b.constraint(3, 4, [](Value a, Value c) { return a == 1 || c == 1; });
            b.constraint(3, 5, [](Value a, Value c) { return a == 1 || c == 1; });
            b.constraint(4, 5, [](Value a, Value c) { return a == 0 || c == 0; });
            return b.build();
        }
        case CatalogName::I_SAT_K4: {
            InstanceBuilder b;
            b.universe = {0, 1};
            for (int i = 1; i <= 4; ++i) b.var("x" + std::to_string(i), {0, 1});
            b.constraint(0, 1, [](Value a, Value c) { return a == 0 || c == 0; });
            b.constraint(2, 3, [](Value a, Value c) { return a == 1 || c == 1; });
            for (auto [i, j] : {std::pair{1, 3}, {1, 4}, {2, 3}, {2, 4}})
                b.constraint(i - 1, j - 1,
                             [](Value a, Value c) { return a == 1 || c == 0; });
            return b.build();
        }
        case CatalogName::I_2COL_3: {
            InstanceBuilder b;
            b.universe = {0, 1};
            for (int i = 1; i <= 3; ++i) b.var("x" + std::to_string(i), {0, 1});
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    b.constraint(i, j, [](Value a, Value c) { return a != c; });
            return b.build();
        }
    }
    throw std::logic_error("unhandled catalog name");
}

const std::map<std::string, CatalogName>& catalog_names() {
    static const std::map<std::string, CatalogName> m = {
        {"i-k4", CatalogName::I_K4},         {"i-4", CatalogName::I_4},
        {"i-sat-2d", CatalogName::I_SAT_2D}, {"i-5", CatalogName::I_5},
        {"i-sat-6", CatalogName::I_SAT_6},   {"i-sat-k4", CatalogName::I_SAT_K4},
        {"i-2col-3", CatalogName::I_2COL_3},
    };
    return m;
}

}  // namespace

const Instance& catalog_instance(CatalogName name) {
    static std::map<CatalogName, Instance> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, make_catalog(name)).first;
    return it->second;
}

std::optional<CatalogName> catalog_name_from_string(const std::string& s) {
    auto it = catalog_names().find(s);
    if (it == catalog_names().end()) return std::nullopt;
    return it->second;
}

std::string to_string(CatalogName name) {
    for (const auto& [s, n] : catalog_names())
        if (n == name) return s;
    return "?";
}

std::vector<CatalogName> all_catalog_names() {
    std::vector<CatalogName> out;
    for (const auto& [s, n] : catalog_names()) {
        (void)s;
        out.push_back(n);
    }
    return out;
}

std::vector<CatalogName> catalog_search_order() {
    return {CatalogName::I_2COL_3, CatalogName::I_SAT_K4, CatalogName::I_4,
            CatalogName::I_SAT_2D, CatalogName::I_SAT_6, CatalogName::I_K4,
            CatalogName::I_5};
}

std::vector<std::pair<PatternName, CatalogName>> refutation_table() {
    using P = PatternName;
    using C = CatalogName;
    return {
        {P::BAD_A, C::I_K4},     {P::BAD_B, C::I_4},      {P::BAD_C, C::I_SAT_2D},
        {P::BAD_D, C::I_5},      {P::BAD_E, C::I_5},      {P::BAD_F, C::I_5},
        {P::BAD_G, C::I_SAT_6},  {P::BAD_H, C::I_SAT_6},  {P::BAD_I, C::I_SAT_6},
        {P::BAD_J, C::I_SAT_K4}, {P::BAD_K, C::I_SAT_K4}, {P::BAD_L, C::I_SAT_K4},
        {P::BAD_M, C::I_SAT_K4}, {P::BAD_N, C::I_2COL_3}, {P::BAD_O, C::I_2COL_3},
        {P::BAD_P, C::I_2COL_3}, {P::BAD_Q, C::I_2COL_3}, {P::BAD_R, C::I_2COL_3},
        {P::BAD_S, C::I_2COL_3},
    };
}

const std::vector<std::pair<std::string, Pattern>>& maximal_targets() {
    static std::vector<std::pair<std::string, Pattern>> targets = [] {
        std::vector<std::pair<std::string, Pattern>> out;
        std::unordered_set<std::string> seen;
        const std::vector<std::pair<std::string, PatternName>> base = {
            {"lx-lt", PatternName::LX_LT}, {"emc", PatternName::EMC},
            {"btp-vo", PatternName::BTP_VO}, {"btp-do", PatternName::BTP_DO},
            {"btx", PatternName::BTX}, {"bti", PatternName::BTI},
        };
        for (const auto& [name, pn] : base) {
            const Pattern& p = builtin_pattern(pn);
            const std::vector<std::pair<std::string, Pattern>> variants = {
                {name, p},
                {name + " invdom", p.inv_dom()},
                {name + " invvar", p.inv_var()},
                {name + " invdom invvar", p.inv_dom().inv_var()},
            };
            for (const auto& [vn, vp] : variants)
                if (seen.insert(vp.canonical_key()).second) out.emplace_back(vn, vp);
        }
        return out;
    }();
    return targets;
}

namespace {

// Extensions of each maximal target, computed once.
const std::vector<std::vector<TargetView>>& target_views() {
    static std::vector<std::vector<TargetView>> views = [] {
        std::vector<std::vector<TargetView>> out;
        for (const auto& [name, p] : maximal_targets()) {
            (void)name;
            std::vector<TargetView> v;
            for (const auto& ext : consistent_linear_extensions(p))
                v.push_back(target_from_extension(ext));
            out.push_back(std::move(v));
        }
        return out;
    }();
    return views;
}

}  // namespace

Classification classify(const Pattern& p) {
    Classification res;
    if (!p.is_simple()) {
        res.verdict = Classification::Unsupported;
        res.reason = "pattern is not simple";
        return res;
    }
    const auto& targets = maximal_targets();
    const auto& views = target_views();
    for (size_t i = 0; i < targets.size(); ++i) {
        bool all = true;
        for (const auto& view : views[i]) {
            if (!find_homomorphism(p, view)) {
                all = false;
                break;
            }
        }
        if (all) {
            res.verdict = Classification::AcSolvable;
            res.inside = targets[i].first;
            return res;
        }
    }
    for (CatalogName cn : catalog_search_order()) {
        auto r = in_class(p, catalog_instance(cn));
        if (r.in_class) {
            res.verdict = Classification::NotAcSolvable;
            res.certificate = cn;
            res.cert_var_order = r.var_order;
            res.cert_dom_order = r.dom_order;
            return res;
        }
    }
    res.verdict = Classification::Unsupported;
    res.reason = "no catalogue certificate found";
    return res;
}

// --- Enumeration -----------------------------------------------------------

namespace {

// All strict partial orders on n labelled elements, as closed pair lists.
std::vector<std::vector<std::pair<int, int>>> all_partial_orders(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) pairs.emplace_back(i, j);
    std::set<std::vector<char>> seen;
    std::vector<std::vector<std::pair<int, int>>> out;
    for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
        std::vector<char> lt(n * n, 0);
        for (size_t k = 0; k < pairs.size(); ++k)
            if (mask & (1u << k)) lt[pairs[k].first * n + pairs[k].second] = 1;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                if (lt[i * n + k])
                    for (int j = 0; j < n; ++j)
                        if (lt[k * n + j]) lt[i * n + j] = 1;
        bool cyclic = false;
        for (int i = 0; i < n; ++i)
            if (lt[i * n + i]) cyclic = true;
        if (cyclic || !seen.insert(lt).second) continue;
        std::vector<std::pair<int, int>> rel;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (lt[i * n + j]) rel.emplace_back(i, j);
        out.push_back(std::move(rel));
    }
    return out;
}

}  // namespace

std::vector<Pattern> enumerate_simple_patterns(const EnumerationBounds& bounds) {
    std::vector<Pattern> result;
    std::unordered_set<std::string> seen_cpt, seen_full;

    // Variable shapes: non-increasing point counts.
    std::vector<std::vector<int>> shapes;
    for (int nv = 1; nv <= bounds.max_vars; ++nv) {
        std::vector<int> shape(nv, 1);
        while (true) {
            bool sorted = std::is_sorted(shape.rbegin(), shape.rend());
            if (sorted) shapes.push_back(shape);
            int i = nv - 1;
            while (i >= 0 && shape[i] == bounds.max_points) shape[i--] = 1;
            if (i < 0) break;
            ++shape[i];
        }
    }

    for (const auto& shape : shapes) {
        const int nv = static_cast<int>(shape.size());
        std::vector<std::string> vnames;
        std::vector<std::vector<std::string>> pnames(nv);
        std::vector<int> offset(nv);
        int np = 0;
        for (int v = 0; v < nv; ++v) {
            vnames.push_back("v" + std::to_string(v));
            offset[v] = np;
            for (int k = 0; k < shape[v]; ++k)
                pnames[v].push_back("p" + std::to_string(np + k));
            np += shape[v];
        }
        std::vector<int> var_of(np);
        for (int v = 0; v < nv; ++v)
            for (int k = 0; k < shape[v]; ++k) var_of[offset[v] + k] = v;

        std::vector<std::pair<int, int>> cross;
        for (int a = 0; a < np; ++a)
            for (int b = a + 1; b < np; ++b)
                if (var_of[a] != var_of[b]) cross.emplace_back(a, b);

        auto var_orders = all_partial_orders(nv);
        std::vector<std::vector<std::vector<std::pair<int, int>>>> dom_opts(nv);
        for (int v = 0; v < nv; ++v) {
            dom_opts[v].push_back({});
            if (shape[v] == 2) {
                dom_opts[v].push_back({{offset[v], offset[v] + 1}});
                dom_opts[v].push_back({{offset[v] + 1, offset[v]}});
            }
        }

        // Tri-state assignment per cross pair, bounded negative count.
        std::vector<signed char> assign(cross.size(), 0);
        std::function<void(size_t, int)> rec = [&](size_t idx, int negs) {
            if (bounds.cap >= 0 &&
                static_cast<long long>(result.size()) >= bounds.cap)
                return;
            if (idx == cross.size()) {
                // Reject mergeable same-variable pairs up front.
                std::vector<signed char> cpt(np * np, 0);
                for (size_t k = 0; k < cross.size(); ++k) {
                    cpt[cross[k].first * np + cross[k].second] = assign[k];
                    cpt[cross[k].second * np + cross[k].first] = assign[k];
                }
                for (int a = 0; a < np; ++a)
                    for (int b = a + 1; b < np; ++b) {
                        if (var_of[a] != var_of[b]) continue;
                        bool split = false;
                        for (int r = 0; r < np && !split; ++r)
                            split = cpt[a * np + r] && cpt[b * np + r] &&
                                    cpt[a * np + r] != cpt[b * np + r];
                        if (!split) return;
                    }
                std::vector<std::tuple<int, int, bool>> edges;
                for (size_t k = 0; k < cross.size(); ++k)
                    if (assign[k])
                        edges.emplace_back(cross[k].first, cross[k].second,
                                           assign[k] == 1);
                Pattern bare(vnames, pnames, edges, {}, {}, {});
                if (!seen_cpt.insert(bare.canonical_key()).second) return;

                std::vector<int> dsel(nv, 0);
                while (true) {
                    for (const auto& vo : var_orders) {
                        if (bounds.cap >= 0 &&
                            static_cast<long long>(result.size()) >= bounds.cap)
                            return;
                        std::vector<std::pair<int, int>> dord;
                        for (int v = 0; v < nv; ++v)
                            for (auto pr : dom_opts[v][dsel[v]]) dord.push_back(pr);
                        Pattern cand(vnames, pnames, edges, vo, dord, {});
                        if (!cand.is_simple()) continue;
                        if (seen_full.insert(cand.canonical_key()).second)
                            result.push_back(std::move(cand));
                    }
                    int v = nv - 1;
                    while (v >= 0) {
                        if (++dsel[v] < static_cast<int>(dom_opts[v].size())) break;
                        dsel[v] = 0;
                        --v;
                    }
                    if (v < 0) break;
                }
                return;
            }
            for (signed char c = 0; c <= 2; ++c) {
                if (c == 2 && negs == bounds.max_negative) continue;
                assign[idx] = c;
                rec(idx + 1, negs + (c == 2 ? 1 : 0));
            }
            assign[idx] = 0;
        };
        rec(0, 0);
    }
    return result;
}

// --- Random pattern-free instances -----------------------------------------

GeneratedInstance gen_pattern_free_instance(const Pattern& p, int nvars, int domsize,
                                            double density, unsigned seed) {
    if (nvars < 1 || domsize < 1) throw std::invalid_argument("bad generator size");
    std::mt19937 rng(seed);
    std::vector<Value> uvals;
    for (int v = 1; v <= domsize; ++v) uvals.push_back(v);
    ValueUniverse universe(uvals);
    std::vector<std::string> names;
    std::vector<std::vector<Value>> doms(nvars, uvals);
    for (int i = 1; i <= nvars; ++i) names.push_back("x" + std::to_string(i));
    std::map<std::pair<int, int>, std::vector<char>> rels;
    const double scale = 4294967296.0;
    for (int i = 0; i < nvars; ++i)
        for (int j = i + 1; j < nvars; ++j) {
            std::vector<char> m(domsize * domsize, 0);
            for (auto& cell : m) cell = (rng() / scale) < density ? 1 : 0;
            rels[{i, j}] = std::move(m);
        }
    Instance inst(names, universe, doms, rels);

    VarOrder vo = identity_var_order(nvars);
    DomOrder dord = universe_dom_order(universe);
    if (p.neg_edges().empty()) {
        if (occurs_in_instance(p, inst, vo, dord).occurs)
            throw std::invalid_argument("pattern has no negative edge to repair");
        return {std::move(inst), vo, dord};
    }
    while (true) {
        auto occ = occurs_in_instance(p, inst, vo, dord);
        if (!occ.occurs) break;
        auto [a, b] = p.neg_edges().front();
        auto [va, xa] = occ.witness[a];
        auto [vb, xb] = occ.witness[b];
        inst = inst.with_allowed_pair(va, xa, vb, xb);
    }
    return {std::move(inst), vo, dord};
}

}  // namespace acpat
