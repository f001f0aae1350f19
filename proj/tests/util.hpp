#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "acpat/instance.hpp"
#include "acpat/pattern.hpp"

namespace testutil {

// Deterministic 64-bit LCG so failures reproduce across platforms.
struct Lcg {
    std::uint64_t state;
    explicit Lcg(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ull) { next(); }
    std::uint32_t next() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<std::uint32_t>(state >> 32);
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint32_t>(n)); }
    double unit() { return next() / 4294967296.0; }
};

// Random instance over universe {1..domsize}: full domains, every pair
// constrained, each tuple allowed with probability `density`.
inline acpat::Instance random_instance(int nvars, int domsize, double density, Lcg& rng) {
    std::vector<acpat::Value> uvals;
    for (int v = 1; v <= domsize; ++v) uvals.push_back(v);
    acpat::ValueUniverse universe(uvals);
    std::vector<std::string> names;
    for (int i = 0; i < nvars; ++i) names.push_back("v" + std::to_string(i));
    std::vector<std::vector<acpat::Value>> doms(nvars, uvals);
    std::map<std::pair<int, int>, std::vector<char>> rels;
    for (int i = 0; i < nvars; ++i)
        for (int j = i + 1; j < nvars; ++j) {
            std::vector<char> m(domsize * domsize);
            for (auto& e : m) e = rng.unit() < density ? 1 : 0;
            rels[{i, j}] = std::move(m);
        }
    return acpat::Instance(std::move(names), universe, std::move(doms), std::move(rels));
}

// Checks that a concrete point placement realises the pattern inside the
// instance under the given total orders.
inline bool witness_valid(const acpat::Pattern& p, const acpat::Instance& inst,
                          const std::vector<std::pair<int, acpat::Value>>& w,
                          const acpat::VarOrder& vo, const acpat::DomOrder& dord) {
    using namespace acpat;
    if (static_cast<int>(w.size()) != p.num_points()) return false;
    const int nv = p.num_variables();
    std::vector<int> var_image(nv, -1);
    for (int q = 0; q < p.num_points(); ++q) {
        int pv = p.var_of(q);
        if (var_image[pv] == -1) var_image[pv] = w[q].first;
        if (var_image[pv] != w[q].first) return false;
        if (!inst.in_domain(w[q].first, w[q].second)) return false;
    }
    for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b)
            if (var_image[a] == var_image[b]) return false;
    auto vpos = order_positions(vo, inst.num_variables());
    auto dpos = dom_positions(dord, inst.universe());
    for (int a = 0; a < p.num_points(); ++a)
        for (int b = 0; b < p.num_points(); ++b) {
            if (a < b && p.var_of(a) != p.var_of(b)) {
                auto c = p.cpt(a, b);
                bool ok = inst.compatible(w[a].first, w[a].second, w[b].first, w[b].second);
                if (c == Pattern::Pos && !ok) return false;
                if (c == Pattern::Neg && ok) return false;
            }
            if (p.dom_less(a, b) &&
                !(dpos[inst.universe().rank(w[a].second)] <
                  dpos[inst.universe().rank(w[b].second)]))
                return false;
            if (a < b && p.diseq(a, b) && w[a].second == w[b].second) return false;
        }
    for (int a = 0; a < nv; ++a)
        for (int b = 0; b < nv; ++b)
            if (p.var_less(a, b) && !(vpos[var_image[a]] < vpos[var_image[b]]))
                return false;
    return true;
}

// Every permutation of 0..n-1, for exhaustive order searches at desk scale.
inline std::vector<std::vector<int>> permutations(int n) {
    std::vector<int> base(n);
    for (int i = 0; i < n; ++i) base[i] = i;
    std::vector<std::vector<int>> out;
    do out.push_back(base);
    while (std::next_permutation(base.begin(), base.end()));
    return out;
}

}  // namespace testutil
