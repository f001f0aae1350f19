#include "acpat/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace acpat {

using nlohmann::json;

namespace {

// Transitive closure with cycle detection; n small throughout.
void close_strict_order(std::vector<char>& lt, int n, const char* what) {
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (lt[i * n + k])
                for (int j = 0; j < n; ++j)
                    if (lt[k * n + j]) lt[i * n + j] = 1;
    for (int i = 0; i < n; ++i)
        if (lt[i * n + i]) throw ParseError(std::string(what) + " contains a cycle");
}

}  // namespace

Pattern::Pattern(std::vector<std::string> var_names,
                 std::vector<std::vector<std::string>> point_names,
                 std::vector<std::tuple<int, int, bool>> edges,
                 std::vector<std::pair<int, int>> var_order,
                 std::vector<std::pair<int, int>> dom_order,
                 std::vector<std::pair<int, int>> diseq)
    : var_names_(std::move(var_names)), point_names_(std::move(point_names)) {
    const int nv = num_variables();
    if (static_cast<int>(point_names_.size()) != nv)
        throw ParseError("point lists do not match variables");
    offsets_.resize(nv);
    points_of_.resize(nv);
    for (int v = 0; v < nv; ++v) {
        offsets_[v] = npoints_;
        if (point_names_[v].empty())
            throw ParseError("variable " + var_names_[v] + " has no points");
        for (int i = 0; i < static_cast<int>(point_names_[v].size()); ++i) {
            points_of_[v].push_back(npoints_);
            var_of_.push_back(v);
            ++npoints_;
        }
    }

    cpt_.assign(npoints_ * npoints_, Undef);
    for (auto [p, q, positive] : edges) {
        if (p < 0 || q < 0 || p >= npoints_ || q >= npoints_ || var_of_[p] == var_of_[q])
            throw ParseError("compatibility must join points of distinct variables");
        signed char c = positive ? Pos : Neg;
        signed char& e1 = cpt_[p * npoints_ + q];
        signed char& e2 = cpt_[q * npoints_ + p];
        if (e1 != Undef && e1 != c)
            throw ParseError("conflicting compatibility entry");
        e1 = e2 = c;
    }
    for (int p = 0; p < npoints_; ++p)
        for (int q = p + 1; q < npoints_; ++q) {
            if (cpt_[p * npoints_ + q] == Pos) pos_edges_.emplace_back(p, q);
            if (cpt_[p * npoints_ + q] == Neg) neg_edges_.emplace_back(p, q);
        }

    var_lt_.assign(nv * nv, 0);
    for (auto [x, y] : var_order) {
        if (x < 0 || y < 0 || x >= nv || y >= nv || x == y)
            throw ParseError("bad variable order pair");
        var_lt_[x * nv + y] = 1;
    }
    close_strict_order(var_lt_, nv, "variable order");

    dom_lt_.assign(npoints_ * npoints_, 0);
    for (auto [p, q] : dom_order) {
        if (p < 0 || q < 0 || p >= npoints_ || q >= npoints_ || p == q ||
            var_of_[p] != var_of_[q])
            throw ParseError("domain order must relate distinct points of one variable");
        dom_lt_[p * npoints_ + q] = 1;
    }
    close_strict_order(dom_lt_, npoints_, "domain order");

    explicit_diseq_.assign(npoints_ * npoints_, 0);
    for (auto [p, q] : diseq) {
        if (p < 0 || q < 0 || p >= npoints_ || q >= npoints_ || p == q ||
            var_of_[p] != var_of_[q])
            throw ParseError("disequality must relate distinct points of one variable");
        explicit_diseq_[p * npoints_ + q] = explicit_diseq_[q * npoints_ + p] = 1;
    }

    diseq_ = explicit_diseq_;
    for (int p = 0; p < npoints_; ++p)
        for (int q = p + 1; q < npoints_; ++q) {
            if (var_of_[p] != var_of_[q]) continue;
            bool implied = dom_lt_[p * npoints_ + q] || dom_lt_[q * npoints_ + p];
            for (int r = 0; r < npoints_ && !implied; ++r) {
                signed char a = cpt_[p * npoints_ + r], b = cpt_[q * npoints_ + r];
                implied = a != Undef && b != Undef && a != b;
            }
            if (implied) diseq_[p * npoints_ + q] = diseq_[q * npoints_ + p] = 1;
        }
}

std::pair<std::string, std::string> Pattern::point_label(int p) const {
    int v = var_of_[p];
    return {var_names_[v], point_names_[v][p - offsets_[v]]};
}

int Pattern::find_point(const std::string& name) const {
    int found = -1;
    for (int p = 0; p < npoints_; ++p) {
        if (point_label(p).second == name) {
            if (found != -1) return -1;
            found = p;
        }
    }
    return found;
}

bool Pattern::var_order_total() const {
    const int nv = num_variables();
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            if (!var_lt_[i * nv + j] && !var_lt_[j * nv + i]) return false;
    return true;
}

bool Pattern::dom_order_total() const {
    for (int p = 0; p < npoints_; ++p)
        for (int q = p + 1; q < npoints_; ++q)
            if (var_of_[p] == var_of_[q] && !dom_lt_[p * npoints_ + q] &&
                !dom_lt_[q * npoints_ + p])
                return false;
    return true;
}

bool Pattern::mergeable(int p, int q) const {
    if (p == q || var_of_[p] != var_of_[q]) return false;
    for (int r = 0; r < npoints_; ++r) {
        signed char a = cpt_[p * npoints_ + r], b = cpt_[q * npoints_ + r];
        if (a != Undef && b != Undef && a != b) return false;
    }
    return true;
}

std::vector<std::pair<int, int>> Pattern::mergeable_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int p = 0; p < npoints_; ++p)
        for (int q = p + 1; q < npoints_; ++q)
            if (var_of_[p] == var_of_[q] && mergeable(p, q)) out.emplace_back(p, q);
    return out;
}

std::vector<int> Pattern::dangling_points() const {
    std::vector<int> out;
    for (int p = 0; p < npoints_; ++p) {
        bool ordered = false;
        for (int q = 0; q < npoints_ && !ordered; ++q)
            ordered = dom_lt_[p * npoints_ + q] || dom_lt_[q * npoints_ + p];
        if (ordered) continue;
        int defined = 0;
        bool pos_only = true;
        for (int r = 0; r < npoints_; ++r) {
            signed char c = cpt_[p * npoints_ + r];
            if (c != Undef) {
                ++defined;
                if (c != Pos) pos_only = false;
            }
        }
        if (defined == 0 || (defined == 1 && pos_only)) out.push_back(p);
    }
    return out;
}

bool Pattern::is_simple() const {
    return mergeable_pairs().empty() && dangling_points().empty();
}

namespace {

struct Parts {
    std::vector<std::tuple<int, int, bool>> edges;
    std::vector<std::pair<int, int>> vo, dom, ne;
};

Parts extract(const Pattern& p) {
    Parts parts;
    for (auto [a, b] : p.pos_edges()) parts.edges.emplace_back(a, b, true);
    for (auto [a, b] : p.neg_edges()) parts.edges.emplace_back(a, b, false);
    for (int x = 0; x < p.num_variables(); ++x)
        for (int y = 0; y < p.num_variables(); ++y)
            if (p.var_less(x, y)) parts.vo.emplace_back(x, y);
    for (int a = 0; a < p.num_points(); ++a)
        for (int b = 0; b < p.num_points(); ++b)
            if (p.dom_less(a, b)) parts.dom.emplace_back(a, b);
    for (int a = 0; a < p.num_points(); ++a)
        for (int b = a + 1; b < p.num_points(); ++b)
            if (p.explicit_diseq(a, b)) parts.ne.emplace_back(a, b);
    return parts;
}

}  // namespace

Pattern Pattern::inv_dom() const {
    Parts parts = extract(*this);
    for (auto& [a, b] : parts.dom) std::swap(a, b);
    return Pattern(var_names_, point_names_, parts.edges, parts.vo, parts.dom, parts.ne);
}

Pattern Pattern::inv_var() const {
    Parts parts = extract(*this);
    for (auto& [x, y] : parts.vo) std::swap(x, y);
    return Pattern(var_names_, point_names_, parts.edges, parts.vo, parts.dom, parts.ne);
}

Pattern Pattern::unordered() const {
    Parts parts = extract(*this);
    return Pattern(var_names_, point_names_, parts.edges, {}, {}, parts.ne);
}

std::string Pattern::canonical_key() const {
    const int nv = num_variables();
    std::vector<int> vperm(nv);
    std::iota(vperm.begin(), vperm.end(), 0);
    std::string best;
    // vperm maps new variable slot -> old variable; point perms likewise.
    do {
        std::vector<std::vector<int>> pperms(nv);
        for (int v = 0; v < nv; ++v) {
            pperms[v].resize(point_names_[vperm[v]].size());
            std::iota(pperms[v].begin(), pperms[v].end(), 0);
        }
        // Odometer over per-variable point permutations.
        while (true) {
            std::vector<int> old_id;  // new global id -> old global id
            for (int v = 0; v < nv; ++v)
                for (int idx : pperms[v]) old_id.push_back(offsets_[vperm[v]] + idx);
            std::string key;
            key.reserve(npoints_ * npoints_ + nv * nv + npoints_ + 4);
            for (int v = 0; v < nv; ++v)
                key += static_cast<char>('0' + point_names_[vperm[v]].size());
            key += '|';
            for (int i = 0; i < npoints_; ++i)
                for (int j = i + 1; j < npoints_; ++j)
                    key += static_cast<char>('0' + cpt_[old_id[i] * npoints_ + old_id[j]]);
            key += '|';
            for (int x = 0; x < nv; ++x)
                for (int y = 0; y < nv; ++y)
                    if (x != y)
                        key += var_lt_[vperm[x] * nv + vperm[y]] ? '1' : '0';
            key += '|';
            for (int i = 0; i < npoints_; ++i)
                for (int j = 0; j < npoints_; ++j)
                    if (i != j && var_of_[old_id[i]] == var_of_[old_id[j]])
                        key += dom_lt_[old_id[i] * npoints_ + old_id[j]] ? '1' : '0';
            key += '|';
            for (int i = 0; i < npoints_; ++i)
                for (int j = i + 1; j < npoints_; ++j)
                    if (var_of_[old_id[i]] == var_of_[old_id[j]])
                        key += explicit_diseq_[old_id[i] * npoints_ + old_id[j]] ? '1' : '0';
            if (best.empty() || key < best) best = key;
            // Advance the odometer.
            int v = nv - 1;
            while (v >= 0 && !std::next_permutation(pperms[v].begin(), pperms[v].end())) --v;
            if (v < 0) break;
        }
    } while (std::next_permutation(vperm.begin(), vperm.end()));
    return best;
}

// --- Builder ---------------------------------------------------------------

PatternBuilder& PatternBuilder::variable(const std::string& name,
                                         std::vector<std::string> points) {
    vars_.push_back(name);
    points_.push_back(std::move(points));
    return *this;
}

int PatternBuilder::var(const std::string& name) const {
    for (int v = 0; v < static_cast<int>(vars_.size()); ++v)
        if (vars_[v] == name) return v;
    throw std::invalid_argument("unknown variable " + name);
}

int PatternBuilder::point(const std::string& name) const {
    int id = 0, found = -1;
    for (const auto& pts : points_) {
        for (const auto& p : pts) {
            if (p == name) {
                if (found != -1) throw std::invalid_argument("ambiguous point " + name);
                found = id;
            }
            ++id;
        }
    }
    if (found == -1) throw std::invalid_argument("unknown point " + name);
    return found;
}

PatternBuilder& PatternBuilder::pos(const std::string& p, const std::string& q) {
    edges_.emplace_back(point(p), point(q), true);
    return *this;
}

PatternBuilder& PatternBuilder::neg(const std::string& p, const std::string& q) {
    edges_.emplace_back(point(p), point(q), false);
    return *this;
}

PatternBuilder& PatternBuilder::var_less(const std::string& x, const std::string& y) {
    vo_.emplace_back(var(x), var(y));
    return *this;
}

PatternBuilder& PatternBuilder::dom_less(const std::string& lo, const std::string& hi) {
    do_.emplace_back(point(lo), point(hi));
    return *this;
}

PatternBuilder& PatternBuilder::diseq(const std::string& p, const std::string& q) {
    ne_.emplace_back(point(p), point(q));
    return *this;
}

Pattern PatternBuilder::build() const {
    return Pattern(vars_, points_, edges_, vo_, do_, ne_);
}

// --- JSON ------------------------------------------------------------------

namespace {

json point_ref(const Pattern& p, int id) {
    auto [v, name] = p.point_label(id);
    return json::array({v, name});
}

}  // namespace

Pattern parse_pattern(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("variables") || !j.contains("points"))
        throw ParseError("pattern needs variables and points");
    std::vector<std::string> vars;
    for (const auto& v : j["variables"]) vars.push_back(v.get<std::string>());
    std::vector<std::vector<std::string>> pts(vars.size());
    std::unordered_map<std::string, int> vindex;
    for (int i = 0; i < static_cast<int>(vars.size()); ++i) vindex[vars[i]] = i;
    for (const auto& [vname, plist] : j["points"].items()) {
        auto it = vindex.find(vname);
        if (it == vindex.end()) throw ParseError("points for unknown variable " + vname);
        for (const auto& p : plist) pts[it->second].push_back(p.get<std::string>());
    }
    std::vector<int> offsets(vars.size());
    int n = 0;
    for (int v = 0; v < static_cast<int>(vars.size()); ++v) {
        offsets[v] = n;
        n += static_cast<int>(pts[v].size());
    }
    auto resolve = [&](const json& ref) {
        if (!ref.is_array() || ref.size() != 2) throw ParseError("point reference must be [variable, point]");
        auto it = vindex.find(ref[0].get<std::string>());
        if (it == vindex.end()) throw ParseError("point reference names unknown variable");
        const auto& plist = pts[it->second];
        auto pit = std::find(plist.begin(), plist.end(), ref[1].get<std::string>());
        if (pit == plist.end()) throw ParseError("unknown point " + ref[1].get<std::string>());
        return offsets[it->second] + static_cast<int>(pit - plist.begin());
    };
    std::vector<std::tuple<int, int, bool>> edges;
    for (const auto& e : j.value("positive", json::array()))
        edges.emplace_back(resolve(e[0]), resolve(e[1]), true);
    for (const auto& e : j.value("negative", json::array()))
        edges.emplace_back(resolve(e[0]), resolve(e[1]), false);
    std::vector<std::pair<int, int>> vo, dord, ne;
    for (const auto& e : j.value("varOrder", json::array())) {
        auto x = vindex.find(e[0].get<std::string>());
        auto y = vindex.find(e[1].get<std::string>());
        if (x == vindex.end() || y == vindex.end())
            throw ParseError("variable order names unknown variable");
        vo.emplace_back(x->second, y->second);
    }
    for (const auto& e : j.value("domOrder", json::array()))
        dord.emplace_back(resolve(e[0]), resolve(e[1]));
    for (const auto& e : j.value("diseq", json::array()))
        ne.emplace_back(resolve(e[0]), resolve(e[1]));
    return Pattern(std::move(vars), std::move(pts), std::move(edges), std::move(vo),
                   std::move(dord), std::move(ne));
}

std::string serialize_pattern(const Pattern& p, bool pretty) {
    json j;
    j["variables"] = p.var_names();
    json pts = json::object();
    for (int v = 0; v < p.num_variables(); ++v)
        pts[p.var_names()[v]] = p.point_names()[v];
    j["points"] = pts;
    json pos = json::array(), neg = json::array();
    for (auto [a, b] : p.pos_edges()) pos.push_back(json::array({point_ref(p, a), point_ref(p, b)}));
    for (auto [a, b] : p.neg_edges()) neg.push_back(json::array({point_ref(p, a), point_ref(p, b)}));
    j["positive"] = pos;
    j["negative"] = neg;
    json vo = json::array();
    for (int x = 0; x < p.num_variables(); ++x)
        for (int y = 0; y < p.num_variables(); ++y)
            if (p.var_less(x, y))
                vo.push_back(json::array({p.var_names()[x], p.var_names()[y]}));
    j["varOrder"] = vo;
    json dord = json::array();
    for (int a = 0; a < p.num_points(); ++a)
        for (int b = 0; b < p.num_points(); ++b)
            if (p.dom_less(a, b))
                dord.push_back(json::array({point_ref(p, a), point_ref(p, b)}));
    j["domOrder"] = dord;
    json ne = json::array();
    for (int a = 0; a < p.num_points(); ++a)
        for (int b = a + 1; b < p.num_points(); ++b)
            if (p.explicit_diseq(a, b))
                ne.push_back(json::array({point_ref(p, a), point_ref(p, b)}));
    j["diseq"] = ne;
    return pretty ? j.dump(2) : j.dump();
}

}  // namespace acpat
