#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acpat/instance.hpp"

namespace acpat {

// Partially-ordered forbidden pattern.  Points carry a variable and a name;
// compatibility is a partial function on cross-variable point pairs; the
// variable order and the per-variable domain orders are strict partial orders
// stored transitively closed.  Disequalities join points of one variable;
// the stored set includes the implied ones (domain-ordered pairs and pairs
// separated by a common neighbour seen positively by one and negatively by
// the other).
class Pattern {
public:
    enum Cpt : signed char { Undef = 0, Pos = 1, Neg = 2 };

    Pattern(std::vector<std::string> var_names,
            std::vector<std::vector<std::string>> point_names,
            std::vector<std::tuple<int, int, bool>> edges,       // (p, q, positive)
            std::vector<std::pair<int, int>> var_order,          // (x, y): x before y
            std::vector<std::pair<int, int>> dom_order,          // (p, q): p below q
            std::vector<std::pair<int, int>> diseq);             // unordered

    int num_variables() const { return static_cast<int>(var_names_.size()); }
    int num_points() const { return npoints_; }
    const std::vector<std::string>& var_names() const { return var_names_; }
    const std::vector<std::vector<std::string>>& point_names() const { return point_names_; }
    int var_of(int p) const { return var_of_[p]; }
    const std::vector<int>& points_of(int v) const { return points_of_[v]; }
    int point_id(int var, int idx) const { return offsets_[var] + idx; }
    std::pair<std::string, std::string> point_label(int p) const;
    int find_point(const std::string& name) const;  // -1 if absent / ambiguous

    Cpt cpt(int p, int q) const { return static_cast<Cpt>(cpt_[p * npoints_ + q]); }
    const std::vector<std::pair<int, int>>& pos_edges() const { return pos_edges_; }
    const std::vector<std::pair<int, int>>& neg_edges() const { return neg_edges_; }
    bool var_less(int x, int y) const { return var_lt_[x * num_variables() + y] != 0; }
    bool dom_less(int p, int q) const { return dom_lt_[p * npoints_ + q] != 0; }
    bool diseq(int p, int q) const { return diseq_[p * npoints_ + q] != 0; }
    bool explicit_diseq(int p, int q) const { return explicit_diseq_[p * npoints_ + q] != 0; }

    bool var_order_total() const;
    bool dom_order_total() const;

    // Two points of one variable are mergeable when no third point tells them
    // apart through defined compatibility entries.
    bool mergeable(int p, int q) const;
    std::vector<std::pair<int, int>> mergeable_pairs() const;
    // A point dangles when it is domain-order isolated and has at most one
    // defined entry, which if present is positive.
    std::vector<int> dangling_points() const;
    bool is_simple() const;

    Pattern inv_dom() const;    // reverse every domain order
    Pattern inv_var() const;    // reverse the variable order
    Pattern unordered() const;  // drop both orders, keep explicit diseqs

    // Stable fingerprint, minimised over variable and point relabellings.
    std::string canonical_key() const;

private:
    std::vector<std::string> var_names_;
    std::vector<std::vector<std::string>> point_names_;
    std::vector<int> offsets_;
    std::vector<int> var_of_;
    std::vector<std::vector<int>> points_of_;
    int npoints_ = 0;
    std::vector<signed char> cpt_;
    std::vector<std::pair<int, int>> pos_edges_, neg_edges_;
    std::vector<char> var_lt_;        // closed
    std::vector<char> dom_lt_;        // closed
    std::vector<char> explicit_diseq_;
    std::vector<char> diseq_;         // explicit plus implied
};

// Convenience construction by point name; names must be unique pattern-wide.
class PatternBuilder {
public:
    PatternBuilder& variable(const std::string& name, std::vector<std::string> points);
    PatternBuilder& pos(const std::string& p, const std::string& q);
    PatternBuilder& neg(const std::string& p, const std::string& q);
    PatternBuilder& var_less(const std::string& x, const std::string& y);
    PatternBuilder& dom_less(const std::string& lo, const std::string& hi);
    PatternBuilder& diseq(const std::string& p, const std::string& q);
    Pattern build() const;

private:
    int point(const std::string& name) const;
    int var(const std::string& name) const;
    std::vector<std::string> vars_;
    std::vector<std::vector<std::string>> points_;
    std::vector<std::tuple<int, int, bool>> edges_;
    std::vector<std::pair<int, int>> vo_, do_, ne_;
};

Pattern parse_pattern(const std::string& text);
std::string serialize_pattern(const Pattern& p, bool pretty = false);

enum class PatternName {
    BTP, BTP_VO, BTP_DO, MC, EMC, EMC_MINUS, BTX, BTI, LX, LX_LT,
    V_GT, V_GT_LT, T1,
    BAD_A, BAD_B, BAD_C, BAD_D, BAD_E, BAD_F, BAD_G, BAD_H, BAD_I, BAD_J,
    BAD_K, BAD_L, BAD_M, BAD_N, BAD_O, BAD_P, BAD_Q, BAD_R, BAD_S,
    P, Q,
};

const Pattern& builtin_pattern(PatternName name);
std::optional<PatternName> pattern_name_from_string(const std::string& s);
std::string to_string(PatternName name);
std::vector<PatternName> all_pattern_names();

}  // namespace acpat
