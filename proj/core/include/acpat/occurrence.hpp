#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acpat/instance.hpp"
#include "acpat/pattern.hpp"

namespace acpat {

// A consistent linear extension: merge map plus a fully ordered quotient.
struct LinearExtension {
    Pattern pattern;
    std::vector<int> rep;  // original point id -> quotient point id
};

// Every way to merge mergeable order-incomparable point pairs and then
// totalise both orders, enumerated once per merge partition.
std::vector<LinearExtension> consistent_linear_extensions(const Pattern& p);

// Fully ordered homomorphism target, built from an extension or an instance.
struct TargetView {
    int nvars = 0;
    int npoints = 0;
    std::vector<int> var_of;
    std::vector<int> var_pos;                 // of each variable
    std::vector<int> dom_pos;                 // of each point, within its variable
    std::vector<signed char> cpt;             // npoints * npoints tri-state
    std::vector<std::vector<int>> points_of_var;
    std::vector<std::vector<int>> neg_adj;
    // Instance targets keep the originating (variable, value) per point.
    std::vector<std::pair<int, Value>> origin;

    signed char entry(int p, int q) const { return cpt[p * npoints + q]; }
};

TargetView target_from_extension(const LinearExtension& ext);
TargetView target_from_instance(const Instance& inst, const VarOrder& vo,
                                const DomOrder& dord);

// Variable-injective, order- and compatibility-preserving point map;
// disequal source points land on distinct targets.
std::optional<std::vector<int>> find_homomorphism(const Pattern& src,
                                                  const TargetView& tgt);

struct OccursResult {
    bool occurs = false;
    // When occurs: one homomorphism per extension, aligned with extensions.
    std::vector<LinearExtension> extensions;
    std::vector<std::vector<int>> homs;
    // When not: the extension admitting no homomorphism.
    std::optional<LinearExtension> failing;
};

OccursResult occurs(const Pattern& src, const Pattern& tgt);

struct InstanceOccurrence {
    bool occurs = false;
    // Point map as (variable, value) per source point when present.
    std::vector<std::pair<int, Value>> witness;
};

InstanceOccurrence occurs_in_instance(const Pattern& src, const Instance& inst,
                                      const VarOrder& vo, const DomOrder& dord);

struct InClassResult {
    bool in_class = false;
    bool cap_exceeded = false;
    VarOrder var_order;   // orders certifying non-occurrence
    DomOrder dom_order;
    long long pairs_tried = 0;
};

// Searches order pairs lexicographically for one under which the pattern
// does not occur; cap bounds the number of pairs tried.
InClassResult in_class(const Pattern& src, const Instance& inst, long long cap = -1);

}  // namespace acpat
