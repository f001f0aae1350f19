#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "acpat/instance.hpp"
#include "acpat/occurrence.hpp"
#include "acpat/pattern.hpp"

namespace acpat {

// Hand-picked arc-consistent unsatisfiable instances used as certificates
// that a pattern does not guarantee solvability by consistency alone.
enum class CatalogName { I_K4, I_4, I_SAT_2D, I_5, I_SAT_6, I_SAT_K4, I_2COL_3 };

const Instance& catalog_instance(CatalogName name);
std::optional<CatalogName> catalog_name_from_string(const std::string& s);
std::string to_string(CatalogName name);
std::vector<CatalogName> all_catalog_names();
// Certificate order: smallest instances first.
std::vector<CatalogName> catalog_search_order();

// Which certificate refutes which named pattern.
std::vector<std::pair<PatternName, CatalogName>> refutation_table();

struct Classification {
    enum Verdict { AcSolvable, NotAcSolvable, Unsupported } verdict = Unsupported;
    // Positive side: the maximal pattern the input occurs in.
    std::optional<std::string> inside;       // description of the target
    // Negative side: certificate instance and orders where it does not occur.
    std::optional<CatalogName> certificate;
    VarOrder cert_var_order;
    DomOrder cert_dom_order;
    std::string reason;                      // set when unsupported
};

// The maximal solvable targets, closed under both order reversals.
const std::vector<std::pair<std::string, Pattern>>& maximal_targets();

Classification classify(const Pattern& p);

struct EnumerationBounds {
    int max_vars = 3;
    int max_points = 2;   // per variable
    int max_negative = 2;
    long long cap = -1;   // stop after this many simple patterns, if >= 0
};

// All simple patterns within the bounds, one per isomorphism class.
std::vector<Pattern> enumerate_simple_patterns(const EnumerationBounds& bounds);

struct GeneratedInstance {
    Instance instance;
    VarOrder var_order;
    DomOrder dom_order;
};

// Random instance repaired until the pattern stops occurring under the
// canonical orders; reproducible for a fixed seed.
GeneratedInstance gen_pattern_free_instance(const Pattern& p, int nvars, int domsize,
                                            double density, unsigned seed);

}  // namespace acpat
