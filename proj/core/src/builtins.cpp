#include <map>
#include <stdexcept>

#include "acpat/pattern.hpp"

namespace acpat {

namespace {

// Three-variable frame shared by emc/btx/bti/lx: y holds {alpha, beta},
// x holds {eps}, z holds {gamma, delta}.
PatternBuilder broken_frame() {
    PatternBuilder b;
    b.variable("x", {"eps"})
        .variable("y", {"alpha", "beta"})
        .variable("z", {"gamma", "delta"})
        .neg("alpha", "gamma")
        .pos("alpha", "delta")
        .pos("beta", "gamma")
        .pos("alpha", "eps")
        .pos("eps", "gamma")
        .neg("eps", "delta");
    return b;
}

PatternBuilder lx_frame() {
    PatternBuilder b;
    b.variable("x", {"eps"})
        .variable("y", {"alpha", "beta"})
        .variable("z", {"gamma", "delta"})
        .pos("alpha", "delta")
        .pos("beta", "gamma")
        .pos("alpha", "eps")
        .pos("eps", "gamma")
        .neg("beta", "eps")
        .neg("eps", "delta");
    return b;
}

PatternBuilder btp_frame() {
    PatternBuilder b;
    b.variable("x", {"ex"})
        .variable("y", {"ey"})
        .variable("z", {"gamma", "delta"})
        .neg("ey", "gamma")
        .pos("ey", "delta")
        .pos("ey", "ex")
        .pos("ex", "gamma")
        .neg("ex", "delta");
    return b;
}

PatternBuilder fork_frame() {
    // One point against a three-point variable; only the orders differ
    // between the two published variants.
    PatternBuilder b;
    b.variable("u", {"p"})
        .variable("w", {"beta", "gamma", "delta"})
        .pos("p", "beta")
        .pos("p", "gamma")
        .neg("p", "delta");
    return b;
}

Pattern make(PatternName name) {
    switch (name) {
        case PatternName::BTP:
            return btp_frame().var_less("x", "z").var_less("y", "z").build();
        case PatternName::BTP_VO:
            return btp_frame().var_less("x", "y").var_less("y", "z").build();
        case PatternName::BTP_DO:
            return btp_frame()
                .var_less("x", "z")
                .var_less("y", "z")
                .dom_less("delta", "gamma")
                .build();
        case PatternName::MC: {
            PatternBuilder b;
            return b.variable("x", {"alpha", "beta"})
                .variable("y", {"gamma", "delta"})
                .neg("alpha", "gamma")
                .pos("alpha", "delta")
                .pos("beta", "gamma")
                .dom_less("beta", "alpha")
                .dom_less("delta", "gamma")
                .build();
        }
        case PatternName::EMC:
            return broken_frame()
                .var_less("y", "z")
                .dom_less("beta", "alpha")
                .dom_less("delta", "gamma")
                .build();
        case PatternName::EMC_MINUS:
            return broken_frame()
                .dom_less("beta", "alpha")
                .dom_less("delta", "gamma")
                .build();
        case PatternName::BTX:
            return broken_frame()
                .var_less("y", "x")
                .var_less("y", "z")
                .dom_less("beta", "alpha")
                .build();
        case PatternName::BTI:
            return broken_frame().var_less("x", "z").dom_less("beta", "alpha").build();
        case PatternName::LX:
            return lx_frame().build();
        case PatternName::LX_LT:
            return lx_frame().var_less("y", "z").build();
        case PatternName::V_GT: {
            PatternBuilder b;
            return b.variable("x", {"e"})
                .variable("z", {"gamma", "delta"})
                .pos("e", "gamma")
                .neg("e", "delta")
                .dom_less("delta", "gamma")
                .build();
        }
        case PatternName::V_GT_LT: {
            PatternBuilder b;
            return b.variable("x", {"e"})
                .variable("z", {"gamma", "delta"})
                .pos("e", "gamma")
                .neg("e", "delta")
                .dom_less("delta", "gamma")
                .var_less("x", "z")
                .build();
        }
        case PatternName::T1:
        case PatternName::BAD_D: {
            PatternBuilder b;
            return b.variable("x", {"p"})
                .variable("y", {"c", "d"})
                .variable("z", {"q"})
                .neg("p", "c")
                .neg("c", "q")
                .pos("p", "d")
                .pos("d", "q")
                .build();
        }
        case PatternName::BAD_A: {
            PatternBuilder b;
            return b.variable("x", {"a", "b"})
                .variable("y", {"e"})
                .variable("z", {"c", "d"})
                .neg("a", "c")
                .pos("a", "d")
                .pos("b", "c")
                .pos("b", "e")
                .pos("e", "d")
                .build();
        }
        case PatternName::BAD_B: {
            PatternBuilder b;
            return b.variable("x", {"a", "b"})
                .variable("y", {"e", "f"})
                .variable("z", {"c", "d"})
                .neg("a", "c")
                .neg("e", "d")
                .pos("b", "c")
                .pos("f", "d")
                .pos("f", "b")
                .diseq("c", "d")
                .build();
        }
        case PatternName::BAD_C: {
            PatternBuilder b;
            return b.variable("i", {"a", "b"})
                .variable("j", {"e"})
                .variable("k", {"f"})
                .neg("a", "e")
                .dom_less("b", "a")
                .var_less("i", "k")
                .var_less("j", "k")
                .build();
        }
        case PatternName::BAD_E: {
            PatternBuilder b;
            return b.variable("i", {"p"})
                .variable("j", {"q"})
                .variable("k", {"r"})
                .neg("p", "q")
                .neg("q", "r")
                .var_less("j", "k")
                .build();
        }
        case PatternName::BAD_F: {
            PatternBuilder b;
            return b.variable("i", {"p"})
                .variable("j", {"e", "f"})
                .variable("k", {"r"})
                .neg("p", "e")
                .neg("f", "r")
                .diseq("e", "f")
                .var_less("i", "j")
                .var_less("j", "k")
                .build();
        }
        case PatternName::BAD_G: {
            PatternBuilder b;
            return b.variable("x", {"a", "b"})
                .variable("y", {"c", "d"})
                .neg("a", "c")
                .neg("b", "d")
                .diseq("a", "b")
                .build();
        }
        case PatternName::BAD_H: {
            PatternBuilder b;
            return b.variable("x", {"a", "b"})
                .variable("y", {"e"})
                .variable("z", {"f"})
                .neg("a", "f")
                .neg("e", "f")
                .dom_less("b", "a")
                .build();
        }
        case PatternName::BAD_I: {
            PatternBuilder b;
            return b.variable("x", {"p"})
                .variable("y", {"q"})
                .variable("z", {"c", "d"})
                .neg("p", "c")
                .neg("q", "c")
                .dom_less("d", "c")
                .build();
        }
        case PatternName::BAD_J: {
            PatternBuilder b;
            return b.variable("i", {"a", "b"})
                .variable("j", {"e"})
                .variable("k", {"f"})
                .neg("a", "f")
                .dom_less("b", "a")
                .var_less("i", "k")
                .var_less("j", "k")
                .build();
        }
        case PatternName::BAD_K: {
            PatternBuilder b;
            return b.variable("i", {"a", "b"})
                .variable("j", {"e"})
                .variable("k", {"c", "d"})
                .neg("a", "c")
                .dom_less("b", "a")
                .dom_less("d", "c")
                .var_less("j", "k")
                .build();
        }
        case PatternName::BAD_L: {
            PatternBuilder b;
            return b.variable("i", {"p"})
                .variable("j", {"q"})
                .variable("k", {"c", "d"})
                .neg("p", "d")
                .neg("q", "c")
                .dom_less("d", "c")
                .var_less("i", "j")
                .build();
        }
        case PatternName::BAD_M: {
            PatternBuilder b;
            return b.variable("x", {"a", "b"})
                .variable("y", {"e", "f"})
                .variable("z", {"c", "d"})
                .neg("a", "c")
                .neg("f", "d")
                .dom_less("b", "a")
                .dom_less("f", "e")
                .build();
        }
        case PatternName::BAD_N: {
            PatternBuilder b;
            return b.variable("x", {"p"})
                .variable("y", {"q"})
                .variable("z", {"c", "d"})
                .neg("p", "c")
                .pos("p", "q")
                .pos("q", "d")
                .diseq("c", "d")
                .build();
        }
        case PatternName::BAD_O: {
            PatternBuilder b;
            return b.variable("x", {"a", "b"})
                .variable("y", {"c", "d"})
                .neg("b", "c")
                .dom_less("b", "a")
                .dom_less("d", "c")
                .build();
        }
        case PatternName::BAD_P: {
            PatternBuilder b;
            return b.variable("x", {"p"})
                .variable("y", {"q"})
                .variable("z", {"r"})
                .pos("p", "q")
                .pos("p", "r")
                .pos("q", "r")
                .build();
        }
        case PatternName::BAD_Q: {
            PatternBuilder b;
            return b.variable("x", {"p"})
                .variable("y", {"q"})
                .variable("z", {"r"})
                .pos("p", "q")
                .neg("p", "r")
                .neg("q", "r")
                .build();
        }
        case PatternName::BAD_R: {
            PatternBuilder b;
            return b.variable("x", {"a", "b"})
                .variable("y", {"c", "d"})
                .pos("b", "d")
                .neg("a", "c")
                .diseq("a", "b")
                .diseq("c", "d")
                .build();
        }
        case PatternName::BAD_S: {
            PatternBuilder b;
            return b.variable("x", {"a", "b"})
                .variable("y", {"e"})
                .pos("a", "e")
                .pos("b", "e")
                .diseq("a", "b")
                .build();
        }
        case PatternName::P:
            return fork_frame()
                .dom_less("delta", "gamma")
                .dom_less("gamma", "beta")
                .build();
        case PatternName::Q:
            return fork_frame()
                .dom_less("delta", "beta")
                .dom_less("delta", "gamma")
                .build();
    }
    throw std::logic_error("unhandled pattern name");
}

const std::map<std::string, PatternName>& name_map() {
    static const std::map<std::string, PatternName> m = {
        {"btp", PatternName::BTP},       {"btp-vo", PatternName::BTP_VO},
        {"btp-do", PatternName::BTP_DO}, {"mc", PatternName::MC},
        {"emc", PatternName::EMC},       {"emc-minus", PatternName::EMC_MINUS},
        {"btx", PatternName::BTX},       {"bti", PatternName::BTI},
        {"lx", PatternName::LX},         {"lx-lt", PatternName::LX_LT},
        {"v-gt", PatternName::V_GT},     {"v-gt-lt", PatternName::V_GT_LT},
        {"t1", PatternName::T1},         {"bad-a", PatternName::BAD_A},
        {"bad-b", PatternName::BAD_B},   {"bad-c", PatternName::BAD_C},
        {"bad-d", PatternName::BAD_D},   {"bad-e", PatternName::BAD_E},
        {"bad-f", PatternName::BAD_F},   {"bad-g", PatternName::BAD_G},
        {"bad-h", PatternName::BAD_H},   {"bad-i", PatternName::BAD_I},
        {"bad-j", PatternName::BAD_J},   {"bad-k", PatternName::BAD_K},
        {"bad-l", PatternName::BAD_L},   {"bad-m", PatternName::BAD_M},
        {"bad-n", PatternName::BAD_N},   {"bad-o", PatternName::BAD_O},
        {"bad-p", PatternName::BAD_P},   {"bad-q", PatternName::BAD_Q},
        {"bad-r", PatternName::BAD_R},   {"bad-s", PatternName::BAD_S},
        {"p", PatternName::P},           {"q", PatternName::Q},
    };
    return m;
}

}  // namespace

const Pattern& builtin_pattern(PatternName name) {
    static std::map<PatternName, Pattern> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, make(name)).first;
    return it->second;
}

std::optional<PatternName> pattern_name_from_string(const std::string& s) {
    auto it = name_map().find(s);
    if (it == name_map().end()) return std::nullopt;
    return it->second;
}

std::string to_string(PatternName name) {
    for (const auto& [s, n] : name_map())
        if (n == name && (name != PatternName::BAD_D || s == "bad-d") &&
            (name != PatternName::T1 || s == "t1"))
            return s;
    return "?";
}

std::vector<PatternName> all_pattern_names() {
    std::vector<PatternName> out;
    for (const auto& [s, n] : name_map()) {
        if (s == "t1") continue;  // alias of bad-d
        out.push_back(n);
    }
    return out;
}

}  // namespace acpat
