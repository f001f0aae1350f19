#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "acpat/catalog.hpp"
#include "acpat/instance.hpp"
#include "acpat/occurrence.hpp"
#include "acpat/pattern.hpp"
#include "acpat/recognition.hpp"
#include "acpat/solvers.hpp"

using json = nlohmann::json;
using namespace acpat;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Instance load_instance(const std::string& arg) {
    if (auto cn = catalog_name_from_string(arg)) return catalog_instance(*cn);
    return parse_instance(slurp(arg));
}

Pattern load_pattern(const std::string& arg) {
    if (auto pn = pattern_name_from_string(arg)) return builtin_pattern(*pn);
    return parse_pattern(slurp(arg));
}

VarOrder parse_var_order(const Instance& inst, const std::string& text) {
    if (text.empty()) return identity_var_order(inst.num_variables());
    VarOrder out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(inst.var_index(tok));
    order_positions(out, inst.num_variables());
    return out;
}

DomOrder parse_dom_order(const Instance& inst, const std::string& text) {
    if (text.empty()) return universe_dom_order(inst.universe());
    DomOrder out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    dom_positions(out, inst.universe());
    return out;
}

json var_order_json(const Instance& inst, const VarOrder& vo) {
    json a = json::array();
    for (int v : vo) a.push_back(inst.variable_name(v));
    return a;
}

json assignment_json(const Instance& inst, const Assignment& a) {
    json out = json::object();
    for (int i = 0; i < inst.num_variables(); ++i) out[inst.variable_name(i)] = a[i];
    return out;
}

json witness_json(const Pattern& p, const std::vector<std::pair<int, Value>>& w,
                  const Instance& inst) {
    json out = json::array();
    for (int s = 0; s < p.num_points(); ++s) {
        auto [vn, pn] = p.point_label(s);
        out.push_back({{"point", json::array({vn, pn})},
                       {"variable", inst.variable_name(w[s].first)},
                       {"value", w[s].second}});
    }
    return out;
}

json outcome_json(const Instance& inst, const SolveOutcome& out,
                  const Pattern* witness_pattern) {
    json j;
    switch (out.status) {
        case OutcomeStatus::Solution:
            j["status"] = "solution";
            j["solution"] = assignment_json(inst, out.solution);
            break;
        case OutcomeStatus::Wipeout:
            j["status"] = "wipeout";
            break;
        case OutcomeStatus::PreconditionViolated:
            j["status"] = "precondition-violated";
            j["diagnostic"] = out.diagnostic;
            if (out.witness && witness_pattern)
                j["witness"] = witness_json(*witness_pattern, out.witness->witness, inst);
            break;
    }
    json trace = json::array();
    for (const auto& st : out.trace)
        trace.push_back({{"variable", inst.variable_name(st.var)},
                         {"candidates", st.candidates},
                         {"chosen", st.chosen}});
    j["trace"] = trace;
    return j;
}

void emit(const json& j, bool pretty) {
    std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"pattern-based constraint solving toolkit"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent JSON output");

    // ac
    auto* ac = app.add_subcommand("ac", "enforce arc consistency");
    std::string ac_file;
    ac->add_option("file", ac_file)->required();

    // solve
    auto* solve = app.add_subcommand("solve", "solve with a class solver");
    std::string sv_class, sv_file, sv_vo, sv_do;
    solve->add_option("--class", sv_class)->required()
        ->check(CLI::IsMember({"emc", "btx", "bti", "lx", "btp", "mac"}));
    solve->add_option("--var-order", sv_vo);
    solve->add_option("--dom-order", sv_do);
    solve->add_option("file", sv_file)->required();

    // occurs
    auto* occ = app.add_subcommand("occurs", "pattern-in-pattern occurrence");
    std::string oc_pattern, oc_target;
    occ->add_option("--pattern", oc_pattern)->required();
    occ->add_option("--target", oc_target)->required();

    // in-class
    auto* inc = app.add_subcommand("in-class", "search order pair avoiding a pattern");
    std::string ic_pattern, ic_file;
    long long ic_cap = -1;
    inc->add_option("--pattern", ic_pattern)->required();
    inc->add_option("--cap", ic_cap);
    inc->add_option("file", ic_file)->required();

    // recognize
    auto* rec = app.add_subcommand("recognize", "find an order avoiding a target pattern");
    std::string rc_target, rc_fixed, rc_order, rc_file;
    rec->add_option("--target", rc_target)->required()
        ->check(CLI::IsMember({"btp", "bti", "btx", "emc"}));
    rec->add_option("--fixed", rc_fixed)->required()->check(CLI::IsMember({"dom", "var"}));
    rec->add_option("--order", rc_order);
    rec->add_option("file", rc_file)->required();

    // classify
    auto* cls = app.add_subcommand("classify", "solvability of a simple pattern");
    std::string cl_pattern;
    cls->add_option("pattern", cl_pattern)->required();

    // catalog
    auto* cat = app.add_subcommand("catalog", "built-in certificate instances");
    auto* cat_list = cat->add_subcommand("list");
    auto* cat_show = cat->add_subcommand("show");
    std::string cat_name;
    cat_show->add_option("name", cat_name)->required();
    auto* cat_verify = cat->add_subcommand("verify");
    cat->require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generators");
    auto* gen_gadget_cmd = gen->add_subcommand("gadget");
    std::string gg_target, gg_cnf;
    gen_gadget_cmd->add_option("--target", gg_target)->required()
        ->check(CLI::IsMember({"emc", "btx", "bti"}));
    gen_gadget_cmd->add_option("--cnf", gg_cnf)->required();
    auto* gen_inst = gen->add_subcommand("instance");
    std::string gi_pattern;
    int gi_vars = 5, gi_dom = 4;
    double gi_density = 0.5;
    unsigned gi_seed = 1;
    gen_inst->add_option("--pattern", gi_pattern)->required();
    gen_inst->add_option("--vars", gi_vars);
    gen_inst->add_option("--domain", gi_dom);
    gen_inst->add_option("--density", gi_density);
    gen_inst->add_option("--seed", gi_seed);
    gen->require_subcommand(1);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "brute-force reference solving");
    auto* or_solve = oracle->add_subcommand("solve");
    auto* or_count = oracle->add_subcommand("count");
    std::string or_file1, or_file2;
    long long or_cap = -1;
    or_solve->add_option("file", or_file1)->required();
    or_solve->add_option("--cap", or_cap);
    or_count->add_option("file", or_file2)->required();
    or_count->add_option("--cap", or_cap);
    oracle->require_subcommand(1);

    std::function<void(CLI::App*)> allow_global = [&](CLI::App* a) {
        a->fallthrough();
        for (auto* sub : a->get_subcommands({})) allow_global(sub);
    };
    allow_global(&app);

    CLI11_PARSE(app, argc, argv);

    if (*ac) {
        Instance inst = load_instance(ac_file);
        auto res = enforce_ac(inst);
        json j;
        j["wipeout"] = res.trace.wipeout;
        json removals = json::array();
        for (const auto& r : res.trace.removals)
            removals.push_back({{"variable", inst.variable_name(r.var)},
                                {"value", r.value},
                                {"blame", inst.variable_name(r.blame)}});
        j["removals"] = removals;
        if (!res.trace.wipeout)
            j["instance"] = json::parse(serialize_instance(res.instance));
        emit(j, pretty);
        return 0;
    }

    if (*solve) {
        Instance raw = load_instance(sv_file);
        VarOrder vo = parse_var_order(raw, sv_vo);
        DomOrder dord = parse_dom_order(raw, sv_do);
        auto ac_res = enforce_ac(raw);
        if (ac_res.trace.wipeout) {
            emit(json{{"status", "wipeout"}}, pretty);
            return 0;
        }
        const Instance& inst = ac_res.instance;
        SolveOutcome out;
        const Pattern* wp = nullptr;
        if (sv_class == "emc") {
            out = solve_emc(inst, vo, dord);
            wp = &builtin_pattern(PatternName::EMC);
        } else if (sv_class == "btx") {
            out = solve_btx(inst, vo, dord);
            wp = &builtin_pattern(PatternName::BTX);
        } else if (sv_class == "bti") {
            out = solve_bti(inst, vo, dord);
            wp = &builtin_pattern(PatternName::BTI);
        } else if (sv_class == "lx") {
            out = solve_lx(inst);
            wp = &builtin_pattern(PatternName::LX);
        } else if (sv_class == "btp") {
            out = solve_btp(inst, vo);
            wp = &builtin_pattern(PatternName::BTP);
        } else {
            out = solve_mac(inst, first_unassigned_variable, first_domain_value);
        }
        emit(outcome_json(inst, out, wp), pretty);
        return 0;
    }

    if (*occ) {
        Pattern p = load_pattern(oc_pattern);
        Pattern t = load_pattern(oc_target);
        auto res = occurs(p, t);
        json j;
        if (res.occurs) {
            j["verdict"] = "occurs";
            json ws = json::array();
            for (size_t i = 0; i < res.extensions.size(); ++i) {
                json m = json::array();
                for (int s = 0; s < p.num_points(); ++s) {
                    auto [sv, sp] = p.point_label(s);
                    auto [tv, tp] = res.extensions[i].pattern.point_label(res.homs[i][s]);
                    m.push_back({{"from", json::array({sv, sp})},
                                 {"to", json::array({tv, tp})}});
                }
                ws.push_back({{"extension", json::parse(serialize_pattern(res.extensions[i].pattern))},
                              {"map", m}});
            }
            j["witnesses"] = ws;
        } else {
            j["verdict"] = "not-occurs";
            j["extension"] = json::parse(serialize_pattern(res.failing->pattern));
        }
        emit(j, pretty);
        return 0;
    }

    if (*inc) {
        Pattern p = load_pattern(ic_pattern);
        Instance inst = load_instance(ic_file);
        auto res = in_class(p, inst, ic_cap);
        json j;
        if (res.cap_exceeded) {
            j["verdict"] = "cap-exceeded";
        } else if (res.in_class) {
            j["verdict"] = "some";
            j["varOrder"] = var_order_json(inst, res.var_order);
            j["domOrder"] = res.dom_order;
        } else {
            j["verdict"] = "none";
        }
        j["pairsTried"] = res.pairs_tried;
        emit(j, pretty);
        return 0;
    }

    if (*rec) {
        Instance inst = load_instance(rc_file);
        RecogTarget target = *recog_target_from_string(rc_target);
        json j;
        if (rc_fixed == "dom") {
            DomOrder dord = parse_dom_order(inst, rc_order);
            auto order = find_var_order(inst, target, dord);
            if (!order) {
                emit(json{{"order", "none"}}, pretty);
                return 1;
            }
            j["order"] = var_order_json(inst, *order);
        } else {
            VarOrder vo = parse_var_order(inst, rc_order);
            auto order = find_dom_order(inst, target, vo);
            if (!order) {
                emit(json{{"order", "none"}}, pretty);
                return 1;
            }
            j["order"] = *order;
        }
        j["certified"] = true;
        emit(j, pretty);
        return 0;
    }

    if (*cls) {
        Pattern p = load_pattern(cl_pattern);
        auto res = classify(p);
        json j;
        switch (res.verdict) {
            case Classification::AcSolvable:
                j["verdict"] = "ac-solvable";
                j["inside"] = *res.inside;
                break;
            case Classification::NotAcSolvable: {
                j["verdict"] = "not-ac-solvable";
                const Instance& ci = catalog_instance(*res.certificate);
                j["certificate"] = to_string(*res.certificate);
                j["varOrder"] = var_order_json(ci, res.cert_var_order);
                j["domOrder"] = res.cert_dom_order;
                break;
            }
            case Classification::Unsupported:
                j["verdict"] = "unsupported";
                j["reason"] = res.reason;
                break;
        }
        emit(j, pretty);
        return 0;
    }

    if (*cat) {
        if (*cat_list) {
            json j = json::array();
            for (auto n : all_catalog_names()) j.push_back(to_string(n));
            emit(j, pretty);
            return 0;
        }
        if (*cat_show) {
            auto cn = catalog_name_from_string(cat_name);
            if (!cn) throw ParseError("unknown catalogue instance " + cat_name);
            emit(json::parse(serialize_instance(catalog_instance(*cn))), pretty);
            return 0;
        }
        if (*cat_verify) {
            json instances = json::array();
            for (auto n : all_catalog_names()) {
                const Instance& inst = catalog_instance(n);
                instances.push_back({{"name", to_string(n)},
                                     {"ac", is_arc_consistent(inst)},
                                     {"solutions", count_solutions(inst).count}});
            }
            json pairs = json::array();
            for (auto [pn, cn] : refutation_table()) {
                auto res = in_class(builtin_pattern(pn), catalog_instance(cn));
                pairs.push_back({{"pattern", to_string(pn)},
                                 {"instance", to_string(cn)},
                                 {"inClass", res.in_class}});
            }
            emit(json{{"instances", instances}, {"refutations", pairs}}, pretty);
            return 0;
        }
    }

    if (*gen) {
        if (*gen_gadget_cmd) {
            Cnf cnf = parse_dimacs(slurp(gg_cnf));
            auto g = gen_gadget(*recog_target_from_string(gg_target), cnf);
            json j;
            j["instance"] = json::parse(serialize_instance(g.instance));
            if (g.var_order) j["varOrder"] = var_order_json(g.instance, *g.var_order);
            json clauses = json::array();
            for (const auto& gc : g.meta.clauses)
                clauses.push_back({{"lit", gc.lit}, {"neg", gc.neg},
                                   {"b", gc.b}, {"c", gc.c}, {"d", gc.d}});
            j["metadata"] = {{"aMax", g.meta.a_max}, {"clauses", clauses}};
            emit(j, pretty);
            return 0;
        }
        if (*gen_inst) {
            Pattern p = load_pattern(gi_pattern);
            auto g = gen_pattern_free_instance(p, gi_vars, gi_dom, gi_density, gi_seed);
            json j;
            j["instance"] = json::parse(serialize_instance(g.instance));
            j["varOrder"] = var_order_json(g.instance, g.var_order);
            j["domOrder"] = g.dom_order;
            emit(j, pretty);
            return 0;
        }
    }

    if (*oracle) {
        if (*or_solve) {
            Instance inst = load_instance(or_file1);
            auto res = brute_force_solve(inst, or_cap);
            json j;
            j["nodes"] = res.nodes;
            switch (res.status) {
                case SearchStatus::Solution:
                    j["status"] = "solution";
                    j["solution"] = assignment_json(inst, res.solution);
                    break;
                case SearchStatus::Unsat: j["status"] = "unsat"; break;
                case SearchStatus::BudgetExceeded: j["status"] = "budget-exceeded"; break;
            }
            emit(j, pretty);
            return 0;
        }
        if (*or_count) {
            Instance inst = load_instance(or_file2);
            auto res = count_solutions(inst, or_cap);
            json j;
            j["nodes"] = res.nodes;
            if (res.exceeded)
                j["status"] = "budget-exceeded";
            else {
                j["status"] = "counted";
                j["count"] = res.count;
            }
            emit(j, pretty);
            return 0;
        }
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
