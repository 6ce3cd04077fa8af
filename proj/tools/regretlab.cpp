// Command-line front end.
//
//   regretlab validate <file> [--json]
//   regretlab choose <file> --at <history> [--rule R] [--update U] [--menu M] [--json]
//   regretlab check <file> --kind K [--rule R] [--update U] [--menu M] [--json]
//   regretlab export <scenario> [--context N]
//
// Exit codes: 0 the command succeeded and the check (if any) passed, 1 a
// check or validation failed, 2 a parse, I/O, or usage error, 3 an
// enumeration cap was exceeded (raise it via REGRETLAB_CAPS).

#include <regretlab/caps.hpp>
#include <regretlab/consistency.hpp>
#include <regretlab/dyntree.hpp>
#include <regretlab/problem_io.hpp>
#include <regretlab/scenarios.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace regretlab;
using nlohmann::json;

void print_report(const CheckReport& r) {
    std::cout << r.check << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
    for (const Witness& w : r.witnesses) {
        std::cout << "  witness " << w.what << ":";
        for (const auto& [key, value] : w.fields) std::cout << " " << key << "=" << value;
        std::cout << "\n";
    }
    if (!r.stats.empty()) {
        std::cout << "  stats:";
        for (const auto& [key, value] : r.stats) std::cout << " " << key << "=" << value;
        std::cout << "\n";
    }
    for (const std::string& note : r.notes) std::cout << "  note: " << note << "\n";
}

int finish_report(const CheckReport& r, bool as_json) {
    if (as_json)
        std::cout << report_to_json(r).dump(2) << "\n";
    else
        print_report(r);
    return r.pass ? 0 : 1;
}

// Flag overrides on top of the file's defaults section.
struct Overrides {
    std::string rule;
    std::string update;
    std::string menu;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--rule", rule, "decision rule: minimax, mwer, mer, expected");
        cmd->add_option("--update", update, "updating rule: prior, likelihood");
        cmd->add_option("--menu", menu, "menu policy: constant, feasible, explicit");
    }

    ChoiceContext apply(const ProblemFile& pf) const {
        ChoiceContext ctx = pf.defaults;
        if (!rule.empty()) ctx.rule = detail::rule_from_name(rule, "--rule");
        if (!update.empty()) ctx.update = detail::update_from_name(update, "--update");
        if (menu.empty()) return ctx;
        if (menu == "constant") {
            ctx.menu_policy = MenuPolicy::constant_initial();
        } else if (menu == "feasible") {
            ctx.menu_policy = MenuPolicy::feasible_only();
        } else if (menu == "explicit") {
            if (pf.menus.empty())
                throw ParseError("--menu", "this problem file has no menus section");
            ctx.menu_policy.kind = MenuPolicy::Kind::explicit_menu;
            ctx.menu_policy.menus = pf.menus;
        } else {
            throw ParseError("--menu", "unknown menu policy \"" + menu +
                                           "\" (constant, feasible, explicit)");
        }
        return ctx;
    }
};

int cmd_validate(const std::string& path, bool as_json) {
    ProblemFile pf = load_problem(path);
    return finish_report(pf.tree.validate(), as_json);
}

int cmd_choose(const std::string& path, const std::string& at, const Overrides& over,
               bool as_json) {
    ProblemFile pf = load_problem(path);
    ChoiceContext ctx = over.apply(pf);
    const DecisionTree& t = pf.tree;
    std::optional<std::size_t> node = t.resolve(at);
    if (!node) throw ParseError("--at", "unknown history \"" + at + "\"");

    std::vector<Act> chosen = choice_at(t, ctx, *node);
    RuleContext rc = conditioned_context(ctx, t.possible_states(*node), t.space());
    Menu eval = t.menu_at(*node, ctx.menu_policy);

    if (as_json) {
        json out;
        out["at"] = at;
        out["rule"] = detail::rule_name(ctx.rule);
        out["update"] = detail::update_name(ctx.update);
        out["menu_policy"] = detail::menu_policy_name(ctx.menu_policy.kind);
        json jc = json::array();
        for (const Act& f : chosen)
            jc.push_back({{"label", f.label}, {"value", to_string(rule_value(rc, eval, f))}});
        out["chosen"] = std::move(jc);
        std::cout << out.dump(2) << "\n";
    } else {
        for (const Act& f : chosen)
            std::cout << f.label << " " << to_string(rule_value(rc, eval, f)) << "\n";
    }
    return 0;
}

int cmd_check(const std::string& path, const std::string& kind, const Overrides& over,
              bool as_json) {
    ProblemFile pf = load_problem(path);
    ChoiceContext ctx = over.apply(pf);
    const DecisionTree& t = pf.tree;

    CheckReport report("unknown");
    if (kind == "reversal") {
        report = check_no_reversal(t, ctx);
    } else if (kind == "axioms") {
        report = check_axioms(t, ctx);
    } else if (kind == "sep") {
        Menu menu = t.menu_at(t.root(0), ctx.menu_policy);
        report = check_sep_all(ctx.beliefs, menu, tree_algebra(t), ctx.update, t.space());
    } else if (kind == "rect") {
        report = check_rectangularity(ctx.beliefs, tree_algebra(t), ctx.update, t.space());
    } else if (kind == "thm2") {
        StaticProblem p{path, t.space(), ctx.beliefs, t.menu_at(t.root(0), ctx.menu_policy),
                        tree_algebra(t)};
        report = cross_validate_thm2({p}, ctx.update);
    } else {
        throw ParseError("--kind",
                         "unknown check \"" + kind + "\" (reversal, sep, rect, axioms, thm2)");
    }
    return finish_report(report, as_json);
}

int cmd_export(const std::string& name, std::size_t context) {
    Scenario sc = builtin(name);
    if (context >= sc.contexts.size())
        throw ParseError("--context", "scenario has only " +
                                          std::to_string(sc.contexts.size()) + " contexts");
    // one parse pass renumbers node ids into their stable grouped order
    std::cout << serialize_problem(
        parse_problem(serialize_problem(problem_from_scenario(sc, context))));
    return 0;
}

int cmd_generate(const GeneratorConfig& cfg) {
    std::cout << serialize_problem(
        parse_problem(serialize_problem(problem_from_scenario(generate(cfg)))));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact regret-based choice over decision trees"};
    app.require_subcommand(1);

    std::string path;
    std::string at;
    std::string kind;
    std::string name;
    std::size_t context = 0;
    bool as_json = false;
    Overrides over;

    CLI::App* validate = app.add_subcommand("validate", "load a problem file and check it");
    validate->add_option("file", path, "problem file")->required();
    validate->add_flag("--json", as_json, "emit the report as JSON");

    CLI::App* choose = app.add_subcommand("choose", "print the choice set at a history");
    choose->add_option("file", path, "problem file")->required();
    choose->add_option("--at", at, "history address or alias")->required();
    over.add_to(choose);
    choose->add_flag("--json", as_json, "emit the choice as JSON");

    CLI::App* check = app.add_subcommand("check", "run a consistency check");
    check->add_option("file", path, "problem file")->required();
    check->add_option("--kind", kind, "reversal, sep, rect, axioms, thm2")->required();
    over.add_to(check);
    check->add_flag("--json", as_json, "emit the report as JSON");

    CLI::App* exp = app.add_subcommand("export", "print a built-in scenario as a problem file");
    exp->add_option("scenario", name, "one of the built-in scenario names")->required();
    exp->add_option("--context", context, "which stored context supplies the defaults");

    GeneratorConfig cfg;
    CLI::App* gen = app.add_subcommand("generate", "print a seeded random problem file");
    gen->add_option("--seed", cfg.seed, "generator seed")->required();
    gen->add_flag("--trivial-info", cfg.trivial_information,
                  "pool every history across all states");
    gen->add_flag("--singleton", cfg.singleton_beliefs, "one weight-one measure");
    gen->add_flag("--cuc", cfg.closed_under_conditioning,
                  "belief set closed under conditioning on the tree events");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(path, as_json);
        if (choose->parsed()) return cmd_choose(path, at, over, as_json);
        if (check->parsed()) return cmd_check(path, kind, over, as_json);
        if (exp->parsed()) return cmd_export(name, context);
        if (gen->parsed()) return cmd_generate(cfg);
    } catch (const caps_error& e) {
        std::cerr << "cap exceeded: " << e.cap_name << " (" << e.what() << ")\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
