// Acceptance gate. Runs the eight release criteria and prints one PASS/FAIL
// line per criterion with its runtime against the pinned budget. Exits 0
// only when every criterion passes, including the time budgets. All value
// comparisons are exact rational equality; no tolerances anywhere.
//
// Each numeric criterion is checked two ways: once through the library and
// once through a small self-contained oracle in this file that enumerates
// measures and states directly.

#include <regretlab/belief.hpp>
#include <regretlab/consistency.hpp>
#include <regretlab/dyntree.hpp>
#include <regretlab/rational.hpp>
#include <regretlab/regret.hpp>
#include <regretlab/scenarios.hpp>
#include <regretlab/state_space.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace regretlab;

namespace {

struct Gate {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

bool run_criterion(int index, const std::string& name, long long budget_ms,
                   const std::function<void(Gate&)>& body) {
    Gate g;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(g);
    } catch (const std::exception& e) {
        g.expect(false, std::string("threw: ") + e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    bool in_budget = ms <= budget_ms;
    bool ok = g.failures.empty() && in_budget;
    std::printf("%s  criterion %d  %-28s  %5lld ms / %lld ms\n", ok ? "PASS" : "FAIL", index,
                name.c_str(), static_cast<long long>(ms), budget_ms);
    if (!in_budget) std::printf("      over time budget\n");
    for (std::size_t i = 0; i < g.failures.size() && i < 8; ++i)
        std::printf("      %s\n", g.failures[i].c_str());
    if (g.failures.size() > 8)
        std::printf("      ... and %zu more\n", g.failures.size() - 8);
    return ok;
}

const Act* find_act(const Menu& menu, const std::string& label) {
    for (const Act& f : menu.acts())
        if (f.label == label) return &f;
    return nullptr;
}

// Direct enumeration of max over weighted measures of the expected regret of
// f against the per-state bests of the menu. Shared by the two oracles.
Rat oracle_value(const std::vector<std::vector<Rat>>& menu, const std::vector<Rat>& f,
                 const std::vector<std::pair<std::vector<Rat>, Rat>>& weighted_measures) {
    const std::size_t n = f.size();
    std::vector<Rat> best(n, Rat(0));
    for (std::size_t s = 0; s < n; ++s) {
        best[s] = menu.front()[s];
        for (const auto& g : menu)
            if (g[s] > best[s]) best[s] = g[s];
    }
    Rat out(0);
    bool first = true;
    for (const auto& [pr, w] : weighted_measures) {
        Rat e(0);
        for (std::size_t s = 0; s < n; ++s) e += pr[s] * (best[s] - f[s]);
        e *= w;
        if (first || e > out) out = e;
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 1. The three-state counterexample's eight composite acts give the
// published regret vector, with the sixth-listed act corrected from its
// printed value (the maximum sits at the third measure, not the second).

void criterion_p4c(Gate& g) {
    Scenario sc = builtin("p4c-counterexample");
    g.expect(replay(sc).pass, "scenario replay diverged from its expected table");

    // payoff rows over (s1, s2, s3) built from first principles: a committed
    // constant k pays (k, k, 5); a split paying a on A and b on B pays (a, b, 5)
    const std::vector<std::pair<std::string, std::vector<long>>> listed = {
        {"o10,o1,o1", {10, 10, 5}},   // the constant-10 commitment
        {"o7,o1,o1", {7, 7, 5}},      {"o20,o1,o1", {20, 20, 5}},
        {"o1,o1,o1", {1, 1, 5}},      {"split,o10,o7", {10, 7, 5}},
        {"split,o1,o10", {1, 10, 5}},  // printed as 15 in the source analysis
        {"split,o20,o1", {20, 1, 5}}, {"split,o1,o20", {1, 20, 5}},
    };
    const std::vector<Rat> expected = {Rat(15),     rat(61, 4), Rat(15), rat(85, 4),
                                       Rat(15),     Rat(16),    rat(33, 2), Rat(16)};

    std::vector<std::vector<Rat>> menu;
    for (long k : {1, 7, 10, 20}) menu.push_back({Rat(k), Rat(k), Rat(k)});
    menu.push_back({Rat(20), Rat(23), Rat(5)});
    std::vector<std::pair<std::vector<Rat>, Rat>> bel = {
        {{rat(1, 4), rat(3, 4), Rat(0)}, Rat(1)},
        {{Rat(0), Rat(0), Rat(1)}, Rat(1)},
        {{rat(1, 4), Rat(0), rat(3, 4)}, Rat(1)},
    };

    for (std::size_t i = 0; i < listed.size(); ++i) {
        const auto& [label, row] = listed[i];
        std::vector<Rat> pay(row.begin(), row.end());
        Rat oracle = oracle_value(menu, pay, bel);
        g.expect(oracle == expected[i], "oracle value for " + label + " is " +
                                            to_string(oracle) + ", expected " +
                                            to_string(expected[i]));
        std::string lib = eval_query(sc, 0, "value@root:" + label);
        g.expect(lib == to_string(expected[i]), "library value for " + label + " is " + lib +
                                                    ", expected " + to_string(expected[i]));
    }
}

// ---------------------------------------------------------------------------
// Criterion 2. The two-day study problem with payoffs (10, 10, 25, 15)
// reproduces its worked regrets, the menu-dependent reversal verdicts, and
// the closed-form day-two boundary g2 = 2 p2 across fuzzed parameters.

void criterion_example1(Gate& g) {
    StateSpace space({"hard", "easy"});
    ChoiceContext feas;
    feas.rule = DecisionRule::minimax_regret;
    feas.menu_policy = MenuPolicy::feasible_only();
    ChoiceContext cons = feas;
    cons.menu_policy = MenuPolicy::constant_initial();

    DecisionTree t = procrastination_tree(Rat(10), Rat(10), Rat(25), Rat(15));
    std::size_t root = t.resolve("root").value();
    std::size_t day2 = t.resolve("play").value();
    Menu plans = t.menu_of_plans(t.feasible_plans(root));
    Menu day2_plans = t.menu_of_plans(t.feasible_plans(day2));

    auto value = [&](const ChoiceContext& ctx, std::size_t node, const Menu& from,
                     const std::string& label) -> Rat {
        const Act* f = find_act(from, label);
        if (!f) throw std::runtime_error("no plan labeled " + label);
        RuleContext rc = conditioned_context(ctx, t.possible_states(node), space);
        return rule_value(rc, t.menu_at(node, ctx.menu_policy), *f);
    };

    g.expect(value(cons, root, plans, "study,study") == Rat(20), "ex ante study,study != 20");
    g.expect(value(cons, root, plans, "play,study") == Rat(15), "ex ante play,study != 15");
    g.expect(value(cons, root, plans, "play,play") == Rat(20), "ex ante play,play != 20");
    g.expect(value(feas, day2, day2_plans, "play,study") == Rat(10),
             "day-2 feasible play,study != 10");
    g.expect(value(feas, day2, day2_plans, "play,play") == Rat(5),
             "day-2 feasible play,play != 5");
    g.expect(value(cons, day2, day2_plans, "play,study") == Rat(15),
             "day-2 constant play,study != 15");
    g.expect(value(cons, day2, day2_plans, "play,play") == Rat(20),
             "day-2 constant play,play != 20");

    g.expect(!check_no_reversal(t, feas).pass, "feasible-menu reversal not detected");
    g.expect(check_no_reversal(t, cons).pass, "constant-menu reversal falsely detected");

    std::mt19937 rng(20260815);
    for (int i = 0; i < 100; ++i) {
        long p1 = 2 + static_cast<long>(rng() % 19);
        long p2 = 1 + static_cast<long>(rng() % 19);
        long g1 = p1 + p2 + 1 + static_cast<long>(rng() % (p1 - 1 > 0 ? p1 - 1 : 1));
        long g2 = p2 + 1 + static_cast<long>(rng() % (2 * p2 + 3));
        DecisionTree ft = procrastination_tree(Rat(p1), Rat(p2), Rat(g1), Rat(g2));
        std::size_t fd2 = ft.resolve("play").value();
        std::vector<Act> chosen = choice_at(ft, feas, fd2);
        bool unique_play = chosen.size() == 1 && chosen.front().label == "play,play";
        std::string tuple = "(" + std::to_string(p1) + "," + std::to_string(p2) + "," +
                            std::to_string(g1) + "," + std::to_string(g2) + ")";
        g.expect(unique_play == (g2 < 2 * p2),
                 "day-2 play boundary wrong at " + tuple);
        if (g2 == 2 * p2)
            g.expect(chosen.size() == 2, "tie at g2=2p2 should keep both plans, " + tuple);
    }
}

// ---------------------------------------------------------------------------
// Criterion 3. Pooled information: when every history is consistent with
// every state and menus are constant, no reversal appears under either
// updating rule. 200 seeded random trees.

void criterion_pooled_information(Gate& g) {
    for (std::uint32_t seed = 1; seed <= 200; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.trivial_information = true;
        Scenario sc = generate(cfg);
        for (std::size_t c = 0; c < sc.contexts.size(); ++c) {
            CheckReport r = check_no_reversal(sc.tree, sc.contexts[c]);
            g.expect(r.pass, sc.name + " context " + std::to_string(c) + " reversed");
        }
    }
}

// ---------------------------------------------------------------------------
// Criterion 4. One weight-one measure: decomposition holds in every algebra
// cell, the axioms hold, and no reversal appears, under both updating rules.
// 100 seeded random problems.

void criterion_singleton(Gate& g) {
    for (std::uint32_t seed = 1; seed <= 100; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.singleton_beliefs = true;
        Scenario sc = generate(cfg);
        const DecisionTree& t = sc.tree;
        std::vector<Event> algebra = tree_algebra(t);
        for (std::size_t c = 0; c < sc.contexts.size(); ++c) {
            const ChoiceContext& ctx = sc.contexts[c];
            std::string tag = sc.name + " context " + std::to_string(c);
            Menu menu = t.menu_at(t.root(0), ctx.menu_policy);
            g.expect(check_sep_all(ctx.beliefs, menu, algebra, ctx.update, t.space()).pass,
                     tag + " decomposition failed");
            g.expect(check_axioms(t, ctx).pass, tag + " axioms failed");
            g.expect(check_no_reversal(t, ctx).pass, tag + " reversed");
        }
    }
}

// ---------------------------------------------------------------------------
// Criterion 5. The axiom verdict and the decomposition verdict agree on
// every instance, for both updating rules. 100 seeded instances with at most
// 4 states, 3 measures, and 4 menu acts.

void criterion_equivalence(Gate& g) {
    std::vector<StaticProblem> problems;
    std::uint32_t seed = 0;
    while (problems.size() < 100 && ++seed <= 5000) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.depth_min = 2;
        cfg.depth_max = 2;
        cfg.branch_max = 2;
        cfg.utility_grid = 3;  // coarse payoffs so plan menus dedup small
        Scenario sc = generate(cfg);
        Menu menu = sc.tree.menu_at(sc.tree.root(0), MenuPolicy::constant_initial());
        if (menu.acts().size() > 4) continue;
        problems.push_back({sc.name, sc.tree.space(), sc.contexts[0].beliefs, menu,
                            tree_algebra(sc.tree)});
    }
    g.expect(problems.size() == 100, "could not assemble 100 small instances");

    for (UpdateRule rule : {UpdateRule::prior_by_prior, UpdateRule::likelihood}) {
        CheckReport r = cross_validate_thm2(problems, rule);
        std::string tag = rule == UpdateRule::prior_by_prior ? "prior" : "likelihood";
        g.expect(r.pass, tag + ": verdicts diverged");
        g.expect(r.stats["agreements"] == 100,
                 tag + ": agreements=" + std::to_string(r.stats["agreements"]));
    }
}

// ---------------------------------------------------------------------------
// Criterion 6. Rectangularity implies dynamic consistency: on belief sets
// that pass the rectangularity check (singleton and
// closed-under-conditioning constructions), the dynamic-consistency clauses
// of the axiom checker never fire. 50 filtered instances.

void criterion_rectangular_dcm(Gate& g) {
    int collected = 0;
    for (std::uint32_t seed = 1; collected < 50 && seed <= 400; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        if (seed % 2 == 1)
            cfg.singleton_beliefs = true;
        else
            cfg.closed_under_conditioning = true;
        Scenario sc = generate(cfg);
        std::vector<Event> algebra = tree_algebra(sc.tree);
        for (std::size_t c = 0; c < sc.contexts.size() && collected < 50; ++c) {
            const ChoiceContext& ctx = sc.contexts[c];
            if (!check_rectangularity(ctx.beliefs, algebra, ctx.update, sc.tree.space()).pass)
                continue;
            ++collected;
            CheckReport ax = check_axioms(sc.tree, ctx);
            for (const Witness& w : ax.witnesses)
                g.expect(w.what.rfind("dcm-", 0) != 0,
                         sc.name + " context " + std::to_string(c) +
                             " dynamic consistency fired: " + w.what);
        }
    }
    g.expect(collected == 50,
             "only " + std::to_string(collected) + " rectangular instances found");
}

// ---------------------------------------------------------------------------
// Criterion 7. The weighted two-measure study scenario, read literally row
// by row: ex ante the play-then-study plan wins at 18/25 against 1 for
// always-play, and at the Hard history the same plan deteriorates to 9/5
// and drops out. Library values equal an in-file enumeration oracle.

void criterion_two_measure_table(Gate& g) {
    Scenario sc = builtin("exam-table1");

    // oracle data, transcribed independently of the tree builders: payoff
    // rows over (hs, hl, es, el)
    std::vector<std::vector<Rat>> menu = {
        {Rat(-10), Rat(-10), Rat(-10), Rat(-10)},  // study both days
        {Rat(1), Rat(0), Rat(5), Rat(0)},          // play, then study
        {Rat(1), Rat(0), Rat(0), Rat(3)},          // play, study on Hard only
        {Rat(0), Rat(3), Rat(5), Rat(0)},          // play, study on Easy only
        {Rat(0), Rat(3), Rat(0), Rat(3)},          // play both days
    };
    std::vector<std::pair<std::vector<Rat>, Rat>> bel = {
        {{Rat(1), Rat(0), Rat(0), Rat(0)}, Rat(1)},
        {{Rat(0), rat(1, 5), rat(1, 5), rat(1, 5)}, rat(3, 5)},
    };
    auto conditioned = [&](const std::vector<int>& keep) {
        std::vector<std::pair<std::vector<Rat>, Rat>> out;
        for (const auto& [pr, w] : bel) {
            Rat total(0);
            for (int s : keep) total += pr[s];
            if (total == 0) continue;
            std::vector<Rat> cond(4, Rat(0));
            for (int s : keep) cond[s] = pr[s] / total;
            out.emplace_back(std::move(cond), w);
        }
        return out;
    };

    const std::vector<Rat>& ps = menu[1];
    const std::vector<Rat>& pp = menu[4];
    auto hard = conditioned({0, 1});
    g.expect(oracle_value(menu, ps, bel) == rat(18, 25), "oracle: ex ante play,study");
    g.expect(oracle_value(menu, pp, bel) == Rat(1), "oracle: ex ante play,play");
    g.expect(oracle_value(menu, ps, hard) == rat(9, 5), "oracle: play,study given Hard");
    g.expect(oracle_value(menu, pp, hard) == Rat(1), "oracle: play,play given Hard");

    g.expect(eval_query(sc, 0, "value@root:play,study,study") == "18/25",
             "library: ex ante play,study");
    g.expect(eval_query(sc, 0, "value@root:play,play,play") == "1",
             "library: ex ante play,play");
    g.expect(eval_query(sc, 0, "value@hard-after-play:play,study,study") == "9/5",
             "library: play,study given Hard");
    g.expect(eval_query(sc, 0, "value@hard-after-play:play,play,play") == "1",
             "library: play,play given Hard");

    g.expect(eval_query(sc, 0, "choice@root") == "{play,study,study}",
             "library: ex ante choice");
    CheckReport r = check_no_reversal(sc.tree, sc.contexts[0]);
    g.expect(!r.pass, "no reversal detected");
    bool at_hard = false;
    for (const Witness& w : r.witnesses)
        if (w.fields.count("history") && w.fields.at("history") == "hs") at_hard = true;
    g.expect(at_hard, "reversal witness not at the Hard history");
}

// ---------------------------------------------------------------------------
// Criterion 8. Likelihood updating of the two-measure belief set: on Hard
// the weights become exactly (1, 3/25); on Easy the first measure drops and
// the survivor carries weight 1; and the top weight is 1 after every
// nonempty update.

void criterion_likelihood_weights(Gate& g) {
    StateSpace space({"hs", "hl", "es", "el"});
    Event hard = ev_from_names({"hs", "hl"}, space).value();
    Event easy = ev_complement(hard, space);

    for (bool normalized : {false, true}) {
        WeightedBeliefSet bel = exam_beliefs(normalized);
        std::string tag = normalized ? "normalized" : "literal";

        // pr2's conditioned weight: literal rows give (3/5)(1/5) = 3/25, the
        // normalized variant (3/5)(1/3) = 1/5, in both cases against a
        // set-wide optimum of 1 held by pr1
        Rat pr2_weight = normalized ? rat(1, 5) : rat(3, 25);
        WeightedBeliefSet on_hard = update(bel, hard, UpdateRule::likelihood, space);
        g.expect(on_hard.members().size() == 2, tag + ": Hard update should keep 2 measures");
        for (const WeightedMeasure& wm : on_hard.members()) {
            if (wm.measure.mass()[0] == Rat(1))
                g.expect(wm.weight == Rat(1), tag + ": conditioned pr1 weight != 1");
            else
                g.expect(wm.weight == pr2_weight, tag + ": conditioned pr2 weight wrong");
        }

        WeightedBeliefSet on_easy = update(bel, easy, UpdateRule::likelihood, space);
        g.expect(on_easy.members().size() == 1, tag + ": Easy update should drop pr1");
        if (!on_easy.empty()) {
            const WeightedMeasure& wm = on_easy.members().front();
            g.expect(wm.weight == Rat(1), tag + ": Easy survivor weight != 1");
            std::vector<Rat> want = {Rat(0), Rat(0), rat(1, 2), rat(1, 2)};
            g.expect(wm.measure.mass() == want, tag + ": Easy survivor measure wrong");
        }

        for (Event e : tree_algebra(exam_tree())) {
            WeightedBeliefSet up = update(bel, e, UpdateRule::likelihood, space);
            if (!up.empty())
                g.expect(detail::max_weight(up) == Rat(1),
                         tag + ": max weight after a nonempty update != 1");
        }
    }
}

}  // namespace

int main() {
    int failed = 0;
    failed += !run_criterion(1, "counterexample regret vector", 1000, criterion_p4c);
    failed += !run_criterion(2, "two-day study problem", 5000, criterion_example1);
    failed += !run_criterion(3, "pooled-information suite", 60000, criterion_pooled_information);
    failed += !run_criterion(4, "singleton-belief suite", 60000, criterion_singleton);
    failed += !run_criterion(5, "axiom-decomposition agreement", 120000, criterion_equivalence);
    failed += !run_criterion(6, "rectangular belief sets", 120000, criterion_rectangular_dcm);
    failed += !run_criterion(7, "two-measure study table", 1000, criterion_two_measure_table);
    failed += !run_criterion(8, "likelihood reweighting", 1000, criterion_likelihood_weights);
    if (failed) std::printf("%d of 8 criteria failed\n", failed);
    else std::printf("all 8 criteria passed\n");
    return failed == 0 ? 0 : 1;
}
