#pragma once

// Ready-made decision problems with frozen expected values, plus a seeded
// random-problem generator for property suites.
//
// A Scenario bundles a tree, an optional belief set, one or more choice
// contexts, and a list of expected query results. replay() re-runs every
// expected entry through the engine and reports mismatches, so the fixtures
// double as end-to-end regression tests. Queries are small strings
// ("choice@root", "value@root:play,study", "reversal", ...) shared with the
// command-line tools.
//
// Provenance tags on expected entries record where a value comes from:
// "stated" values were transcribed from the source analysis, "recomputed"
// values were derived by independent brute force, "definition" values follow
// immediately from the definitions.

#include <regretlab/belief.hpp>
#include <regretlab/check_report.hpp>
#include <regretlab/consistency.hpp>
#include <regretlab/dyntree.hpp>
#include <regretlab/rational.hpp>
#include <regretlab/regret.hpp>
#include <regretlab/state_space.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace regretlab {

struct ExpectedEntry {
    std::size_t context = 0;
    std::string query;
    std::string value;
    std::string provenance;
    std::string note;
};

struct Scenario {
    std::string name;
    DecisionTree tree;
    std::optional<WeightedBeliefSet> beliefs;
    std::vector<ChoiceContext> contexts;
    std::vector<ExpectedEntry> expected;
};

// ---------------------------------------------------------------------------
// Fixture building blocks, exposed so tests can rebuild them with other
// parameters.

// Two-day study problem. On day 1 the student either studies for the other
// course (locking in g1 when that exam is hard, nothing otherwise) or plays;
// on day 2, after playing, she studies for it (p1 in both states) or plays
// again (p1 + p2 - g2 when hard, p1 + p2 when easy). No information arrives
// between the days.
inline DecisionTree procrastination_tree(const Rat& p1, const Rat& p2, const Rat& g1,
                                         const Rat& g2) {
    StateSpace space({"hard", "easy"});
    DecisionTreeBuilder b(space);
    b.leaf(b.root(0), "study", g1);
    std::size_t dh = b.child(b.root(0), "play");
    b.leaf(b.root(1), "study", Rat(0));
    std::size_t de = b.child(b.root(1), "play");
    b.leaf(dh, "study", p1);
    b.leaf(dh, "play", p1 + p2 - g2);
    b.leaf(de, "study", p1);
    b.leaf(de, "play", p1 + p2);
    b.info_set("day1", {b.root(0), b.root(1)});
    b.info_set("day2", {dh, de});
    b.alias("root", b.root(0));
    b.alias("after-play", dh);
    b.alias("play", dh);
    return b.build();
}

// Four-state exam problem behind the weighted-regret table. States pair the
// exam's difficulty with how the material lands; playing on day 1 reveals
// the difficulty (the day-2 information sets split hard from easy).
inline DecisionTree exam_tree() {
    StateSpace space({"hs", "hl", "es", "el"});
    DecisionTreeBuilder b(space);
    for (std::size_t s = 0; s < 4; ++s) b.leaf(b.root(s), "study", Rat(-10));
    std::vector<std::size_t> day2;
    for (std::size_t s = 0; s < 4; ++s) day2.push_back(b.child(b.root(s), "play"));
    b.leaf(day2[0], "study", Rat(1));
    b.leaf(day2[0], "play", Rat(0));
    b.leaf(day2[1], "study", Rat(0));
    b.leaf(day2[1], "play", Rat(3));
    b.leaf(day2[2], "study", Rat(5));
    b.leaf(day2[2], "play", Rat(0));
    b.leaf(day2[3], "study", Rat(0));
    b.leaf(day2[3], "play", Rat(3));
    b.info_set("day1", {b.root(0), b.root(1), b.root(2), b.root(3)});
    b.info_set("hard", {day2[0], day2[1]});
    b.info_set("easy", {day2[2], day2[3]});
    b.alias("root", b.root(0));
    b.alias("hard-after-play", day2[0]);
    b.alias("easy-after-play", day2[2]);
    return b.build();
}

// The table's second row sums to 3/5. The literal reading keeps it as a
// subnormalized measure; the normalized reading rescales it to a proper
// measure with the same weight. The two readings disagree about where the
// reversal happens, so both ship as fixtures.
inline WeightedBeliefSet exam_beliefs(bool normalized) {
    ProbMeasure pr1({Rat(1), Rat(0), Rat(0), Rat(0)});
    if (normalized) {
        ProbMeasure pr2({Rat(0), rat(1, 3), rat(1, 3), rat(1, 3)});
        return WeightedBeliefSet({{pr1, Rat(1)}, {pr2, rat(3, 5)}});
    }
    ProbMeasure pr2 =
        ProbMeasure::subnormalized({Rat(0), rat(1, 5), rat(1, 5), rat(1, 5)});
    return WeightedBeliefSet({{pr1, Rat(1)}, {pr2, rat(3, 5)}});
}

// Two-state stopping problem. The left subtree is identical in both
// variants; the right subtree's payoffs differ, which is enough to flip the
// ex ante choice while leaving every conditional choice after going left
// untouched. The altered variant exists for that contrast.
inline DecisionTree lost_cause_tree(bool altered = false) {
    StateSpace space({"s1", "s2"});
    DecisionTreeBuilder b(space);
    std::size_t l1 = b.child(b.root(0), "left");
    std::size_t r1 = b.child(b.root(0), "right");
    std::size_t l2 = b.child(b.root(1), "left");
    std::size_t r2 = b.child(b.root(1), "right");
    b.leaf(l1, "left", Rat(0));
    b.leaf(l1, "right", Rat(1));
    b.leaf(l2, "left", Rat(3));
    b.leaf(l2, "right", Rat(1));
    b.leaf(r1, "left", Rat(0));
    b.leaf(r1, "right", altered ? Rat(0) : Rat(3));
    b.leaf(r2, "left", Rat(0));
    b.leaf(r2, "right", altered ? Rat(1) : Rat(0));
    b.info_set("start", {b.root(0), b.root(1)});
    b.info_set("after-left", {l1, l2});
    b.info_set("after-right", {r1, r2});
    b.alias("root", b.root(0));
    b.alias("after-left", l1);
    b.alias("after-right", r1);
    return b.build();
}

// Three-state comparative-probability counterexample. Committing to an
// outcome at the root pays that outcome on the first two states and 5 on the
// third; splitting instead defers the pick until the state (first or second)
// is known, still paying 5 on the third. Every evaluation happens against a
// fixed five-act menu, not against the feasible plans.
inline DecisionTree p4c_tree() {
    StateSpace space({"s1", "s2", "s3"});
    DecisionTreeBuilder b(space);
    const long outs[4] = {1, 7, 10, 20};
    for (std::size_t s = 0; s < 3; ++s)
        for (long k : outs)
            b.leaf(b.root(s), "o" + std::to_string(k), Rat(s == 2 ? 5 : k));
    std::size_t na = b.child(b.root(0), "split");
    std::size_t nb = b.child(b.root(1), "split");
    b.leaf(b.root(2), "split", Rat(5));
    for (long k : outs) b.leaf(na, "o" + std::to_string(k), Rat(k));
    for (long k : outs) b.leaf(nb, "o" + std::to_string(k), Rat(k));
    b.info_set("start", {b.root(0), b.root(1), b.root(2)});
    b.info_set("A", {na});
    b.info_set("B", {nb});
    b.alias("root", b.root(0));
    b.alias("A", na);
    b.alias("B", nb);
    return b.build();
}

inline Menu p4c_eval_menu() {
    std::vector<Act> acts;
    for (long k : {1, 7, 10, 20})
        acts.emplace_back(std::vector<Rat>{Rat(k), Rat(k), Rat(k)},
                          "o" + std::to_string(k) + "*");
    acts.emplace_back(std::vector<Rat>{Rat(20), Rat(23), Rat(5)}, "g");
    return Menu(std::move(acts));
}

inline WeightedBeliefSet p4c_beliefs() {
    ProbMeasure p1({rat(1, 4), rat(3, 4), Rat(0)});
    ProbMeasure p2({Rat(0), Rat(0), Rat(1)});
    ProbMeasure p3({rat(1, 4), Rat(0), rat(3, 4)});
    return WeightedBeliefSet({{p1, Rat(1)}, {p2, Rat(1)}, {p3, Rat(1)}});
}

// ---------------------------------------------------------------------------
// Query evaluation and replay.

namespace detail {

inline std::size_t resolve_or_throw(const DecisionTree& t, const std::string& address) {
    std::optional<std::size_t> node = t.resolve(address);
    if (!node) throw std::invalid_argument("unknown history: " + address);
    return *node;
}

inline std::string belief_label(const WeightedBeliefSet& bel) {
    if (bel.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < bel.members().size(); ++i) {
        const WeightedMeasure& wm = bel.members()[i];
        if (i > 0) out += "; ";
        out += "(";
        for (std::size_t s = 0; s < wm.measure.dim(); ++s) {
            if (s > 0) out += ",";
            out += to_string(wm.measure.mass()[s]);
        }
        out += ")[" + to_string(wm.weight) + "]";
    }
    return out;
}

}  // namespace detail

// Evaluate one query string against one context. Supported forms:
//   choice@<history>          set of chosen plans, "{lab|lab|...}"
//   value@<history>:<plan>    the rule value of that feasible plan
//   belief@<history>          updated belief set, "(mass)[weight]; ..."
//   reversal                  "pass"/"fail" from check_no_reversal
//   reversal-witness          "history|extension|plan", or "-" when none
//   axioms, sep, rect         "pass"/"fail" from the matching checker
inline std::string eval_query(const Scenario& sc, std::size_t ctx_index,
                              const std::string& query) {
    const ChoiceContext& ctx = sc.contexts.at(ctx_index);
    const DecisionTree& t = sc.tree;
    std::size_t at = query.find('@');
    std::string head = at == std::string::npos ? query : query.substr(0, at);
    if (head == "choice") {
        std::size_t node = detail::resolve_or_throw(t, query.substr(at + 1));
        return acts_label(choice_at(t, ctx, node));
    }
    if (head == "value") {
        std::string rest = query.substr(at + 1);
        std::size_t colon = rest.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("value query needs <history>:<plan>");
        std::string address = rest.substr(0, colon);
        std::string label = rest.substr(colon + 1);
        std::size_t node = detail::resolve_or_throw(t, address);
        Menu feasible = t.menu_of_plans(t.feasible_plans(node));
        const Act* act = nullptr;
        for (const Act& f : feasible.acts())
            if (f.label == label) act = &f;
        if (!act)
            throw std::invalid_argument("no feasible plan labeled " + label + " at " + address);
        RuleContext rc = conditioned_context(ctx, t.possible_states(node), t.space());
        return to_string(rule_value(rc, t.menu_at(node, ctx.menu_policy), *act));
    }
    if (head == "belief") {
        std::size_t node = detail::resolve_or_throw(t, query.substr(at + 1));
        return detail::belief_label(
            update(ctx.beliefs, t.possible_states(node), ctx.update, t.space()));
    }
    if (query == "reversal") return check_no_reversal(t, ctx).pass ? "pass" : "fail";
    if (query == "reversal-witness") {
        CheckReport r = check_no_reversal(t, ctx);
        if (r.witnesses.empty()) return "-";
        const auto& fields = r.witnesses.front().fields;
        return fields.at("history") + "|" + fields.at("extension") + "|" + fields.at("act");
    }
    if (query == "axioms") return check_axioms(t, ctx).pass ? "pass" : "fail";
    if (query == "sep") {
        Menu menu = t.menu_at(t.root(0), ctx.menu_policy);
        return check_sep_all(ctx.beliefs, menu, tree_algebra(t), ctx.update, t.space()).pass
                   ? "pass"
                   : "fail";
    }
    if (query == "rect")
        return check_rectangularity(ctx.beliefs, tree_algebra(t), ctx.update, t.space()).pass
                   ? "pass"
                   : "fail";
    throw std::invalid_argument("unknown query: " + query);
}

// Re-run every expected entry; any mismatch fails with both strings.
inline CheckReport replay(const Scenario& sc) {
    CheckReport report("replay");
    for (const ExpectedEntry& ee : sc.expected) {
        std::string actual = eval_query(sc, ee.context, ee.query);
        report.bump("entries");
        if (actual != ee.value)
            report.fail({"mismatch",
                         {{"context", std::to_string(ee.context)},
                          {"query", ee.query},
                          {"expected", ee.value},
                          {"actual", actual}}});
    }
    return report;
}

// ---------------------------------------------------------------------------
// Built-in scenarios.

namespace detail {

inline ChoiceContext minimax_ctx(MenuPolicy policy) {
    ChoiceContext ctx;
    ctx.rule = DecisionRule::minimax_regret;
    ctx.menu_policy = std::move(policy);
    return ctx;
}

inline ChoiceContext mwer_ctx(WeightedBeliefSet bel, UpdateRule upd, MenuPolicy policy) {
    ChoiceContext ctx;
    ctx.rule = DecisionRule::mwer;
    ctx.beliefs = std::move(bel);
    ctx.update = upd;
    ctx.menu_policy = std::move(policy);
    return ctx;
}

inline Scenario make_procrastination() {
    DecisionTree t = procrastination_tree(Rat(10), Rat(10), Rat(25), Rat(15));
    std::vector<ChoiceContext> contexts = {minimax_ctx(MenuPolicy::feasible_only()),
                                           minimax_ctx(MenuPolicy::constant_initial())};
    std::vector<ExpectedEntry> expected = {
        {0, "choice@root", "{play,study}", "recomputed",
         "minimax regrets 20/15/20 for committing, playing then studying, playing twice"},
        {0, "value@root:play,study", "15", "recomputed", ""},
        {0, "choice@after-play", "{play,play}", "recomputed",
         "with the day-1 commitment gone from the menu, playing again wins"},
        {0, "value@after-play:play,play", "5", "recomputed", ""},
        {0, "reversal", "fail", "stated",
         "shrinking menus let the day-2 self abandon the day-1 plan"},
        {0, "reversal-witness", "hard|hard/play|play,study", "recomputed", ""},
        {1, "choice@root", "{play,study}", "recomputed", ""},
        {1, "choice@after-play", "{play,study}", "recomputed",
         "keeping the initial menu preserves the plan"},
        {1, "value@after-play:play,study", "15", "recomputed", ""},
        {1, "reversal", "pass", "stated", ""},
        {1, "reversal-witness", "-", "definition", ""},
    };
    return Scenario{"procrastination", std::move(t), std::nullopt, std::move(contexts),
                    std::move(expected)};
}

inline Scenario make_exam_table1() {
    DecisionTree t = exam_tree();
    WeightedBeliefSet bel = exam_beliefs(false);
    std::vector<ChoiceContext> contexts = {
        mwer_ctx(bel, UpdateRule::prior_by_prior, MenuPolicy::constant_initial()),
        mwer_ctx(bel, UpdateRule::likelihood, MenuPolicy::constant_initial())};
    std::vector<ExpectedEntry> expected = {
        {0, "choice@root", "{play,study,study}", "recomputed",
         "ex ante the weighted regret of playing then studying, 18/25, beats 1"},
        {0, "value@root:play,study,study", "18/25", "recomputed", "0.72 in decimals"},
        {0, "value@root:play,play,play", "1", "recomputed", ""},
        {0, "choice@hard-after-play", "{play,play,study|play,play,play}", "recomputed",
         "after learning the exam is hard, studying for it drops out"},
        {0, "value@hard-after-play:play,study,study", "9/5", "recomputed", ""},
        {0, "choice@easy-after-play", "{play,study,study|play,play,study}", "recomputed",
         "the easy branch keeps the ex ante plan, under this reading"},
        {0, "reversal", "fail", "stated", ""},
        {0, "reversal-witness", "hs|hs/play|play,study,study", "recomputed", ""},
        {0, "axioms", "fail", "recomputed", "a menu-dependence case against the full menu"},
        {0, "sep", "fail", "recomputed", ""},
        {0, "rect", "fail", "recomputed", ""},
        {1, "belief@hard-after-play", "(0,1,0,0)[3/25]; (1,0,0,0)[1]", "recomputed",
         "likelihood updating rescales the second weight by its mass on hard"},
        {1, "belief@easy-after-play", "(0,0,1/2,1/2)[1]", "recomputed",
         "the first measure puts no mass on easy and is dropped"},
    };
    return Scenario{"exam-table1", std::move(t), std::move(bel), std::move(contexts),
                    std::move(expected)};
}

inline Scenario make_exam_table1_normalized() {
    DecisionTree t = exam_tree();
    WeightedBeliefSet bel = exam_beliefs(true);
    std::vector<ChoiceContext> contexts = {
        mwer_ctx(bel, UpdateRule::prior_by_prior, MenuPolicy::constant_initial()),
        mwer_ctx(bel, UpdateRule::likelihood, MenuPolicy::constant_initial())};
    std::vector<ExpectedEntry> expected = {
        {0, "choice@root", "{play,play,study|play,play,play}", "recomputed",
         "rescaling the second row changes the ex ante choice"},
        {0, "value@root:study,study,study", "11", "recomputed", ""},
        {0, "value@root:play,study,study", "6/5", "recomputed", ""},
        {0, "value@root:play,study,play", "8/5", "recomputed", ""},
        {0, "value@root:play,play,study", "1", "recomputed", ""},
        {0, "value@root:play,play,play", "1", "recomputed", ""},
        {0, "choice@hard-after-play", "{play,play,study|play,play,play}", "recomputed", ""},
        {0, "choice@easy-after-play", "{play,study,study|play,play,study}", "recomputed", ""},
        {0, "reversal", "fail", "recomputed",
         "the reversal moves to the easy branch under this reading"},
        {0, "reversal-witness", "es|es/play|play,play,play", "recomputed", ""},
        {1, "belief@hard-after-play", "(0,1,0,0)[1/5]; (1,0,0,0)[1]", "recomputed",
         "weight 1/5 instead of 3/25; rescaling feeds through the reweighting"},
        {1, "belief@easy-after-play", "(0,0,1/2,1/2)[1]", "recomputed", ""},
    };
    return Scenario{"exam-table1-normalized", std::move(t), std::move(bel),
                    std::move(contexts), std::move(expected)};
}

inline Scenario make_lost_cause() {
    DecisionTree t = lost_cause_tree(false);
    std::vector<ChoiceContext> contexts = {minimax_ctx(MenuPolicy::feasible_only()),
                                           minimax_ctx(MenuPolicy::constant_initial())};
    std::vector<ExpectedEntry> expected = {
        {0, "choice@root", "{left,right,left}", "recomputed", ""},
        {0, "value@root:left,right,left", "2", "recomputed", ""},
        {0, "choice@after-left", "{left,left,left}", "recomputed",
         "once the right branch is forgone, pressing on looks best"},
        {0, "value@after-left:left,left,left", "1", "recomputed", ""},
        {0, "reversal", "fail", "stated", ""},
        {0, "reversal-witness", "s1|s1/left|left,right,left", "recomputed", ""},
        {1, "choice@after-left", "{left,right,left}", "recomputed",
         "remembering forgone opportunities keeps the plan"},
        {1, "reversal", "pass", "stated", ""},
    };
    return Scenario{"lost-cause", std::move(t), std::nullopt, std::move(contexts),
                    std::move(expected)};
}

inline Scenario make_p4c() {
    DecisionTree t = p4c_tree();
    WeightedBeliefSet bel = p4c_beliefs();
    MenuPolicy policy;
    policy.kind = MenuPolicy::Kind::explicit_menu;
    for (std::size_t h : t.decision_nodes()) policy.menus.emplace(h, p4c_eval_menu());
    ChoiceContext ctx;
    ctx.rule = DecisionRule::mer;
    ctx.beliefs = bel;
    ctx.update = UpdateRule::prior_by_prior;
    ctx.menu_policy = std::move(policy);
    std::vector<ExpectedEntry> expected = {
        {0, "value@root:o10,o1,o1", "15", "stated", "maximum at the second measure"},
        {0, "value@root:o7,o1,o1", "61/4", "stated", "15.25, at the first measure"},
        {0, "value@root:o20,o1,o1", "15", "stated", ""},
        {0, "value@root:o1,o1,o1", "85/4", "stated", "21.25"},
        {0, "value@root:split,o10,o7", "15", "stated", ""},
        {0, "value@root:split,o1,o10", "16", "recomputed",
         "printed as 15, but the maximum sits at the third measure and equals 16"},
        {0, "value@root:split,o20,o1", "33/2", "stated", "16.5"},
        {0, "value@root:split,o1,o20", "16", "stated", "at the third measure"},
        {0, "choice@root",
         "{o10,o1,o1|o20,o1,o1|split,o7,o10|split,o7,o20|split,o10,o7|split,o10,o20|"
         "split,o20,o7|split,o20,o10}",
         "recomputed", "every plan whose expected regret against the menu reaches 15"},
    };
    return Scenario{"p4c-counterexample", std::move(t), std::move(bel), {std::move(ctx)},
                    std::move(expected)};
}

}  // namespace detail

inline Scenario builtin(const std::string& name) {
    if (name == "procrastination") return detail::make_procrastination();
    if (name == "exam-table1") return detail::make_exam_table1();
    if (name == "exam-table1-normalized") return detail::make_exam_table1_normalized();
    if (name == "lost-cause") return detail::make_lost_cause();
    if (name == "p4c-counterexample") return detail::make_p4c();
    throw std::invalid_argument("unknown builtin scenario: " + name);
}

inline std::vector<std::string> builtin_names() {
    return {"procrastination", "exam-table1", "exam-table1-normalized", "lost-cause",
            "p4c-counterexample"};
}

// ---------------------------------------------------------------------------
// Seeded generator.

struct GeneratorConfig {
    std::uint32_t seed = 1;
    std::size_t states_min = 2, states_max = 4;
    std::size_t depth_min = 1, depth_max = 2;
    std::size_t branch_min = 2, branch_max = 3;
    std::size_t measures_min = 1, measures_max = 3;
    long weight_grid = 8;   // non-leading weights are k / weight_grid
    long utility_grid = 6;  // leaf utilities are integers 0..utility_grid
    bool trivial_information = false;
    bool singleton_beliefs = false;
    bool closed_under_conditioning = false;
};

namespace detail {

inline std::size_t draw(std::mt19937& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

inline ProbMeasure random_measure(std::mt19937& rng, std::size_t n, bool full_support) {
    std::vector<long> units(n, 0);
    long total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        units[i] = static_cast<long>(full_support ? 1 + rng() % 4 : rng() % 5);
        total += units[i];
    }
    if (total == 0) {
        units[0] = 1;
        total = 1;
    }
    std::vector<Rat> mass;
    for (long u : units) mass.push_back(rat(u, total));
    return ProbMeasure(std::move(mass));
}

}  // namespace detail

// Deterministic in the seed. The action structure is uniform: one branching
// factor everywhere, actions named x1..xk. With trivial information each
// action history forms a single information set across all states, so every
// decision node has E(h) = S. Otherwise a random two-block partition of the
// states splits every information set below the root. The
// closed-under-conditioning flag overrides trivial information (it needs a
// nontrivial event), and singleton-beliefs overrides both belief flags.
inline Scenario generate(const GeneratorConfig& cfg) {
    if (cfg.states_min < 2 || cfg.states_min > cfg.states_max || cfg.states_max > 10)
        throw std::invalid_argument("generator: bad state range");
    if (cfg.depth_min < 1 || cfg.depth_min > cfg.depth_max)
        throw std::invalid_argument("generator: bad depth range");
    if (cfg.branch_min < 2 || cfg.branch_min > cfg.branch_max)
        throw std::invalid_argument("generator: bad branching range");
    if (cfg.measures_min < 1 || cfg.measures_min > cfg.measures_max)
        throw std::invalid_argument("generator: bad measure-count range");
    if (cfg.weight_grid < 1 || cfg.utility_grid < 1)
        throw std::invalid_argument("generator: grids need at least one step");

    std::mt19937 rng(cfg.seed);
    std::size_t n = detail::draw(rng, cfg.states_min, cfg.states_max);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i + 1));
    StateSpace space(std::move(names));

    std::size_t depth = detail::draw(rng, cfg.depth_min, cfg.depth_max);
    std::size_t branch = detail::draw(rng, cfg.branch_min, cfg.branch_max);
    bool trivial = cfg.trivial_information && !cfg.closed_under_conditioning;
    Event block = 0;
    if (!trivial)
        block = static_cast<Event>(1 + rng() % ((std::uint64_t(1) << n) - 2));

    DecisionTreeBuilder b(space);
    std::vector<std::vector<std::size_t>> cur(n);
    for (std::size_t s = 0; s < n; ++s) cur[s] = {b.root(s)};
    for (std::size_t k = 0; k < depth; ++k) {
        for (std::size_t h = 0; h < cur[0].size(); ++h) {
            std::string stem = "I" + std::to_string(k) + "-" + std::to_string(h);
            if (trivial || k == 0) {
                std::vector<std::size_t> members;
                for (std::size_t s = 0; s < n; ++s) members.push_back(cur[s][h]);
                b.info_set(stem, std::move(members));
            } else {
                std::vector<std::size_t> in, out;
                for (std::size_t s = 0; s < n; ++s)
                    (ev_contains(block, s) ? in : out).push_back(cur[s][h]);
                b.info_set(stem + "a", std::move(in));
                b.info_set(stem + "b", std::move(out));
            }
        }
        bool last = k + 1 == depth;
        std::vector<std::vector<std::size_t>> next(n);
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t h = 0; h < cur[s].size(); ++h)
                for (std::size_t a = 0; a < branch; ++a) {
                    std::string act = "x" + std::to_string(a + 1);
                    if (last) {
                        long u = static_cast<long>(
                            rng() % static_cast<std::uint32_t>(cfg.utility_grid + 1));
                        b.leaf(cur[s][h], act, Rat(u));
                    } else {
                        next[s].push_back(b.child(cur[s][h], act));
                    }
                }
        cur = std::move(next);
    }
    b.alias("root", b.root(0));
    DecisionTree t = b.build();

    std::vector<WeightedMeasure> members;
    if (cfg.singleton_beliefs) {
        members.emplace_back(detail::random_measure(rng, n, false), Rat(1));
    } else if (cfg.closed_under_conditioning) {
        ProbMeasure pr = detail::random_measure(rng, n, true);
        members.emplace_back(pr, Rat(1));
        members.emplace_back(pr.conditional(block), Rat(1));
        members.emplace_back(pr.conditional(ev_complement(block, space)), Rat(1));
    } else {
        std::size_t m = detail::draw(rng, cfg.measures_min, cfg.measures_max);
        for (std::size_t j = 0; j < m; ++j) {
            Rat w = j == 0 ? Rat(1)
                           : rat(static_cast<long>(detail::draw(
                                     rng, 1, static_cast<std::size_t>(cfg.weight_grid))),
                                 cfg.weight_grid);
            members.emplace_back(detail::random_measure(rng, n, false), w);
        }
    }
    WeightedBeliefSet bel(std::move(members));

    std::vector<ChoiceContext> contexts = {
        detail::mwer_ctx(bel, UpdateRule::prior_by_prior, MenuPolicy::constant_initial()),
        detail::mwer_ctx(bel, UpdateRule::likelihood, MenuPolicy::constant_initial())};
    return Scenario{"generated-" + std::to_string(cfg.seed), std::move(t), std::move(bel),
                    std::move(contexts), {}};
}

}  // namespace regretlab
