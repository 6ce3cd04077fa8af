#pragma once

// Consistency checkers: preference reversals in trees, the separability
// property of conditional regret, rectangularity of belief sets, the four
// choice axioms, and a cross-validation harness asserting that the axiom
// verdict and the separability verdict coincide instance by instance.
//
// Conventions shared by every checker here:
//   * conditioning always routes through belief-core update(), so the two
//     updating rules share one code path;
//   * pure minimax regret conditions by reducing to weighted regret over
//     point masses on the conditioning event;
//   * the inner conditional regrets appearing in separability clauses and in
//     companion-act constructions are normalized by the maximum weight of
//     the corresponding updated set, which makes the decomposition exact for
//     prior-by-prior updating as well (for likelihood updating the max
//     weight is 1, so nothing changes);
//   * a clause whose positivity guard fails is recorded as a skipped cell,
//     never as a failure.

#include <regretlab/belief.hpp>
#include <regretlab/check_report.hpp>
#include <regretlab/dyntree.hpp>
#include <regretlab/lp.hpp>
#include <regretlab/regret.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace regretlab {

struct ChoiceContext {
    DecisionRule rule = DecisionRule::mwer;
    WeightedBeliefSet beliefs = WeightedBeliefSet::empty_set();
    UpdateRule update = UpdateRule::prior_by_prior;
    MenuPolicy menu_policy;
};

inline std::string ev_label(Event e, const StateSpace& space) {
    if (e == space.full()) return "S";
    std::string out = "{";
    bool first = true;
    for (const std::string& n : ev_names(e, space)) {
        if (!first) out += ",";
        out += n;
        first = false;
    }
    return out + "}";
}

inline WeightedBeliefSet point_mass_set(const StateSpace& space) {
    std::vector<WeightedMeasure> deltas;
    for (std::size_t s = 0; s < space.size(); ++s) {
        std::vector<Rat> mass(space.size(), Rat(0));
        mass[s] = Rat(1);
        deltas.emplace_back(ProbMeasure(std::move(mass)), Rat(1));
    }
    return WeightedBeliefSet(std::move(deltas));
}

// Rule data conditioned on an event. Minimax becomes weighted regret over
// the surviving point masses; the single-measure rule becomes Bayesian
// conditioning (an annihilated measure degrades to the empty-belief
// convention, where choice returns the whole choice set).
inline RuleContext conditioned_context(const ChoiceContext& ctx, Event e,
                                       const StateSpace& space) {
    switch (ctx.rule) {
        case DecisionRule::minimax_regret:
            return RuleContext::with_mwer(
                update(point_mass_set(space), e, UpdateRule::prior_by_prior, space));
        case DecisionRule::mwer:
            return RuleContext::with_mwer(update(ctx.beliefs, e, ctx.update, space));
        case DecisionRule::mer: {
            WeightedBeliefSet up = update(ctx.beliefs, e, ctx.update, space);
            std::vector<ProbMeasure> measures;
            for (const auto& wm : up.members()) measures.push_back(wm.measure);
            return RuleContext::with_mer(std::move(measures));
        }
        case DecisionRule::expected_regret_single: {
            WeightedBeliefSet up = update(ctx.beliefs, e, ctx.update, space);
            if (up.empty()) return RuleContext::with_mwer(WeightedBeliefSet::empty_set());
            return RuleContext::with_expected(up.members().front().measure);
        }
    }
    throw std::logic_error("unreachable rule kind");
}

inline std::vector<Act> choice_at(const DecisionTree& t, const ChoiceContext& ctx,
                                  std::size_t node) {
    Event e = t.possible_states(node);
    RuleContext rc = conditioned_context(ctx, e, t.space());
    Menu eval = t.menu_at(node, ctx.menu_policy);
    Menu feasible = t.menu_of_plans(t.feasible_plans(node));
    return choice(rc, eval, feasible);
}

// Plan labels contain commas, so chosen sets join with a bar instead.
inline std::string acts_label(const std::vector<Act>& acts) {
    std::string out = "{";
    for (std::size_t i = 0; i < acts.size(); ++i) {
        if (i > 0) out += "|";
        out += acts[i].label;
    }
    return out + "}";
}

// For every pair of histories h, h' with h' extending h: any act chosen at h
// that is still feasible at h' must be chosen at h' as well.
inline CheckReport check_no_reversal(const DecisionTree& t, const ChoiceContext& ctx) {
    CheckReport report("no-reversal");
    std::vector<std::size_t> decisions = t.decision_nodes();
    std::map<std::size_t, std::vector<Act>> chosen;
    for (std::size_t h : decisions) chosen[h] = choice_at(t, ctx, h);
    report.bump("histories", static_cast<long long>(decisions.size()));

    for (std::size_t h : decisions) {
        for (std::size_t hp : decisions) {
            if (hp == h) continue;
            // hp must be a strict descendant of h.
            bool extends = false;
            for (std::size_t cur = t.nodes()[hp].parent; cur != no_node;
                 cur = t.nodes()[cur].parent)
                extends = extends || cur == h;
            if (!extends) continue;
            report.bump("history_pairs");
            Menu feasible_here = t.menu_of_plans(t.feasible_plans(hp));
            for (const Act& f : chosen[h]) {
                if (!feasible_here.contains_payoff(f)) continue;
                report.bump("acts_checked");
                if (!choice_contains(chosen[hp], f)) {
                    report.fail({"reversal",
                                 {{"history", t.history_label(h)},
                                  {"extension", t.history_label(hp)},
                                  {"act", f.label},
                                  {"chosen_at_history", acts_label(chosen[h])},
                                  {"chosen_at_extension", acts_label(chosen[hp])}}});
                }
            }
        }
    }
    return report;
}

namespace detail {

struct SepCell {
    bool applicable = false;
    bool clause_i = true;
    bool clause_ii = true;
    Rat lhs, rhs, bound;
};

inline Rat max_weight(const WeightedBeliefSet& bel) {
    Rat top(0);
    for (const auto& wm : bel.members())
        if (wm.weight > top) top = wm.weight;
    return top;
}

inline SepCell sep_cell(const WeightedBeliefSet& bel, const Menu& m, const Act& f, Event e,
                        Event fvt, UpdateRule rule, const StateSpace& space) {
    SepCell out;
    Event ef = e & fvt;
    Event ecf = fvt & ~e;
    if (upper_weighted_prob(bel, ef) == 0 || upper_weighted_prob(bel, ecf) == 0) return out;
    out.applicable = true;

    WeightedBeliefSet bF = update(bel, fvt, rule, space);
    WeightedBeliefSet bEF = update(bel, ef, rule, space);
    WeightedBeliefSet bEcF = update(bel, ecf, rule, space);
    out.lhs = mwer(m, f, bF);
    Rat rEF = mwer(m, f, bEF) / max_weight(bEF);
    Rat rEcF = mwer(m, f, bEcF) / max_weight(bEcF);

    out.rhs = Rat(0);
    bool first = true;
    for (const auto& wm : bF.members()) {
        Rat v = wm.weight * (wm.measure.prob(ef) * rEF + wm.measure.prob(ecf) * rEcF);
        if (first || v > out.rhs) out.rhs = v;
        first = false;
    }
    out.clause_i = out.lhs == out.rhs;

    if (rEF != 0) {
        out.bound = Rat(0);
        first = true;
        for (const auto& wm : bF.members()) {
            Rat v = wm.weight * wm.measure.prob(ecf) * rEcF;
            if (first || v > out.bound) out.bound = v;
            first = false;
        }
        out.clause_ii = out.lhs > out.bound;
    }
    return out;
}

}  // namespace detail

// Both separability clauses at one (e, fvt) cell. Cells whose positivity
// guard fails pass vacuously and are recorded as skipped.
inline CheckReport check_sep(const WeightedBeliefSet& bel, const Menu& m, const Act& f, Event e,
                             Event fvt, UpdateRule rule, const StateSpace& space) {
    CheckReport report("sep");
    detail::SepCell cell = detail::sep_cell(bel, m, f, e, fvt, rule, space);
    report.bump("cells");
    if (!cell.applicable) {
        report.bump("side_condition_unmet");
        report.note("side-condition unmet");
        return report;
    }
    if (!cell.clause_i)
        report.fail({"sep-decomposition",
                     {{"event", ev_label(e, space)},
                      {"given", ev_label(fvt, space)},
                      {"act", f.label},
                      {"lhs", to_string(cell.lhs)},
                      {"rhs", to_string(cell.rhs)}}});
    if (!cell.clause_ii)
        report.fail({"sep-strictness",
                     {{"event", ev_label(e, space)},
                      {"given", ev_label(fvt, space)},
                      {"act", f.label},
                      {"lhs", to_string(cell.lhs)},
                      {"bound", to_string(cell.bound)}}});
    return report;
}

// Separability swept over every ordered event pair of an algebra and every
// act of the menu.
inline CheckReport check_sep_all(const WeightedBeliefSet& bel, const Menu& m,
                                 const std::vector<Event>& algebra, UpdateRule rule,
                                 const StateSpace& space) {
    CheckReport report("sep");
    for (Event e : algebra)
        for (Event fvt : algebra)
            for (const Act& f : m.acts()) {
                CheckReport one = check_sep(bel, m, f, e, fvt, rule, space);
                report.bump("cells");
                if (!one.notes.empty()) report.bump("side_condition_unmet");
                if (!one.pass) {
                    for (Witness& w : one.witnesses) report.fail(std::move(w));
                    return report;
                }
            }
    return report;
}

namespace detail {

// Weight attached to pr|e inside bel updated on e. Assumes pr(e) > 0 and,
// for likelihood updating, a positive set-wide optimum.
inline Rat chi_weight(const WeightedBeliefSet& bel, const WeightedMeasure& wm, Event e,
                      UpdateRule rule) {
    if (rule == UpdateRule::prior_by_prior) return wm.weight;
    Rat denom = upper_weighted_prob(bel, e);
    ProbMeasure mine = wm.measure.conditional(e);
    Rat best(0);
    for (const auto& other : bel.members()) {
        if (other.measure.prob(e) <= 0) continue;
        if (!(other.measure.conditional(e) == mine)) continue;
        Rat v = other.weight * other.measure.prob(e);
        if (v > best) best = v;
    }
    return best / denom;
}

inline std::vector<std::vector<Rat>> generator_vectors(const WeightedBeliefSet& bel,
                                                       std::size_t dim) {
    std::vector<std::vector<Rat>> out;
    for (const SubProbability& g : c_generators(bel)) out.push_back(g.mass);
    if (out.empty()) out.push_back(std::vector<Rat>(dim, Rat(0)));
    return out;
}

inline std::string vec_label(const std::vector<Rat>& v) {
    std::string out = "(";
    for (std::size_t s = 0; s < v.size(); ++s) {
        if (s) out += ",";
        out += to_string(v[s]);
    }
    return out + ")";
}

}  // namespace detail

// Rectangularity of a belief set over an event algebra, all three parts.
// Part (a) checks membership of the pasted subprobabilities, part (b) the
// limit form of the lower-bound clause, part (c) that pasted mixtures can
// match every generator of the updated set (seeded falsifier first, exact
// hull query second). Every cell is visited even after a failure, so the
// report shows which parts fail where; at most one witness per part per
// cell.
inline CheckReport check_rectangularity(const WeightedBeliefSet& bel,
                                        const std::vector<Event>& algebra, UpdateRule rule,
                                        const StateSpace& space, unsigned falsifier_seed = 2026) {
    CheckReport report("rectangularity");
    std::mt19937 rng(falsifier_seed);
    const std::size_t n = space.size();
    for (Event e : algebra) {
        for (Event fvt : algebra) {
            Event ef = e & fvt;
            Event ecf = fvt & ~e;
            report.bump("cells");

            WeightedBeliefSet bF = update(bel, fvt, rule, space);

            // Part (a): every pasted triple lands inside the updated C set.
            bool guards_l = rule == UpdateRule::prior_by_prior ||
                            (upper_weighted_prob(bel, ef) > 0 &&
                             upper_weighted_prob(bel, ecf) > 0 &&
                             upper_weighted_prob(bel, fvt) > 0);
            if (!guards_l) report.bump("part_a_skipped");
            bool a_failed = false;
            for (const auto& m1 : bel.members()) {
                if (!guards_l || a_failed) break;
                if (m1.measure.prob(ef) <= 0) continue;
                Rat a1 = detail::chi_weight(bel, m1, ef, rule);
                ProbMeasure c1 = m1.measure.conditional(ef);
                for (const auto& m2 : bel.members()) {
                    if (a_failed) break;
                    if (m2.measure.prob(ecf) <= 0) continue;
                    Rat a2 = detail::chi_weight(bel, m2, ecf, rule);
                    ProbMeasure c2 = m2.measure.conditional(ecf);
                    for (const auto& m3 : bel.members()) {
                        std::vector<Rat> mix(n, Rat(0));
                        Rat pa = m3.measure.prob(ef);
                        Rat pb = m3.measure.prob(ecf);
                        for (std::size_t s = 0; s < n; ++s)
                            mix[s] = m3.weight * (pa * a1 * c1.mass()[s] + pb * a2 * c2.mass()[s]);
                        report.bump("part_a_triples");
                        if (!in_c(bF, SubProbability(mix))) {
                            report.fail({"rect-a",
                                         {{"event", ev_label(e, space)},
                                          {"given", ev_label(fvt, space)},
                                          {"mixture", detail::vec_label(mix)}}});
                            a_failed = true;
                            break;
                        }
                    }
                }
            }

            // Part (b): some member of the updated set keeps enough mass on
            // the complement cell in the limit.
            if (upper_weighted_prob(bel, ef) > 0) {
                Rat cap(0);
                for (const auto& wm : bel.members()) {
                    Rat v = wm.weight * wm.measure.prob(ecf);
                    if (v > cap) cap = v;
                }
                bool ok = false;
                for (const auto& wm : bF.members()) {
                    Rat lhs = wm.weight * wm.measure.prob(ecf);
                    if (lhs > cap || (lhs == cap && wm.weight * wm.measure.prob(ef) > 0)) ok = true;
                }
                if (!ok)
                    report.fail({"rect-b",
                                 {{"event", ev_label(e, space)},
                                  {"given", ev_label(fvt, space)},
                                  {"bound", to_string(cap)}}});
            } else {
                report.bump("part_b_skipped");
            }

            // Part (c): pasted mixtures majorize the updated generators for
            // every nonnegative direction.
            if (!bF.empty()) {
                auto g1 = detail::generator_vectors(update(bel, ef, rule, space), n);
                auto g2 = detail::generator_vectors(update(bel, ecf, rule, space), n);
                std::vector<std::vector<Rat>> mixed;
                for (const auto& wm : bF.members()) {
                    Rat pa = wm.measure.prob(ef);
                    Rat pb = wm.measure.prob(ecf);
                    for (const auto& x : g1)
                        for (const auto& y : g2) {
                            std::vector<Rat> q(n);
                            for (std::size_t s = 0; s < n; ++s)
                                q[s] = wm.weight * (pa * x[s] + pb * y[s]);
                            mixed.push_back(std::move(q));
                        }
                }
                auto dot = [&](const std::vector<Rat>& v, const std::vector<Rat>& th) {
                    Rat acc(0);
                    for (std::size_t s = 0; s < n; ++s) acc += v[s] * th[s];
                    return acc;
                };
                auto fgens = detail::generator_vectors(bF, n);
                bool c_failed = false;
                for (int probe = 0; probe < 8 && !c_failed; ++probe) {
                    std::vector<Rat> theta(n);
                    for (Rat& x : theta) x = rat(static_cast<long>(rng() % 21));
                    Rat lhs(0), rhs(0);
                    for (const auto& q : mixed) {
                        Rat v = dot(q, theta);
                        if (v > lhs) lhs = v;
                    }
                    for (const auto& g : fgens) {
                        Rat v = dot(g, theta);
                        if (v > rhs) rhs = v;
                    }
                    if (lhs < rhs) {
                        report.fail({"rect-c",
                                     {{"event", ev_label(e, space)},
                                      {"given", ev_label(fvt, space)},
                                      {"direction", detail::vec_label(theta)}}});
                        c_failed = true;
                    }
                }
                for (const auto& g : fgens) {
                    if (c_failed) break;
                    report.bump("part_c_lp_calls");
                    if (!dominated_in_hull(mixed, g)) {
                        report.fail({"rect-c",
                                     {{"event", ev_label(e, space)},
                                      {"given", ev_label(fvt, space)},
                                      {"generator", detail::vec_label(g)}}});
                        c_failed = true;
                    }
                }
            }
        }
    }
    return report;
}

namespace detail {

// Nonempty sub-menus of an n-act menu as index lists. All of them when
// 2^n - 1 fits the cap, otherwise `cap` deterministic samples (the full
// menu always included). Sets *sampled* accordingly.
inline std::vector<std::vector<std::size_t>> menu_subsets(std::size_t n, std::size_t cap,
                                                          bool* sampled) {
    std::vector<std::vector<std::size_t>> out;
    *sampled = false;
    if (n < 8 * sizeof(unsigned long long) &&
        ((1ull << n) - 1) <= static_cast<unsigned long long>(cap)) {
        for (unsigned long long mask = 1; mask < (1ull << n); ++mask) {
            std::vector<std::size_t> pick;
            for (std::size_t i = 0; i < n; ++i)
                if ((mask >> i) & 1) pick.push_back(i);
            out.push_back(std::move(pick));
        }
        return out;
    }
    *sampled = true;
    std::mt19937 rng(0x5eedu);
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    out.push_back(all);
    while (out.size() < cap) {
        std::vector<std::size_t> pick;
        for (std::size_t i = 0; i < n; ++i)
            if (rng() & 1) pick.push_back(i);
        if (!pick.empty()) out.push_back(std::move(pick));
    }
    return out;
}

struct ValueTable {
    // values[k][i]: rule value of menu act i under the k-th event's update.
    std::vector<std::vector<Rat>> values;
    std::map<Event, std::size_t> index;
};

inline ValueTable value_table(const StateSpace& space, const WeightedBeliefSet& bel,
                              DecisionRule rule, UpdateRule upd, const Menu& menu,
                              const std::vector<Event>& events) {
    ValueTable t;
    ChoiceContext ctx;
    ctx.rule = rule;
    ctx.beliefs = bel;
    ctx.update = upd;
    for (Event e : events) {
        if (t.index.count(e)) continue;
        RuleContext rc = conditioned_context(ctx, e, space);
        std::vector<Rat> row;
        for (const Act& f : menu.acts()) row.push_back(rule_value(rc, menu, f));
        t.index[e] = t.values.size();
        t.values.push_back(std::move(row));
    }
    return t;
}

// Argmin membership flags over one sub-menu given a value row. An all-zero
// row (empty beliefs) marks everything chosen, matching choice().
inline std::vector<char> chosen_flags(const std::vector<Rat>& row,
                                      const std::vector<std::size_t>& pick) {
    Rat best = row[pick.front()];
    for (std::size_t i : pick)
        if (row[i] < best) best = row[i];
    std::vector<char> out(row.size(), 0);
    for (std::size_t i : pick)
        if (row[i] == best) out[i] = 1;
    return out;
}

}  // namespace detail

// The four choice axioms on a static problem: a belief set, an evaluation
// menu, and an event algebra. Dynamic callers derive these from a tree via
// check_axioms(t, ctx).
inline CheckReport check_axioms_static(const StateSpace& space, const WeightedBeliefSet& bel,
                                       DecisionRule rule, UpdateRule upd, const Menu& menu,
                                       const std::vector<Event>& algebra) {
    CheckReport report("axioms");
    const std::size_t n = menu.acts().size();
    bool sampled = false;
    auto subsets = detail::menu_subsets(n, caps().menu_subsets, &sampled);
    if (sampled) {
        report.bump("subset_sampling");
        report.note("menu-subset enumeration capped; deterministic sampling in effect");
    }
    report.bump("subsets", static_cast<long long>(subsets.size()));

    std::vector<Event> cells;
    for (Event e : algebra)
        for (Event fvt : algebra) {
            cells.push_back(e & fvt);
            cells.push_back(fvt & ~e);
        }
    for (Event e : algebra) cells.push_back(e);
    detail::ValueTable table = detail::value_table(space, bel, rule, upd, menu, cells);
    auto row_of = [&](Event e) -> const std::vector<Rat>& {
        return table.values[table.index.at(e)];
    };
    auto pick_label = [&](const std::vector<std::size_t>& pick) {
        std::string out = "{";
        for (std::size_t k = 0; k < pick.size(); ++k) {
            if (k) out += ",";
            out += menu.acts()[pick[k]].label;
        }
        return out + "}";
    };

    // Menu-dependent dynamic consistency, both clauses, at every ordered
    // event pair.
    for (Event e : algebra) {
        for (Event fvt : algebra) {
            const auto& row_ef = row_of(e & fvt);
            const auto& row_ecf = row_of(fvt & ~e);
            const auto& row_f = row_of(fvt);
            for (const auto& pick : subsets) {
                report.bump("dcm_cases");
                auto ch_ef = detail::chosen_flags(row_ef, pick);
                auto ch_ecf = detail::chosen_flags(row_ecf, pick);
                auto ch_f = detail::chosen_flags(row_f, pick);
                std::size_t holder = n;
                for (std::size_t i : pick)
                    if (holder == n && ch_ef[i] && ch_ecf[i]) holder = i;
                if (holder == n) continue;
                for (std::size_t g : pick)
                    if (!ch_ef[g] && ch_f[g]) {
                        report.fail({"dcm-clause2",
                                     {{"event", ev_label(e, space)},
                                      {"given", ev_label(fvt, space)},
                                      {"menu", pick_label(pick)},
                                      {"act", menu.acts()[g].label},
                                      {"retained", menu.acts()[holder].label}}});
                        return report;
                    }
                for (std::size_t i : pick)
                    if (ch_ef[i] && ch_ecf[i] && !ch_f[i]) {
                        report.fail({"dcm-clause1",
                                     {{"event", ev_label(e, space)},
                                      {"given", ev_label(fvt, space)},
                                      {"menu", pick_label(pick)},
                                      {"act", menu.acts()[i].label}}});
                        return report;
                    }
            }
        }
    }

    // Conditional payoff equivalence: acts with identical payoffs on the
    // conditioning event are chosen or rejected together.
    for (Event e : algebra) {
        const auto& row = row_of(e);
        std::vector<std::pair<std::size_t, std::size_t>> agree;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                bool same = true;
                for (std::size_t s : ev_members(e))
                    if (menu.acts()[i].payoff[s] != menu.acts()[j].payoff[s]) same = false;
                if (same) agree.emplace_back(i, j);
            }
        if (agree.empty()) continue;
        for (const auto& pick : subsets) {
            auto ch = detail::chosen_flags(row, pick);
            std::vector<char> inside(n, 0);
            for (std::size_t i : pick) inside[i] = 1;
            for (auto [i, j] : agree) {
                if (!inside[i] || !inside[j]) continue;
                report.bump("cp_cases");
                if (ch[i] != ch[j]) {
                    report.fail({"conditional-preference",
                                 {{"event", ev_label(e, space)},
                                  {"menu", pick_label(pick)},
                                  {"act", menu.acts()[i].label},
                                  {"other", menu.acts()[j].label}}});
                    return report;
                }
            }
        }
    }

    // Nonemptiness and containment of the choice set, and Sen's alpha
    // against the full menu.
    std::vector<std::size_t> full_pick(n);
    for (std::size_t i = 0; i < n; ++i) full_pick[i] = i;
    for (Event e : algebra) {
        const auto& row = row_of(e);
        auto ch_full = detail::chosen_flags(row, full_pick);
        for (const auto& pick : subsets) {
            auto ch = detail::chosen_flags(row, pick);
            bool any = false;
            std::vector<char> inside(n, 0);
            for (std::size_t i : pick) inside[i] = 1;
            for (std::size_t i = 0; i < n; ++i) {
                any = any || ch[i];
                if (ch[i] && !inside[i]) {
                    report.fail({"containment",
                                 {{"event", ev_label(e, space)}, {"menu", pick_label(pick)}}});
                    return report;
                }
            }
            if (!any) {
                report.fail({"nonemptiness",
                             {{"event", ev_label(e, space)}, {"menu", pick_label(pick)}}});
                return report;
            }
            report.bump("sen_cases");
            for (std::size_t i : pick)
                if (ch_full[i] && !ch[i]) {
                    report.fail({"sen-alpha",
                                 {{"event", ev_label(e, space)},
                                  {"menu", pick_label(pick)},
                                  {"act", menu.acts()[i].label}}});
                    return report;
                }
        }
    }
    return report;
}

// Algebra of a tree: generated by the possible-state events of its decision
// histories.
inline std::vector<Event> tree_algebra(const DecisionTree& t, std::size_t cap = caps().sigma_events) {
    std::vector<Event> basis;
    for (std::size_t h : t.decision_nodes()) basis.push_back(t.possible_states(h));
    return sigma_algebra(t.space(), basis, cap);
}

inline CheckReport check_axioms(const DecisionTree& t, const ChoiceContext& ctx) {
    Menu menu = t.menu_at(t.root(0), ctx.menu_policy);
    return check_axioms_static(t.space(), ctx.beliefs, ctx.rule, ctx.update, menu,
                               tree_algebra(t));
}

// A static problem bundle for the equivalence harness.
struct StaticProblem {
    std::string name;
    StateSpace space;
    WeightedBeliefSet beliefs;
    Menu menu;
    std::vector<Event> algebra;
};

namespace detail {

// Companion acts for one (act, e, fvt) cell, built from the menu's per-state
// best payoffs lowered by the normalized conditional regrets. Null when the
// cell's positivity guards fail.
struct Companions {
    Act af_prime;
    Act ag_prime;
};

inline std::optional<Companions> companion_acts(const Menu& menu, const Act& f, Event e,
                                                Event fvt, const WeightedBeliefSet& bel,
                                                UpdateRule rule, const StateSpace& space) {
    Event ef = e & fvt;
    Event ecf = fvt & ~e;
    if (upper_weighted_prob(bel, ef) == 0 || upper_weighted_prob(bel, ecf) == 0)
        return std::nullopt;
    WeightedBeliefSet bEF = update(bel, ef, rule, space);
    WeightedBeliefSet bEcF = update(bel, ecf, rule, space);
    Rat rEF = mwer(menu, f, bEF) / max_weight(bEF);
    Rat rEcF = mwer(menu, f, bEcF) / max_weight(bEcF);
    std::vector<Rat> af, ag;
    for (std::size_t s = 0; s < space.size(); ++s) {
        Rat best = menu.best_in_state(s);
        if (ev_contains(ef, s)) {
            af.push_back(best - rEF);
            ag.push_back(best);
        } else if (ev_contains(ecf, s)) {
            af.push_back(best - rEcF);
            ag.push_back(best - rEcF);
        } else {
            af.push_back(best);
            ag.push_back(best);
        }
    }
    return Companions{Act(std::move(af), f.label + "+companion-f"),
                      Act(std::move(ag), f.label + "+companion-g")};
}

// First dynamic-consistency violation on a two-act choice pair evaluated
// against menu_plus at the ordered cell (e, fvt), or nullopt.
inline std::optional<Witness> dcm_violation_on_pair(const Menu& menu_plus,
                                                    const std::vector<Act>& pair, Event e,
                                                    Event fvt, const WeightedBeliefSet& bel,
                                                    UpdateRule rule, const StateSpace& space) {
    Event ef = e & fvt;
    Event ecf = fvt & ~e;
    ChoiceContext ctx;
    ctx.beliefs = bel;
    ctx.update = rule;
    Menu pair_menu(pair);
    auto ch_ef = choice(conditioned_context(ctx, ef, space), menu_plus, pair_menu);
    auto ch_ecf = choice(conditioned_context(ctx, ecf, space), menu_plus, pair_menu);
    auto ch_f = choice(conditioned_context(ctx, fvt, space), menu_plus, pair_menu);
    for (const Act& f : pair_menu.acts()) {
        if (!choice_contains(ch_ef, f) || !choice_contains(ch_ecf, f)) continue;
        if (!choice_contains(ch_f, f))
            return Witness{"dcm-clause1",
                           {{"event", ev_label(e, space)},
                            {"given", ev_label(fvt, space)},
                            {"act", f.label}}};
        for (const Act& g : pair_menu.acts())
            if (!choice_contains(ch_ef, g) && choice_contains(ch_f, g))
                return Witness{"dcm-clause2",
                               {{"event", ev_label(e, space)},
                                {"given", ev_label(fvt, space)},
                                {"act", f.label},
                                {"other", g.label}}};
    }
    return std::nullopt;
}

// Axiom verdict quantified over the problem family generated by the initial
// menu: the axioms on the problem's own menu plus, for every menu act and
// guarded cell, the two derived companion problems.
inline std::pair<bool, std::vector<Witness>> axiom_verdict(const StaticProblem& p,
                                                           UpdateRule rule) {
    CheckReport own = check_axioms_static(p.space, p.beliefs, DecisionRule::mwer, rule, p.menu,
                                          p.algebra);
    if (!own.pass) return {false, own.witnesses};
    for (Event e : p.algebra)
        for (Event fvt : p.algebra)
            for (const Act& f : p.menu.acts()) {
                auto comp = companion_acts(p.menu, f, e, fvt, p.beliefs, rule, p.space);
                if (!comp) continue;
                for (const Act* probe : {&comp->af_prime, &comp->ag_prime}) {
                    if (probe->same_payoff(f)) continue;
                    std::vector<Act> plus = p.menu.acts();
                    plus.push_back(*probe);
                    auto v = dcm_violation_on_pair(Menu(plus), {*probe, f}, e, fvt, p.beliefs,
                                                   rule, p.space);
                    if (v) {
                        v->fields["companion_of"] = f.label;
                        return {false, {*v}};
                    }
                }
            }
    return {true, {}};
}

}  // namespace detail

// Instance-by-instance equivalence of the axiom verdict and the
// separability verdict. Any divergence is a bug witness, whichever side
// fails.
inline CheckReport cross_validate_thm2(const std::vector<StaticProblem>& problems,
                                       UpdateRule rule) {
    CheckReport report("thm2-cross-validation");
    for (const StaticProblem& p : problems) {
        report.bump("instances");
        CheckReport sep = check_sep_all(p.beliefs, p.menu, p.algebra, rule, p.space);
        auto [ax_ok, ax_w] = detail::axiom_verdict(p, rule);
        if (!sep.pass) report.bump("sep_failures");
        if (sep.pass != ax_ok) {
            Witness w{"verdict-divergence",
                      {{"instance", p.name},
                       {"sep", sep.pass ? "pass" : "fail"},
                       {"axioms", ax_ok ? "pass" : "fail"}}};
            if (!sep.witnesses.empty()) w.fields["sep_witness"] = sep.witnesses[0].what;
            if (!ax_w.empty()) w.fields["axiom_witness"] = ax_w[0].what;
            report.fail(std::move(w));
        } else {
            report.bump("agreements");
        }
    }
    return report;
}

}  // namespace regretlab
