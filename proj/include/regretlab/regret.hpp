#pragma once

// Regret measures and set-valued choice. An act is a utility vector over
// states; menus deduplicate acts by payoff vector. Regret of f in state s is
// the shortfall against the best menu payoff in s; the rules aggregate that
// shortfall worst-case over states (minimax), worst-case over measures of
// its expectation (MER), or worst-case over weighted measures (MWER). An act
// being evaluated need not belong to the menu it is evaluated against, so
// state regret can be negative for menu-dominating outsiders.
//
// choice() separates the evaluation menu (what the decision maker compares
// against, including forgone opportunities) from the choice set (what is
// still available) and returns the full argmin set.

#include <regretlab/belief.hpp>
#include <regretlab/rational.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace regretlab {

struct Act {
    std::vector<Rat> payoff;
    std::string label;

    Act(std::vector<Rat> p, std::string name = "") : payoff(std::move(p)), label(std::move(name)) {
        if (payoff.empty()) throw std::invalid_argument("act needs at least one state");
    }

    bool same_payoff(const Act& o) const { return payoff == o.payoff; }
};

class Menu {
  public:
    explicit Menu(std::vector<Act> acts) {
        for (Act& a : acts) {
            bool dup = false;
            for (const Act& kept : acts_)
                if (kept.same_payoff(a)) dup = true;
            if (!dup) acts_.push_back(std::move(a));
        }
        if (acts_.empty()) throw std::invalid_argument("menu must be nonempty");
        for (const Act& a : acts_)
            if (a.payoff.size() != acts_.front().payoff.size())
                throw std::invalid_argument("menu acts disagree on dimension");
    }

    const std::vector<Act>& acts() const { return acts_; }
    std::size_t dim() const { return acts_.front().payoff.size(); }

    // Best achievable payoff in state s across the menu.
    Rat best_in_state(std::size_t s) const {
        Rat best = acts_.front().payoff.at(s);
        for (const Act& a : acts_)
            if (a.payoff[s] > best) best = a.payoff[s];
        return best;
    }

    bool contains_payoff(const Act& f) const {
        for (const Act& a : acts_)
            if (a.same_payoff(f)) return true;
        return false;
    }

  private:
    std::vector<Act> acts_;
};

inline Rat state_regret(const Menu& m, const Act& f, std::size_t s) {
    if (f.payoff.size() != m.dim()) throw std::invalid_argument("act dimension mismatch");
    return m.best_in_state(s) - f.payoff.at(s);
}

inline Rat max_regret(const Menu& m, const Act& f) {
    Rat worst = state_regret(m, f, 0);
    for (std::size_t s = 1; s < m.dim(); ++s) {
        Rat r = state_regret(m, f, s);
        if (r > worst) worst = r;
    }
    return worst;
}

inline Rat expected_regret(const Menu& m, const Act& f, const ProbMeasure& pr) {
    if (pr.dim() != m.dim()) throw std::invalid_argument("measure dimension mismatch");
    Rat total(0);
    for (std::size_t s = 0; s < m.dim(); ++s) total += pr.mass()[s] * state_regret(m, f, s);
    return total;
}

// Maximum expected regret over a plain set of measures. An empty set yields
// 0 and raises the caller-visible warning flag.
inline Rat mer(const Menu& m, const Act& f, const std::vector<ProbMeasure>& measures,
               bool* empty_warning = nullptr) {
    if (empty_warning != nullptr) *empty_warning = measures.empty();
    if (measures.empty()) return Rat(0);
    Rat worst = expected_regret(m, f, measures.front());
    for (const ProbMeasure& pr : measures) {
        Rat r = expected_regret(m, f, pr);
        if (r > worst) worst = r;
    }
    return worst;
}

// Maximum weighted expected regret; 0 on an empty belief set.
inline Rat mwer(const Menu& m, const Act& f, const WeightedBeliefSet& bel) {
    Rat worst(0);
    bool first = true;
    for (const auto& wm : bel.members()) {
        Rat r = wm.weight * expected_regret(m, f, wm.measure);
        if (first || r > worst) worst = r;
        first = false;
    }
    return worst;
}

enum class DecisionRule { minimax_regret, mer, mwer, expected_regret_single };

// Rule plus whatever belief data the rule consumes.
struct RuleContext {
    DecisionRule rule = DecisionRule::minimax_regret;
    WeightedBeliefSet beliefs = WeightedBeliefSet::empty_set();  // mwer
    std::vector<ProbMeasure> measures;                           // mer
    std::optional<ProbMeasure> measure;                          // expected_regret_single

    static RuleContext minimax() { return RuleContext{}; }
    static RuleContext with_mwer(WeightedBeliefSet bel) {
        RuleContext c;
        c.rule = DecisionRule::mwer;
        c.beliefs = std::move(bel);
        return c;
    }
    static RuleContext with_mer(std::vector<ProbMeasure> ms) {
        RuleContext c;
        c.rule = DecisionRule::mer;
        c.measures = std::move(ms);
        return c;
    }
    static RuleContext with_expected(ProbMeasure pr) {
        RuleContext c;
        c.rule = DecisionRule::expected_regret_single;
        c.measure = std::move(pr);
        return c;
    }
};

inline Rat rule_value(const RuleContext& ctx, const Menu& eval_menu, const Act& f) {
    switch (ctx.rule) {
        case DecisionRule::minimax_regret:
            return max_regret(eval_menu, f);
        case DecisionRule::mer:
            return mer(eval_menu, f, ctx.measures);
        case DecisionRule::mwer:
            return mwer(eval_menu, f, ctx.beliefs);
        case DecisionRule::expected_regret_single:
            if (!ctx.measure) throw std::invalid_argument("expected-regret rule needs a measure");
            return expected_regret(eval_menu, f, *ctx.measure);
    }
    throw std::logic_error("unreachable rule kind");
}

// Full argmin subset of choice_set, values computed against eval_menu. With
// an empty belief set every MWER value is 0, so the whole choice set comes
// back, matching the documented empty-update convention.
inline std::vector<Act> choice(const RuleContext& ctx, const Menu& eval_menu,
                               const Menu& choice_set) {
    std::optional<Rat> best;
    std::vector<Rat> values;
    for (const Act& f : choice_set.acts()) {
        Rat v = rule_value(ctx, eval_menu, f);
        values.push_back(v);
        if (!best || v < *best) best = v;
    }
    std::vector<Act> out;
    for (std::size_t i = 0; i < choice_set.acts().size(); ++i)
        if (values[i] == *best) out.push_back(choice_set.acts()[i]);
    return out;
}

inline bool choice_contains(const std::vector<Act>& chosen, const Act& f) {
    for (const Act& a : chosen)
        if (a.same_payoff(f)) return true;
    return false;
}

}  // namespace regretlab
