#pragma once

// Extensive-form single-player decision trees. Nature picks a state, then
// the decision maker moves through information sets until a utility-bearing
// leaf. Each state owns a rooted tree of nodes; a history is a node (state
// plus the unique action path reaching it); information sets group decision
// nodes the DM cannot tell apart. Plans assign one action to every
// information set, convert to acts by path-following, and can be spliced:
// follow one plan inside an information set and its refinements, another
// elsewhere.
//
// Trees are built through DecisionTreeBuilder and immutable afterwards.
// validate() reports invariant violations (action-set mismatches, unequal
// action sequences inside an information set, growth of the possible-state
// set along a path, coverage gaps) instead of throwing.

#include <regretlab/caps.hpp>
#include <regretlab/check_report.hpp>
#include <regretlab/rational.hpp>
#include <regretlab/regret.hpp>
#include <regretlab/state_space.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace regretlab {

inline constexpr std::size_t no_node = static_cast<std::size_t>(-1);

struct TreeNode {
    std::size_t state = 0;
    std::size_t parent = no_node;
    std::string action;  // label on the edge from the parent; empty at roots
    std::optional<Rat> utility;
    std::vector<std::size_t> children;
};

struct Plan {
    std::vector<std::size_t> pick;  // action index per information set

    bool operator==(const Plan& o) const { return pick == o.pick; }
};

class DecisionTree;

struct MenuPolicy {
    enum class Kind { constant_initial, feasible_only, explicit_menu };
    Kind kind = Kind::constant_initial;
    std::map<std::size_t, Menu> menus;  // explicit_menu: history node -> menu

    static MenuPolicy constant_initial() { return MenuPolicy{}; }
    static MenuPolicy feasible_only() { return MenuPolicy{Kind::feasible_only, {}}; }
};

class DecisionTreeBuilder {
  public:
    explicit DecisionTreeBuilder(StateSpace space) : space_(std::move(space)) {
        roots_.resize(space_.size(), no_node);
        for (std::size_t s = 0; s < space_.size(); ++s) {
            roots_[s] = nodes_.size();
            TreeNode n;
            n.state = s;
            nodes_.push_back(std::move(n));
        }
    }

    std::size_t root(std::size_t state) const { return roots_.at(state); }

    std::size_t child(std::size_t parent, const std::string& action) {
        return attach(parent, action, std::nullopt);
    }

    std::size_t leaf(std::size_t parent, const std::string& action, Rat utility) {
        return attach(parent, action, std::move(utility));
    }

    void info_set(const std::string& name, std::vector<std::size_t> members) {
        info_names_.push_back(name);
        info_sets_.push_back(std::move(members));
    }

    void alias(const std::string& name, std::size_t node) { aliases_[name] = node; }

    DecisionTree build();

  private:
    std::size_t attach(std::size_t parent, const std::string& action, std::optional<Rat> util) {
        TreeNode& p = nodes_.at(parent);
        if (p.utility) throw std::invalid_argument("cannot attach a child to a leaf");
        if (action.empty()) throw std::invalid_argument("action labels must be nonempty");
        for (std::size_t c : p.children)
            if (nodes_[c].action == action)
                throw std::invalid_argument("duplicate action label at one node: " + action);
        std::size_t id = nodes_.size();
        TreeNode n;
        n.state = p.state;
        n.parent = parent;
        n.action = action;
        n.utility = std::move(util);
        nodes_.push_back(std::move(n));
        nodes_[parent].children.push_back(id);
        return id;
    }

    friend class DecisionTree;
    StateSpace space_;
    std::vector<TreeNode> nodes_;
    std::vector<std::size_t> roots_;
    std::vector<std::vector<std::size_t>> info_sets_;
    std::vector<std::string> info_names_;
    std::map<std::string, std::size_t> aliases_;
};

class DecisionTree {
  public:
    explicit DecisionTree(DecisionTreeBuilder&& b)
        : space_(std::move(b.space_)),
          nodes_(std::move(b.nodes_)),
          roots_(std::move(b.roots_)),
          info_sets_(std::move(b.info_sets_)),
          info_names_(std::move(b.info_names_)),
          aliases_(std::move(b.aliases_)) {
        info_of_.assign(nodes_.size(), no_node);
        for (std::size_t i = 0; i < info_sets_.size(); ++i) {
            // Drop exact duplicates inside one set; keep first occurrence.
            std::vector<std::size_t> dedup;
            for (std::size_t n : info_sets_[i]) {
                bool seen = false;
                for (std::size_t d : dedup) seen = seen || d == n;
                if (!seen) dedup.push_back(n);
            }
            info_sets_[i] = std::move(dedup);
            for (std::size_t n : info_sets_[i])
                if (info_of_.at(n) == no_node) info_of_[n] = i;
        }
        // J refines I iff every history in J has a prefix (ancestor or the
        // node itself) lying in I.
        refines_.assign(info_sets_.size(), std::vector<bool>(info_sets_.size(), false));
        for (std::size_t j = 0; j < info_sets_.size(); ++j)
            for (std::size_t i = 0; i < info_sets_.size(); ++i) {
                bool all = true;
                for (std::size_t n : info_sets_[j]) {
                    bool found = false;
                    for (std::size_t cur = n; cur != no_node; cur = nodes_[cur].parent)
                        for (std::size_t m : info_sets_[i])
                            if (m == cur) found = true;
                    all = all && found;
                }
                refines_[j][i] = all && !info_sets_[j].empty();
            }
    }

    const StateSpace& space() const { return space_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    std::size_t root(std::size_t state) const { return roots_.at(state); }
    std::size_t info_set_count() const { return info_sets_.size(); }
    const std::vector<std::size_t>& info_set(std::size_t i) const { return info_sets_.at(i); }
    const std::string& info_name(std::size_t i) const { return info_names_.at(i); }
    std::size_t info_of(std::size_t node) const { return info_of_.at(node); }
    bool refines(std::size_t j, std::size_t i) const { return refines_.at(j).at(i); }
    const std::map<std::string, std::size_t>& aliases() const { return aliases_; }

    bool is_leaf(std::size_t node) const { return nodes_.at(node).utility.has_value(); }

    std::optional<std::size_t> info_index_of(const std::string& name) const {
        for (std::size_t i = 0; i < info_names_.size(); ++i)
            if (info_names_[i] == name) return i;
        return std::nullopt;
    }

    // Ordered action labels offered at an information set, taken from its
    // first member node (the validator checks all members agree).
    std::vector<std::string> actions_of(std::size_t iset) const {
        std::vector<std::string> out;
        if (info_sets_.at(iset).empty()) return out;
        for (std::size_t c : nodes_[info_sets_[iset].front()].children)
            out.push_back(nodes_[c].action);
        return out;
    }

    std::vector<std::string> action_path(std::size_t node) const {
        std::vector<std::string> rev;
        for (std::size_t cur = node; nodes_.at(cur).parent != no_node; cur = nodes_[cur].parent)
            rev.push_back(nodes_[cur].action);
        return std::vector<std::string>(rev.rbegin(), rev.rend());
    }

    std::string history_label(std::size_t node) const {
        std::string out = space_.names.at(nodes_.at(node).state);
        for (const std::string& a : action_path(node)) out += "/" + a;
        return out;
    }

    // Resolve "state/action/action/..." or a registered alias.
    std::optional<std::size_t> resolve(const std::string& address) const {
        auto it = aliases_.find(address);
        if (it != aliases_.end()) return it->second;
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (pos <= address.size()) {
            std::size_t slash = address.find('/', pos);
            if (slash == std::string::npos) slash = address.size();
            parts.push_back(address.substr(pos, slash - pos));
            pos = slash + 1;
        }
        if (parts.empty()) return std::nullopt;
        auto state = space_.index_of(parts.front());
        if (!state) return std::nullopt;
        std::size_t cur = roots_.at(*state);
        for (std::size_t i = 1; i < parts.size(); ++i) {
            std::size_t next = no_node;
            for (std::size_t c : nodes_[cur].children)
                if (nodes_[c].action == parts[i]) next = c;
            if (next == no_node) return std::nullopt;
            cur = next;
        }
        return cur;
    }

    // E(h): states of the history's information set, or the history's own
    // state when the node (typically a leaf) is not covered by any set.
    Event possible_states(std::size_t node) const {
        std::size_t iset = info_of_.at(node);
        if (iset == no_node) return ev_singleton(nodes_[node].state);
        Event e = 0;
        for (std::size_t n : info_sets_[iset]) e |= ev_singleton(nodes_[n].state);
        return e;
    }

    std::vector<Plan> enumerate_plans(std::size_t cap = caps().plans) const {
        unsigned long long total = 1;
        std::vector<std::size_t> sizes;
        for (std::size_t i = 0; i < info_sets_.size(); ++i) {
            std::size_t k = actions_of(i).size();
            if (k == 0) k = 1;  // leaf-only sets contribute no real choice
            sizes.push_back(k);
            total *= k;
            if (total > cap) throw caps_error("plans", static_cast<std::size_t>(total), cap);
        }
        std::vector<Plan> out;
        out.reserve(static_cast<std::size_t>(total));
        for (unsigned long long idx = 0; idx < total; ++idx) {
            Plan p;
            p.pick.assign(sizes.size(), 0);
            unsigned long long rem = idx;
            for (std::size_t j = sizes.size(); j-- > 0;) {
                p.pick[j] = static_cast<std::size_t>(rem % sizes[j]);
                rem /= sizes[j];
            }
            out.push_back(std::move(p));
        }
        return out;
    }

    std::string plan_label(const Plan& p) const {
        std::string out;
        for (std::size_t i = 0; i < info_sets_.size(); ++i) {
            if (i > 0) out += ",";
            std::vector<std::string> acts = actions_of(i);
            out += acts.empty() ? std::string("-") : acts.at(p.pick.at(i));
        }
        return out;
    }

    // A plan is feasible at h iff it reproduces every DM action on the path
    // to h.
    bool feasible(const Plan& p, std::size_t node) const {
        for (std::size_t cur = node; nodes_.at(cur).parent != no_node; cur = nodes_[cur].parent) {
            std::size_t parent = nodes_[cur].parent;
            std::size_t iset = info_of_.at(parent);
            if (iset == no_node)
                throw std::logic_error("decision node not covered by any information set");
            std::vector<std::string> acts = actions_of(iset);
            if (acts.at(p.pick.at(iset)) != nodes_[cur].action) return false;
        }
        return true;
    }

    std::vector<Plan> feasible_plans(std::size_t node, std::size_t cap = caps().plans) const {
        std::vector<Plan> out;
        for (const Plan& p : enumerate_plans(cap))
            if (feasible(p, node)) out.push_back(p);
        return out;
    }

    Act plan_to_act(const Plan& p) const {
        std::vector<Rat> payoff;
        for (std::size_t s = 0; s < space_.size(); ++s) {
            std::size_t cur = roots_[s];
            while (!is_leaf(cur)) {
                std::size_t iset = info_of_.at(cur);
                if (iset == no_node)
                    throw std::logic_error("decision node not covered by any information set");
                const std::string want = actions_of(iset).at(p.pick.at(iset));
                std::size_t next = no_node;
                for (std::size_t c : nodes_[cur].children)
                    if (nodes_[c].action == want) next = c;
                if (next == no_node)
                    throw std::logic_error("plan action missing at node " + history_label(cur));
                cur = next;
            }
            payoff.push_back(*nodes_[cur].utility);
        }
        return Act(std::move(payoff), plan_label(p));
    }

    Menu menu_of_plans(const std::vector<Plan>& plans) const {
        std::vector<Act> acts;
        for (const Plan& p : plans) acts.push_back(plan_to_act(p));
        return Menu(std::move(acts));
    }

    Menu initial_menu(std::size_t cap = caps().plans) const {
        return menu_of_plans(enumerate_plans(cap));
    }

    Menu menu_at(std::size_t node, const MenuPolicy& policy, std::size_t cap = caps().plans) const {
        switch (policy.kind) {
            case MenuPolicy::Kind::constant_initial:
                return initial_menu(cap);
            case MenuPolicy::Kind::feasible_only:
                return menu_of_plans(feasible_plans(node, cap));
            case MenuPolicy::Kind::explicit_menu: {
                auto it = policy.menus.find(node);
                if (it == policy.menus.end())
                    throw std::invalid_argument("explicit menu policy does not cover history " +
                                                history_label(node));
                return it->second;
            }
        }
        throw std::logic_error("unreachable menu policy kind");
    }

    // Follow f at `iset` and every information set refining it, g elsewhere.
    Plan splice(const Plan& f, const Plan& g, std::size_t iset) const {
        if (iset >= info_sets_.size()) throw std::invalid_argument("no such information set");
        Plan out;
        out.pick.resize(info_sets_.size());
        for (std::size_t j = 0; j < info_sets_.size(); ++j)
            out.pick[j] = refines_[j][iset] ? f.pick.at(j) : g.pick.at(j);
        return out;
    }

    std::vector<std::size_t> decision_nodes() const {
        std::vector<std::size_t> out;
        for (std::size_t n = 0; n < nodes_.size(); ++n)
            if (!is_leaf(n)) out.push_back(n);
        return out;
    }

    CheckReport validate() const {
        CheckReport report("validate");
        for (std::size_t n = 0; n < nodes_.size(); ++n) {
            bool leaf = is_leaf(n);
            if (!leaf && nodes_[n].children.empty())
                report.fail({"childless-internal-node", {{"history", history_label(n)}}});
            std::size_t covered = 0;
            for (const auto& iset : info_sets_)
                for (std::size_t m : iset)
                    if (m == n) ++covered;
            if (!leaf && covered != 1)
                report.fail({"coverage", {{"history", history_label(n)},
                                          {"sets_containing", std::to_string(covered)}}});
            if (leaf && covered > 1)
                report.fail({"coverage", {{"history", history_label(n)},
                                          {"sets_containing", std::to_string(covered)}}});
            report.bump("nodes");
        }
        for (std::size_t i = 0; i < info_sets_.size(); ++i) {
            if (info_sets_[i].empty()) {
                report.fail({"empty-information-set", {{"set", info_names_[i]}}});
                continue;
            }
            std::size_t first = info_sets_[i].front();
            std::vector<std::string> want_actions;
            for (std::size_t c : nodes_[first].children) want_actions.push_back(nodes_[c].action);
            std::vector<std::string> want_path = action_path(first);
            for (std::size_t n : info_sets_[i]) {
                std::vector<std::string> acts;
                for (std::size_t c : nodes_[n].children) acts.push_back(nodes_[c].action);
                if (acts != want_actions)
                    report.fail({"action-set-mismatch",
                                 {{"set", info_names_[i]},
                                  {"history", history_label(n)},
                                  {"expected_like", history_label(first)}}});
                if (action_path(n) != want_path)
                    report.fail({"recall-mismatch",
                                 {{"set", info_names_[i]},
                                  {"history", history_label(n)},
                                  {"other", history_label(first)}}});
            }
            report.bump("information_sets");
        }
        for (std::size_t n = 0; n < nodes_.size(); ++n) {
            std::size_t parent = nodes_[n].parent;
            if (parent == no_node) continue;
            Event up = possible_states(parent);
            Event down = possible_states(n);
            if (!ev_subset(down, up))
                report.fail({"possible-states-grow",
                             {{"history", history_label(parent)},
                              {"extension", history_label(n)}}});
        }
        return report;
    }

  private:
    StateSpace space_;
    std::vector<TreeNode> nodes_;
    std::vector<std::size_t> roots_;
    std::vector<std::vector<std::size_t>> info_sets_;
    std::vector<std::string> info_names_;
    std::map<std::string, std::size_t> aliases_;
    std::vector<std::size_t> info_of_;
    std::vector<std::vector<bool>> refines_;
};

inline DecisionTree DecisionTreeBuilder::build() { return DecisionTree(std::move(*this)); }

}  // namespace regretlab
