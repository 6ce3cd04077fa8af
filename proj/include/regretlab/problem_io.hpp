#pragma once

// Problem-file loading and saving, plus the JSON rendering of check reports.
//
// A problem file is a JSON document describing one decision problem:
//
//   {
//     "version": 1,
//     "states": ["hard", "easy"],
//     "events": {"Hard": ["hard"]},
//     "tree": {"hard": [{"id": 0, "parent": null, "action": null},
//                       {"id": 1, "parent": 0, "action": "study",
//                        "leaf-utility": "25"}, ...],
//              "easy": [...]},
//     "info_sets": [{"name": "day1", "nodes": [0, 4]}, ...],
//     "aliases": {"root": 0},
//     "beliefs": [{"weights": "3/5", "masses": {"hard": "1/5", ...}}, ...],
//     "defaults": {"rule": "mwer", "update": "prior", "menu_policy": "constant"},
//     "menus": [{"nodes": [0], "acts": [{"label": "g",
//                "payoff": {"hard": "20", "easy": "23"}}]}]
//   }
//
// Node ids are file-scoped and arbitrary, but a parent must be listed before
// its children and each state needs exactly one parentless node (its root).
// info_sets is an ordered array because registration order fixes the order
// of actions inside plan labels; a name map would lose it. Every numeric
// quantity (utility, weight, mass, payoff) is an exact rational string like
// "3/5"; floats are rejected. The optional menus section carries explicit
// evaluation menus (acts as {"label", "payoff": {state: "a/b"}}) and is only
// consulted when menu_policy is "explicit".
//
// Reports serialize under the stable schema tag "regretlab-report/1".

#include <regretlab/belief.hpp>
#include <regretlab/check_report.hpp>
#include <regretlab/consistency.hpp>
#include <regretlab/dyntree.hpp>
#include <regretlab/rational.hpp>
#include <regretlab/regret.hpp>
#include <regretlab/scenarios.hpp>
#include <regretlab/state_space.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace regretlab {

// Parse or validation trouble located inside the document. position is a
// JSON-pointer-like path ("/beliefs/0/weights"), or "byte N" when the
// document is not even JSON.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string position, const std::string& message)
        : std::runtime_error(message + " (at " + position + ")"),
          position_(std::move(position)) {}

    const std::string& position() const { return position_; }

  private:
    std::string position_;
};

struct ProblemFile {
    DecisionTree tree;
    std::map<std::string, Event> events;
    WeightedBeliefSet beliefs = WeightedBeliefSet::empty_set();
    ChoiceContext defaults;
    std::map<std::size_t, Menu> menus;  // explicit evaluation menus, node -> menu
};

namespace detail {

using json = nlohmann::json;

inline Rat read_rat(const json& j, const std::string& where) {
    if (j.is_number())
        throw ParseError(where, "rationals must be exact strings like \"3/5\", not numbers");
    if (!j.is_string()) throw ParseError(where, "expected a rational string");
    std::string text = j.get<std::string>();
    std::optional<Rat> q = parse_rational(text);
    if (!q) throw ParseError(where, "malformed rational \"" + text + "\"");
    return *q;
}

inline const json& need(const json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where, "missing key \"" + key + "\"");
    return *it;
}

inline std::string read_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(where, "expected a string");
    return j.get<std::string>();
}

inline DecisionRule rule_from_name(const std::string& name, const std::string& where) {
    if (name == "minimax") return DecisionRule::minimax_regret;
    if (name == "mwer") return DecisionRule::mwer;
    if (name == "mer") return DecisionRule::mer;
    if (name == "expected") return DecisionRule::expected_regret_single;
    throw ParseError(where, "unknown rule \"" + name + "\" (minimax, mwer, mer, expected)");
}

inline std::string rule_name(DecisionRule rule) {
    switch (rule) {
        case DecisionRule::minimax_regret: return "minimax";
        case DecisionRule::mwer: return "mwer";
        case DecisionRule::mer: return "mer";
        case DecisionRule::expected_regret_single: return "expected";
    }
    throw std::logic_error("unreachable rule kind");
}

inline UpdateRule update_from_name(const std::string& name, const std::string& where) {
    if (name == "prior") return UpdateRule::prior_by_prior;
    if (name == "likelihood") return UpdateRule::likelihood;
    throw ParseError(where, "unknown update rule \"" + name + "\" (prior, likelihood)");
}

inline std::string update_name(UpdateRule rule) {
    return rule == UpdateRule::prior_by_prior ? "prior" : "likelihood";
}

inline std::string menu_policy_name(MenuPolicy::Kind kind) {
    switch (kind) {
        case MenuPolicy::Kind::constant_initial: return "constant";
        case MenuPolicy::Kind::feasible_only: return "feasible";
        case MenuPolicy::Kind::explicit_menu: return "explicit";
    }
    throw std::logic_error("unreachable menu policy kind");
}

inline std::vector<Rat> read_masses(const json& j, const StateSpace& space,
                                    const std::string& where) {
    if (!j.is_object()) throw ParseError(where, "expected a {state: rational} object");
    std::vector<Rat> mass(space.size(), Rat(0));
    for (const auto& [state, value] : j.items()) {
        auto idx = space.index_of(state);
        if (!idx) throw ParseError(where + "/" + state, "unknown state");
        mass[*idx] = read_rat(value, where + "/" + state);
    }
    return mass;
}

}  // namespace detail

inline ProblemFile parse_problem(const std::string& text) {
    using detail::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), "not valid JSON");
    }
    if (!j.is_object()) throw ParseError("/", "top level must be an object");

    // states
    const json& jstates = detail::need(j, "states", "/");
    if (!jstates.is_array() || jstates.empty())
        throw ParseError("/states", "expected a nonempty array of state names");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < jstates.size(); ++i)
        names.push_back(detail::read_string(jstates[i], "/states/" + std::to_string(i)));
    StateSpace space(names);

    // tree
    const json& jtree = detail::need(j, "tree", "/");
    if (!jtree.is_object()) throw ParseError("/tree", "expected a {state: [nodes]} object");
    DecisionTreeBuilder builder(space);
    std::map<long long, std::size_t> node_of;  // file id -> builder id
    for (std::size_t s = 0; s < space.size(); ++s) {
        const std::string& state = space.names[s];
        std::string base = "/tree/" + state;
        auto it = jtree.find(state);
        if (it == jtree.end()) throw ParseError(base, "state has no node list");
        if (!it->is_array()) throw ParseError(base, "expected an array of nodes");
        bool saw_root = false;
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& jn = (*it)[i];
            std::string where = base + "/" + std::to_string(i);
            if (!jn.is_object()) throw ParseError(where, "expected a node object");
            const json& jid = detail::need(jn, "id", where);
            if (!jid.is_number_integer()) throw ParseError(where + "/id", "expected an integer");
            long long id = jid.get<long long>();
            if (node_of.count(id))
                throw ParseError(where + "/id", "duplicate node id " + std::to_string(id));
            const json& jparent = detail::need(jn, "parent", where);
            if (jparent.is_null()) {
                if (saw_root) throw ParseError(where, "second parentless node for this state");
                saw_root = true;
                node_of[id] = builder.root(s);
                continue;
            }
            if (!jparent.is_number_integer())
                throw ParseError(where + "/parent", "expected an integer or null");
            auto parent = node_of.find(jparent.get<long long>());
            if (parent == node_of.end())
                throw ParseError(where + "/parent", "parent must be listed before its children");
            std::string action =
                detail::read_string(detail::need(jn, "action", where), where + "/action");
            try {
                if (jn.contains("leaf-utility"))
                    node_of[id] = builder.leaf(parent->second, action,
                                               detail::read_rat(jn["leaf-utility"],
                                                                where + "/leaf-utility"));
                else
                    node_of[id] = builder.child(parent->second, action);
            } catch (const std::invalid_argument& e) {
                throw ParseError(where, e.what());
            }
        }
        if (!saw_root) throw ParseError(base, "state has no parentless root node");
    }

    auto map_node = [&node_of](const detail::json& jid, const std::string& where) {
        if (!jid.is_number_integer()) throw ParseError(where, "expected a node id");
        auto it = node_of.find(jid.get<long long>());
        if (it == node_of.end()) throw ParseError(where, "unknown node id " + jid.dump());
        return it->second;
    };

    // information sets, in file order
    const json& jsets = detail::need(j, "info_sets", "/");
    if (!jsets.is_array()) throw ParseError("/info_sets", "expected an array");
    for (std::size_t i = 0; i < jsets.size(); ++i) {
        std::string where = "/info_sets/" + std::to_string(i);
        const json& js = jsets[i];
        if (!js.is_object()) throw ParseError(where, "expected {name, nodes}");
        std::string name =
            detail::read_string(detail::need(js, "name", where), where + "/name");
        const json& jnodes = detail::need(js, "nodes", where);
        if (!jnodes.is_array() || jnodes.empty())
            throw ParseError(where + "/nodes", "expected a nonempty array of node ids");
        std::vector<std::size_t> members;
        for (std::size_t k = 0; k < jnodes.size(); ++k)
            members.push_back(map_node(jnodes[k], where + "/nodes/" + std::to_string(k)));
        builder.info_set(name, std::move(members));
    }

    // aliases
    if (j.contains("aliases")) {
        const json& ja = j["aliases"];
        if (!ja.is_object()) throw ParseError("/aliases", "expected a {name: node id} object");
        for (const auto& [name, jid] : ja.items())
            builder.alias(name, map_node(jid, "/aliases/" + name));
    }

    DecisionTree tree = builder.build();

    // named events
    std::map<std::string, Event> events;
    if (j.contains("events")) {
        const json& je = j["events"];
        if (!je.is_object()) throw ParseError("/events", "expected a {name: [states]} object");
        for (const auto& [name, jstatesOf] : je.items()) {
            std::string where = "/events/" + name;
            if (!jstatesOf.is_array()) throw ParseError(where, "expected an array of states");
            std::vector<std::string> evNames;
            for (std::size_t i = 0; i < jstatesOf.size(); ++i)
                evNames.push_back(
                    detail::read_string(jstatesOf[i], where + "/" + std::to_string(i)));
            auto ev = ev_from_names(evNames, space);
            if (!ev) throw ParseError(where, "unknown state in event");
            events[name] = *ev;
        }
    }

    // beliefs
    std::vector<WeightedMeasure> members;
    if (j.contains("beliefs")) {
        const json& jb = j["beliefs"];
        if (!jb.is_array()) throw ParseError("/beliefs", "expected an array");
        for (std::size_t i = 0; i < jb.size(); ++i) {
            std::string where = "/beliefs/" + std::to_string(i);
            const json& jm = jb[i];
            if (!jm.is_object()) throw ParseError(where, "expected {weights, masses}");
            Rat w = detail::read_rat(detail::need(jm, "weights", where), where + "/weights");
            std::vector<Rat> mass = detail::read_masses(detail::need(jm, "masses", where),
                                                        space, where + "/masses");
            try {
                members.emplace_back(ProbMeasure::subnormalized(std::move(mass)), w);
            } catch (const std::invalid_argument& e) {
                throw ParseError(where, e.what());
            }
        }
    }
    WeightedBeliefSet beliefs = members.empty() ? WeightedBeliefSet::empty_set()
                                                : WeightedBeliefSet(std::move(members));

    // defaults
    ChoiceContext defaults;
    defaults.beliefs = beliefs;
    std::string policy = "constant";
    if (j.contains("defaults")) {
        const json& jd = j["defaults"];
        if (!jd.is_object()) throw ParseError("/defaults", "expected an object");
        if (jd.contains("rule"))
            defaults.rule = detail::rule_from_name(
                detail::read_string(jd["rule"], "/defaults/rule"), "/defaults/rule");
        if (jd.contains("update"))
            defaults.update = detail::update_from_name(
                detail::read_string(jd["update"], "/defaults/update"), "/defaults/update");
        if (jd.contains("menu_policy"))
            policy = detail::read_string(jd["menu_policy"], "/defaults/menu_policy");
    }
    // explicit evaluation menus, kept even when the default policy is simpler
    std::map<std::size_t, Menu> menus;
    if (j.contains("menus")) {
        const json& jmenus = j["menus"];
        if (!jmenus.is_array()) throw ParseError("/menus", "expected an array");
        for (std::size_t i = 0; i < jmenus.size(); ++i) {
            std::string where = "/menus/" + std::to_string(i);
            const json& jm = jmenus[i];
            if (!jm.is_object()) throw ParseError(where, "expected {nodes, acts}");
            const json& jacts = detail::need(jm, "acts", where);
            if (!jacts.is_array() || jacts.empty())
                throw ParseError(where + "/acts", "expected a nonempty array of acts");
            std::vector<Act> acts;
            for (std::size_t k = 0; k < jacts.size(); ++k) {
                std::string awhere = where + "/acts/" + std::to_string(k);
                const json& ja = jacts[k];
                if (!ja.is_object()) throw ParseError(awhere, "expected {label, payoff}");
                std::string label =
                    detail::read_string(detail::need(ja, "label", awhere), awhere + "/label");
                acts.emplace_back(detail::read_masses(detail::need(ja, "payoff", awhere),
                                                      space, awhere + "/payoff"),
                                  label);
            }
            Menu menu(std::move(acts));
            const json& jnodes = detail::need(jm, "nodes", where);
            if (!jnodes.is_array() || jnodes.empty())
                throw ParseError(where + "/nodes", "expected a nonempty array of node ids");
            for (std::size_t k = 0; k < jnodes.size(); ++k)
                menus.emplace(map_node(jnodes[k], where + "/nodes/" + std::to_string(k)), menu);
        }
    }

    if (policy == "constant") {
        defaults.menu_policy = MenuPolicy::constant_initial();
    } else if (policy == "feasible") {
        defaults.menu_policy = MenuPolicy::feasible_only();
    } else if (policy == "explicit") {
        if (menus.empty())
            throw ParseError("/menus", "explicit menu policy requires a menus section");
        defaults.menu_policy.kind = MenuPolicy::Kind::explicit_menu;
        defaults.menu_policy.menus = menus;
    } else {
        throw ParseError("/defaults/menu_policy",
                         "unknown menu policy \"" + policy +
                             "\" (constant, feasible, explicit)");
    }

    return ProblemFile{std::move(tree), std::move(events), std::move(beliefs),
                       std::move(defaults), std::move(menus)};
}

inline ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_problem(text.str());
}

inline std::string serialize_problem(const ProblemFile& pf) {
    using detail::json;
    const DecisionTree& t = pf.tree;
    const StateSpace& space = t.space();
    json j;
    j["version"] = 1;
    j["states"] = space.names;

    json jtree = json::object();
    for (std::size_t s = 0; s < space.size(); ++s) jtree[space.names[s]] = json::array();
    for (std::size_t n = 0; n < t.nodes().size(); ++n) {
        const TreeNode& node = t.nodes()[n];
        json jn;
        jn["id"] = n;
        if (node.parent == no_node) {
            jn["parent"] = nullptr;
            jn["action"] = nullptr;
        } else {
            jn["parent"] = node.parent;
            jn["action"] = node.action;
        }
        if (node.utility) jn["leaf-utility"] = to_string(*node.utility);
        jtree[space.names[node.state]].push_back(std::move(jn));
    }
    j["tree"] = std::move(jtree);

    json jsets = json::array();
    for (std::size_t i = 0; i < t.info_set_count(); ++i)
        jsets.push_back({{"name", t.info_name(i)}, {"nodes", t.info_set(i)}});
    j["info_sets"] = std::move(jsets);

    if (!t.aliases().empty()) {
        json ja = json::object();
        for (const auto& [name, node] : t.aliases()) ja[name] = node;
        j["aliases"] = std::move(ja);
    }

    if (!pf.events.empty()) {
        json je = json::object();
        for (const auto& [name, ev] : pf.events) je[name] = ev_names(ev, space);
        j["events"] = std::move(je);
    }

    json jbel = json::array();
    for (const WeightedMeasure& wm : pf.beliefs.members()) {
        json masses = json::object();
        for (std::size_t s = 0; s < space.size(); ++s)
            if (wm.measure.mass()[s] != 0)
                masses[space.names[s]] = to_string(wm.measure.mass()[s]);
        jbel.push_back({{"weights", to_string(wm.weight)}, {"masses", std::move(masses)}});
    }
    j["beliefs"] = std::move(jbel);

    j["defaults"] = {{"rule", detail::rule_name(pf.defaults.rule)},
                     {"update", detail::update_name(pf.defaults.update)},
                     {"menu_policy", detail::menu_policy_name(pf.defaults.menu_policy.kind)}};

    if (!pf.menus.empty()) {
        json jmenus = json::array();
        for (const auto& [node, menu] : pf.menus) {
            json jacts = json::array();
            for (const Act& f : menu.acts()) {
                json payoff = json::object();
                for (std::size_t s = 0; s < space.size(); ++s)
                    if (f.payoff[s] != 0) payoff[space.names[s]] = to_string(f.payoff[s]);
                jacts.push_back({{"label", f.label}, {"payoff", std::move(payoff)}});
            }
            jmenus.push_back({{"nodes", json::array({node})}, {"acts", std::move(jacts)}});
        }
        j["menus"] = std::move(jmenus);
    }

    return j.dump(2) + "\n";
}

inline ProblemFile problem_from_scenario(const Scenario& sc, std::size_t ctx_index = 0) {
    const ChoiceContext& ctx = sc.contexts.at(ctx_index);
    return ProblemFile{sc.tree, {}, ctx.beliefs, ctx, ctx.menu_policy.menus};
}

// Stable, versioned JSON rendering of a check report.
inline nlohmann::json report_to_json(const CheckReport& r) {
    using detail::json;
    json j;
    j["schema"] = "regretlab-report/1";
    j["check"] = r.check;
    j["pass"] = r.pass;
    json jw = json::array();
    for (const Witness& w : r.witnesses) {
        json fields = json::object();
        for (const auto& [k, v] : w.fields) fields[k] = v;
        jw.push_back({{"what", w.what}, {"fields", std::move(fields)}});
    }
    j["witnesses"] = std::move(jw);
    json stats = json::object();
    for (const auto& [k, v] : r.stats) stats[k] = v;
    j["stats"] = std::move(stats);
    j["notes"] = r.notes;
    return j;
}

}  // namespace regretlab
