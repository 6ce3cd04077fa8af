#pragma once

// Finite state spaces and events. States are named and index-ordered; an
// event is a bitmask over state indices, so set algebra is word arithmetic.
// sigma_algebra() closes a basis of events under complement and union by
// first extracting the atoms (signature classes) and then enumerating all
// unions of atoms in ascending mask order.

#include <regretlab/caps.hpp>

#include <cstdint>
#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace regretlab {

using Event = std::uint64_t;

struct StateSpace {
    std::vector<std::string> names;

    explicit StateSpace(std::vector<std::string> state_names) : names(std::move(state_names)) {
        if (names.empty()) throw std::invalid_argument("state space must be nonempty");
        if (names.size() > 64) throw std::invalid_argument("state space too large (max 64)");
        std::vector<std::string> sorted = names;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
            if (sorted[i] == sorted[i + 1])
                throw std::invalid_argument("duplicate state name: " + sorted[i]);
        for (const std::string& n : names)
            if (n.empty()) throw std::invalid_argument("state names must be nonempty");
    }

    std::size_t size() const { return names.size(); }

    Event full() const {
        return names.size() == 64 ? ~Event(0) : ((Event(1) << names.size()) - 1);
    }

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        return std::nullopt;
    }
};

inline Event ev_singleton(std::size_t i) { return Event(1) << i; }
inline bool ev_contains(Event e, std::size_t i) { return (e >> i) & 1; }
inline bool ev_subset(Event a, Event b) { return (a & ~b) == 0; }
inline Event ev_complement(Event e, const StateSpace& space) { return space.full() & ~e; }

inline std::size_t ev_count(Event e) {
    std::size_t n = 0;
    while (e) {
        e &= e - 1;
        ++n;
    }
    return n;
}

inline std::vector<std::size_t> ev_members(Event e) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < 64 && (e >> i); ++i)
        if (ev_contains(e, i)) out.push_back(i);
    return out;
}

inline std::vector<std::string> ev_names(Event e, const StateSpace& space) {
    std::vector<std::string> out;
    for (std::size_t i : ev_members(e)) out.push_back(space.names.at(i));
    return out;
}

inline std::optional<Event> ev_from_names(const std::vector<std::string>& names,
                                          const StateSpace& space) {
    Event e = 0;
    for (const std::string& n : names) {
        auto idx = space.index_of(n);
        if (!idx) return std::nullopt;
        e |= ev_singleton(*idx);
    }
    return e;
}

// Atoms of the algebra generated by `basis`: states are grouped by their
// membership signature across the basis events. Atom order follows the
// lowest state index contained in each atom.
inline std::vector<Event> algebra_atoms(const StateSpace& space, const std::vector<Event>& basis) {
    std::map<std::vector<bool>, Event> by_signature;
    std::vector<Event> atoms;
    for (std::size_t i = 0; i < space.size(); ++i) {
        std::vector<bool> sig;
        sig.reserve(basis.size());
        for (Event b : basis) sig.push_back(ev_contains(b, i));
        auto it = by_signature.find(sig);
        if (it == by_signature.end()) {
            by_signature.emplace(std::move(sig), ev_singleton(i));
            atoms.push_back(ev_singleton(i));
        } else {
            Event old = it->second;
            it->second |= ev_singleton(i);
            for (Event& a : atoms)
                if (a == old) a = it->second;
        }
    }
    return atoms;
}

// Every event in the algebra generated by `basis`, in ascending mask order.
// The empty event and the full space are always present. Throws caps_error
// when the algebra would exceed the configured event cap.
inline std::vector<Event> sigma_algebra(const StateSpace& space, const std::vector<Event>& basis,
                                        std::size_t cap = caps().sigma_events) {
    for (Event b : basis)
        if (!ev_subset(b, space.full()))
            throw std::invalid_argument("basis event outside the state space");
    std::vector<Event> atoms = algebra_atoms(space, basis);
    if (atoms.size() >= 8 * sizeof(std::size_t) || (std::size_t(1) << atoms.size()) > cap)
        throw caps_error("sigma", atoms.size() < 63 ? (std::size_t(1) << atoms.size()) : SIZE_MAX,
                         cap);
    std::vector<Event> events;
    events.reserve(std::size_t(1) << atoms.size());
    for (std::size_t pick = 0; pick < (std::size_t(1) << atoms.size()); ++pick) {
        Event e = 0;
        for (std::size_t j = 0; j < atoms.size(); ++j)
            if ((pick >> j) & 1) e |= atoms[j];
        events.push_back(e);
    }
    std::sort(events.begin(), events.end());
    return events;
}

}  // namespace regretlab
