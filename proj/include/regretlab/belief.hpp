#pragma once

// Weighted sets of probability measures and their two updating rules.
//
// A belief is a finite set of (measure, weight) pairs with weights in (0,1].
// Normalized sets have some weight exactly 1; post-update intermediates may
// skip that invariant via an explicit constructor flag. Measures are exact
// rational mass vectors; a relaxed factory admits mass vectors summing to
// less than 1 so that externally scaled rows can be carried literally.
//
// Updating on an event e first drops members that assign e zero probability.
// Prior-by-prior conditions the survivors and keeps their weights. Likelihood
// updating reweights each surviving conditional by the best weighted mass any
// of its preimages assigned to e, normalized by the set-wide optimum, merging
// duplicate conditionals under the max. Updating on the full space is the
// identity for both rules.

#include <regretlab/lp.hpp>
#include <regretlab/rational.hpp>
#include <regretlab/state_space.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace regretlab {

class ProbMeasure {
  public:
    explicit ProbMeasure(std::vector<Rat> masses) : mass_(std::move(masses)) {
        validate(false);
    }

    // Admits totals in (0, 1]; used for carrying scaled rows verbatim.
    static ProbMeasure subnormalized(std::vector<Rat> masses) {
        ProbMeasure m(std::move(masses), 0);
        m.validate(true);
        return m;
    }

    const std::vector<Rat>& mass() const { return mass_; }
    std::size_t dim() const { return mass_.size(); }

    Rat total() const {
        Rat t(0);
        for (const Rat& m : mass_) t += m;
        return t;
    }

    Rat prob(Event e) const {
        Rat p(0);
        for (std::size_t i : ev_members(e)) p += mass_.at(i);
        return p;
    }

    // Pr(. | e); requires prob(e) > 0. The result is fully normalized even
    // when this measure is subnormalized.
    ProbMeasure conditional(Event e) const {
        Rat pe = prob(e);
        if (pe <= 0) throw std::domain_error("conditioning on a zero-probability event");
        std::vector<Rat> out(mass_.size(), Rat(0));
        for (std::size_t i : ev_members(e)) out[i] = mass_[i] / pe;
        return ProbMeasure(std::move(out), 0);
    }

    bool operator==(const ProbMeasure& o) const { return mass_ == o.mass_; }
    bool operator<(const ProbMeasure& o) const {
        return std::lexicographical_compare(mass_.begin(), mass_.end(), o.mass_.begin(),
                                            o.mass_.end());
    }

  private:
    ProbMeasure(std::vector<Rat> masses, int) : mass_(std::move(masses)) {}
    void validate(bool allow_subnormal) const {
        if (mass_.empty()) throw std::invalid_argument("measure needs at least one state");
        for (const Rat& m : mass_)
            if (m < 0) throw std::invalid_argument("negative probability mass");
        Rat t = total();
        if (allow_subnormal ? (t <= 0 || t > 1) : (t != 1))
            throw std::invalid_argument("probability masses have an invalid total");
    }
    std::vector<Rat> mass_;
};

struct SubProbability {
    std::vector<Rat> mass;

    explicit SubProbability(std::vector<Rat> m) : mass(std::move(m)) {
        Rat t(0);
        for (const Rat& x : mass) {
            if (x < 0) throw std::invalid_argument("negative mass in subprobability");
            t += x;
        }
        if (t > 1) throw std::invalid_argument("subprobability total exceeds 1");
    }
};

struct WeightedMeasure {
    ProbMeasure measure;
    Rat weight;

    WeightedMeasure(ProbMeasure m, Rat w) : measure(std::move(m)), weight(std::move(w)) {
        if (weight <= 0 || weight > 1)
            throw std::invalid_argument("weight must lie in (0, 1]");
    }
};

class WeightedBeliefSet {
  public:
    enum class Normalization { required, relaxed };

    explicit WeightedBeliefSet(std::vector<WeightedMeasure> members,
                               Normalization norm = Normalization::required)
        : members_(std::move(members)) {
        std::size_t dim = 0;
        for (const auto& wm : members_) {
            if (dim == 0) dim = wm.measure.dim();
            if (wm.measure.dim() != dim)
                throw std::invalid_argument("members disagree on state-space dimension");
        }
        // Canonical order plus duplicate-measure merge (max weight wins).
        std::sort(members_.begin(), members_.end(), [](const auto& a, const auto& b) {
            if (a.measure == b.measure) return a.weight > b.weight;
            return a.measure < b.measure;
        });
        members_.erase(std::unique(members_.begin(), members_.end(),
                                   [](const auto& a, const auto& b) {
                                       return a.measure == b.measure;
                                   }),
                       members_.end());
        if (norm == Normalization::required) {
            if (members_.empty())
                throw std::invalid_argument("normalized belief set must be nonempty");
            bool has_unit = false;
            for (const auto& wm : members_)
                if (wm.weight == 1) has_unit = true;
            if (!has_unit)
                throw std::invalid_argument("some member must carry weight exactly 1");
        }
    }

    static WeightedBeliefSet empty_set() {
        return WeightedBeliefSet(std::vector<WeightedMeasure>{}, Normalization::relaxed);
    }

    const std::vector<WeightedMeasure>& members() const { return members_; }
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }

    bool operator==(const WeightedBeliefSet& o) const {
        if (members_.size() != o.members_.size()) return false;
        for (std::size_t i = 0; i < members_.size(); ++i)
            if (!(members_[i].measure == o.members_[i].measure) ||
                members_[i].weight != o.members_[i].weight)
                return false;
        return true;
    }

  private:
    std::vector<WeightedMeasure> members_;
};

enum class UpdateRule { prior_by_prior, likelihood };

inline Rat upper_weighted_prob(const WeightedBeliefSet& bel, Event e) {
    Rat best(0);
    for (const auto& wm : bel.members()) {
        Rat v = wm.weight * wm.measure.prob(e);
        if (v > best) best = v;
    }
    return best;
}

inline WeightedBeliefSet update(const WeightedBeliefSet& bel, Event e, UpdateRule rule,
                                const StateSpace& space) {
    if (e == space.full()) return bel;
    if (rule == UpdateRule::prior_by_prior) {
        std::vector<WeightedMeasure> out;
        for (const auto& wm : bel.members())
            if (wm.measure.prob(e) > 0)
                out.emplace_back(wm.measure.conditional(e), wm.weight);
        return WeightedBeliefSet(std::move(out), WeightedBeliefSet::Normalization::relaxed);
    }
    Rat denom = upper_weighted_prob(bel, e);
    if (denom == 0) return WeightedBeliefSet::empty_set();
    std::vector<WeightedMeasure> out;
    for (const auto& wm : bel.members()) {
        Rat pe = wm.measure.prob(e);
        if (pe > 0) out.emplace_back(wm.measure.conditional(e), wm.weight * pe / denom);
    }
    // The constructor merges duplicate conditionals by max weight, which is
    // exactly the sup in the reweighting formula.
    return WeightedBeliefSet(std::move(out), WeightedBeliefSet::Normalization::relaxed);
}

inline std::vector<SubProbability> c_generators(const WeightedBeliefSet& bel) {
    std::vector<SubProbability> out;
    for (const auto& wm : bel.members()) {
        std::vector<Rat> v = wm.measure.mass();
        for (Rat& x : v) x *= wm.weight;
        out.emplace_back(std::move(v));
    }
    return out;
}

inline bool in_c(const WeightedBeliefSet& bel, const SubProbability& q) {
    for (const SubProbability& g : c_generators(bel)) {
        if (g.mass.size() != q.mass.size())
            throw std::invalid_argument("dimension mismatch in in_c");
        bool dominated = true;
        for (std::size_t i = 0; i < q.mass.size(); ++i)
            if (q.mass[i] > g.mass[i]) dominated = false;
        if (dominated) return true;
    }
    return false;
}

inline bool in_convex_c(const WeightedBeliefSet& bel, const SubProbability& q) {
    std::vector<std::vector<Rat>> gens;
    for (const SubProbability& g : c_generators(bel)) {
        if (g.mass.size() != q.mass.size())
            throw std::invalid_argument("dimension mismatch in in_convex_c");
        gens.push_back(g.mass);
    }
    return dominated_in_hull(gens, q.mass);
}

inline Rat upper_expectation(const WeightedBeliefSet& bel, const std::vector<Rat>& theta) {
    for (const Rat& t : theta)
        if (t < 0) throw std::invalid_argument("upper_expectation needs theta >= 0");
    Rat best(0);
    for (const auto& wm : bel.members()) {
        if (wm.measure.dim() != theta.size())
            throw std::invalid_argument("dimension mismatch in upper_expectation");
        Rat v(0);
        for (std::size_t i = 0; i < theta.size(); ++i) v += wm.measure.mass()[i] * theta[i];
        v *= wm.weight;
        if (v > best) best = v;
    }
    return best;
}

}  // namespace regretlab
