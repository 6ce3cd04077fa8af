#include <regretlab/belief.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace regretlab;

namespace {

StateSpace exam_space() { return StateSpace({"hard-short", "hard-long", "easy-short", "easy-long"}); }

// Two-member belief carrying one full measure at weight 1 and one scaled row
// at weight 3/5, over the four exam states.
WeightedBeliefSet exam_belief() {
    ProbMeasure pr1({rat(1), rat(0), rat(0), rat(0)});
    ProbMeasure pr2 = ProbMeasure::subnormalized({rat(0), rat(1, 5), rat(1, 5), rat(1, 5)});
    return WeightedBeliefSet({WeightedMeasure(pr1, rat(1)), WeightedMeasure(pr2, rat(3, 5))});
}

ProbMeasure random_measure(std::mt19937& rng, std::size_t dim) {
    std::vector<long> raw(dim);
    long total = 0;
    while (total == 0) {
        total = 0;
        for (auto& x : raw) {
            x = static_cast<long>(rng() % 5);
            total += x;
        }
    }
    std::vector<Rat> mass;
    for (long x : raw) mass.push_back(rat(x, total));
    return ProbMeasure(std::move(mass));
}

WeightedBeliefSet random_belief(std::mt19937& rng, std::size_t dim, std::size_t count) {
    std::vector<WeightedMeasure> members;
    for (std::size_t i = 0; i < count; ++i) {
        Rat w = i == 0 ? rat(1) : rat(1 + static_cast<long>(rng() % 4), 4);
        members.emplace_back(random_measure(rng, dim), w);
    }
    return WeightedBeliefSet(std::move(members));
}

}  // namespace

TEST_CASE("measure construction and conditioning") {
    REQUIRE_THROWS_AS(ProbMeasure({rat(1, 2), rat(1, 4)}), std::invalid_argument);
    REQUIRE_THROWS_AS(ProbMeasure({rat(3, 2), rat(-1, 2)}), std::invalid_argument);
    REQUIRE_THROWS_AS(ProbMeasure(std::vector<Rat>{}), std::invalid_argument);
    REQUIRE_THROWS_AS(ProbMeasure::subnormalized({rat(0), rat(0)}), std::invalid_argument);
    REQUIRE_THROWS_AS(ProbMeasure::subnormalized({rat(2, 3), rat(2, 3)}), std::invalid_argument);

    ProbMeasure pr({rat(1, 2), rat(1, 3), rat(1, 6)});
    REQUIRE(pr.prob(0b011) == rat(5, 6));
    REQUIRE(pr.total() == rat(1));
    ProbMeasure cond = pr.conditional(0b011);
    REQUIRE(cond.mass() == std::vector<Rat>{rat(3, 5), rat(2, 5), rat(0)});
    REQUIRE_THROWS_AS(pr.conditional(0), std::domain_error);

    ProbMeasure sub = ProbMeasure::subnormalized({rat(0), rat(1, 5), rat(1, 5)});
    REQUIRE(sub.total() == rat(2, 5));
    REQUIRE(sub.conditional(0b110).mass() == std::vector<Rat>{rat(0), rat(1, 2), rat(1, 2)});
}

TEST_CASE("belief sets enforce normalization unless relaxed") {
    ProbMeasure a({rat(1), rat(0)});
    ProbMeasure b({rat(0), rat(1)});
    REQUIRE_THROWS_AS(WeightedBeliefSet({WeightedMeasure(a, rat(1, 2))}), std::invalid_argument);
    REQUIRE_NOTHROW(WeightedBeliefSet({WeightedMeasure(a, rat(1, 2))},
                                      WeightedBeliefSet::Normalization::relaxed));
    REQUIRE_THROWS_AS(WeightedBeliefSet({}), std::invalid_argument);
    REQUIRE(WeightedBeliefSet::empty_set().empty());
    REQUIRE_THROWS_AS(WeightedMeasure(a, rat(0)), std::invalid_argument);
    REQUIRE_THROWS_AS(WeightedMeasure(a, rat(3, 2)), std::invalid_argument);
    WeightedBeliefSet two({WeightedMeasure(a, rat(1)), WeightedMeasure(b, rat(1, 2))});
    REQUIRE(two.size() == 2);
}

TEST_CASE("duplicate measures merge keeping the max weight") {
    ProbMeasure a({rat(1, 2), rat(1, 2)});
    WeightedBeliefSet bel({WeightedMeasure(a, rat(1)), WeightedMeasure(a, rat(1, 3))});
    REQUIRE(bel.size() == 1);
    REQUIRE(bel.members().front().weight == rat(1));
}

TEST_CASE("upper weighted probability") {
    WeightedBeliefSet bel = exam_belief();
    Event hard = 0b0011;
    REQUIRE(upper_weighted_prob(bel, hard) == rat(1));
    REQUIRE(upper_weighted_prob(bel, 0b1100) == rat(3, 5) * rat(2, 5));
    REQUIRE(upper_weighted_prob(bel, 0) == rat(0));
    REQUIRE(upper_weighted_prob(WeightedBeliefSet::empty_set(), 0b1) == rat(0));

    WeightedBeliefSet single(
        {WeightedMeasure(ProbMeasure({rat(1, 2), rat(1, 2)}), rat(1))});
    REQUIRE(upper_weighted_prob(single, 0b01) == rat(1, 2));
}

TEST_CASE("prior-by-prior update keeps weights and drops nulls") {
    StateSpace space = exam_space();
    WeightedBeliefSet bel = exam_belief();
    Event hard = 0b0011;

    WeightedBeliefSet up = update(bel, hard, UpdateRule::prior_by_prior, space);
    REQUIRE(up.size() == 2);
    // Canonical member order sorts mass vectors lexicographically.
    REQUIRE(up.members()[0].measure.mass() == std::vector<Rat>{rat(0), rat(1), rat(0), rat(0)});
    REQUIRE(up.members()[0].weight == rat(3, 5));
    REQUIRE(up.members()[1].measure.mass() == std::vector<Rat>{rat(1), rat(0), rat(0), rat(0)});
    REQUIRE(up.members()[1].weight == rat(1));

    Event easy = 0b1100;
    WeightedBeliefSet up2 = update(bel, easy, UpdateRule::prior_by_prior, space);
    REQUIRE(up2.size() == 1);
    REQUIRE(up2.members()[0].weight == rat(3, 5));
    REQUIRE(up2.members()[0].measure.mass() ==
            std::vector<Rat>{rat(0), rat(0), rat(1, 2), rat(1, 2)});
}

TEST_CASE("likelihood update reweights by best weighted mass") {
    StateSpace space = exam_space();
    WeightedBeliefSet bel = exam_belief();

    WeightedBeliefSet hard = update(bel, 0b0011, UpdateRule::likelihood, space);
    REQUIRE(hard.size() == 2);
    REQUIRE(hard.members()[0].measure.mass() ==
            std::vector<Rat>{rat(0), rat(1), rat(0), rat(0)});
    REQUIRE(hard.members()[0].weight == rat(3, 25));
    REQUIRE(hard.members()[1].measure.mass() ==
            std::vector<Rat>{rat(1), rat(0), rat(0), rat(0)});
    REQUIRE(hard.members()[1].weight == rat(1));

    WeightedBeliefSet easy = update(bel, 0b1100, UpdateRule::likelihood, space);
    REQUIRE(easy.size() == 1);
    REQUIRE(easy.members()[0].weight == rat(1));
    REQUIRE(easy.members()[0].measure.mass() ==
            std::vector<Rat>{rat(0), rat(0), rat(1, 2), rat(1, 2)});
}

TEST_CASE("updating on the full space is the identity for both rules") {
    StateSpace space = exam_space();
    WeightedBeliefSet bel = exam_belief();
    REQUIRE(update(bel, space.full(), UpdateRule::prior_by_prior, space) == bel);
    REQUIRE(update(bel, space.full(), UpdateRule::likelihood, space) == bel);
}

TEST_CASE("updating on a null event empties the set") {
    StateSpace space({"a", "b"});
    WeightedBeliefSet bel({WeightedMeasure(ProbMeasure({rat(1), rat(0)}), rat(1))});
    REQUIRE(update(bel, 0b10, UpdateRule::likelihood, space).empty());
    REQUIRE(update(bel, 0b10, UpdateRule::prior_by_prior, space).empty());
}

TEST_CASE("likelihood merges duplicate conditionals under the max") {
    StateSpace space({"a", "b", "c"});
    // Both measures condition to the uniform on {a,b}; their candidate
    // weights are 1*(1/2) and (1/2)*(4/5), so the merged weight is the
    // larger divided by the set optimum.
    ProbMeasure p1({rat(1, 4), rat(1, 4), rat(1, 2)});
    ProbMeasure p2({rat(2, 5), rat(2, 5), rat(1, 5)});
    WeightedBeliefSet bel({WeightedMeasure(p1, rat(1)), WeightedMeasure(p2, rat(1, 2))});
    WeightedBeliefSet up = update(bel, 0b011, UpdateRule::likelihood, space);
    REQUIRE(up.size() == 1);
    REQUIRE(up.members()[0].measure.mass() == std::vector<Rat>{rat(1, 2), rat(1, 2), rat(0)});
    REQUIRE(up.members()[0].weight == rat(1));
}

TEST_CASE("subprobability generators of the exam belief") {
    auto gens = c_generators(exam_belief());
    REQUIRE(gens.size() == 2);
    REQUIRE(gens[0].mass == std::vector<Rat>{rat(0), rat(3, 25), rat(3, 25), rat(3, 25)});
    REQUIRE(gens[1].mass == std::vector<Rat>{rat(1), rat(0), rat(0), rat(0)});
}

TEST_CASE("c membership by domination") {
    ProbMeasure d1({rat(1), rat(0)});
    ProbMeasure d2({rat(0), rat(1)});
    WeightedBeliefSet bel({WeightedMeasure(d1, rat(1)), WeightedMeasure(d2, rat(1, 2))});

    REQUIRE(in_c(bel, SubProbability({rat(0), rat(0)})));
    REQUIRE(in_c(bel, SubProbability({rat(1), rat(0)})));
    REQUIRE(in_c(bel, SubProbability({rat(0), rat(1, 2)})));
    REQUIRE_FALSE(in_c(bel, SubProbability({rat(0), rat(3, 4)})));
    REQUIRE_FALSE(in_c(WeightedBeliefSet({WeightedMeasure(d1, rat(1))}),
                       SubProbability({rat(0), rat(1, 2)})));
}

TEST_CASE("convex c membership needs mixing") {
    ProbMeasure d1({rat(1), rat(0)});
    ProbMeasure d2({rat(0), rat(1)});
    WeightedBeliefSet bel({WeightedMeasure(d1, rat(1)), WeightedMeasure(d2, rat(1))});

    REQUIRE(in_convex_c(bel, SubProbability({rat(1, 2), rat(1, 2)})));
    REQUIRE_FALSE(in_c(bel, SubProbability({rat(1, 2), rat(1, 2)})));

    // With the second generator scaled to (0, 1/2), no mixture reaches a
    // target needing the full second coordinate.
    WeightedBeliefSet scaled({WeightedMeasure(d1, rat(1)), WeightedMeasure(d2, rat(1, 2))});
    REQUIRE_FALSE(in_convex_c(scaled, SubProbability({rat(1, 4), rat(1, 2)})));
    REQUIRE(in_convex_c(scaled, SubProbability({rat(1, 2), rat(1, 4)})));
}

TEST_CASE("upper expectation") {
    ProbMeasure d1({rat(1), rat(0)});
    ProbMeasure d2({rat(0), rat(1)});
    WeightedBeliefSet bel({WeightedMeasure(d1, rat(1)), WeightedMeasure(d2, rat(1, 2))});
    REQUIRE(upper_expectation(bel, {rat(1), rat(4)}) == rat(2));
    REQUIRE(upper_expectation(bel, {rat(0), rat(0)}) == rat(0));
    REQUIRE(upper_expectation(WeightedBeliefSet::empty_set(), {}) == rat(0));
    REQUIRE_THROWS_AS(upper_expectation(bel, {rat(-1), rat(0)}), std::invalid_argument);

    WeightedBeliefSet single({WeightedMeasure(ProbMeasure({rat(1, 3), rat(2, 3)}), rat(1))});
    REQUIRE(upper_expectation(single, {rat(3), rat(6)}) == rat(5));
}

TEST_CASE("random beliefs: update laws hold", "[property]") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t dim = 2 + rng() % 3;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < dim; ++i) names.push_back("s" + std::to_string(i));
        StateSpace space(names);
        WeightedBeliefSet bel = random_belief(rng, dim, 1 + rng() % 3);
        Event e = rng() % (space.full() + 1);

        WeightedBeliefSet pp = update(bel, e, UpdateRule::prior_by_prior, space);
        WeightedBeliefSet lk = update(bel, e, UpdateRule::likelihood, space);

        // Surviving prior-by-prior weights all come from the original set.
        for (const auto& wm : pp.members()) {
            bool found = false;
            for (const auto& orig : bel.members()) found = found || orig.weight == wm.weight;
            REQUIRE(found);
        }

        // Likelihood output is empty iff the upper weighted probability
        // vanishes; otherwise its max weight is exactly 1.
        if (upper_weighted_prob(bel, e) == 0) {
            REQUIRE(lk.empty());
        } else {
            Rat top(0);
            for (const auto& wm : lk.members())
                if (wm.weight > top) top = wm.weight;
            REQUIRE(top == rat(1));
        }

        // Singleton sets update identically under both rules.
        WeightedBeliefSet solo({bel.members().front().measure.total() == 1
                                    ? WeightedMeasure(bel.members().front().measure, rat(1))
                                    : WeightedMeasure(random_measure(rng, dim), rat(1))});
        REQUIRE(update(solo, e, UpdateRule::prior_by_prior, space) ==
                update(solo, e, UpdateRule::likelihood, space));
    }
}

TEST_CASE("equal weights and equal event mass keep likelihood weights equal", "[property]") {
    std::mt19937 rng(11);
    int exercised = 0;
    for (int trial = 0; trial < 300; ++trial) {
        StateSpace space({"a", "b", "c"});
        ProbMeasure m1 = random_measure(rng, 3);
        ProbMeasure m2 = random_measure(rng, 3);
        Event e = 1 + rng() % 6;
        if (m1.prob(e) != m2.prob(e) || m1.prob(e) == 0) continue;
        WeightedBeliefSet bel({WeightedMeasure(m1, rat(1)), WeightedMeasure(m2, rat(1))});
        WeightedBeliefSet up = update(bel, e, UpdateRule::likelihood, space);
        for (const auto& wm : up.members()) REQUIRE(wm.weight == rat(1));
        ++exercised;
    }
    REQUIRE(exercised > 10);
}

TEST_CASE("c membership is monotone and convexifiable", "[property]") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t dim = 2 + rng() % 2;
        WeightedBeliefSet bel = random_belief(rng, dim, 1 + rng() % 3);
        std::vector<Rat> q;
        for (std::size_t i = 0; i < dim; ++i) q.push_back(rat(static_cast<long>(rng() % 4), 6));
        Rat total(0);
        for (const Rat& x : q) total += x;
        if (total > 1) continue;
        SubProbability sub(q);
        if (in_c(bel, sub)) REQUIRE(in_convex_c(bel, sub));

        std::vector<Rat> smaller = q;
        for (Rat& x : smaller)
            if (x > 0) x -= rat(1, 12);
        SubProbability less(smaller);
        if (in_c(bel, sub)) REQUIRE(in_c(bel, less));
        if (in_convex_c(bel, sub)) REQUIRE(in_convex_c(bel, less));
    }
}

TEST_CASE("upper expectation is homogeneous and monotone", "[property]") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t dim = 2 + rng() % 3;
        WeightedBeliefSet bel = random_belief(rng, dim, 1 + rng() % 3);
        std::vector<Rat> theta, bigger;
        for (std::size_t i = 0; i < dim; ++i) {
            theta.push_back(rat(static_cast<long>(rng() % 5), 3));
            bigger.push_back(theta.back() + rat(static_cast<long>(rng() % 3), 3));
        }
        Rat c = rat(1 + static_cast<long>(rng() % 5), 2);
        std::vector<Rat> scaled = theta;
        for (Rat& x : scaled) x *= c;
        REQUIRE(upper_expectation(bel, scaled) == c * upper_expectation(bel, theta));
        REQUIRE(upper_expectation(bel, bigger) >= upper_expectation(bel, theta));
    }
}
