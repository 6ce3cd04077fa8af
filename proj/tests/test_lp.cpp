#include <regretlab/lp.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

using namespace regretlab;

TEST_CASE("hull domination in one dimension") {
    std::vector<std::vector<Rat>> gens = {{rat(1, 2)}};
    REQUIRE(dominated_in_hull(gens, {rat(1, 3)}));
    REQUIRE(dominated_in_hull(gens, {rat(1, 2)}));
    REQUIRE_FALSE(dominated_in_hull(gens, {rat(2, 3)}));
    REQUIRE(dominated_in_hull(gens, {rat(-5)}));
}

TEST_CASE("no generators means nothing is dominated") {
    REQUIRE_FALSE(dominated_in_hull({}, {rat(0)}));
}

TEST_CASE("two unit generators dominate the diagonal up to the midpoint") {
    std::vector<std::vector<Rat>> gens = {{rat(1), rat(0)}, {rat(0), rat(1)}};
    REQUIRE(dominated_in_hull(gens, {rat(1, 2), rat(1, 2)}));
    REQUIRE(dominated_in_hull(gens, {rat(1), rat(0)}));
    REQUIRE(dominated_in_hull(gens, {rat(0), rat(0)}));
    REQUIRE(dominated_in_hull(gens, {rat(1, 4), rat(3, 4)}));
    REQUIRE_FALSE(dominated_in_hull(gens, {rat(3, 5), rat(3, 5)}));
    REQUIRE_FALSE(dominated_in_hull(gens, {rat(1), rat(1, 100)}));
}

TEST_CASE("mixing is required, componentwise max is not enough") {
    std::vector<std::vector<Rat>> gens = {{rat(2, 3), rat(0)}, {rat(0), rat(2, 3)}};
    REQUIRE(dominated_in_hull(gens, {rat(1, 3), rat(1, 3)}));
    REQUIRE_FALSE(dominated_in_hull(gens, {rat(1, 3), rat(1, 2)}));
}

TEST_CASE("redundant generators do not change the answer") {
    std::vector<std::vector<Rat>> gens = {{rat(1), rat(0)}, {rat(0), rat(1)}};
    std::vector<std::vector<Rat>> more = gens;
    more.push_back({rat(1, 2), rat(1, 2)});
    more.push_back({rat(1, 4), rat(1, 4)});
    for (auto target : {std::vector<Rat>{rat(1, 2), rat(1, 2)}, {rat(3, 5), rat(3, 5)},
                        {rat(1), rat(0)}, {rat(9, 10), rat(1, 10)}})
        REQUIRE(dominated_in_hull(gens, target) == dominated_in_hull(more, target));
}

TEST_CASE("dimension mismatch throws") {
    REQUIRE_THROWS_AS(dominated_in_hull({{rat(1)}}, {rat(1), rat(2)}), std::invalid_argument);
}

TEST_CASE("grid search certificates are honored") {
    // If an explicit lambda on a coarse grid dominates the target, the LP
    // must also find the target feasible; and feasibility must be monotone
    // downward in the target.
    std::mt19937 rng(20260815);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t dim = 1 + rng() % 3;
        std::size_t m = 1 + rng() % 3;
        std::vector<std::vector<Rat>> gens(m, std::vector<Rat>(dim));
        for (auto& g : gens)
            for (auto& x : g) x = rat(static_cast<long>(rng() % 7), 6);
        std::vector<Rat> target(dim);
        for (auto& x : target) x = rat(static_cast<long>(rng() % 7), 6);

        bool grid_hit = false;
        const int steps = 6;
        std::vector<int> lam(m, 0);
        // Enumerate lambda vectors with entries in {0..steps}/steps summing to 1.
        std::function<void(std::size_t, int)> walk = [&](std::size_t j, int left) {
            if (grid_hit) return;
            if (j + 1 == m) {
                lam[j] = left;
                std::vector<Rat> mix(dim, rat(0));
                for (std::size_t k = 0; k < m; ++k)
                    for (std::size_t d = 0; d < dim; ++d)
                        mix[d] += rat(lam[k], steps) * gens[k][d];
                bool dom = true;
                for (std::size_t d = 0; d < dim; ++d)
                    if (mix[d] < target[d]) dom = false;
                grid_hit = grid_hit || dom;
                return;
            }
            for (int take = 0; take <= left; ++take) {
                lam[j] = take;
                walk(j + 1, left - take);
            }
        };
        walk(0, steps);

        bool lp = dominated_in_hull(gens, target);
        if (grid_hit) REQUIRE(lp);
        if (lp) {
            std::vector<Rat> smaller = target;
            for (auto& x : smaller) x -= rat(1, 5);
            REQUIRE(dominated_in_hull(gens, smaller));
        }
    }
}
