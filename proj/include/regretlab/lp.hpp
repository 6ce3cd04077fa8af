#pragma once

// Exact linear-programming feasibility for one fixed query shape: does some
// convex combination of generator vectors weakly dominate a target vector
// componentwise? Solved as a phase-1 simplex over GMP rationals with Bland's
// rule, so the answer is exact and the pivoting always terminates. Problem
// sizes here are tiny (a dozen rows, a few dozen columns), which makes the
// dense tableau with recomputed reduced costs entirely adequate.

#include <regretlab/rational.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace regretlab {

namespace detail {

// Minimize cost.x subject to A x = b, x >= 0, where b >= 0 is ensured by the
// caller. Returns the optimal objective value. Assumes the all-artificial
// starting basis supplied in `basis` (one artificial per row, appended as
// the last `rows` columns of A with identity coefficients).
inline Rat phase1_optimum(std::vector<std::vector<Rat>>& tab, std::vector<Rat>& rhs,
                          const std::vector<Rat>& cost, std::vector<std::size_t>& basis) {
    const std::size_t rows = tab.size();
    const std::size_t cols = cost.size();
    for (;;) {
        // Reduced costs d_j = c_j - sum_r c_basis[r] * tab[r][j].
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols && enter == cols; ++j) {
            Rat d = cost[j];
            for (std::size_t r = 0; r < rows; ++r)
                if (cost[basis[r]] != 0) d -= cost[basis[r]] * tab[r][j];
            if (d < 0) enter = j;  // Bland: first improving column
        }
        if (enter == cols) break;
        std::size_t leave = rows;
        Rat best_ratio;
        for (std::size_t r = 0; r < rows; ++r) {
            if (tab[r][enter] <= 0) continue;
            Rat ratio = rhs[r] / tab[r][enter];
            if (leave == rows || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave == rows) throw std::logic_error("phase-1 problem unbounded");
        Rat pivot = tab[leave][enter];
        for (std::size_t j = 0; j < cols; ++j) tab[leave][j] /= pivot;
        rhs[leave] /= pivot;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == leave || tab[r][enter] == 0) continue;
            Rat factor = tab[r][enter];
            for (std::size_t j = 0; j < cols; ++j) tab[r][j] -= factor * tab[leave][j];
            rhs[r] -= factor * rhs[leave];
        }
        basis[leave] = enter;
    }
    Rat value(0);
    for (std::size_t r = 0; r < rows; ++r) value += cost[basis[r]] * rhs[r];
    return value;
}

}  // namespace detail

// True iff there exist lambda_j >= 0 with sum lambda_j = 1 such that
// sum_j lambda_j * gens[j] >= target componentwise. All generator vectors
// must share the target's dimension.
inline bool dominated_in_hull(const std::vector<std::vector<Rat>>& gens,
                              const std::vector<Rat>& target) {
    const std::size_t n = target.size();
    const std::size_t m = gens.size();
    if (m == 0) return false;
    for (const auto& g : gens)
        if (g.size() != n) throw std::invalid_argument("generator dimension mismatch");

    // Equality form: sum_j lambda_j g_j[i] - s_i = p_i (i < n); sum lambda = 1.
    // Columns: m lambdas, n slacks, rows artificials.
    const std::size_t rows = n + 1;
    const std::size_t real_cols = m + n;
    const std::size_t cols = real_cols + rows;
    std::vector<std::vector<Rat>> tab(rows, std::vector<Rat>(cols, Rat(0)));
    std::vector<Rat> rhs(rows, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) tab[i][j] = gens[j][i];
        tab[i][m + i] = Rat(-1);
        rhs[i] = target[i];
        if (rhs[i] < 0) {
            for (std::size_t j = 0; j < real_cols; ++j) tab[i][j] = -tab[i][j];
            rhs[i] = -rhs[i];
        }
    }
    for (std::size_t j = 0; j < m; ++j) tab[n][j] = Rat(1);
    rhs[n] = Rat(1);

    std::vector<Rat> cost(cols, Rat(0));
    std::vector<std::size_t> basis(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        tab[r][real_cols + r] = Rat(1);
        cost[real_cols + r] = Rat(1);
        basis[r] = real_cols + r;
    }
    return detail::phase1_optimum(tab, rhs, cost, basis) == 0;
}

}  // namespace regretlab
