#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "linalg.hpp"
#include "rational.hpp"

namespace bellbox {

// Outcome of an exact equality-form feasibility problem: find x >= 0 with
// A x = b. Either a feasible point or a Farkas certificate y with
// yᵀA <= 0 componentwise and yᵀb > 0.
struct LpFeasibility {
    bool feasible = false;
    std::vector<Rational> point;  // size cols(A) when feasible
    std::vector<Rational> farkas; // size rows(A) when infeasible
};

// Phase-1 simplex over the rationals with Bland's anti-cycling rule:
// entering variable is the lowest-index column with a negative reduced cost,
// the leaving row breaks ratio ties by the lowest basic-variable index.
// Every verdict is exact; pivot order is deterministic, so certificates are
// reproducible across runs.
inline LpFeasibility solve_equality_feasibility(const RationalMatrix& a,
                                                std::vector<Rational> b) {
    const std::size_t rows = a.rows();
    const std::size_t structural = a.cols();
    const std::size_t total = structural + rows;  // artificials come after

    // Tableau: rows x (structural + artificial + rhs), artificial basis.
    // Rows with negative rhs are negated first so the artificial start is
    // feasible; the sign flips are undone when the Farkas vector is read.
    std::vector<int> row_sign(rows, 1);
    RationalMatrix t(rows, total + 1);
    for (std::size_t i = 0; i < rows; ++i) {
        if (sign(b[i]) < 0) row_sign[i] = -1;
        for (std::size_t j = 0; j < structural; ++j)
            t.at(i, j) = row_sign[i] > 0 ? a.at(i, j) : -a.at(i, j);
        t.at(i, structural + i) = 1;
        t.at(i, total) = row_sign[i] > 0 ? b[i] : -b[i];
    }

    // Reduced-cost row for min Σ(artificials): cost[j] = c_j - Σ_i t(i, j).
    std::vector<Rational> cost(total + 1);
    for (std::size_t j = 0; j <= total; ++j) {
        Rational colsum = 0;
        for (std::size_t i = 0; i < rows; ++i) colsum += t.at(i, j);
        cost[j] = (j >= structural && j < total ? Rational(1) : Rational(0)) - colsum;
    }

    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) basis[i] = structural + i;

    while (true) {
        std::size_t entering = total;
        for (std::size_t j = 0; j < total; ++j) {
            if (sign(cost[j]) < 0) {
                entering = j;
                break;
            }
        }
        if (entering == total) break;

        std::size_t leaving = rows;
        Rational best_ratio;
        for (std::size_t i = 0; i < rows; ++i) {
            if (sign(t.at(i, entering)) <= 0) continue;
            Rational ratio = t.at(i, total) / t.at(i, entering);
            if (leaving == rows || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leaving])) {
                leaving = i;
                best_ratio = ratio;
            }
        }
        if (leaving == rows) {
            // Unbounded phase-1 objective cannot happen (it is bounded below
            // by 0); reaching here means the tableau is corrupt.
            throw Error("phase-1 simplex lost boundedness");
        }

        // Pivot on (leaving, entering).
        const Rational pivot = t.at(leaving, entering);
        for (std::size_t j = 0; j <= total; ++j) t.at(leaving, j) /= pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leaving || sign(t.at(i, entering)) == 0) continue;
            const Rational f = t.at(i, entering);
            for (std::size_t j = 0; j <= total; ++j) {
                if (sign(t.at(leaving, j)) != 0) t.at(i, j) -= f * t.at(leaving, j);
            }
        }
        if (sign(cost[entering]) != 0) {
            const Rational f = cost[entering];
            for (std::size_t j = 0; j <= total; ++j) {
                if (sign(t.at(leaving, j)) != 0) cost[j] -= f * t.at(leaving, j);
            }
        }
        basis[leaving] = entering;
    }

    // The cost row carries the negated objective value in its rhs slot.
    Rational objective = -cost[total];

    LpFeasibility out;
    if (sign(objective) == 0) {
        out.feasible = true;
        out.point.assign(structural, Rational(0));
        for (std::size_t i = 0; i < rows; ++i)
            if (basis[i] < structural) out.point[basis[i]] = t.at(i, total);
        return out;
    }

    // Farkas vector from the final reduced costs of the artificial columns:
    // y_i = 1 - cost[artificial_i], then undo the row sign flips.
    out.feasible = false;
    out.farkas.assign(rows, Rational(0));
    for (std::size_t i = 0; i < rows; ++i) {
        Rational y = Rational(1) - cost[structural + i];
        out.farkas[i] = row_sign[i] > 0 ? y : -y;
    }
    return out;
}

}  // namespace bellbox
