#pragma once

// Independent feasibility oracle: enumerate basic solutions over all row
// subsets. The feasible region lives in x >= 0, hence is pointed, so it is
// nonempty iff some basic solution (num_vars active constraints out of the
// rows plus the nonnegativity facets) satisfies everything.

#include <vector>

#include "stabweight/exactlp.hpp"

namespace stabweight::testing {

namespace detail {

// Solves square * x = rhs by fraction-free forward elimination; returns false
// when singular.
inline bool solve_square(RationalMatrix square, RationalVector rhs, RationalVector& out) {
    const int n = static_cast<int>(square.rows());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r) {
            if (sgn(square(r, col)) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return false;
        if (pivot != col) {
            square.row(pivot).swap(square.row(col));
            std::swap(rhs[pivot], rhs[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            if (sgn(square(r, col)) == 0) continue;
            Rational factor = square(r, col) / square(col, col);
            for (int c = col; c < n; ++c) square(r, c) -= factor * square(col, c);
            rhs[r] -= factor * rhs[col];
        }
    }
    out = RationalVector::Zero(n);
    for (int r = n - 1; r >= 0; --r) {
        Rational acc = rhs[r];
        for (int c = r + 1; c < n; ++c) acc -= square(r, c) * out[c];
        out[r] = acc / square(r, r);
    }
    return true;
}

}  // namespace detail

inline bool oracle_feasible(const LinearProgram& lp) {
    const int n = lp.num_vars;
    if (n == 0) {
        for (const auto& row : lp.rows) {
            const int rel = cmp(Rational(0), row.rhs);
            if (row.relation == Relation::Equal && rel != 0) return false;
            if (row.relation == Relation::GreaterEq && rel < 0) return false;
            if (row.relation == Relation::LessEq && rel > 0) return false;
        }
        return true;
    }

    // Combined constraint list: the LP rows, then x_j >= 0 facets.
    const int total = static_cast<int>(lp.rows.size()) + n;
    auto row_coeffs = [&](int r, int j) -> Rational {
        if (r < static_cast<int>(lp.rows.size())) return lp.rows[r].coeffs[j];
        return r - static_cast<int>(lp.rows.size()) == j ? Rational(1) : Rational(0);
    };
    auto row_rhs = [&](int r) -> Rational {
        return r < static_cast<int>(lp.rows.size()) ? lp.rows[r].rhs : Rational(0);
    };

    std::vector<int> subset(n);
    for (int i = 0; i < n; ++i) subset[i] = i;
    while (true) {
        RationalMatrix square(n, n);
        RationalVector rhs(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) square(i, j) = row_coeffs(subset[i], j);
            rhs[i] = row_rhs(subset[i]);
        }
        RationalVector candidate;
        if (detail::solve_square(std::move(square), std::move(rhs), candidate) &&
            verify_witness(lp, candidate))
            return true;

        int i = n;
        while (i > 0 && subset[i - 1] == total - n + (i - 1)) --i;
        if (i == 0) break;
        ++subset[i - 1];
        for (int l = i; l < n; ++l) subset[l] = subset[l - 1] + 1;
    }
    return false;
}

}  // namespace stabweight::testing
