#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "stabweight/rational.hpp"

namespace stabweight {

enum class Relation { Equal, GreaterEq, LessEq };

struct LinearRow {
    RationalVector coeffs;
    Relation relation = Relation::Equal;
    Rational rhs;
};

// Feasibility system: rows over num_vars variables, all variables >= 0.
struct LinearProgram {
    int num_vars = 0;
    std::vector<LinearRow> rows;

    LinearRow& add_row(Relation relation, Rational rhs) {
        rows.push_back(LinearRow{RationalVector::Zero(num_vars), relation, std::move(rhs)});
        return rows.back();
    }
};

enum class LpStatus { Feasible, Infeasible };

// Feasible results carry an exact witness; Infeasible results carry an exact
// Farkas certificate: per-row multipliers lambda, nonnegative on inequality
// rows (interpreted against the row's <=-normalization, i.e. a GE row enters
// negated) and free on equality rows, whose combination c.x <= beta has
// c >= 0 componentwise and beta < 0 - impossible for x >= 0.
struct FeasibilityResult {
    LpStatus status = LpStatus::Infeasible;
    std::optional<RationalVector> witness;
    std::optional<RationalVector> certificate;
};

// Phase-1 simplex over exact rationals with the smallest-index anti-cycling
// rule. Deterministic; every returned witness or certificate is re-verified
// by substitution before the result is exposed.
FeasibilityResult feasible(const LinearProgram& lp);

bool verify_witness(const LinearProgram& lp, const RationalVector& witness);
bool verify_certificate(const LinearProgram& lp, const RationalVector& certificate);

// Line-oriented debug format: "vars N", then one row per line with exact
// fraction coefficients, a relation token (=, >=, <=), and the rhs.
void dump_lp(const LinearProgram& lp, std::ostream& out);
LinearProgram parse_lp(std::istream& in);

}  // namespace stabweight
