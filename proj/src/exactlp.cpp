#include "stabweight/exactlp.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabweight/errors.hpp"

namespace stabweight {

namespace {

// Dense phase-1 tableau. Columns: structural variables, then one slack per
// inequality row, then one artificial per row that needs one; rhs kept
// separately. The objective is min(sum of artificials).
class PhaseOneTableau {
public:
    explicit PhaseOneTableau(const LinearProgram& lp) : lp_(lp) {
        const int m = static_cast<int>(lp.rows.size());
        const int nv = lp.num_vars;

        flips_.assign(m, 1);
        std::vector<Relation> rel(m);
        for (int i = 0; i < m; ++i) {
            rel[i] = lp.rows[i].relation;
            if (sgn(lp.rows[i].rhs) < 0) {
                flips_[i] = -1;
                if (rel[i] == Relation::GreaterEq)
                    rel[i] = Relation::LessEq;
                else if (rel[i] == Relation::LessEq)
                    rel[i] = Relation::GreaterEq;
            }
        }

        slack_col_.assign(m, -1);
        artificial_col_.assign(m, -1);
        int next = nv;
        for (int i = 0; i < m; ++i) {
            if (rel[i] != Relation::Equal) slack_col_[i] = next++;
        }
        first_artificial_ = next;
        for (int i = 0; i < m; ++i) {
            if (rel[i] != Relation::LessEq) artificial_col_[i] = next++;
        }
        cols_ = next;

        table_ = RationalMatrix::Zero(m, cols_);
        rhs_ = RationalVector::Zero(m);
        basis_.assign(m, -1);
        for (int i = 0; i < m; ++i) {
            const auto& row = lp.rows[i];
            for (int j = 0; j < nv; ++j) {
                if (sgn(row.coeffs[j]) == 0) continue;
                table_(i, j) = flips_[i] < 0 ? Rational(-row.coeffs[j]) : row.coeffs[j];
            }
            rhs_[i] = flips_[i] < 0 ? Rational(-row.rhs) : row.rhs;
            if (slack_col_[i] >= 0) table_(i, slack_col_[i]) = rel[i] == Relation::LessEq ? 1 : -1;
            if (artificial_col_[i] >= 0) {
                table_(i, artificial_col_[i]) = 1;
                basis_[i] = artificial_col_[i];
            } else {
                basis_[i] = slack_col_[i];
            }
        }

        // Reduced costs r_j = c_j - z_j for cost 1 on artificials, 0 elsewhere.
        redcost_ = RationalVector::Zero(cols_);
        objective_ = 0;
        for (int j = first_artificial_; j < cols_; ++j) redcost_[j] = 1;
        for (int i = 0; i < m; ++i) {
            if (artificial_col_[i] < 0) continue;
            for (int j = 0; j < cols_; ++j) redcost_[j] -= table_(i, j);
            objective_ += rhs_[i];
        }
        banned_.assign(cols_, false);
    }

    // Runs Bland pivoting to optimality. Returns true when the phase-1
    // optimum is zero (original system feasible).
    bool solve() {
        const int m = static_cast<int>(lp_.rows.size());
        while (true) {
            int enter = -1;
            for (int j = 0; j < cols_; ++j) {
                if (!banned_[j] && sgn(redcost_[j]) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) break;

            int leave = -1;
            Rational best_ratio;
            for (int i = 0; i < m; ++i) {
                if (sgn(table_(i, enter)) <= 0) continue;
                Rational ratio = rhs_[i] / table_(i, enter);
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0)
                throw std::logic_error("phase-1 objective unbounded; tableau corrupted");
            pivot(leave, enter);
        }
        return sgn(objective_) == 0;
    }

    RationalVector extract_witness() const {
        RationalVector x = RationalVector::Zero(lp_.num_vars);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i] < lp_.num_vars) x[basis_[i]] = rhs_[i];
        }
        return x;
    }

    // Farkas multipliers over the original rows, in the <=-normalized
    // convention of FeasibilityResult.
    RationalVector extract_certificate() const {
        const int m = static_cast<int>(lp_.rows.size());
        RationalVector lambda(m);
        for (int i = 0; i < m; ++i) {
            // Dual value of standard-form row i, read off the reduced cost of
            // that row's initial basic column (unit column e_i).
            Rational y;
            if (artificial_col_[i] >= 0)
                y = Rational(1) - redcost_[artificial_col_[i]];
            else
                y = -redcost_[slack_col_[i]];

            Relation std_rel = lp_.rows[i].relation;
            if (flips_[i] < 0) {
                if (std_rel == Relation::GreaterEq)
                    std_rel = Relation::LessEq;
                else if (std_rel == Relation::LessEq)
                    std_rel = Relation::GreaterEq;
            }
            // <=-normalized standard rows coincide with <=-normalized original
            // rows for inequalities; equalities pick up the flip sign.
            if (std_rel == Relation::GreaterEq)
                lambda[i] = y;
            else if (std_rel == Relation::LessEq)
                lambda[i] = -y;
            else
                lambda[i] = flips_[i] < 0 ? y : Rational(-y);
        }
        return lambda;
    }

private:
    void pivot(int leave, int enter) {
        const int m = static_cast<int>(lp_.rows.size());
        Rational inv = table_(leave, enter);
        for (int j = 0; j < cols_; ++j) {
            if (sgn(table_(leave, j)) != 0) table_(leave, j) /= inv;
        }
        rhs_[leave] /= inv;
        table_(leave, enter) = 1;

        for (int i = 0; i < m; ++i) {
            if (i == leave) continue;
            Rational factor = table_(i, enter);
            if (sgn(factor) == 0) continue;
            for (int j = 0; j < cols_; ++j) {
                if (sgn(table_(leave, j)) != 0) table_(i, j) -= factor * table_(leave, j);
            }
            rhs_[i] -= factor * rhs_[leave];
            table_(i, enter) = 0;
        }

        Rational factor = redcost_[enter];
        if (sgn(factor) != 0) {
            for (int j = 0; j < cols_; ++j) {
                if (sgn(table_(leave, j)) != 0) redcost_[j] -= factor * table_(leave, j);
            }
            objective_ += factor * rhs_[leave];
            redcost_[enter] = 0;
        }

        int leaving_col = basis_[leave];
        if (leaving_col >= first_artificial_) banned_[leaving_col] = true;
        basis_[leave] = enter;
    }

    const LinearProgram& lp_;
    RationalMatrix table_;
    RationalVector rhs_;
    RationalVector redcost_;
    Rational objective_;
    std::vector<int> basis_;
    std::vector<int> slack_col_;
    std::vector<int> artificial_col_;
    std::vector<int> flips_;
    std::vector<bool> banned_;
    int first_artificial_ = 0;
    int cols_ = 0;
};

void check_shape(const LinearProgram& lp) {
    for (const auto& row : lp.rows) {
        if (row.coeffs.size() != lp.num_vars)
            throw DimensionError("row coefficient vector length does not match num_vars");
    }
}

}  // namespace

bool verify_witness(const LinearProgram& lp, const RationalVector& witness) {
    if (witness.size() != lp.num_vars) throw DimensionError("witness length mismatch");
    for (int j = 0; j < lp.num_vars; ++j) {
        if (sgn(witness[j]) < 0) return false;
    }
    for (const auto& row : lp.rows) {
        Rational lhs(0);
        for (int j = 0; j < lp.num_vars; ++j) {
            if (sgn(row.coeffs[j]) != 0 && sgn(witness[j]) != 0) lhs += row.coeffs[j] * witness[j];
        }
        const int rel = cmp(lhs, row.rhs);
        if (row.relation == Relation::Equal && rel != 0) return false;
        if (row.relation == Relation::GreaterEq && rel < 0) return false;
        if (row.relation == Relation::LessEq && rel > 0) return false;
    }
    return true;
}

bool verify_certificate(const LinearProgram& lp, const RationalVector& certificate) {
    if (certificate.size() != static_cast<Eigen::Index>(lp.rows.size()))
        throw DimensionError("certificate length mismatch");
    RationalVector combined = RationalVector::Zero(lp.num_vars);
    Rational beta(0);
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        const auto& row = lp.rows[i];
        Rational lambda = certificate[static_cast<Eigen::Index>(i)];
        if (row.relation != Relation::Equal && sgn(lambda) < 0) return false;
        if (sgn(lambda) == 0) continue;
        // <=-normalization: GE rows enter negated.
        Rational effective = row.relation == Relation::GreaterEq ? Rational(-lambda) : lambda;
        for (int j = 0; j < lp.num_vars; ++j) {
            if (sgn(row.coeffs[j]) != 0) combined[j] += effective * row.coeffs[j];
        }
        beta += effective * row.rhs;
    }
    if (sgn(beta) >= 0) return false;
    for (int j = 0; j < lp.num_vars; ++j) {
        if (sgn(combined[j]) < 0) return false;
    }
    return true;
}

namespace {

// Above this row count the dense tableau becomes the bottleneck (entry
// growth makes every pivot expensive), so large systems go through row
// generation instead. Small systems, including every LP the weight tables
// produce, solve directly.
constexpr std::size_t kDirectRowLimit = 96;
constexpr std::size_t kRowsPerRound = 16;

FeasibilityResult feasible_direct(const LinearProgram& lp) {
    PhaseOneTableau tableau(lp);
    FeasibilityResult result;
    if (tableau.solve()) {
        result.status = LpStatus::Feasible;
        result.witness = tableau.extract_witness();
        if (!verify_witness(lp, *result.witness))
            throw std::logic_error("simplex produced a witness that fails substitution");
    } else {
        result.status = LpStatus::Infeasible;
        result.certificate = tableau.extract_certificate();
        if (!verify_certificate(lp, *result.certificate))
            throw std::logic_error("simplex produced a certificate that fails verification");
    }
    return result;
}

// Exact row generation: solve the subsystem of active rows, then either the
// subsystem is infeasible (its certificate, padded with zeros, refutes the
// full system) or its witness is checked against all remaining rows and the
// most violated ones join the active set. Terminates because the active set
// grows every round; both outcomes are re-verified against the full system.
FeasibilityResult feasible_row_generation(const LinearProgram& lp) {
    const std::size_t num_rows = lp.rows.size();
    std::vector<char> in_active(num_rows, 0);
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < num_rows; ++i) {
        if (lp.rows[i].relation == Relation::Equal) {
            active.push_back(i);
            in_active[i] = 1;
        }
    }

    for (;;) {
        LinearProgram sub;
        sub.num_vars = lp.num_vars;
        sub.rows.reserve(active.size());
        for (std::size_t i : active) sub.rows.push_back(lp.rows[i]);
        FeasibilityResult res = feasible_direct(sub);

        if (res.status == LpStatus::Infeasible) {
            RationalVector full = RationalVector::Zero(static_cast<Eigen::Index>(num_rows));
            for (std::size_t pos = 0; pos < active.size(); ++pos)
                full[static_cast<Eigen::Index>(active[pos])] =
                    (*res.certificate)[static_cast<Eigen::Index>(pos)];
            if (!verify_certificate(lp, full))
                throw std::logic_error("row generation produced a bad certificate");
            FeasibilityResult result;
            result.status = LpStatus::Infeasible;
            result.certificate = std::move(full);
            return result;
        }

        const RationalVector& x = *res.witness;
        // (violation / row scale, row index) for every violated inactive row.
        std::vector<std::pair<Rational, std::size_t>> violated;
        for (std::size_t i = 0; i < num_rows; ++i) {
            if (in_active[i]) continue;
            const LinearRow& row = lp.rows[i];
            Rational lhs(0);
            for (int j = 0; j < lp.num_vars; ++j) {
                if (sgn(row.coeffs[j]) != 0 && sgn(x[j]) != 0) lhs += row.coeffs[j] * x[j];
            }
            const int rel = cmp(lhs, row.rhs);
            bool bad = (row.relation == Relation::Equal && rel != 0) ||
                       (row.relation == Relation::GreaterEq && rel < 0) ||
                       (row.relation == Relation::LessEq && rel > 0);
            if (!bad) continue;
            Rational scale(0);
            for (int j = 0; j < lp.num_vars; ++j) {
                Rational mag = abs(row.coeffs[j]);
                if (mag > scale) scale = mag;
            }
            if (sgn(scale) == 0) scale = 1;
            violated.push_back({abs(lhs - row.rhs) / scale, i});
        }

        if (violated.empty()) {
            if (!verify_witness(lp, x))
                throw std::logic_error("row generation produced a bad witness");
            return res;
        }

        std::sort(violated.begin(), violated.end(), [](const auto& a, const auto& b) {
            const int c = cmp(a.first, b.first);
            return c != 0 ? c > 0 : a.second < b.second;
        });
        const std::size_t take = std::min(kRowsPerRound, violated.size());
        for (std::size_t t = 0; t < take; ++t) {
            active.push_back(violated[t].second);
            in_active[violated[t].second] = 1;
        }
    }
}

}  // namespace

FeasibilityResult feasible(const LinearProgram& lp) {
    check_shape(lp);
    if (lp.rows.size() <= kDirectRowLimit) return feasible_direct(lp);
    return feasible_row_generation(lp);
}

void dump_lp(const LinearProgram& lp, std::ostream& out) {
    out << "vars " << lp.num_vars << "\n";
    for (const auto& row : lp.rows) {
        for (int j = 0; j < lp.num_vars; ++j) {
            if (j) out << ' ';
            out << row.coeffs[j].get_str();
        }
        const char* rel = row.relation == Relation::Equal      ? "="
                          : row.relation == Relation::GreaterEq ? ">="
                                                                : "<=";
        out << ' ' << rel << ' ' << row.rhs.get_str() << "\n";
    }
}

LinearProgram parse_lp(std::istream& in) {
    std::string token;
    if (!(in >> token) || token != "vars") throw ParseError("LP dump must start with 'vars'");
    LinearProgram lp;
    if (!(in >> lp.num_vars) || lp.num_vars < 0) throw ParseError("bad variable count");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row_in(line);
        std::vector<std::string> tokens;
        while (row_in >> token) tokens.push_back(token);
        if (tokens.size() != static_cast<std::size_t>(lp.num_vars) + 2)
            throw ParseError("LP row has the wrong number of fields");
        LinearRow row;
        row.coeffs = RationalVector::Zero(lp.num_vars);
        for (int j = 0; j < lp.num_vars; ++j) row.coeffs[j] = rational_from_string(tokens[j]);
        const std::string& rel = tokens[lp.num_vars];
        if (rel == "=")
            row.relation = Relation::Equal;
        else if (rel == ">=")
            row.relation = Relation::GreaterEq;
        else if (rel == "<=")
            row.relation = Relation::LessEq;
        else
            throw ParseError("bad relation token: " + rel);
        row.rhs = rational_from_string(tokens[lp.num_vars + 1]);
        lp.rows.push_back(std::move(row));
    }
    return lp;
}

}  // namespace stabweight
