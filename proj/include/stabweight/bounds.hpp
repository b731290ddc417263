#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "stabweight/exactlp.hpp"
#include "stabweight/extint.hpp"
#include "stabweight/rational.hpp"

namespace stabweight {

// ceil(2n / (n-k)): every code with k >= 1 and d >= 2 has a generator of at
// least this weight in any generating set.
int nk_lower_bound(int n, int k);

// True iff weight 3 is not excluded outright: weight-3 codes force d = 2 and
// rate k/n <= 1/4.
bool weight3_rate_rule(int n, int k, int d);

// Feasibility system every [[n,k,d]] code's enumerator satisfies, in the
// variables A_1..A_n (A_0 = 1 substituted, all variables >= 0):
// MacWilliams rows sum_j (M_ij - 2^{n-k} delta_ij) A_j {=,>=} 2^{n-k} delta_i0
// - M_i0 (equality for i < d), and shadow rows sum_j M~_ij A_j >= -M~_i0.
LinearProgram standard_lp(int n, int k, int d);

// Discrete side choices of the weight-constrained family. y counts the
// weight-w members of a weight-optimal generating set; parity selects which
// even-weight mass equation holds; the b flags enable the A_1 = 0 and
// generator-overlap rows.
struct FamilyChoice {
    int y = 1;
    int parity = 0;
    int b_single = 0;
    int b_overlap = 0;
};

// standard_lp plus the weight-induced rows for a hypothetical [[n,k,d;w]]
// code under the given choice:
//   A_w >= y,
//   sum_{i<w} A_i <= 2^{n-k-y},
//   cumulative growth rows for M = w-1..n-1,
//   even-weight mass = 2^{n-k-parity},
//   b_single: A_1 = 0,
//   b_overlap: sum_{i<=min(2w-2,n)} A_i >= 2(n-k)-1.
LinearProgram weight_lp(int n, int k, int d, int w, const FamilyChoice& choice);

enum class CellSource { RateRule, NkBound, Lp, NoCode, Override };

const char* cell_source_name(CellSource source);

struct WeightCell {
    ExtendedInt wlb;
    CellSource source = CellSource::NoCode;
    std::string citation;  // nonempty only for overrides
};

// W_LB(n,k,d) for 4 <= n <= max_n, 2 <= d <= (n+1)/2, 1 <= k <= n. Lookups
// outside the stored range return Infinity (no code is known to exist there,
// and Infinity is the vacuous lower bound).
class WeightTable {
public:
    using Key = std::tuple<int, int, int>;  // (n, k, d)

    explicit WeightTable(int max_n) : max_n_(max_n) {}

    int max_n() const { return max_n_; }
    ExtendedInt wlb(int n, int k, int d) const;
    const WeightCell* cell(int n, int k, int d) const;
    void set(int n, int k, int d, WeightCell cell);
    const std::map<Key, WeightCell>& cells() const { return cells_; }

private:
    int max_n_ = 0;
    std::map<Key, WeightCell> cells_;
};

// max k'/n' over table cells with n' < n, d' >= d and wlb <= w; 0 when no
// such cell exists. A rate below k/n certifies that an [[n,k,d;w]] code
// cannot factor into smaller codes.
Rational r_dw(int n, int d, int w, const WeightTable& table);

// All admissible (y, parity, b_single, b_overlap) tuples for the candidate
// [[n,k,d;w]], in deterministic (y ascending, parity ascending) order. The b
// flags are fixed by the table: b_single = 1[w < wlb(n-1,k,d)], b_overlap =
// 1[r_dw(n,d,w) < k/n].
std::vector<FamilyChoice> admissible_choices(int n, int k, int d, int w, const WeightTable& table);

// True iff weight_lp is infeasible for every admissible choice, certifying
// that no [[n,k,d;w]] stabilizer code exists.
bool excluded(int n, int k, int d, int w, const WeightTable& table);

struct TableOptions {
    int jobs = 1;
    std::function<void(const std::string&)> progress;  // called per (n,d) row
};

// Fills the whole table for 4 <= n <= max_n by the increasing-n sweep:
// rate-rule shortcut for d = 2 with 4k <= n; standard-LP infeasibility kills
// the cell and every larger k for the same (n,d); otherwise the first
// feasible w in max{4, ceil(2n/(n-k))}..n wins, and exhaustion means no
// [[n,k,d]] code has bounded weight, i.e. no code at all.
WeightTable compute_table(int max_n, const TableOptions& options = {});

struct TableOverride {
    int n = 0, k = 0, d = 0;
    long long wlb = 0;
    std::string citation;
};

// Override file: lines "n k d wlb citation text..."; '#' comments. Each entry
// documents a cell raised by an argument outside the LP family.
std::vector<TableOverride> read_overrides(const std::string& path);
std::vector<TableOverride> parse_overrides(const std::string& text);

// Raises matching cells to the override value (never lowers), tagging them
// with the citation.
void apply_overrides(WeightTable& table, const std::vector<TableOverride>& overrides);

// CSV columns n,k,d,wlb,source; wlb printed as "inf" for Infinity.
void write_table_csv(const WeightTable& table, std::ostream& out);
void write_table_json(const WeightTable& table, std::ostream& out);

}  // namespace stabweight
