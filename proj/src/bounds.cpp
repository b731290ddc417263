#include "stabweight/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "stabweight/enumerator.hpp"
#include "stabweight/errors.hpp"

namespace stabweight {

int nk_lower_bound(int n, int k) {
    if (k < 1 || k >= n) throw std::invalid_argument("nk_lower_bound needs 1 <= k < n");
    return (2 * n + (n - k) - 1) / (n - k);
}

bool weight3_rate_rule(int n, int k, int d) {
    if (k < 1 || d < 2) throw std::invalid_argument("weight3_rate_rule needs k >= 1 and d >= 2");
    return d == 2 && 4 * k <= n;
}

LinearProgram standard_lp(int n, int k, int d) {
    if (n < 1 || k < 0 || k > n || d < 1)
        throw std::invalid_argument("standard_lp needs n >= 1, 0 <= k <= n, d >= 1");
    const IntegerMatrix& m = krawtchouk_matrix(n);
    const IntegerMatrix& ms = krawtchouk_matrix_signed(n);
    const Integer scale = pow2(static_cast<unsigned long>(n - k));

    LinearProgram lp;
    lp.num_vars = n;
    for (int i = 0; i <= n; ++i) {
        Rational rhs = Rational(-m(i, 0));
        if (i == 0) rhs += Rational(scale);
        LinearRow& row = lp.add_row(i < d ? Relation::Equal : Relation::GreaterEq, rhs);
        for (int j = 1; j <= n; ++j) {
            Rational c = Rational(m(i, j));
            if (i == j) c -= Rational(scale);
            row.coeffs[j - 1] = c;
        }
    }
    for (int i = 0; i <= n; ++i) {
        LinearRow& row = lp.add_row(Relation::GreaterEq, Rational(-ms(i, 0)));
        for (int j = 1; j <= n; ++j) row.coeffs[j - 1] = Rational(ms(i, j));
    }
    return lp;
}

namespace {

// Number of products of p generators of weight <= w-1 and q of weight w whose
// total weight bound p(w-1)+qw stays within m.
Integer growth_count(int n_minus_k, int y, int w, int m) {
    Integer total = 0;
    for (int p = 0; p <= n_minus_k - y; ++p) {
        long base = static_cast<long>(p) * (w - 1);
        if (base > m) break;
        int qmax = std::min<long>(y, (m - base) / w);
        Integer left = binomial(static_cast<unsigned long>(n_minus_k - y),
                                static_cast<unsigned long>(p));
        for (int q = 0; q <= qmax; ++q)
            total += left * binomial(static_cast<unsigned long>(y), static_cast<unsigned long>(q));
    }
    return total;
}

}  // namespace

LinearProgram weight_lp(int n, int k, int d, int w, const FamilyChoice& choice) {
    if (w < 2 || w > n) throw std::invalid_argument("weight_lp needs 2 <= w <= n");
    if (choice.y < 1 || choice.y > n - k)
        throw std::invalid_argument("inadmissible choice: y outside 1..n-k");
    if (choice.parity != 0 && choice.parity != 1)
        throw std::invalid_argument("inadmissible choice: parity must be 0 or 1");
    if (w % 2 == 1 && choice.parity != 1)
        throw std::invalid_argument("inadmissible choice: odd w forces parity 1");
    if (w % 2 == 0 && choice.y == n - k && choice.parity != 0)
        throw std::invalid_argument("inadmissible choice: even w with y = n-k forces parity 0");

    LinearProgram lp = standard_lp(n, k, d);

    // A_w >= y.
    lp.add_row(Relation::GreaterEq, Rational(choice.y)).coeffs[w - 1] = 1;

    // sum_{i<w} A_i <= 2^{n-k-y}, with A_0 = 1 moved to the right.
    {
        LinearRow& row = lp.add_row(
            Relation::LessEq,
            Rational(pow2(static_cast<unsigned long>(n - k - choice.y)) - 1));
        for (int i = 1; i <= w - 1; ++i) row.coeffs[i - 1] = 1;
    }

    // Cumulative growth: the products of low-weight generators already give
    // this many elements of weight <= m.
    for (int m = w - 1; m <= n - 1; ++m) {
        LinearRow& row =
            lp.add_row(Relation::GreaterEq, Rational(growth_count(n - k, choice.y, w, m) - 1));
        for (int i = 1; i <= m; ++i) row.coeffs[i - 1] = 1;
    }

    // Even-weight mass.
    {
        LinearRow& row = lp.add_row(
            Relation::Equal,
            Rational(pow2(static_cast<unsigned long>(n - k - choice.parity)) - 1));
        for (int i = 2; i <= n; i += 2) row.coeffs[i - 1] = 1;
    }

    if (choice.b_single) lp.add_row(Relation::Equal, Rational(0)).coeffs[0] = 1;

    if (choice.b_overlap) {
        LinearRow& row = lp.add_row(Relation::GreaterEq, Rational(2 * (n - k) - 1));
        for (int i = 1; i <= std::min(2 * w - 2, n); ++i) row.coeffs[i - 1] = 1;
    }
    return lp;
}

ExtendedInt WeightTable::wlb(int n, int k, int d) const {
    auto it = cells_.find({n, k, d});
    return it == cells_.end() ? ExtendedInt::infinity() : it->second.wlb;
}

const WeightCell* WeightTable::cell(int n, int k, int d) const {
    auto it = cells_.find({n, k, d});
    return it == cells_.end() ? nullptr : &it->second;
}

void WeightTable::set(int n, int k, int d, WeightCell cell) {
    cells_[{n, k, d}] = std::move(cell);
}

Rational r_dw(int n, int d, int w, const WeightTable& table) {
    Rational best(0);
    for (const auto& [key, cell] : table.cells()) {
        const auto& [cn, ck, cd] = key;
        if (cn >= n || cd < d) continue;
        if (!cell.wlb.is_finite() || cell.wlb > ExtendedInt(w)) continue;
        Rational rate(ck, cn);
        rate.canonicalize();
        if (rate > best) best = rate;
    }
    return best;
}

std::vector<FamilyChoice> admissible_choices(int n, int k, int d, int w,
                                             const WeightTable& table) {
    Rational rate(k, n);
    rate.canonicalize();
    const int b_single = ExtendedInt(w) < table.wlb(n - 1, k, d) ? 1 : 0;
    const int b_overlap = r_dw(n, d, w, table) < rate ? 1 : 0;

    std::vector<FamilyChoice> choices;
    const int y_low = std::max(1, 2 * n - (w - 1) * (n - k));
    for (int y = y_low; y <= n - k; ++y) {
        for (int parity = 0; parity <= 1; ++parity) {
            if (parity == 0 && w % 2 == 1) continue;
            if (parity == 1 && w % 2 == 0 && y == n - k) continue;
            choices.push_back(FamilyChoice{y, parity, b_single, b_overlap});
        }
    }
    return choices;
}

bool excluded(int n, int k, int d, int w, const WeightTable& table) {
    for (const FamilyChoice& choice : admissible_choices(n, k, d, w, table)) {
        if (feasible(weight_lp(n, k, d, w, choice)).status == LpStatus::Feasible) return false;
    }
    return true;
}

namespace {

struct RowResult {
    int d = 0;
    std::vector<std::pair<int, WeightCell>> cells;
};

RowResult compute_row(int n, int d, const WeightTable& table) {
    RowResult row{d, {}};
    for (int k = 1; k <= n; ++k) {
        if (d == 2 && 4 * k <= n) {
            row.cells.push_back({k, WeightCell{ExtendedInt(3), CellSource::RateRule, {}}});
            continue;
        }
        if (feasible(standard_lp(n, k, d)).status == LpStatus::Infeasible) {
            // No [[n,k,d]] code at this k; dropping logical qubits keeps a
            // code a code, so larger k cannot exist either.
            for (int kk = k; kk <= n; ++kk)
                row.cells.push_back({kk, WeightCell{ExtendedInt::infinity(), CellSource::NoCode, {}}});
            break;
        }
        const int w0 = std::max(4, nk_lower_bound(n, k));
        bool found = false;
        for (int w = w0; w <= n && !found; ++w) {
            for (const FamilyChoice& choice : admissible_choices(n, k, d, w, table)) {
                if (feasible(weight_lp(n, k, d, w, choice)).status == LpStatus::Feasible) {
                    row.cells.push_back(
                        {k, WeightCell{ExtendedInt(w),
                                       w == w0 ? CellSource::NkBound : CellSource::Lp, {}}});
                    found = true;
                    break;
                }
            }
        }
        if (!found)
            row.cells.push_back({k, WeightCell{ExtendedInt::infinity(), CellSource::NoCode, {}}});
    }
    return row;
}

}  // namespace

WeightTable compute_table(int max_n, const TableOptions& options) {
    if (max_n < 4) throw std::invalid_argument("compute_table needs max_n >= 4");
    WeightTable table(max_n);
    for (int n = 4; n <= max_n; ++n) {
        std::vector<int> ds;
        for (int d = 2; d <= (n + 1) / 2; ++d) ds.push_back(d);
        std::vector<RowResult> rows(ds.size());

        // Rows of one block length only read strictly smaller n, so they are
        // independent of each other.
        if (options.jobs > 1) {
            std::atomic<std::size_t> next{0};
            auto worker = [&]() {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= ds.size()) break;
                    rows[i] = compute_row(n, ds[i], table);
                }
            };
            std::vector<std::thread> pool;
            int width = std::min<int>(options.jobs, static_cast<int>(ds.size()));
            pool.reserve(width);
            for (int t = 0; t < width; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        } else {
            for (std::size_t i = 0; i < ds.size(); ++i) rows[i] = compute_row(n, ds[i], table);
        }

        for (const RowResult& row : rows) {
            for (const auto& [k, cell] : row.cells) table.set(n, k, row.d, cell);
            if (options.progress) {
                std::ostringstream msg;
                msg << "n=" << n << " d=" << row.d << " done (" << row.cells.size() << " cells)";
                options.progress(msg.str());
            }
        }
    }
    return table;
}

std::vector<TableOverride> parse_overrides(const std::string& text) {
    std::vector<TableOverride> overrides;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream fields(line);
        TableOverride o;
        if (!(fields >> o.n >> o.k >> o.d >> o.wlb) || o.wlb < 1)
            throw ParseError("override line " + std::to_string(line_no) +
                             ": expected 'n k d wlb citation...'");
        std::getline(fields, o.citation);
        std::size_t cite_start = o.citation.find_first_not_of(" \t");
        o.citation = cite_start == std::string::npos ? "" : o.citation.substr(cite_start);
        overrides.push_back(std::move(o));
    }
    return overrides;
}

std::vector<TableOverride> read_overrides(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open overrides file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_overrides(text.str());
}

void apply_overrides(WeightTable& table, const std::vector<TableOverride>& overrides) {
    for (const TableOverride& o : overrides) {
        const WeightCell* current = table.cell(o.n, o.k, o.d);
        if (current == nullptr) continue;
        if (current->wlb >= ExtendedInt(o.wlb)) continue;
        table.set(o.n, o.k, o.d, WeightCell{ExtendedInt(o.wlb), CellSource::Override, o.citation});
    }
}

const char* cell_source_name(CellSource source) {
    switch (source) {
        case CellSource::RateRule: return "rate-rule";
        case CellSource::NkBound: return "nk-bound";
        case CellSource::Lp: return "lp";
        case CellSource::NoCode: return "no-code";
        case CellSource::Override: return "override";
    }
    return "unknown";
}

void write_table_csv(const WeightTable& table, std::ostream& out) {
    out << "n,k,d,wlb,source\n";
    for (const auto& [key, cell] : table.cells()) {
        const auto& [n, k, d] = key;
        out << n << ',' << k << ',' << d << ',' << cell.wlb.str() << ','
            << cell_source_name(cell.source) << "\n";
    }
}

void write_table_json(const WeightTable& table, std::ostream& out) {
    out << "{\n  \"max_n\": " << table.max_n() << ",\n  \"cells\": [\n";
    bool first = true;
    for (const auto& [key, cell] : table.cells()) {
        const auto& [n, k, d] = key;
        if (!first) out << ",\n";
        first = false;
        out << "    {\"n\": " << n << ", \"k\": " << k << ", \"d\": " << d << ", \"wlb\": ";
        if (cell.wlb.is_finite())
            out << cell.wlb.value();
        else
            out << "\"inf\"";
        out << ", \"source\": \"" << cell_source_name(cell.source) << "\"";
        if (!cell.citation.empty()) {
            out << ", \"citation\": \"";
            for (char c : cell.citation) {
                if (c == '"' || c == '\\') out << '\\';
                out << c;
            }
            out << "\"";
        }
        out << "}";
    }
    out << "\n  ]\n}\n";
}

}  // namespace stabweight
