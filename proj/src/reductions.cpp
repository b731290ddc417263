#include "stabweight/reductions.hpp"

#include <bit>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "stabweight/errors.hpp"

namespace stabweight {

namespace {

constexpr std::size_t kRankBudget = 20;  // 2^r enumeration cap for the deciders

// Incremental F2 rank tracker. Each stored row keeps a private pivot bit, so
// reducing a candidate against all pivots leaves zero iff it is in the span.
struct BitEliminator {
    std::vector<BitVector> rows;
    std::vector<std::size_t> pivots;

    bool insert(BitVector v) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (v.get(pivots[i])) v ^= rows[i];
        }
        if (v.none()) return false;
        pivots.push_back(v.lowest_set());
        rows.push_back(std::move(v));
        return true;
    }

    std::size_t rank() const { return rows.size(); }
};

// In-place reduced row echelon form over the first `cols` columns; rows may
// carry extra columns (augmented systems) which are swept along. Returns the
// pivot column of each of the first rank rows.
std::vector<std::size_t> rref(std::vector<BitVector>& rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows.size(); ++col) {
        std::size_t sel = row;
        while (sel < rows.size() && !rows[sel].get(col)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[row], rows[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != row && rows[i].get(col)) rows[i] ^= rows[row];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

void check_shape(const MLDInstance& inst) {
    if (inst.m < 1 || inst.n < 1)
        throw DimensionError("decoding instance needs at least one row and one column");
    if (inst.rows.size() != static_cast<std::size_t>(inst.m))
        throw DimensionError("row count does not match m");
    for (const auto& row : inst.rows) {
        if (row.size() != static_cast<std::size_t>(inst.n))
            throw DimensionError("matrix row length does not match n");
    }
    if (inst.syndrome.size() != static_cast<std::size_t>(inst.m))
        throw DimensionError("syndrome length does not match m");
}

void check_shape(const SBPInstance& inst) {
    if (inst.ambient < 1) throw DimensionError("ambient dimension must be positive");
    for (const auto& v : inst.basis) {
        if (v.size() != static_cast<std::size_t>(inst.ambient))
            throw DimensionError("basis vector length does not match the ambient dimension");
    }
}

}  // namespace

void validate(const MLDInstance& inst) {
    check_shape(inst);
    std::vector<BitVector> copy = inst.rows;
    if (rref(copy, inst.n).size() != static_cast<std::size_t>(inst.m))
        throw std::invalid_argument("check matrix must have full row rank");
}

void validate(const SBPInstance& inst) {
    check_shape(inst);
    BitEliminator elim;
    for (const auto& v : inst.basis) {
        if (!elim.insert(v))
            throw std::invalid_argument("basis vectors must be independent");
    }
}

std::optional<SBPInstance> mld_to_sbp(const MLDInstance& inst) {
    check_shape(inst);
    std::size_t n = static_cast<std::size_t>(inst.n);

    // Eliminate the augmented system [H | s]; column n holds the syndrome.
    std::vector<BitVector> aug(inst.rows.size(), BitVector(n + 1));
    for (std::size_t i = 0; i < inst.rows.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i].set(j, inst.rows[i].get(j));
        aug[i].set(n, inst.syndrome.get(i));
    }
    std::vector<std::size_t> pivots = rref(aug, n);
    for (std::size_t i = pivots.size(); i < aug.size(); ++i) {
        if (aug[i].get(n)) return std::nullopt;  // 0 = 1 row: no solution exists
    }

    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : pivots) is_pivot[p] = true;

    SBPInstance out;
    out.ambient = 2 * inst.n;
    out.t = inst.n + inst.t;

    // Kernel vectors of H, padded with n trailing zeros.
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        BitVector v(2 * n);
        v.set(f, true);
        for (std::size_t i = 0; i < pivots.size(); ++i) v.set(pivots[i], aug[i].get(f));
        out.basis.push_back(std::move(v));
    }

    // One particular solution of Hx = s, with all ones appended; the fixed
    // tail guarantees independence and shifts every weight by exactly n.
    BitVector particular(2 * n);
    for (std::size_t i = 0; i < pivots.size(); ++i) particular.set(pivots[i], aug[i].get(n));
    for (std::size_t j = n; j < 2 * n; ++j) particular.set(j, true);
    out.basis.push_back(std::move(particular));
    return out;
}

MWSGInstance sbp_to_mwsg(const SBPInstance& inst) {
    check_shape(inst);
    if (inst.basis.empty())
        return {StabilizerGenerators(static_cast<std::size_t>(inst.ambient)), inst.t};
    std::vector<PauliOperator> gens;
    gens.reserve(inst.basis.size());
    for (const auto& v : inst.basis) {
        BitVector x(v.size());
        gens.emplace_back(std::move(x), v, 0);  // Z on every marked position
    }
    MWSGInstance out{StabilizerGenerators::from_generators(std::move(gens)), inst.t};
    return out;
}

bool decide_mld(const MLDInstance& inst) {
    check_shape(inst);
    if (inst.n > static_cast<int>(kRankBudget))
        throw BudgetError("error enumeration over 2^" + std::to_string(inst.n) +
                          " vectors exceeds the column budget of " + std::to_string(kRankBudget));

    // Gray-code walk over all error vectors: acc tracks H e for the current
    // pattern, the pattern itself is step ^ (step >> 1).
    BitVector acc(static_cast<std::size_t>(inst.m));
    if (acc == inst.syndrome && inst.t >= 0) return true;
    std::uint64_t total = std::uint64_t{1} << inst.n;
    std::vector<BitVector> cols(static_cast<std::size_t>(inst.n),
                                BitVector(static_cast<std::size_t>(inst.m)));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < inst.rows.size(); ++i) cols[j].set(i, inst.rows[i].get(j));
    }
    for (std::uint64_t step = 1; step < total; ++step) {
        acc ^= cols[std::countr_zero(step)];
        std::uint64_t pattern = step ^ (step >> 1);
        if (acc == inst.syndrome && std::popcount(pattern) <= inst.t) return true;
    }
    return false;
}

bool decide_sbp(const SBPInstance& inst) {
    check_shape(inst);
    std::size_t r = inst.basis.size();
    if (r > kRankBudget)
        throw BudgetError("span enumeration over 2^" + std::to_string(r) +
                          " vectors exceeds the rank budget of " + std::to_string(kRankBudget));

    BitEliminator full;
    for (const auto& v : inst.basis) full.insert(v);
    std::size_t target = full.rank();
    if (target == 0) return true;

    // Any spanning set of low-weight elements contains an independent
    // spanning subset of the same maximum weight, so collecting every element
    // of weight <= t and measuring the rank settles the question.
    BitEliminator low;
    BitVector current(static_cast<std::size_t>(inst.ambient));
    std::uint64_t total = std::uint64_t{1} << r;
    for (std::uint64_t step = 1; step < total; ++step) {
        current ^= inst.basis[std::countr_zero(step)];
        if (static_cast<int>(current.popcount()) <= inst.t && low.insert(current)) {
            if (low.rank() == target) return true;
        }
    }
    return false;
}

bool decide_mwsg(const MWSGInstance& inst) {
    const StabilizerGenerators& g = inst.generators;
    SymplecticBasis low(g.num_qubits());
    for_each_group_element(
        g,
        [&](const PauliOperator& p) {
            if (static_cast<int>(p.weight()) <= inst.t && !p.is_identity_letters())
                low.insert(p);
        },
        kRankBudget);
    return low.rank() == g.rank();
}

namespace {

struct Line {
    int number;  // 1-based, in the original text
    std::string text;
};

std::vector<Line> meaningful_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        std::size_t stop = line.find_last_not_of(" \t\r");
        std::string body = line.substr(start, stop - start + 1);
        if (body[0] == '#') continue;
        out.push_back({number, std::move(body)});
    }
    return out;
}

bool is_bit_row(const std::string& s) {
    for (char c : s) {
        if (c != '0' && c != '1') return false;
    }
    return !s.empty();
}

BitVector parse_bit_row(const Line& line) {
    if (!is_bit_row(line.text))
        throw ParseError("line " + std::to_string(line.number) + ": expected a row of 0/1");
    BitVector v(line.text.size());
    for (std::size_t i = 0; i < line.text.size(); ++i) v.set(i, line.text[i] == '1');
    return v;
}

// Parses "<key> <nonnegative int>" lines such as "t 3" or "n 12".
std::optional<int> keyed_int(const Line& line, const std::string& key) {
    std::istringstream in(line.text);
    std::string word;
    long long value = -1;
    if (!(in >> word) || word != key || !(in >> value) || value < 0 || (in >> word))
        return std::nullopt;
    return static_cast<int>(value);
}

int require_threshold(const std::vector<Line>& lines) {
    if (lines.empty()) throw ParseError("empty instance");
    auto t = keyed_int(lines.back(), "t");
    if (!t)
        throw ParseError("line " + std::to_string(lines.back().number) +
                         ": expected the threshold line 't <int>'");
    return *t;
}

}  // namespace

MLDInstance parse_mld(const std::string& text) {
    std::vector<Line> lines = meaningful_lines(text);
    int t = require_threshold(lines);
    lines.pop_back();
    if (lines.size() < 2)
        throw ParseError("expected at least one matrix row and a syndrome row");

    MLDInstance inst;
    inst.t = t;
    inst.m = static_cast<int>(lines.size()) - 1;
    for (std::size_t i = 0; i + 1 < lines.size(); ++i)
        inst.rows.push_back(parse_bit_row(lines[i]));
    inst.n = static_cast<int>(inst.rows.front().size());
    for (std::size_t i = 1; i < inst.rows.size(); ++i) {
        if (inst.rows[i].size() != inst.rows.front().size())
            throw ParseError("line " + std::to_string(lines[i].number) +
                             ": matrix rows must share one length");
    }
    inst.syndrome = parse_bit_row(lines.back());
    if (inst.syndrome.size() != static_cast<std::size_t>(inst.m))
        throw ParseError("line " + std::to_string(lines.back().number) +
                         ": the syndrome row must have one bit per matrix row");
    return inst;
}

SBPInstance parse_sbp(const std::string& text) {
    std::vector<Line> lines = meaningful_lines(text);
    int t = require_threshold(lines);
    lines.pop_back();

    SBPInstance inst;
    inst.t = t;
    std::size_t first = 0;
    std::optional<int> declared;
    if (!lines.empty()) {
        declared = keyed_int(lines.front(), "n");
        if (declared) first = 1;
    }
    for (std::size_t i = first; i < lines.size(); ++i)
        inst.basis.push_back(parse_bit_row(lines[i]));

    if (declared) {
        inst.ambient = *declared;
    } else if (!inst.basis.empty()) {
        inst.ambient = static_cast<int>(inst.basis.front().size());
    } else {
        throw ParseError("an empty basis needs an explicit 'n <int>' line");
    }
    for (std::size_t i = 0; i < inst.basis.size(); ++i) {
        if (inst.basis[i].size() != static_cast<std::size_t>(inst.ambient))
            throw ParseError("line " + std::to_string(lines[first + i].number) +
                             ": vector length does not match the ambient dimension");
    }
    return inst;
}

MWSGInstance parse_mwsg(const std::string& text) {
    std::vector<Line> lines = meaningful_lines(text);
    int t = require_threshold(lines);
    lines.pop_back();

    std::size_t first = 0;
    std::optional<int> declared;
    if (!lines.empty()) {
        declared = keyed_int(lines.front(), "n");
        if (declared) first = 1;
    }
    std::string joined;
    for (std::size_t i = first; i < lines.size(); ++i) {
        joined += lines[i].text;
        joined += '\n';
    }
    std::vector<PauliOperator> gens = read_pauli_lines(joined);
    if (gens.empty() && !declared)
        throw ParseError("an empty generator list needs an explicit 'n <int>' line");
    if (declared && !gens.empty() && gens.front().num_qubits() != static_cast<std::size_t>(*declared))
        throw ParseError("declared qubit count does not match the generators");

    std::size_t n = declared ? static_cast<std::size_t>(*declared) : gens.front().num_qubits();
    MWSGInstance out{gens.empty() ? StabilizerGenerators(n)
                                  : StabilizerGenerators::from_generators(std::move(gens)),
                     t};
    return out;
}

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string bit_row(const BitVector& v) {
    std::string s(v.size(), '0');
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v.get(i)) s[i] = '1';
    }
    return s;
}

}  // namespace

MLDInstance read_mld(const std::string& path) { return parse_mld(slurp(path)); }
SBPInstance read_sbp(const std::string& path) { return parse_sbp(slurp(path)); }
MWSGInstance read_mwsg(const std::string& path) { return parse_mwsg(slurp(path)); }

void write_mld(const MLDInstance& inst, std::ostream& out) {
    out << "# check matrix rows, then the syndrome row, then the threshold\n";
    for (const auto& row : inst.rows) out << bit_row(row) << '\n';
    out << bit_row(inst.syndrome) << '\n';
    out << "t " << inst.t << '\n';
}

void write_sbp(const SBPInstance& inst, std::ostream& out) {
    out << "# basis rows, then the threshold\n";
    out << "n " << inst.ambient << '\n';
    for (const auto& v : inst.basis) out << bit_row(v) << '\n';
    out << "t " << inst.t << '\n';
}

void write_mwsg(const MWSGInstance& inst, std::ostream& out) {
    out << "# generators, then the threshold\n";
    out << "n " << inst.generators.num_qubits() << '\n';
    for (const auto& p : inst.generators.gens()) out << p.str() << '\n';
    out << "t " << inst.t << '\n';
}

}  // namespace stabweight
