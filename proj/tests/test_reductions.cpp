#include "stabweight/reductions.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "stabweight/errors.hpp"
#include "stabweight/stabilizer.hpp"

using namespace stabweight;

namespace {

BitVector bits(const std::string& s) {
    BitVector v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) v.set(i, s[i] == '1');
    return v;
}

std::string bit_string(const BitVector& v) {
    std::string s(v.size(), '0');
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v.get(i)) s[i] = '1';
    }
    return s;
}

StabilizerGenerators group_from(const std::string& text) {
    return StabilizerGenerators::from_generators(read_pauli_lines(text));
}

MLDInstance mld(const std::vector<std::string>& rows, const std::string& syndrome, int t) {
    MLDInstance inst;
    inst.m = static_cast<int>(rows.size());
    inst.n = static_cast<int>(rows.front().size());
    for (const auto& r : rows) inst.rows.push_back(bits(r));
    inst.syndrome = bits(syndrome);
    inst.t = t;
    return inst;
}

SBPInstance sbp(int ambient, const std::vector<std::string>& vectors, int t) {
    SBPInstance inst;
    inst.ambient = ambient;
    for (const auto& v : vectors) inst.basis.push_back(bits(v));
    inst.t = t;
    return inst;
}

// Random independent pairwise-commuting Hermitian generators, random signs.
StabilizerGenerators random_group(std::mt19937& rng, int n, int r) {
    std::uniform_int_distribution<int> letter(0, 3);
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<PauliOperator> picked;
    SymplecticBasis span(static_cast<std::size_t>(n));
    int attempts = 0;
    while (static_cast<int>(picked.size()) < r) {
        REQUIRE(++attempts < 10000);
        BitVector x(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) {
            int l = letter(rng);
            x.set(static_cast<std::size_t>(q), l & 1);
            z.set(static_cast<std::size_t>(q), l >> 1);
        }
        PauliOperator p(std::move(x), std::move(z), 2 * sign(rng));
        if (p.is_identity_letters()) continue;
        bool commutes = true;
        for (const auto& g : picked) {
            if (!p.commutes_with(g)) {
                commutes = false;
                break;
            }
        }
        if (!commutes || span.contains_bits(p)) continue;
        span.insert(p);
        picked.push_back(std::move(p));
    }
    return StabilizerGenerators::from_generators(std::move(picked));
}

// Greedy minimum-weight basis profile of span(basis), the vector-space analog
// of the group's optimal generator profile.
std::vector<int> optimal_basis_profile(const SBPInstance& inst) {
    std::vector<BitVector> elements;
    BitVector current(static_cast<std::size_t>(inst.ambient));
    std::uint64_t total = std::uint64_t{1} << inst.basis.size();
    for (std::uint64_t step = 1; step < total; ++step) {
        current ^= inst.basis[std::countr_zero(step)];
        elements.push_back(current);
    }
    std::sort(elements.begin(), elements.end(), [](const BitVector& a, const BitVector& b) {
        if (a.popcount() != b.popcount()) return a.popcount() < b.popcount();
        return a.compare_lex(b) < 0;
    });
    std::vector<BitVector> rows;
    std::vector<std::size_t> pivots;
    std::vector<int> profile;
    for (const auto& e : elements) {
        BitVector v = e;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (v.get(pivots[i])) v ^= rows[i];
        }
        if (v.none()) continue;
        profile.push_back(static_cast<int>(e.popcount()));
        pivots.push_back(v.lowest_set());
        rows.push_back(std::move(v));
    }
    return profile;
}

}  // namespace

TEST_CASE("mld_to_sbp on the one-bit identity check") {
    auto out = mld_to_sbp(mld({"1"}, "0", 0));
    REQUIRE(out.has_value());
    CHECK(out->ambient == 2);
    CHECK(out->t == 1);
    REQUIRE(out->basis.size() == 1);
    CHECK(bit_string(out->basis[0]) == "01");
    CHECK(decide_sbp(*out));
    CHECK(decide_mld(mld({"1"}, "0", 0)));
}

TEST_CASE("mld_to_sbp kernel and particular solution") {
    // H = [101; 011], s = 10: kernel {111}, pivot solution 100.
    auto out = mld_to_sbp(mld({"101", "011"}, "10", 0));
    REQUIRE(out.has_value());
    CHECK(out->ambient == 6);
    CHECK(out->t == 3);
    REQUIRE(out->basis.size() == 2);
    CHECK(bit_string(out->basis[0]) == "111000");
    CHECK(bit_string(out->basis[1]) == "100111");
    CHECK_NOTHROW(validate(*out));

    // e = 100 solves at weight 1, so t = 0 is a NO and t = 1 a YES.
    CHECK_FALSE(decide_mld(mld({"101", "011"}, "10", 0)));
    CHECK(decide_mld(mld({"101", "011"}, "10", 1)));
    CHECK_FALSE(decide_sbp(*out));
    CHECK(decide_sbp(*mld_to_sbp(mld({"101", "011"}, "10", 1))));
}

TEST_CASE("unsolvable syndromes surface as NoSolution") {
    auto inst = mld({"11", "11"}, "10", 2);
    CHECK_FALSE(mld_to_sbp(inst).has_value());
    CHECK_FALSE(decide_mld(inst));
    CHECK_THROWS_AS(validate(inst), std::invalid_argument);  // rank 1 < m

    // The same matrix with a consistent syndrome still transforms.
    auto ok = mld_to_sbp(mld({"11", "11"}, "11", 1));
    REQUIRE(ok.has_value());
    CHECK(ok->basis.size() == 2);
    CHECK(decide_sbp(*ok));
}

TEST_CASE("threshold at least n is always YES") {
    for (int t : {2, 3, 5}) {
        auto inst = mld({"10", "01"}, "11", t);
        CHECK(decide_mld(inst));
        CHECK(decide_sbp(*mld_to_sbp(inst)));
        CHECK(decide_mwsg(sbp_to_mwsg(*mld_to_sbp(inst))));
    }
}

TEST_CASE("sbp_to_mwsg builds Z-type generators") {
    auto out = sbp_to_mwsg(sbp(3, {"110", "011"}, 2));
    REQUIRE(out.generators.rank() == 2);
    CHECK(out.generators.gens()[0].str() == "ZZI");
    CHECK(out.generators.gens()[1].str() == "IZZ");
    CHECK(out.t == 2);
    CHECK(decide_mwsg(out));

    CHECK_FALSE(decide_mwsg(sbp_to_mwsg(sbp(3, {"111"}, 2))));
    CHECK(decide_mwsg(sbp_to_mwsg(sbp(3, {"111"}, 3))));

    // Weight is preserved vector by vector.
    auto mixed = sbp_to_mwsg(sbp(5, {"10101", "01100"}, 0));
    CHECK(mixed.generators.gens()[0].weight() == 3);
    CHECK(mixed.generators.gens()[1].weight() == 2);
}

TEST_CASE("empty basis maps to the trivial group") {
    auto out = sbp_to_mwsg(sbp(3, {}, 0));
    CHECK(out.generators.rank() == 0);
    CHECK(out.generators.num_qubits() == 3);
    CHECK(decide_mwsg(out));
    CHECK(decide_sbp(sbp(3, {}, 0)));
}

TEST_CASE("dependent bases are rejected") {
    CHECK_THROWS_AS(validate(sbp(3, {"110", "011", "101"}, 2)), std::invalid_argument);
    CHECK_THROWS_AS(sbp_to_mwsg(sbp(3, {"110", "011", "101"}, 2)), std::invalid_argument);
}

TEST_CASE("decide_mwsg on the two named groups") {
    auto g1 = group_from("XXXI\nIYYY\nZIZZ");
    CHECK(decide_mwsg({g1, 3}));
    CHECK_FALSE(decide_mwsg({g1, 2}));

    auto g2 = group_from("ZZII\nIIZZ\nXXXX");
    CHECK_FALSE(decide_mwsg({g2, 3}));
    CHECK(decide_mwsg({g2, 4}));
}

TEST_CASE("decider matches the optimal generator weight") {
    std::mt19937 rng(20260815);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + trial % 3;
        int r = 1 + trial % n;
        auto g = random_group(rng, n, r);
        int w = optimal_weight(g);
        CAPTURE(trial);
        CHECK(decide_mwsg({g, w}));
        CHECK_FALSE(decide_mwsg({g, w - 1}));
    }
}

TEST_CASE("chain preserves YES/NO on random decoding instances") {
    std::mt19937 rng(20260816);
    std::uniform_int_distribution<int> bit(0, 1);
    int yes = 0, no = 0, vacuous = 0;
    for (int trial = 0; trial < 120; ++trial) {
        int m = 1 + trial % 3;
        int n = 2 + trial % 5;
        MLDInstance inst;
        inst.m = m;
        inst.n = n;
        for (int i = 0; i < m; ++i) {
            BitVector row(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) row.set(static_cast<std::size_t>(j), bit(rng));
            inst.rows.push_back(std::move(row));
        }
        inst.syndrome = BitVector(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) inst.syndrome.set(static_cast<std::size_t>(i), bit(rng));
        inst.t = std::uniform_int_distribution<int>(0, n)(rng);

        bool direct = decide_mld(inst);
        auto middle = mld_to_sbp(inst);
        if (!middle) {
            CHECK_FALSE(direct);
            ++vacuous;
            continue;
        }
        CHECK_NOTHROW(validate(*middle));
        CHECK(decide_sbp(*middle) == direct);
        CHECK(decide_mwsg(sbp_to_mwsg(*middle)) == direct);
        direct ? ++yes : ++no;
    }
    // Make sure the sweep exercised every outcome.
    CHECK(yes > 10);
    CHECK(no > 10);
    CHECK(vacuous > 0);
}

TEST_CASE("weight profiles survive the Z-type embedding") {
    std::mt19937 rng(20260817);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int trial = 0; trial < 30; ++trial) {
        int ambient = 4 + trial % 5;
        int target = 1 + trial % 4;
        SBPInstance inst;
        inst.ambient = ambient;
        inst.t = ambient;
        std::vector<BitVector> rows;
        std::vector<std::size_t> pivots;
        while (static_cast<int>(inst.basis.size()) < target) {
            BitVector v(static_cast<std::size_t>(ambient));
            for (int j = 0; j < ambient; ++j) v.set(static_cast<std::size_t>(j), bit(rng));
            BitVector reduced = v;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (reduced.get(pivots[i])) reduced ^= rows[i];
            }
            if (reduced.none()) continue;
            pivots.push_back(reduced.lowest_set());
            rows.push_back(reduced);
            inst.basis.push_back(std::move(v));
        }
        auto expected = optimal_basis_profile(inst);
        auto got = optimal_weight_profile(sbp_to_mwsg(inst).generators);
        CHECK(expected == got);
    }
}

TEST_CASE("budget guards") {
    MLDInstance wide;
    wide.m = 1;
    wide.n = 21;
    wide.rows.push_back(bits(std::string(21, '1')));
    wide.syndrome = bits("1");
    wide.t = 1;
    CHECK_THROWS_AS(decide_mld(wide), BudgetError);

    SBPInstance tall;
    tall.ambient = 21;
    for (int i = 0; i < 21; ++i) {
        BitVector v(21);
        v.set(static_cast<std::size_t>(i), true);
        tall.basis.push_back(std::move(v));
    }
    tall.t = 21;
    CHECK_THROWS_AS(decide_sbp(tall), BudgetError);

    std::string singles;
    for (int i = 0; i < 21; ++i) {
        std::string row(21, 'I');
        row[static_cast<std::size_t>(i)] = 'Z';
        singles += row + "\n";
    }
    CHECK_THROWS_AS(decide_mwsg({group_from(singles), 1}), BudgetError);
}

TEST_CASE("shape errors") {
    CHECK_THROWS_AS(decide_mld(mld({"101"}, "10", 1)), DimensionError);  // syndrome too long
    MLDInstance ragged = mld({"101", "01"}, "10", 1);
    ragged.n = 3;
    CHECK_THROWS_AS(decide_mld(ragged), DimensionError);
    CHECK_THROWS_AS(decide_sbp(sbp(3, {"1100"}, 1)), DimensionError);
}

TEST_CASE("decoding instance text format") {
    std::string text =
        "# toy decoder\n"
        "\n"
        "101\n"
        "011\n"
        "10\n"
        "t 1\n";
    MLDInstance inst = parse_mld(text);
    CHECK(inst.m == 2);
    CHECK(inst.n == 3);
    CHECK(bit_string(inst.rows[1]) == "011");
    CHECK(bit_string(inst.syndrome) == "10");
    CHECK(inst.t == 1);
    CHECK(decide_mld(inst));

    std::ostringstream out;
    write_mld(inst, out);
    MLDInstance again = parse_mld(out.str());
    CHECK(again.rows == inst.rows);
    CHECK(again.syndrome == inst.syndrome);
    CHECK(again.t == inst.t);

    CHECK_THROWS_AS(parse_mld("101\n011\n10\n"), ParseError);     // no threshold
    CHECK_THROWS_AS(parse_mld("10x\n10\nt 1\n"), ParseError);     // stray character
    CHECK_THROWS_AS(parse_mld("101\n011\n101\nt 1\n"), ParseError);  // syndrome length
    CHECK_THROWS_AS(parse_mld("t 1\n"), ParseError);              // no rows at all
}

TEST_CASE("basis instance text format") {
    SBPInstance inst = parse_sbp("110\n011\nt 2\n");
    CHECK(inst.ambient == 3);
    CHECK(inst.basis.size() == 2);
    CHECK(inst.t == 2);

    SBPInstance empty = parse_sbp("# nothing to span\nn 4\nt 0\n");
    CHECK(empty.ambient == 4);
    CHECK(empty.basis.empty());
    CHECK(decide_sbp(empty));

    std::ostringstream out;
    write_sbp(inst, out);
    SBPInstance again = parse_sbp(out.str());
    CHECK(again.ambient == inst.ambient);
    CHECK(again.basis == inst.basis);

    CHECK_THROWS_AS(parse_sbp("t 2\n"), ParseError);          // ambient unknown
    CHECK_THROWS_AS(parse_sbp("110\n0111\nt 2\n"), ParseError);  // ragged rows
}

TEST_CASE("generating-set instance text format") {
    MWSGInstance inst = parse_mwsg("# named example\nXXXI\nIYYY\nZIZZ\nt 3\n");
    CHECK(inst.generators.rank() == 3);
    CHECK(inst.t == 3);
    CHECK(decide_mwsg(inst));

    MWSGInstance trivial = parse_mwsg("n 5\nt 0\n");
    CHECK(trivial.generators.num_qubits() == 5);
    CHECK(trivial.generators.rank() == 0);

    std::ostringstream out;
    write_mwsg(inst, out);
    MWSGInstance again = parse_mwsg(out.str());
    CHECK(again.generators.gens()[2].str() == "ZIZZ");

    CHECK_THROWS_AS(parse_mwsg("t 1\n"), ParseError);            // no qubit count
    CHECK_THROWS_AS(parse_mwsg("n 3\nXXXX\nt 1\n"), ParseError);  // count mismatch
}
