#include "stabweight/architecture.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "stabweight/bounds.hpp"
#include "stabweight/errors.hpp"
#include "stabweight/pauli.hpp"
#include "stabweight/stabilizer.hpp"

using namespace stabweight;

namespace {

const std::string kRepoDir = STABWEIGHT_REPO_DIR;

BitVector bits(int n, std::initializer_list<int> set_bits) {
    BitVector b(static_cast<std::size_t>(n));
    for (int i : set_bits) b.set(static_cast<std::size_t>(i), true);
    return b;
}

}  // namespace

TEST_CASE("graph parsing") {
    ConnectivityGraph path = parse_graph("0 1\n1 2");
    CHECK(path.num_qubits == 3);
    CHECK(path.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

    SUBCASE("duplicates and orientation collapse") {
        ConnectivityGraph g = parse_graph("2 1\n1 2\n# comment\n\n0 1\n");
        CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    }
    SUBCASE("declared qubit count") {
        ConnectivityGraph g = parse_graph("qubits 5\n0 1\n");
        CHECK(g.num_qubits == 5);
        CHECK_THROWS_AS(parse_graph("qubits 2\n0 3\n"), ParseError);
    }
    SUBCASE("malformed lines") {
        CHECK_THROWS_AS(parse_graph("0\n"), ParseError);
        CHECK_THROWS_AS(parse_graph("0 x\n"), ParseError);
        CHECK_THROWS_AS(parse_graph("3 3\n"), ParseError);
        CHECK_THROWS_AS(parse_graph("-1 2\n"), ParseError);
        CHECK_THROWS_AS(load_graph(kRepoDir + "/data/no_such_graph.txt"), ParseError);
    }
}

TEST_CASE("centers parsing") {
    CHECK(parse_centers("# c\n3\n1\n\n2\n") == std::vector<int>{3, 1, 2});
    CHECK_THROWS_AS(parse_centers("1\nq\n"), ParseError);
    CHECK_THROWS_AS(parse_centers("-4\n"), ParseError);
}

TEST_CASE("BFS balls") {
    ConnectivityGraph path = parse_graph("0 1\n1 2");
    CHECK(ball(path, 1, 0) == bits(3, {1}));
    CHECK(ball(path, 1, 1) == bits(3, {0, 1, 2}));
    CHECK(ball(path, 0, 1) == bits(3, {0, 1}));
    CHECK(ball(path, 0, 7) == bits(3, {0, 1, 2}));
    CHECK_THROWS_AS(ball(path, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(ball(path, 0, -1), std::invalid_argument);
}

TEST_CASE("Eagle layout") {
    const ConnectivityGraph& g = eagle_graph();
    CHECK(g.num_qubits == 127);
    CHECK(g.edges.size() == 144);

    SUBCASE("ball sizes around the featured qubits") {
        CHECK(ball(g, 62, 3).popcount() == 13);
        CHECK(ball(g, 62, 5).popcount() == 31);
        CHECK(ball(g, 83, 5).popcount() == 31);
        CHECK(ball(g, 62, 5).count_or(ball(g, 83, 5)) == 45);
    }
    SUBCASE("embedded graph matches the shipped asset") {
        ConnectivityGraph from_file = load_graph(kRepoDir + "/data/eagle_edges.txt");
        CHECK(from_file.num_qubits == g.num_qubits);
        CHECK(from_file.edges == g.edges);
    }
    SUBCASE("shipped centers file") {
        std::vector<int> centers = load_centers(kRepoDir + "/data/eagle_centers.txt");
        CHECK(centers.size() == 27);
        CHECK(std::set<int>(centers.begin(), centers.end()).size() == 27);
        for (int c : centers) CHECK(c < 127);
        for (int named : {0, 62, 83})
            CHECK(std::count(centers.begin(), centers.end(), named) == 1);
    }
}

TEST_CASE("support-union histograms") {
    SUBCASE("two disjoint supports") {
        CheckPlacement p;
        p.num_qubits = 7;
        p.supports = {bits(7, {0, 1, 2}), bits(7, {3, 4, 5, 6})};
        UbHistogram hist = ub_histogram(p);
        CHECK(hist.counts == std::map<int, std::int64_t>{{3, 1}, {4, 2}, {7, 3}});
        CHECK_FALSE(hist.cap.has_value());
    }
    SUBCASE("single center") {
        ConnectivityGraph path = parse_graph("0 1\n1 2\n2 3");
        UbHistogram hist = ub_histogram(make_placement(path, {1}, 1));
        CHECK(hist.counts == std::map<int, std::int64_t>{{3, 1}});
    }
    SUBCASE("overlapping supports") {
        CheckPlacement p;
        p.num_qubits = 4;
        p.supports = {bits(4, {0, 1}), bits(4, {1, 2}), bits(4, {2, 3})};
        UbHistogram hist = ub_histogram(p);
        // singles: 2,2,2; pairs: {01,12}->3, {12,23}->3, {01,23}->4; triple: 4.
        CHECK(hist.counts == std::map<int, std::int64_t>{{2, 3}, {3, 5}, {4, 7}});

        UbHistogram capped = ub_histogram(p, 1);
        CHECK(capped.counts == std::map<int, std::int64_t>{{2, 3}});
        CHECK(capped.cap == 1);
        // A cap only removes subsets, so capped cumulative counts stay below.
        for (const auto& [m, c] : capped.counts) {
            auto it = hist.counts.lower_bound(m);
            CHECK(c <= it->second);
        }
    }
    SUBCASE("empty placements") {
        CheckPlacement p;
        p.num_qubits = 3;
        CHECK(ub_histogram(p).counts.empty());
        p.supports = {bits(3, {0})};
        CHECK(ub_histogram(p, 0).counts.empty());
    }
    SUBCASE("budget guard") {
        CheckPlacement p;
        p.num_qubits = 31;
        for (int i = 0; i < 31; ++i) p.supports.push_back(bits(31, {i}));
        CHECK_THROWS_AS(ub_histogram(p), BudgetError);
        UbHistogram capped = ub_histogram(p, 2);
        CHECK(capped.counts == std::map<int, std::int64_t>{{1, 31}, {2, 31 + 465}});
    }
    SUBCASE("Eagle pair 62, 83 at radius 5") {
        UbHistogram hist = ub_histogram(make_placement(eagle_graph(), {62, 83}, 5));
        CHECK(hist.counts == std::map<int, std::int64_t>{{31, 2}, {45, 3}});
    }
}

TEST_CASE("histogram counts bound the generated group") {
    // Concrete all-Z checks inside radius-1 supports on a 6-path: every
    // group element from a generator subset weighs at most the support
    // union, so the cumulative counts undercount the true histogram.
    ConnectivityGraph path = parse_graph("0 1\n1 2\n2 3\n3 4\n4 5");
    CheckPlacement placement = make_placement(path, {0, 2, 4}, 1);

    std::vector<PauliOperator> checks;
    for (const BitVector& sup : placement.supports) {
        std::string letters(6, 'I');
        for (std::size_t q = 0; q < 6; ++q)
            if (sup.get(q)) letters[q] = 'Z';
        checks.push_back(PauliOperator::parse(letters));
    }
    auto group = StabilizerGenerators::from_generators(checks);

    for (unsigned mask = 1; mask < 8; ++mask) {
        PauliOperator product(6);
        BitVector union_bits(6);
        for (int j = 0; j < 3; ++j) {
            if (!(mask >> j & 1)) continue;
            product *= checks[static_cast<std::size_t>(j)];
            union_bits |= placement.supports[static_cast<std::size_t>(j)];
        }
        CHECK(product.weight() <= union_bits.popcount());
    }

    UbHistogram hist = ub_histogram(placement);
    std::vector<int> weights;
    for_each_group_element(group, [&](const PauliOperator& p) {
        weights.push_back(static_cast<int>(p.weight()));
    });
    for (const auto& [m, count] : hist.counts) {
        std::int64_t actual = static_cast<std::int64_t>(
            std::count_if(weights.begin(), weights.end(),
                          [&](int w) { return w >= 1 && w <= m; }));
        CHECK(actual >= count);
    }
}

TEST_CASE("geometry LP") {
    SUBCASE("empty histogram reduces to the standard system") {
        UbHistogram empty;
        CHECK(feasible(geometry_lp(5, 1, 3, empty)).status == LpStatus::Feasible);
        CHECK(feasible(geometry_lp(5, 2, 3, empty)).status == LpStatus::Infeasible);
    }
    SUBCASE("histogram rows can break feasibility") {
        // The five-qubit perfect code system forces A_1 = 0, so one claimed
        // weight-1 element is already contradictory.
        UbHistogram hist;
        hist.counts[1] = 1;
        CHECK(feasible(geometry_lp(5, 1, 3, hist)).status == LpStatus::Infeasible);
    }
    SUBCASE("union size outside 1..n is rejected") {
        UbHistogram hist;
        hist.counts[6] = 1;
        CHECK_THROWS_AS(geometry_lp(5, 1, 3, hist), std::invalid_argument);
    }
}

TEST_CASE("minimum radius search") {
    ConnectivityGraph path = parse_graph("0 1\n1 2\n2 3\n3 4");

    SUBCASE("feasibility is monotone in the radius") {
        std::vector<bool> status;
        for (int r = 0; r <= 3; ++r) {
            UbHistogram hist = ub_histogram(make_placement(path, {0, 1, 2, 3}, r));
            status.push_back(feasible(geometry_lp(5, 1, 2, hist)).status ==
                             LpStatus::Feasible);
        }
        for (std::size_t i = 1; i < status.size(); ++i) CHECK(status[i] >= status[i - 1]);
        auto first = std::find(status.begin(), status.end(), true);
        REQUIRE(first != status.end());
        auto r = min_radius(path, {0, 1, 2, 3}, 5, 1, 2, 3);
        REQUIRE(r.has_value());
        CHECK(*r == first - status.begin());
        CHECK(*r == 1);
    }
    SUBCASE("unreachable parameters give NotFound") {
        ConnectivityGraph two_triangles = parse_graph("0 1\n1 2\n0 2\n3 4\n4 5\n3 5");
        CHECK_FALSE(min_radius(two_triangles, {0, 1, 2}, 6, 3, 2, 4).has_value());
    }
    SUBCASE("no checks at all") {
        auto r = min_radius(path, {}, 5, 5, 1, 3);
        REQUIRE(r.has_value());
        CHECK(*r == 0);
    }
    SUBCASE("center count must match n-k") {
        CHECK_THROWS_AS(min_radius(path, {0, 1}, 5, 1, 2, 3), std::invalid_argument);
    }
}

TEST_CASE("structure-agnostic weight bound") {
    CHECK(structure_agnostic_weight_lb(4, 2, 2) == 4);
    CHECK(structure_agnostic_weight_lb(4, 1, 2) == 3);
    CHECK(structure_agnostic_weight_lb(5, 1, 3) == 4);
    // Weight-3 [[8,2,2]] codes exist, so the LP scan cannot pass 3; it only
    // certifies the soundness direction.
    CHECK(structure_agnostic_weight_lb(8, 2, 2) <= 3);
    CHECK_THROWS_AS(structure_agnostic_weight_lb(5, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(structure_agnostic_weight_lb(5, 2, 3), std::invalid_argument);
}
