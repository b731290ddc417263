#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabweight/bitvec.hpp"
#include "stabweight/exactlp.hpp"

namespace stabweight {

// Simple undirected device graph; vertices are qubits.
struct ConnectivityGraph {
    int num_qubits = 0;
    std::vector<std::pair<int, int>> edges;  // normalized u < v, deduplicated, sorted

    std::vector<std::vector<int>> adjacency() const;
};

// Edge-list file: one "u v" pair per line, '#' comments. Vertex count is
// 1 + max index unless the file starts with a "qubits N" line.
ConnectivityGraph load_graph(const std::string& path);
ConnectivityGraph parse_graph(const std::string& text);

// The 127-qubit heavy-hexagon layout used by IBM's Eagle processors.
const ConnectivityGraph& eagle_graph();

// Centers file: one qubit index per line, '#' comments.
std::vector<int> load_centers(const std::string& path);
std::vector<int> parse_centers(const std::string& text);

// All qubits within graph distance r of center (the center included).
BitVector ball(const ConnectivityGraph& graph, int center, int r);

// One prospective check per center, supported on the radius-r ball around it.
struct CheckPlacement {
    int num_qubits = 0;
    int radius = 0;
    std::vector<int> centers;
    std::vector<BitVector> supports;
};

CheckPlacement make_placement(const ConnectivityGraph& graph, const std::vector<int>& centers,
                              int radius);

// counts[M] = number of nonempty generator subsets whose support union has
// size <= M, one entry per distinct union size. Any group generated by
// independent checks inside the supports has at least counts[M] nontrivial
// elements of weight <= M, so the counts survive as valid lower bounds even
// when computed with a subset-size cap.
struct UbHistogram {
    std::map<int, std::int64_t> counts;
    std::optional<int> cap;
};

// Depth-first enumeration over subsets, carrying the running union on an
// explicit stack. Without a cap the placement is limited to 30 centers
// (2^30 tree nodes); a cap prunes the tree to subsets of at most that size.
UbHistogram ub_histogram(const CheckPlacement& placement, std::optional<int> cap = std::nullopt);

// standard_lp(n,k,d) plus one row sum_{i<=M} A_i >= counts[M] per histogram
// entry. The histogram must describe n-k independent checks on n qubits.
LinearProgram geometry_lp(int n, int k, int d, const UbHistogram& hist);

// Smallest r <= r_max whose geometry LP is feasible; nullopt when none is.
// Feasibility is monotone in r (larger balls only weaken the histogram), so
// the upward scan stops at the answer.
std::optional<int> min_radius(const ConnectivityGraph& graph, const std::vector<int>& centers,
                              int n, int k, int d, int r_max,
                              std::optional<int> cap = std::nullopt);

// Smallest w for which standard_lp(n,k,d) stays feasible after the coarse
// growth rows sum_{i<=Cw} A_i >= sum_{c<=C} C(n-k,c) for C = 1..n/w: a lower
// bound on the maximum stabilizer weight with no geometry input at all.
int structure_agnostic_weight_lb(int n, int k, int d);

}  // namespace stabweight
