#include "stabweight/architecture.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "stabweight/bounds.hpp"
#include "stabweight/errors.hpp"

namespace stabweight {

std::vector<std::vector<int>> ConnectivityGraph::adjacency() const {
    std::vector<std::vector<int>> adj(num_qubits);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

ConnectivityGraph parse_graph(const std::string& text) {
    ConnectivityGraph graph;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int declared = -1;
    int max_seen = -1;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream fields(line);
        std::string head;
        fields >> head;
        if (head == "qubits") {
            if (!(fields >> declared) || declared < 0)
                throw ParseError("graph line " + std::to_string(line_no) +
                                 ": expected 'qubits N'");
            continue;
        }
        int u = 0, v = 0;
        std::istringstream pair_fields(line);
        if (!(pair_fields >> u >> v) || u < 0 || v < 0)
            throw ParseError("graph line " + std::to_string(line_no) +
                             ": expected an edge 'u v'");
        if (u == v)
            throw ParseError("graph line " + std::to_string(line_no) + ": self-loop");
        if (u > v) std::swap(u, v);
        graph.edges.push_back({u, v});
        max_seen = std::max(max_seen, v);
    }
    graph.num_qubits = declared >= 0 ? declared : max_seen + 1;
    if (max_seen >= graph.num_qubits)
        throw ParseError("graph: edge endpoint " + std::to_string(max_seen) +
                         " outside declared qubit count");
    std::sort(graph.edges.begin(), graph.edges.end());
    graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end()), graph.edges.end());
    return graph;
}

ConnectivityGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_graph(text.str());
}

std::vector<int> parse_centers(const std::string& text) {
    std::vector<int> centers;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream fields(line);
        int q = 0;
        if (!(fields >> q) || q < 0)
            throw ParseError("centers line " + std::to_string(line_no) +
                             ": expected a qubit index");
        centers.push_back(q);
    }
    return centers;
}

std::vector<int> load_centers(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open centers file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_centers(text.str());
}

BitVector ball(const ConnectivityGraph& graph, int center, int r) {
    if (center < 0 || center >= graph.num_qubits)
        throw std::invalid_argument("ball center outside the graph");
    if (r < 0) throw std::invalid_argument("ball radius must be >= 0");
    auto adj = graph.adjacency();
    BitVector seen(static_cast<std::size_t>(graph.num_qubits));
    seen.set(static_cast<std::size_t>(center), true);
    std::deque<std::pair<int, int>> frontier{{center, 0}};
    while (!frontier.empty()) {
        auto [q, dist] = frontier.front();
        frontier.pop_front();
        if (dist == r) continue;
        for (int next : adj[q]) {
            if (seen.get(static_cast<std::size_t>(next))) continue;
            seen.set(static_cast<std::size_t>(next), true);
            frontier.push_back({next, dist + 1});
        }
    }
    return seen;
}

CheckPlacement make_placement(const ConnectivityGraph& graph, const std::vector<int>& centers,
                              int radius) {
    CheckPlacement placement;
    placement.num_qubits = graph.num_qubits;
    placement.radius = radius;
    placement.centers = centers;
    placement.supports.reserve(centers.size());
    for (int c : centers) placement.supports.push_back(ball(graph, c, radius));
    return placement;
}

UbHistogram ub_histogram(const CheckPlacement& placement, std::optional<int> cap) {
    const int m = static_cast<int>(placement.supports.size());
    if (!cap && m > 30)
        throw BudgetError("ub_histogram: " + std::to_string(m) +
                          " centers need a subset-size cap (2^m subsets)");
    const int limit = std::min(cap.value_or(m), m);

    UbHistogram hist;
    hist.cap = cap;
    if (m == 0 || limit <= 0) return hist;

    const std::size_t words = placement.supports.empty()
                                  ? 0
                                  : placement.supports.front().words().size();
    std::vector<std::int64_t> by_size(static_cast<std::size_t>(placement.num_qubits) + 1, 0);
    // union_stack row t holds the running union of the t subset members
    // chosen so far; row 0 stays empty.
    std::vector<std::uint64_t> union_stack((static_cast<std::size_t>(limit) + 1) * words, 0);

    auto descend = [&](auto&& self, int start, int depth) -> void {
        const std::uint64_t* parent = union_stack.data() + static_cast<std::size_t>(depth) * words;
        std::uint64_t* child = union_stack.data() + (static_cast<std::size_t>(depth) + 1) * words;
        for (int j = start; j < m; ++j) {
            const auto& sup = placement.supports[static_cast<std::size_t>(j)].words();
            int size = 0;
            for (std::size_t w = 0; w < words; ++w) {
                child[w] = parent[w] | sup[w];
                size += std::popcount(child[w]);
            }
            ++by_size[static_cast<std::size_t>(size)];
            if (depth + 1 < limit) self(self, j + 1, depth + 1);
        }
    };
    descend(descend, 0, 0);

    std::int64_t running = 0;
    for (std::size_t size = 0; size < by_size.size(); ++size) {
        if (by_size[size] == 0) continue;
        running += by_size[size];
        hist.counts[static_cast<int>(size)] = running;
    }
    return hist;
}

LinearProgram geometry_lp(int n, int k, int d, const UbHistogram& hist) {
    LinearProgram lp = standard_lp(n, k, d);
    for (const auto& [m, count] : hist.counts) {
        if (m < 1 || m > n)
            throw std::invalid_argument("geometry_lp: histogram union size outside 1..n");
        LinearRow& row = lp.add_row(Relation::GreaterEq, Rational(static_cast<long>(count)));
        for (int i = 1; i <= m; ++i) row.coeffs[i - 1] = 1;
    }
    return lp;
}

std::optional<int> min_radius(const ConnectivityGraph& graph, const std::vector<int>& centers,
                              int n, int k, int d, int r_max, std::optional<int> cap) {
    if (static_cast<int>(centers.size()) != n - k)
        throw std::invalid_argument("min_radius: need exactly n-k centers");
    for (int r = 0; r <= r_max; ++r) {
        UbHistogram hist = ub_histogram(make_placement(graph, centers, r), cap);
        if (feasible(geometry_lp(n, k, d, hist)).status == LpStatus::Feasible) return r;
    }
    return std::nullopt;
}

int structure_agnostic_weight_lb(int n, int k, int d) {
    if (k < 1) throw std::invalid_argument("structure_agnostic_weight_lb needs k >= 1");
    for (int w = 1; w <= n; ++w) {
        LinearProgram lp = standard_lp(n, k, d);
        for (int c = 1; c * w <= n; ++c) {
            Integer count = 0;
            for (int s = 1; s <= c; ++s)
                count += binomial(static_cast<unsigned long>(n - k), static_cast<unsigned long>(s));
            LinearRow& row = lp.add_row(Relation::GreaterEq, Rational(count));
            for (int i = 1; i <= c * w; ++i) row.coeffs[i - 1] = 1;
        }
        if (feasible(lp).status == LpStatus::Feasible) return w;
    }
    // At w = n every growth row is implied by the mass equation, so reaching
    // this point means the standard system itself is infeasible.
    throw std::invalid_argument("structure_agnostic_weight_lb: no [[n,k,d]] code exists");
}

}  // namespace stabweight
