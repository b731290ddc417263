#include "stabweight/stabilizer.hpp"

#include <algorithm>
#include <numeric>

namespace stabweight {

namespace {

void check_commuting_hermitian(const std::vector<PauliOperator>& ops) {
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (!ops[i].is_hermitian() || ops[i].phase_power() % 2 != 0)
            throw std::invalid_argument("generator " + std::to_string(i) +
                                        " is not a real-signed Pauli string");
        if (i > 0 && ops[i].num_qubits() != ops[0].num_qubits())
            throw DimensionError("generators differ in qubit count");
        for (std::size_t j = 0; j < i; ++j) {
            if (!ops[i].commutes_with(ops[j]))
                throw std::invalid_argument("generators " + std::to_string(j) + " and " +
                                            std::to_string(i) + " anticommute");
        }
    }
}

}  // namespace

StabilizerGenerators StabilizerGenerators::from_generators(std::vector<PauliOperator> gens) {
    if (gens.empty())
        throw std::invalid_argument(
            "from_generators needs at least one operator; use the n-qubit constructor for the "
            "trivial group");
    check_commuting_hermitian(gens);
    StabilizerGenerators g(gens[0].num_qubits());
    for (auto& op : gens) {
        PauliOperator reduced = g.basis_.reduce(op);
        if (reduced.is_identity_letters()) {
            if (reduced.phase_power() == 2)
                throw std::invalid_argument("generating set spans -I");
            throw std::invalid_argument(
                "generators are dependent; canonicalize() reduces such lists");
        }
        g.basis_.insert(op);
        g.gens_.push_back(std::move(op));
    }
    return g;
}

StabilizerGenerators canonicalize(const std::vector<PauliOperator>& ops) {
    if (ops.empty())
        throw std::invalid_argument("canonicalize needs at least one operator to fix n");
    check_commuting_hermitian(ops);
    StabilizerGenerators g(ops[0].num_qubits());
    SymplecticBasis basis(ops[0].num_qubits());
    for (const auto& op : ops) {
        PauliOperator reduced = basis.reduce(op);
        if (reduced.is_identity_letters()) {
            if (reduced.phase_power() == 2)
                throw std::invalid_argument("generating set spans -I");
            continue;  // +I: dependent, drop
        }
        basis.insert(reduced);
    }
    if (basis.rank() == 0) return StabilizerGenerators(ops[0].num_qubits());
    std::vector<PauliOperator> rows = basis.rows();
    return StabilizerGenerators::from_generators(std::move(rows));
}

MemberResult member(const StabilizerGenerators& g, const PauliOperator& p) {
    if (p.num_qubits() != g.num_qubits()) throw DimensionError("qubit count mismatch");
    PauliOperator reduced = g.basis().reduce(p);
    if (!reduced.is_identity_letters()) return {false, 0};
    // reduced = p * h for some group element h. An odd residual phase means p
    // is an imaginary multiple of a group element, and the group is
    // real-signed, so no sign of p belongs to it.
    if (reduced.phase_power() % 2 != 0) return {false, 0};
    return {true, reduced.phase_power() == 0 ? 1 : -1};
}

namespace {

// Enumerates weight-j candidates: supports as j-combinations of [0, n),
// letters over {X, Y, Z}^j. Returns true when fn returns true (early stop).
template <typename Fn>
bool for_each_weight_j_pauli(std::size_t n, std::size_t j, Fn&& fn) {
    std::vector<std::size_t> combo(j);
    std::iota(combo.begin(), combo.end(), 0);
    std::vector<int> letters(j, 0);
    BitVector x(n), z(n);
    while (true) {
        std::fill(letters.begin(), letters.end(), 0);
        while (true) {
            x.clear();
            z.clear();
            for (std::size_t i = 0; i < j; ++i) {
                // 0 -> X, 1 -> Y, 2 -> Z
                if (letters[i] != 2) x.set(combo[i], true);
                if (letters[i] != 0) z.set(combo[i], true);
            }
            if (fn(static_cast<const BitVector&>(x), static_cast<const BitVector&>(z)))
                return true;
            std::size_t carry = 0;
            while (carry < j && letters[carry] == 2) letters[carry++] = 0;
            if (carry == j) break;
            ++letters[carry];
        }
        // next combination
        std::size_t i = j;
        while (i > 0 && combo[i - 1] == n - j + (i - 1)) --i;
        if (i == 0) break;
        ++combo[i - 1];
        for (std::size_t l = i; l < j; ++l) combo[l] = combo[l - 1] + 1;
    }
    return false;
}

}  // namespace

ExtendedInt distance(const StabilizerGenerators& g, const DistanceBudget& budget) {
    if (g.k() == 0) return ExtendedInt::infinity();  // normalizer equals group
    std::size_t n = g.num_qubits();
    if (n > budget.max_n)
        throw BudgetError("distance brute force limited to n <= " + std::to_string(budget.max_n) +
                          " (got n = " + std::to_string(n) + "); raise the budget explicitly");

    const auto& gens = g.gens();
    for (std::size_t j = 1; j <= n; ++j) {
        if (j > budget.max_weight)
            throw BudgetError("distance exceeds the weight budget of " +
                              std::to_string(budget.max_weight) + "; raise the budget explicitly");
        bool found = for_each_weight_j_pauli(n, j, [&](const BitVector& x, const BitVector& z) {
            for (const auto& gen : gens) {
                std::size_t anti = x.count_and(gen.z_bits()) + z.count_and(gen.x_bits());
                if (anti & 1u) return false;  // outside the normalizer
            }
            return !g.basis().contains_bits(x, z);
        });
        if (found) return ExtendedInt(static_cast<long long>(j));
    }
    // k >= 1 guarantees the normalizer strictly contains the group, so some
    // weight <= n always hits; reaching here means an internal error.
    throw std::logic_error("distance scan exhausted all weights with k >= 1");
}

std::vector<PauliOperator> weight_optimal_generating_set(const StabilizerGenerators& g,
                                                         std::size_t max_rank) {
    std::size_t r = g.rank();
    if (r == 0) return {};
    std::size_t n = g.num_qubits();

    std::vector<std::uint64_t> histogram(n + 1, 0);
    for_each_group_element(
        g, [&](const PauliOperator& p) { ++histogram[p.weight()]; }, max_rank);

    std::vector<PauliOperator> chosen;
    chosen.reserve(r);
    SymplecticBasis span(n);
    for (std::size_t w = 1; w <= n && chosen.size() < r; ++w) {
        if (histogram[w] == 0) continue;
        std::vector<PauliOperator> bucket;
        bucket.reserve(histogram[w]);
        for_each_group_element(
            g,
            [&](const PauliOperator& p) {
                if (p.weight() == w) bucket.push_back(p);
            },
            max_rank);
        std::sort(bucket.begin(), bucket.end(), [](const PauliOperator& a, const PauliOperator& b) {
            return a.compare_bits_lex(b) < 0;
        });
        for (auto& candidate : bucket) {
            if (span.insert(candidate)) {
                chosen.push_back(std::move(candidate));
                if (chosen.size() == r) break;
            }
        }
    }
    if (chosen.size() != r) throw std::logic_error("greedy selection failed to reach full rank");
    return chosen;
}

std::vector<int> optimal_weight_profile(const StabilizerGenerators& g, std::size_t max_rank) {
    std::vector<int> profile;
    for (const auto& p : weight_optimal_generating_set(g, max_rank))
        profile.push_back(static_cast<int>(p.weight()));
    return profile;
}

int optimal_weight(const StabilizerGenerators& g, std::size_t max_rank) {
    auto profile = optimal_weight_profile(g, max_rank);
    return profile.empty() ? 0 : profile.back();
}

Rational optimal_average_weight(const StabilizerGenerators& g, std::size_t max_rank) {
    auto profile = optimal_weight_profile(g, max_rank);
    if (profile.empty()) return Rational(0);
    long total = std::accumulate(profile.begin(), profile.end(), 0L);
    Rational avg(total, static_cast<long>(profile.size()));
    avg.canonicalize();
    return avg;
}

StabilizerGenerators tensor_product(const StabilizerGenerators& a, const StabilizerGenerators& b) {
    std::size_t n = a.num_qubits() + b.num_qubits();
    std::vector<PauliOperator> gens;
    gens.reserve(a.rank() + b.rank());
    for (const auto& p : a.gens()) gens.push_back(p.embedded(n, 0));
    for (const auto& p : b.gens()) gens.push_back(p.embedded(n, a.num_qubits()));
    if (gens.empty()) return StabilizerGenerators(n);
    return StabilizerGenerators::from_generators(std::move(gens));
}

namespace {

// Drops the qubits outside `keep`, preserving the phase. Valid only when the
// support lies inside `keep` (dropped letters are all I).
PauliOperator compact_support(const PauliOperator& p, const QubitSet& keep) {
    PauliOperator bare = p.restricted_to(keep);
    return PauliOperator(bare.x_bits(), bare.z_bits(), p.phase_power());
}

}  // namespace

StripResult strip_weight_one(const StabilizerGenerators& g, std::size_t max_rank) {
    auto optimal = weight_optimal_generating_set(g, max_rank);
    std::size_t t = 0;
    QubitSet removed(g.num_qubits());
    while (t < optimal.size() && optimal[t].weight() == 1) {
        removed |= optimal[t].support();
        ++t;
    }
    QubitSet keep = removed.complement();
    std::vector<PauliOperator> kept;
    kept.reserve(optimal.size() - t);
    for (std::size_t i = t; i < optimal.size(); ++i) {
        if (optimal[i].support().intersects(removed))
            throw std::logic_error(
                "weight-optimal set touches stripped qubits; greedy invariant violated");
        kept.push_back(compact_support(optimal[i], keep));
    }
    StripResult result{StabilizerGenerators(g.num_qubits() - t), static_cast<int>(t)};
    if (!kept.empty()) result.group = StabilizerGenerators::from_generators(std::move(kept));
    return result;
}

std::vector<Component> factor_components(const StabilizerGenerators& g) {
    std::size_t r = g.rank();
    std::vector<std::size_t> parent(r);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (g.gens()[i].support().intersects(g.gens()[j].support())) parent[find(i)] = find(j);

    std::vector<Component> components;
    std::vector<bool> covered(g.num_qubits(), false);
    std::vector<bool> emitted(r, false);
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t root = find(i);
        if (emitted[root]) continue;
        emitted[root] = true;
        QubitSet qubits(g.num_qubits());
        std::vector<PauliOperator> members;
        for (std::size_t j = 0; j < r; ++j) {
            if (find(j) != root) continue;
            qubits |= g.gens()[j].support();
            members.push_back(g.gens()[j]);
        }
        for (int q : qubits.indices()) covered[static_cast<std::size_t>(q)] = true;
        std::vector<PauliOperator> compacted;
        compacted.reserve(members.size());
        for (const auto& m : members) compacted.push_back(compact_support(m, qubits));
        components.push_back(
            Component{qubits, StabilizerGenerators::from_generators(std::move(compacted))});
    }
    for (std::size_t q = 0; q < g.num_qubits(); ++q) {
        if (covered[q]) continue;
        QubitSet single(g.num_qubits());
        single.add(q);
        components.push_back(Component{single, StabilizerGenerators(1)});
    }
    std::sort(components.begin(), components.end(), [](const Component& a, const Component& b) {
        return a.qubits.bits().lowest_set() < b.qubits.bits().lowest_set();
    });
    return components;
}

CodeParameters code_parameters(const StabilizerGenerators& g, const DistanceBudget& budget,
                               std::size_t max_rank) {
    CodeParameters params;
    params.n = static_cast<int>(g.num_qubits());
    params.k = g.k();
    params.d = distance(g, budget);
    auto profile = optimal_weight_profile(g, max_rank);
    params.w = profile.empty() ? 0 : profile.back();
    if (profile.empty()) {
        params.w_avg = Rational(0);
    } else {
        long total = std::accumulate(profile.begin(), profile.end(), 0L);
        params.w_avg = Rational(total, static_cast<long>(profile.size()));
        params.w_avg.canonicalize();
    }
    return params;
}

}  // namespace stabweight
