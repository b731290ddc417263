#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stabweight/errors.hpp"
#include "stabweight/extint.hpp"
#include "stabweight/pauli.hpp"
#include "stabweight/rational.hpp"

namespace stabweight {

// Row-echelon F2 basis over the symplectic bit representation, with exact
// phase tracking through the row operations. Columns are ordered
// x_0 .. x_{n-1} z_0 .. z_{n-1}.
class SymplecticBasis {
public:
    explicit SymplecticBasis(std::size_t n) : n_(n) {}

    std::size_t num_qubits() const { return n_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<PauliOperator>& rows() const { return rows_; }

    // Multiplies p by basis rows to clear every pivot column it occupies.
    // The result has zero letters iff p's bit pattern lies in the span.
    PauliOperator reduce(PauliOperator p) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (column_bit(p, pivots_[i])) p *= rows_[i];
        }
        return p;
    }

    // Bits-only span test; cheaper than reduce when the phase is not needed.
    bool contains_bits(const PauliOperator& p) const {
        BitVector x = p.x_bits(), z = p.z_bits();
        return contains_bits(x, z);
    }

    bool contains_bits(BitVector x, BitVector z) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            std::size_t c = pivots_[i];
            bool bit = c < n_ ? x.get(c) : z.get(c - n_);
            if (bit) {
                x ^= rows_[i].x_bits();
                z ^= rows_[i].z_bits();
            }
        }
        return x.none() && z.none();
    }

    // Inserts p when independent of the current span; returns true when the
    // basis grew. Rows stay sorted by pivot column.
    bool insert(PauliOperator p) {
        p = reduce(std::move(p));
        if (p.is_identity_letters()) return false;
        std::size_t pivot = pivot_column(p);
        std::size_t at = 0;
        while (at < pivots_.size() && pivots_[at] < pivot) ++at;
        rows_.insert(rows_.begin() + at, std::move(p));
        pivots_.insert(pivots_.begin() + at, pivot);
        return true;
    }

private:
    bool column_bit(const PauliOperator& p, std::size_t c) const {
        return c < n_ ? p.x_bit(c) : p.z_bit(c - n_);
    }

    std::size_t pivot_column(const PauliOperator& p) const {
        std::size_t x_low = p.x_bits().lowest_set();
        if (x_low < n_) return x_low;
        return n_ + p.z_bits().lowest_set();
    }

    std::size_t n_;
    std::vector<PauliOperator> rows_;
    std::vector<std::size_t> pivots_;
};

// Independent, pairwise-commuting, real-signed generators of a stabilizer
// group. Independence makes the generated group (-I)-free automatically.
class StabilizerGenerators {
public:
    explicit StabilizerGenerators(std::size_t n) : n_(n), basis_(n) {}

    static StabilizerGenerators from_generators(std::vector<PauliOperator> gens);

    std::size_t num_qubits() const { return n_; }
    std::size_t rank() const { return gens_.size(); }
    int k() const { return static_cast<int>(n_ - gens_.size()); }
    const std::vector<PauliOperator>& gens() const { return gens_; }
    const SymplecticBasis& basis() const { return basis_; }

private:
    std::size_t n_;
    std::vector<PauliOperator> gens_;
    SymplecticBasis basis_;
};

// Reduces an arbitrary commuting, real-signed generating list to an
// independent one spanning the same group, with signs propagated exactly.
// Throws when a pair fails to commute, an operator is not Hermitian with
// real sign, or the span contains -I.
StabilizerGenerators canonicalize(const std::vector<PauliOperator>& ops);

struct MemberResult {
    bool is_member = false;
    int sign = 0;  // sign s with s*P in the group; valid when is_member
};

// F2 solve for P's bit pattern over the generators; reports the exact sign
// of the matching group element relative to P.
MemberResult member(const StabilizerGenerators& g, const PauliOperator& p);

struct DistanceBudget {
    std::size_t max_n = 14;
    std::size_t max_weight = 8;
};

// Minimum weight over Paulis that commute with every generator but lie
// outside the group mod phase; Infinity when that set is empty (k = 0).
// Brute force by increasing weight; throws BudgetError rather than guessing.
ExtendedInt distance(const StabilizerGenerators& g, const DistanceBudget& budget = {});

inline constexpr std::size_t kDefaultMaxRank = 24;

// Visits every element of the group exactly once in Gray-code order over
// generator subsets. The element passed to fn is reused between calls.
template <typename Fn>
void for_each_group_element(const StabilizerGenerators& g, Fn&& fn,
                            std::size_t max_rank = kDefaultMaxRank) {
    std::size_t r = g.rank();
    if (r > max_rank)
        throw BudgetError("group enumeration over 2^" + std::to_string(r) +
                          " elements exceeds the rank budget of " + std::to_string(max_rank));
    PauliOperator current(g.num_qubits());
    fn(static_cast<const PauliOperator&>(current));
    std::uint64_t total = std::uint64_t{1} << r;
    for (std::uint64_t step = 1; step < total; ++step) {
        std::size_t toggled = std::countr_zero(step);
        current *= g.gens()[toggled];
        fn(static_cast<const PauliOperator&>(current));
    }
}

// Greedy minimum-weight generating set: repeatedly pick a minimum-weight
// group element outside the span of the chosen ones, ties broken by
// lexicographic bit order. Output sorted by nondecreasing weight.
std::vector<PauliOperator> weight_optimal_generating_set(const StabilizerGenerators& g,
                                                         std::size_t max_rank = kDefaultMaxRank);

// Sorted weights of a weight-optimal generating set. The profile is the same
// for every weight-optimal set of the group.
std::vector<int> optimal_weight_profile(const StabilizerGenerators& g,
                                        std::size_t max_rank = kDefaultMaxRank);

// W(G): maximum weight in a weight-optimal generating set (0 for the trivial
// group). W_avg(G): exact rational mean of the profile (0 for trivial).
int optimal_weight(const StabilizerGenerators& g, std::size_t max_rank = kDefaultMaxRank);
Rational optimal_average_weight(const StabilizerGenerators& g,
                                std::size_t max_rank = kDefaultMaxRank);

StabilizerGenerators tensor_product(const StabilizerGenerators& a, const StabilizerGenerators& b);

struct StripResult {
    StabilizerGenerators group;  // on n - removed qubits
    int removed = 0;             // number of weight-1 group elements
};

// Removes the qubits supporting weight-1 group elements; k, d and the
// weight profile above weight 1 are unchanged.
StripResult strip_weight_one(const StabilizerGenerators& g,
                             std::size_t max_rank = kDefaultMaxRank);

struct Component {
    QubitSet qubits;
    StabilizerGenerators group;  // compacted onto its own qubit set
};

// Connected components of the generator-support overlap graph. Qubits outside
// every support become trivial single-qubit components, so the tensor product
// of the outputs reproduces G up to qubit permutation.
std::vector<Component> factor_components(const StabilizerGenerators& g);

struct CodeParameters {
    int n = 0;
    int k = 0;
    ExtendedInt d;
    int w = 0;
    Rational w_avg;
};

CodeParameters code_parameters(const StabilizerGenerators& g, const DistanceBudget& budget = {},
                               std::size_t max_rank = kDefaultMaxRank);

}  // namespace stabweight
