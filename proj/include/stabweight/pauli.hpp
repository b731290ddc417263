#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "stabweight/bitvec.hpp"
#include "stabweight/errors.hpp"

namespace stabweight {

// Subset of the qubits [0, n). Backed by a packed bit vector so that unions
// and cardinalities over 127-qubit devices stay O(words).
class QubitSet {
public:
    explicit QubitSet(std::size_t num_qubits) : bits_(num_qubits) {}
    explicit QubitSet(BitVector bits) : bits_(std::move(bits)) {}

    static QubitSet from_indices(std::size_t num_qubits, const std::vector<int>& indices) {
        QubitSet s(num_qubits);
        for (int q : indices) {
            if (q < 0 || static_cast<std::size_t>(q) >= num_qubits)
                throw DimensionError("qubit index out of range");
            s.bits_.set(static_cast<std::size_t>(q), true);
        }
        return s;
    }

    std::size_t num_qubits() const { return bits_.size(); }
    std::size_t count() const { return bits_.popcount(); }
    bool contains(std::size_t q) const { return bits_.get(q); }
    void add(std::size_t q) { bits_.set(q, true); }
    void remove(std::size_t q) { bits_.set(q, false); }
    bool empty() const { return bits_.none(); }

    std::vector<int> indices() const {
        std::vector<int> out;
        out.reserve(count());
        for (std::size_t q = 0; q < bits_.size(); ++q) {
            if (bits_.get(q)) out.push_back(static_cast<int>(q));
        }
        return out;
    }

    QubitSet& operator|=(const QubitSet& other) {
        bits_ |= other.bits_;
        return *this;
    }
    QubitSet& operator&=(const QubitSet& other) {
        bits_ &= other.bits_;
        return *this;
    }
    friend QubitSet operator|(QubitSet a, const QubitSet& b) { return a |= b; }
    friend QubitSet operator&(QubitSet a, const QubitSet& b) { return a &= b; }

    QubitSet complement() const {
        QubitSet out(bits_.size());
        for (std::size_t q = 0; q < bits_.size(); ++q) out.bits_.set(q, !bits_.get(q));
        return out;
    }

    bool intersects(const QubitSet& other) const { return bits_.intersects(other.bits_); }
    bool is_subset_of(const QubitSet& other) const { return bits_.is_subset_of(other.bits_); }
    bool operator==(const QubitSet& other) const = default;

    const BitVector& bits() const { return bits_; }

private:
    BitVector bits_;
};

// n-qubit Pauli operator in binary-symplectic form with an exact mod-4 phase.
// The stored operator is i^{phase_power} * (L_0 ⊗ ... ⊗ L_{n-1}) where each
// letter L_q ∈ {I,X,Y,Z} is encoded by (x_bit, z_bit): I=(0,0), X=(1,0),
// Y=(1,1), Z=(0,1). Hermitian operators have even phase_power.
class PauliOperator {
public:
    explicit PauliOperator(std::size_t n) : x_(n), z_(n), phase_(0) {}

    PauliOperator(BitVector x, BitVector z, int phase_power)
        : x_(std::move(x)), z_(std::move(z)), phase_(((phase_power % 4) + 4) % 4) {
        if (x_.size() != z_.size()) throw DimensionError("x/z bit vectors differ in length");
    }

    static PauliOperator parse(std::string_view text);
    std::string str() const;

    // Single-letter operator at qubit q, e.g. single(4, 1, 'Y') = IYII.
    static PauliOperator single(std::size_t n, std::size_t q, char letter);

    std::size_t num_qubits() const { return x_.size(); }
    int phase_power() const { return phase_; }
    bool is_hermitian() const { return (phase_ & 1) == 0; }

    // +1 or -1; only meaningful for Hermitian operators.
    int sign() const {
        if (!is_hermitian()) throw std::logic_error("sign of a non-Hermitian Pauli");
        return phase_ == 0 ? 1 : -1;
    }

    std::size_t weight() const { return x_.count_or(z_); }
    bool is_identity_letters() const { return x_.none() && z_.none(); }

    QubitSet support() const { return QubitSet(x_ | z_); }

    bool x_bit(std::size_t q) const { return x_.get(q); }
    bool z_bit(std::size_t q) const { return z_.get(q); }

    char letter(std::size_t q) const {
        static constexpr char table[4] = {'I', 'X', 'Z', 'Y'};
        return table[(x_.get(q) ? 1 : 0) | (z_.get(q) ? 2 : 0)];
    }

    PauliOperator& operator*=(const PauliOperator& other);
    friend PauliOperator operator*(PauliOperator a, const PauliOperator& b) { return a *= b; }

    bool commutes_with(const PauliOperator& other) const {
        if (num_qubits() != other.num_qubits()) throw DimensionError("qubit count mismatch");
        return ((x_.count_and(other.z_) + z_.count_and(other.x_)) & 1u) == 0;
    }

    // The factor of this operator on S, compacted onto |S| qubits in index
    // order. The phase is discarded (result is the bare letter string).
    PauliOperator restricted_to(const QubitSet& s) const;

    // Same letters placed into a larger register starting at qubit `offset`;
    // phase carried over. Used to build tensor products.
    PauliOperator embedded(std::size_t total_qubits, std::size_t offset) const;

    bool equal_letters(const PauliOperator& other) const {
        return x_ == other.x_ && z_ == other.z_;
    }
    bool operator==(const PauliOperator& other) const = default;

    // Lexicographic order on the symplectic bit string x_0..x_{n-1} z_0..z_{n-1}.
    int compare_bits_lex(const PauliOperator& other) const {
        int c = x_.compare_lex(other.x_);
        return c != 0 ? c : z_.compare_lex(other.z_);
    }

    const BitVector& x_bits() const { return x_; }
    const BitVector& z_bits() const { return z_; }

private:
    BitVector x_, z_;
    int phase_;
};

// Reads one operator per line; blank lines and lines starting with '#' are
// skipped. All operators must act on the same number of qubits.
std::vector<PauliOperator> read_pauli_lines(const std::string& text);
std::vector<PauliOperator> read_pauli_file(const std::string& path);

}  // namespace stabweight
