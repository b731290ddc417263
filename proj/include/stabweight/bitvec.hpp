#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace stabweight {

// Fixed-width packed bit vector. Bit i lives in word i/64 at position i%64.
// Ordering helpers treat bit 0 as the most significant position, so that
// compare_lex matches reading the bits left to right as a string.
class BitVector {
public:
    BitVector() = default;

    explicit BitVector(std::size_t num_bits)
        : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {}

    std::size_t size() const { return num_bits_; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool value) {
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    std::size_t popcount() const {
        std::size_t total = 0;
        for (auto w : words_) total += std::popcount(w);
        return total;
    }

    bool none() const {
        for (auto w : words_) {
            if (w) return false;
        }
        return true;
    }

    bool any() const { return !none(); }

    // Index of the lowest set bit, or size() when empty.
    std::size_t lowest_set() const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (words_[i]) return i * 64 + std::countr_zero(words_[i]);
        }
        return num_bits_;
    }

    BitVector& operator^=(const BitVector& other) {
        check_same_size(other);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
        return *this;
    }

    BitVector& operator|=(const BitVector& other) {
        check_same_size(other);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    BitVector& operator&=(const BitVector& other) {
        check_same_size(other);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        return *this;
    }

    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
    friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

    std::size_t count_and(const BitVector& other) const {
        check_same_size(other);
        std::size_t total = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            total += std::popcount(words_[i] & other.words_[i]);
        return total;
    }

    std::size_t count_or(const BitVector& other) const {
        check_same_size(other);
        std::size_t total = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            total += std::popcount(words_[i] | other.words_[i]);
        return total;
    }

    bool intersects(const BitVector& other) const {
        check_same_size(other);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (words_[i] & other.words_[i]) return true;
        }
        return false;
    }

    bool is_subset_of(const BitVector& other) const {
        check_same_size(other);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (words_[i] & ~other.words_[i]) return false;
        }
        return true;
    }

    bool operator==(const BitVector& other) const = default;

    // Lexicographic comparison of the bit strings b0 b1 ... b_{n-1}.
    // Returns <0, 0, >0 like strcmp.
    int compare_lex(const BitVector& other) const {
        check_same_size(other);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t diff = words_[i] ^ other.words_[i];
            if (diff) {
                std::size_t bit = std::countr_zero(diff);
                return ((words_[i] >> bit) & 1u) ? 1 : -1;
            }
        }
        return 0;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

private:
    void check_same_size(const BitVector& other) const {
        if (num_bits_ != other.num_bits_)
            throw std::invalid_argument("bit vector size mismatch");
    }

    std::size_t num_bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace stabweight
