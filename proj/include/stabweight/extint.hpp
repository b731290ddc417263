#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stabweight {

// A non-negative integer extended with +infinity. Used for code distances
// and table cells, where "no such element / no such code" is infinite.
class ExtendedInt {
public:
    constexpr ExtendedInt() : value_(0) {}

    constexpr ExtendedInt(long long value) : value_(value) {
        if (value < 0) throw std::invalid_argument("ExtendedInt requires a non-negative value");
    }

    static constexpr ExtendedInt infinity() {
        ExtendedInt e;
        e.value_ = -1;
        return e;
    }

    constexpr bool is_infinite() const { return value_ < 0; }
    constexpr bool is_finite() const { return value_ >= 0; }

    constexpr long long value() const {
        if (is_infinite()) throw std::logic_error("value() called on infinity");
        return value_;
    }

    friend constexpr bool operator==(const ExtendedInt& a, const ExtendedInt& b) {
        return a.value_ == b.value_;
    }

    friend constexpr bool operator<(const ExtendedInt& a, const ExtendedInt& b) {
        if (a.is_infinite()) return false;
        if (b.is_infinite()) return true;
        return a.value_ < b.value_;
    }

    friend constexpr bool operator>(const ExtendedInt& a, const ExtendedInt& b) { return b < a; }
    friend constexpr bool operator<=(const ExtendedInt& a, const ExtendedInt& b) { return !(b < a); }
    friend constexpr bool operator>=(const ExtendedInt& a, const ExtendedInt& b) { return !(a < b); }
    friend constexpr bool operator!=(const ExtendedInt& a, const ExtendedInt& b) { return !(a == b); }

    std::string str() const { return is_infinite() ? "inf" : std::to_string(value_); }

private:
    long long value_;
};

}  // namespace stabweight
