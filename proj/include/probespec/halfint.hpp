#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace probespec {

// Angular momenta and magnetic quantum numbers come in integer and
// half-integer flavours.  Storing twice the value as an int keeps all
// arithmetic exact and makes parity checks trivial.
class HalfInt {
public:
    constexpr HalfInt() : twice_(0) {}
    constexpr HalfInt(int n) : twice_(2 * n) {}  // implicit from whole integers

    static constexpr HalfInt from_twice(int t) {
        HalfInt h;
        h.twice_ = t;
        return h;
    }

    constexpr int twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr double value() const { return 0.5 * twice_; }

    // Exact integer extraction; throws if the value is genuinely half-odd.
    constexpr int as_int() const {
        if (!is_integer())
            throw std::domain_error("HalfInt: not an integer value");
        return twice_ / 2;
    }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a) { return from_twice(-a.twice_); }
    friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

    HalfInt& operator+=(HalfInt b) { twice_ += b.twice_; return *this; }
    HalfInt& operator-=(HalfInt b) { twice_ -= b.twice_; return *this; }

    // "2", "-1", "3/2", "-5/2", "1.5" are all accepted.
    static HalfInt parse(const std::string& s);

    // "2", "-1", "3/2" style rendering (half-odd values use the p/2 form).
    std::string str() const;

private:
    int twice_;
};

// Sum parity: j1+j2+j3 must be an integer for any coupled triple.
inline bool integer_sum(HalfInt a, HalfInt b, HalfInt c) {
    return (a.twice() + b.twice() + c.twice()) % 2 == 0;
}

}  // namespace probespec
