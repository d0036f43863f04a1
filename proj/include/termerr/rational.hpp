#pragma once
#include <cstdint>
#include <string>
#include <string_view>

#include "termerr/bigint.hpp"

namespace termerr {

// Exact rational number. Always stored reduced with a positive denominator;
// every closed-form quantity in this project is one of these, floats appear
// only at display time.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t v) : num_(v), den_(1) {}
    Rational(std::int64_t num, std::int64_t den) : Rational(BigInt(num), BigInt(den)) {}
    Rational(BigInt num, BigInt den);

    // accepts "3/2", "5", "-0.25", "1.5"
    static Rational from_string(std::string_view s);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);  // throws std::domain_error on zero
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    int compare(const Rational& rhs) const;
    bool operator==(const Rational& rhs) const { return num_ == rhs.num_ && den_ == rhs.den_; }
    bool operator!=(const Rational& rhs) const { return !(*this == rhs); }
    bool operator<(const Rational& rhs) const { return compare(rhs) < 0; }
    bool operator<=(const Rational& rhs) const { return compare(rhs) <= 0; }
    bool operator>(const Rational& rhs) const { return compare(rhs) > 0; }
    bool operator>=(const Rational& rhs) const { return compare(rhs) >= 0; }

    // "num/den", or just "num" for integers
    std::string to_string() const;

    // exact fixed-point rendering, ties rounded away from zero ("0.0303")
    std::string to_fixed(int digits) const;

    double to_double() const;

private:
    BigInt num_;
    BigInt den_;  // > 0
    void normalize();
};

}  // namespace termerr
