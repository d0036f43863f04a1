#pragma once
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace termerr {

// Arbitrary-precision signed integer, sign-magnitude over 32-bit limbs.
// Path counts here top out around C(2000, 1000) (~2000 bits), so schoolbook
// algorithms are enough everywhere.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v);

    // decimal digits with optional leading '-'
    static BigInt from_string(std::string_view s);

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    bool is_odd() const { return sign_ != 0 && (mag_[0] & 1u); }

    BigInt abs() const;
    BigInt operator-() const;

    BigInt& operator+=(const BigInt& rhs);
    BigInt& operator-=(const BigInt& rhs);
    BigInt& operator*=(const BigInt& rhs);
    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }

    // truncated division: q rounds toward zero, r has the sign of a,
    // a == q*b + r with |r| < |b|. Throws std::domain_error on b == 0.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    BigInt operator/(const BigInt& rhs) const;
    BigInt operator%(const BigInt& rhs) const;

    // multiply / exact-divide by a small factor (divexact throws if not exact)
    BigInt& mul_u32(std::uint32_t f);
    BigInt& divexact_u32(std::uint32_t d);

    BigInt& shift_left(unsigned bits);
    static BigInt gcd(BigInt a, BigInt b);  // nonnegative

    int compare(const BigInt& rhs) const;  // -1, 0, +1
    bool operator==(const BigInt& rhs) const { return compare(rhs) == 0; }
    bool operator!=(const BigInt& rhs) const { return compare(rhs) != 0; }
    bool operator<(const BigInt& rhs) const { return compare(rhs) < 0; }
    bool operator<=(const BigInt& rhs) const { return compare(rhs) <= 0; }
    bool operator>(const BigInt& rhs) const { return compare(rhs) > 0; }
    bool operator>=(const BigInt& rhs) const { return compare(rhs) >= 0; }

    std::string to_string() const;
    double to_double() const;
    bool fits_i64() const;
    std::int64_t to_i64() const;  // throws std::overflow_error if out of range

    std::size_t bit_length() const;

private:
    // invariants: no leading zero limbs; sign_ == 0 iff mag_ empty
    int sign_ = 0;
    std::vector<std::uint32_t> mag_;  // little-endian, base 2^32

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static void add_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static void sub_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);  // needs a >= b
    void trim();
    friend class Rational;
};

// C(n, k); zero when k < 0 or k > n
BigInt binomial(std::int64_t n, std::int64_t k);

BigInt pow10(unsigned n);

}  // namespace termerr
