#include "doctest.h"

#include <stdexcept>

#include <numeric>
#include <random>

#include "termerr/bigint.hpp"

using termerr::BigInt;
using termerr::binomial;

namespace {

using i128 = __int128;

i128 to_i128(const BigInt& v) {
    i128 r = 0;
    for (char c : v.to_string()) {
        if (c == '-') continue;
        r = r * 10 + (c - '0');
    }
    return v.sign() < 0 ? -r : r;
}

}  // namespace

TEST_CASE("small value round trips") {
    CHECK(BigInt(0).to_string() == "0");
    CHECK(BigInt(-1).to_string() == "-1");
    CHECK(BigInt(4294967296LL).to_string() == "4294967296");
    CHECK(BigInt::from_string("-9007199254740993").to_i64() == -9007199254740993LL);
    CHECK(BigInt(INT64_MIN).to_i64() == INT64_MIN);
    CHECK(BigInt(INT64_MAX).to_i64() == INT64_MAX);
    CHECK(BigInt::from_string("000123").to_string() == "123");
    CHECK_THROWS_AS(BigInt::from_string("12a"), std::invalid_argument);
    CHECK_THROWS_AS(BigInt::from_string(""), std::invalid_argument);
}

TEST_CASE("randomized arithmetic agrees with native 128-bit") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        auto a = static_cast<std::int64_t>(rng());
        auto b = static_cast<std::int64_t>(rng());
        // keep products inside i128
        a >>= 2;
        b >>= 2;
        BigInt ba(a), bb(b);
        CHECK(to_i128(ba + bb) == i128(a) + b);
        CHECK(to_i128(ba - bb) == i128(a) - b);
        CHECK(to_i128(ba * bb) == i128(a) * b);
        if (b != 0) {
            BigInt q, r;
            BigInt::divmod(ba, bb, q, r);
            CHECK(to_i128(q) == i128(a) / b);
            CHECK(to_i128(r) == i128(a) % b);
            CHECK(q * bb + r == ba);
        }
        CHECK((ba < bb) == (a < b));
        CHECK((ba == bb) == (a == b));
    }
}

TEST_CASE("gcd matches std::gcd and scales up") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        auto a = static_cast<std::int64_t>(rng() >> 1);
        auto b = static_cast<std::int64_t>(rng() >> 1);
        CHECK(BigInt::gcd(BigInt(a), BigInt(b)) == BigInt(std::gcd(a, b)));
    }
    // gcd(12!, 2^40) = 2^10
    BigInt fact(1);
    for (int i = 2; i <= 12; ++i) fact.mul_u32(static_cast<std::uint32_t>(i));
    BigInt pow2(1);
    pow2.shift_left(40);
    CHECK(BigInt::gcd(fact, pow2) == BigInt(1024));
    CHECK(BigInt::gcd(BigInt(0), BigInt(-6)) == BigInt(6));
}

TEST_CASE("large multiply and divide are inverse") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        BigInt a(1), b(1);
        for (int j = 0; j < 12; ++j) {
            a.mul_u32(static_cast<std::uint32_t>(rng() | 1));
            b.mul_u32(static_cast<std::uint32_t>(rng() | 1));
        }
        BigInt q, r;
        BigInt::divmod(a * b, b, q, r);
        CHECK(q == a);
        CHECK(r.is_zero());
        BigInt::divmod(a * b + BigInt(5), b, q, r);
        CHECK(q == a);
        CHECK(r == BigInt(5));
    }
}

TEST_CASE("binomial reference values") {
    CHECK(binomial(0, 0) == BigInt(1));
    CHECK(binomial(5, -1).is_zero());
    CHECK(binomial(5, 6).is_zero());
    CHECK(binomial(52, 5) == BigInt(2598960));
    CHECK(binomial(24, 12) == BigInt(2704156));
    CHECK(binomial(800, 40).to_string() ==
          "60446468406750217837743997810852434314290608205296615815136638700320");
    // Pascal identity on a random grid
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 300);
        std::int64_t k = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n - 1));
        CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
}

TEST_CASE("to_double and pow10") {
    CHECK(BigInt(1234567).to_double() == doctest::Approx(1234567.0));
    CHECK(BigInt(-42).to_double() == doctest::Approx(-42.0));
    CHECK(termerr::pow10(0) == BigInt(1));
    CHECK(termerr::pow10(9) == BigInt(1000000000));
    CHECK(termerr::pow10(19).to_string() == "10000000000000000000");
}

TEST_CASE("divexact guards and shifts") {
    BigInt v(1000);
    v.divexact_u32(8);
    CHECK(v == BigInt(125));
    CHECK_THROWS_AS(BigInt(10).divexact_u32(3), std::logic_error);
    CHECK_THROWS_AS(BigInt(10).divexact_u32(0), std::domain_error);
    BigInt q, r;
    CHECK_THROWS_AS(BigInt::divmod(BigInt(1), BigInt(0), q, r), std::domain_error);
    BigInt one(1);
    one.shift_left(100);
    CHECK(one.bit_length() == 101);
    CHECK(one.to_string() == "1267650600228229401496703205376");
}
