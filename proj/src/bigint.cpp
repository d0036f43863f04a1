#include "termerr/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace termerr {

BigInt::BigInt(std::int64_t v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // avoid UB on INT64_MIN
    std::uint64_t u = v < 0 ? ~static_cast<std::uint64_t>(v) + 1u : static_cast<std::uint64_t>(v);
    mag_.push_back(static_cast<std::uint32_t>(u));
    if (u >> 32) mag_.push_back(static_cast<std::uint32_t>(u >> 32));
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

void BigInt::add_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t s = carry + a[i] + (i < b.size() ? b[i] : 0);
        a[i] = static_cast<std::uint32_t>(s);
        carry = s >> 32;
    }
    if (carry) a.push_back(static_cast<std::uint32_t>(carry));
}

void BigInt::sub_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (d < 0) {
            d += (std::int64_t{1} << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        a[i] = static_cast<std::uint32_t>(d);
    }
}

int BigInt::compare(const BigInt& rhs) const {
    if (sign_ != rhs.sign_) return sign_ < rhs.sign_ ? -1 : 1;
    int c = cmp_mag(mag_, rhs.mag_);
    return sign_ >= 0 ? c : -c;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt& BigInt::operator+=(const BigInt& rhs) {
    if (rhs.sign_ == 0) return *this;
    if (sign_ == 0) return *this = rhs;
    if (sign_ == rhs.sign_) {
        add_mag(mag_, rhs.mag_);
        return *this;
    }
    int c = cmp_mag(mag_, rhs.mag_);
    if (c == 0) return *this = BigInt{};
    if (c > 0) {
        sub_mag(mag_, rhs.mag_);
    } else {
        std::vector<std::uint32_t> tmp = rhs.mag_;
        sub_mag(tmp, mag_);
        mag_ = std::move(tmp);
        sign_ = rhs.sign_;
    }
    trim();
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& rhs) { return *this += -rhs; }

BigInt& BigInt::operator*=(const BigInt& rhs) {
    if (sign_ == 0 || rhs.sign_ == 0) return *this = BigInt{};
    std::vector<std::uint32_t> prod(mag_.size() + rhs.mag_.size(), 0);
    for (std::size_t i = 0; i < mag_.size(); ++i) {
        std::uint64_t carry = 0;
        std::uint64_t ai = mag_[i];
        for (std::size_t j = 0; j < rhs.mag_.size(); ++j) {
            std::uint64_t cur = prod[i + j] + ai * rhs.mag_[j] + carry;
            prod[i + j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        std::size_t k = i + rhs.mag_.size();
        while (carry) {
            std::uint64_t cur = prod[k] + carry;
            prod[k] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    mag_ = std::move(prod);
    sign_ *= rhs.sign_;
    trim();
    return *this;
}

std::size_t BigInt::bit_length() const {
    if (mag_.empty()) return 0;
    std::uint32_t top = mag_.back();
    std::size_t bits = (mag_.size() - 1) * 32;
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

BigInt& BigInt::shift_left(unsigned bits) {
    if (sign_ == 0 || bits == 0) return *this;
    unsigned words = bits / 32, rem = bits % 32;
    if (rem) {
        std::uint32_t carry = 0;
        for (std::size_t i = 0; i < mag_.size(); ++i) {
            std::uint32_t next = mag_[i] >> (32 - rem);
            mag_[i] = (mag_[i] << rem) | carry;
            carry = next;
        }
        if (carry) mag_.push_back(carry);
    }
    mag_.insert(mag_.begin(), words, 0);
    return *this;
}

namespace {

// in-place magnitude helpers for division/gcd
void mag_shr1(std::vector<std::uint32_t>& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] >>= 1;
        if (i + 1 < a.size() && (a[i + 1] & 1u)) a[i] |= 0x80000000u;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    int cmp = cmp_mag(a.mag_, b.mag_);
    if (cmp < 0) {
        r = a;
        q = BigInt{};
        return;
    }
    // binary long division on magnitudes
    std::size_t n = a.bit_length();
    std::vector<std::uint32_t> qm((n + 31) / 32, 0), rm;
    for (std::size_t i = n; i-- > 0;) {
        // rm = rm*2 + bit_i(a)
        std::uint32_t carry = (a.mag_[i / 32] >> (i % 32)) & 1u;
        for (std::size_t w = 0; w < rm.size(); ++w) {
            std::uint32_t next = rm[w] >> 31;
            rm[w] = (rm[w] << 1) | carry;
            carry = next;
        }
        if (carry) rm.push_back(carry);
        if (cmp_mag(rm, b.mag_) >= 0) {
            sub_mag(rm, b.mag_);
            while (!rm.empty() && rm.back() == 0) rm.pop_back();
            qm[i / 32] |= (1u << (i % 32));
        }
    }
    q = BigInt{};
    q.mag_ = std::move(qm);
    q.sign_ = a.sign_ * b.sign_;
    q.trim();
    r = BigInt{};
    r.mag_ = std::move(rm);
    r.sign_ = a.sign_;
    r.trim();
}

BigInt BigInt::operator/(const BigInt& rhs) const {
    BigInt q, r;
    divmod(*this, rhs, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& rhs) const {
    BigInt q, r;
    divmod(*this, rhs, q, r);
    return r;
}

BigInt& BigInt::mul_u32(std::uint32_t f) {
    if (sign_ == 0) return *this;
    if (f == 0) return *this = BigInt{};
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < mag_.size(); ++i) {
        std::uint64_t cur = static_cast<std::uint64_t>(mag_[i]) * f + carry;
        mag_[i] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
    }
    if (carry) mag_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
}

BigInt& BigInt::divexact_u32(std::uint32_t d) {
    if (d == 0) throw std::domain_error("BigInt: division by zero");
    if (sign_ == 0) return *this;
    std::uint64_t rem = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | mag_[i];
        mag_[i] = static_cast<std::uint32_t>(cur / d);
        rem = cur % d;
    }
    if (rem != 0) throw std::logic_error("BigInt: divexact_u32 with nonzero remainder");
    trim();
    return *this;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.sign_ = a.mag_.empty() ? 0 : 1;
    b.sign_ = b.mag_.empty() ? 0 : 1;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // binary gcd
    unsigned shift = 0;
    while (!a.is_odd() && !b.is_odd()) {
        mag_shr1(a.mag_);
        mag_shr1(b.mag_);
        ++shift;
    }
    while (!a.is_odd()) mag_shr1(a.mag_);
    while (true) {
        while (!b.is_odd()) mag_shr1(b.mag_);
        if (cmp_mag(a.mag_, b.mag_) > 0) std::swap(a.mag_, b.mag_);
        sub_mag(b.mag_, a.mag_);
        while (!b.mag_.empty() && b.mag_.back() == 0) b.mag_.pop_back();
        if (b.mag_.empty()) break;
    }
    a.shift_left(shift);
    return a;
}

BigInt BigInt::from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("BigInt: empty string");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: no digits");
    BigInt r;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9') throw std::invalid_argument("BigInt: bad digit");
        r.mul_u32(10);
        if (r.sign_ == 0 && c != '0') {
            r.sign_ = 1;
            r.mag_.push_back(static_cast<std::uint32_t>(c - '0'));
        } else if (r.sign_ != 0) {
            std::vector<std::uint32_t> d{static_cast<std::uint32_t>(c - '0')};
            if (c != '0') add_mag(r.mag_, d);
        }
    }
    if (neg && r.sign_ != 0) r.sign_ = -1;
    return r;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<std::uint32_t> m = mag_;
    std::string digits;
    while (!m.empty()) {
        std::uint64_t rem = 0;
        for (std::size_t i = m.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | m[i];
            m[i] = static_cast<std::uint32_t>(cur / 1000000000u);
            rem = cur % 1000000000u;
        }
        while (!m.empty() && m.back() == 0) m.pop_back();
        for (int d = 0; d < 9; ++d) {
            digits.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

double BigInt::to_double() const {
    double v = 0.0;
    for (std::size_t i = mag_.size(); i-- > 0;) v = v * 4294967296.0 + mag_[i];
    return sign_ < 0 ? -v : v;
}

bool BigInt::fits_i64() const {
    if (mag_.size() > 2) return false;
    if (mag_.size() < 2) return true;
    std::uint64_t u = (static_cast<std::uint64_t>(mag_[1]) << 32) | mag_[0];
    if (sign_ > 0) return u <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    return u <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) + 1u;
}

std::int64_t BigInt::to_i64() const {
    if (!fits_i64()) throw std::overflow_error("BigInt: value does not fit in int64");
    std::uint64_t u = 0;
    if (mag_.size() >= 1) u |= mag_[0];
    if (mag_.size() == 2) u |= static_cast<std::uint64_t>(mag_[1]) << 32;
    if (sign_ >= 0) return static_cast<std::int64_t>(u);
    return static_cast<std::int64_t>(~u + 1u);
}

BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return BigInt{0};
    if (k > n - k) k = n - k;
    BigInt acc{1};
    for (std::int64_t i = 1; i <= k; ++i) {
        acc.mul_u32(static_cast<std::uint32_t>(n - k + i));
        acc.divexact_u32(static_cast<std::uint32_t>(i));
    }
    return acc;
}

BigInt pow10(unsigned n) {
    BigInt r{1};
    for (; n >= 9; n -= 9) r.mul_u32(1000000000u);
    for (; n > 0; --n) r.mul_u32(10u);
    return r;
}

}  // namespace termerr
