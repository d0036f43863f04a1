#include "termerr/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace termerr {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        BigInt q, r;
        BigInt::divmod(num_, g, q, r);
        num_ = q;
        BigInt::divmod(den_, g, q, r);
        den_ = q;
    }
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ = den_ * rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
    num_ *= rhs.den_;
    den_ *= rhs.num_;
    normalize();
    return *this;
}

int Rational::compare(const Rational& rhs) const {
    // cross-multiply; denominators are positive
    return (num_ * rhs.den_).compare(rhs.num_ * den_);
}

Rational Rational::from_string(std::string_view s) {
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        return Rational(BigInt::from_string(s.substr(0, slash)),
                        BigInt::from_string(s.substr(slash + 1)));
    }
    auto dot = s.find('.');
    if (dot == std::string_view::npos) return Rational(BigInt::from_string(s), BigInt(1));
    std::string digits(s.substr(0, dot));
    std::string_view frac = s.substr(dot + 1);
    if (frac.empty() && (digits.empty() || digits == "-" || digits == "+"))
        throw std::invalid_argument("Rational: no digits");
    digits.append(frac);
    if (digits == "-" || digits == "+" || digits.empty())
        throw std::invalid_argument("Rational: no digits");
    return Rational(BigInt::from_string(digits), pow10(static_cast<unsigned>(frac.size())));
}

std::string Rational::to_string() const {
    if (den_ == BigInt(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

std::string Rational::to_fixed(int digits) const {
    if (digits < 0) throw std::invalid_argument("Rational: negative digit count");
    BigInt scaled = num_.abs() * pow10(static_cast<unsigned>(digits));
    BigInt q, r;
    BigInt::divmod(scaled, den_, q, r);
    BigInt twice_r = r;
    twice_r += r;
    if (twice_r >= den_) q += BigInt(1);
    std::string body = q.to_string();
    if (digits > 0) {
        if (body.size() <= static_cast<std::size_t>(digits))
            body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
        body.insert(body.size() - static_cast<std::size_t>(digits), ".");
    }
    if (num_.sign() < 0 && !q.is_zero()) body.insert(0, "-");
    return body;
}

double Rational::to_double() const {
    if (num_.is_zero()) return 0.0;
    // scale so the quotient keeps ~64 significant bits, then rescale
    BigInt scaled = num_.abs();
    scaled.shift_left(64);
    BigInt q, r;
    BigInt::divmod(scaled, den_, q, r);
    double v = std::ldexp(q.to_double(), -64);
    return num_.sign() < 0 ? -v : v;
}

}  // namespace termerr
