#include "ogc/rational.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

#include "ogc/errors.hpp"

namespace ogc {

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d), inf_(false) {
    if (d == 0) throw InputError("rational with zero denominator");
    normalize();
}

Rational Rational::infinity() {
    Rational r;
    r.inf_ = true;
    r.num_ = 1;
    r.den_ = 1;
    return r;
}

void Rational::normalize() {
    if (inf_) return;
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::parse(const std::string& text) {
    if (text == "inf" || text == "infinity") return infinity();
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text));
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw InputError("cannot parse rational: " + text);
    }
}

Rational Rational::operator+(const Rational& o) const {
    if (inf_ || o.inf_) return infinity();
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    if (inf_) return infinity();
    if (o.inf_) throw InputError("cannot subtract infinity");
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    if (inf_ || o.inf_) {
        if (is_zero() || o.is_zero()) return Rational(0);
        return infinity();
    }
    return Rational(num_ * o.num_, den_ * o.den_);
}

bool Rational::operator==(const Rational& o) const {
    if (inf_ || o.inf_) return inf_ == o.inf_;
    return num_ == o.num_ && den_ == o.den_;
}

bool Rational::operator<(const Rational& o) const {
    if (inf_) return false;
    if (o.inf_) return true;
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::string Rational::str() const {
    if (inf_) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace ogc
