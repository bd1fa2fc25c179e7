#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace ogc {

/// Exact rational arithmetic with a distinguished +infinity, used for all
/// weights, costs and violation measures. Infinity absorbs addition and
/// dominates comparison. Division is never needed beyond normalization.
class Rational {
public:
    Rational() : num_(0), den_(1), inf_(false) {}
    Rational(std::int64_t n) : num_(n), den_(1), inf_(false) {} // NOLINT: implicit by design
    Rational(std::int64_t n, std::int64_t d);

    static Rational infinity();
    /// Parses "3", "-7/2" or "inf".
    static Rational parse(const std::string& text);

    bool is_infinite() const { return inf_; }
    bool is_zero() const { return !inf_ && num_ == 0; }
    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }

    bool operator==(const Rational& o) const;
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    /// Renders as "10", "7/2" or "inf"; round-trips through parse().
    std::string str() const;

private:
    void normalize();

    std::int64_t num_;
    std::int64_t den_; // > 0 unless inf_
    bool inf_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace ogc
