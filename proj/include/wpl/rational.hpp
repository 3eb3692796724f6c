#pragma once

#include <cstdint>
#include <iosfwd>
#include <numeric>
#include <ostream>
#include <string>

#include "wpl/error.hpp"

namespace wpl {

// Exact rational scalar on int64 numerator/denominator, always reduced,
// denominator always positive. Intermediate products run through __int128 and
// overflow of the reduced result throws instead of wrapping.
class Rational {
  public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { reduce(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error("rational division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Serialized form: "n" for integers, "n/d" otherwise.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  private:
    using i128 = __int128;

    static Rational make(i128 n, i128 d) {
        Rational r;
        r.assign(n, d);
        return r;
    }

    void assign(i128 n, i128 d) {
        if (d == 0) throw Error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) throw Error("rational overflow");
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void reduce() { assign(num_, den_); }

    std::int64_t num_;
    std::int64_t den_;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

// Parses "n" or "n/d". Throws UsageError on malformed input.
Rational parse_rational(const std::string& s);

}  // namespace wpl

// Eigen scalar-traits hook so Matrix<wpl::Rational, ...> works.
#include <Eigen/Core>

namespace Eigen {
template <>
struct NumTraits<wpl::Rational> : GenericNumTraits<wpl::Rational> {
    using Real = wpl::Rational;
    using NonInteger = wpl::Rational;
    using Nested = wpl::Rational;
    using Literal = std::int64_t;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 10,
        MulCost = 10,
    };
    static inline Real epsilon() { return wpl::Rational(0); }
    static inline Real dummy_precision() { return wpl::Rational(0); }
    static inline int digits10() { return 0; }
};
}  // namespace Eigen
