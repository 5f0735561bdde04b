// Exact rational arithmetic and the distance type.
//
// Tree-model distances are integers and Gromov products are half-integers,
// so a small int64 rational is plenty; all intermediates go through 128-bit
// products with an overflow check.  The half-plane model instead produces
// floating values that carry an "approximate" flag, and the flag is sticky
// under arithmetic so approximate data can never contaminate a certificate
// silently.

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "pingpong/errors.hpp"

namespace pingpong {

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_),
                        checked((__int128)a.den_ * b.den_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(checked((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_),
                        checked((__int128)a.den_ * b.den_));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(checked((__int128)a.num_ * b.num_), checked((__int128)a.den_ * b.den_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw arithmetic_overflow_error("rational division by zero");
        return Rational(checked((__int128)a.num_ * b.den_), checked((__int128)a.den_ * b.num_));
    }
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Smallest integer >= *this.
    long long ceil() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }

    std::string str() const {
        std::ostringstream os;
        os << num_;
        if (den_ != 1) os << '/' << den_;
        return os.str();
    }

private:
    static long long checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw arithmetic_overflow_error("rational arithmetic overflow");
        return static_cast<long long>(v);
    }
    void normalize() {
        if (den_ == 0) throw arithmetic_overflow_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    long long num_;
    long long den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

// A length: exact non-negative rational, +infinity, or a flagged floating
// approximation (half-plane model only).
class Dist {
public:
    Dist() : kind_(Kind::Exact), exact_(0), approx_(0) {}

    static Dist exact(const Rational& r) {
        if (r < Rational(0)) throw domain_violation("negative distance");
        Dist d; d.kind_ = Kind::Exact; d.exact_ = r; return d;
    }
    static Dist exact(long long n) { return exact(Rational(n)); }
    static Dist infinity() { Dist d; d.kind_ = Kind::Infinite; return d; }
    static Dist approximate(double v) {
        Dist d; d.kind_ = Kind::Approx; d.approx_ = v; return d;
    }

    bool is_infinite() const { return kind_ == Kind::Infinite; }
    bool is_approximate() const { return kind_ == Kind::Approx; }
    bool is_exact() const { return kind_ == Kind::Exact; }

    const Rational& rational() const {
        if (kind_ != Kind::Exact) throw domain_violation("distance is not an exact value");
        return exact_;
    }
    double to_double() const {
        switch (kind_) {
            case Kind::Exact: return exact_.to_double();
            case Kind::Approx: return approx_;
            default: return std::numeric_limits<double>::infinity();
        }
    }

    friend Dist operator+(const Dist& a, const Dist& b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        if (a.is_approximate() || b.is_approximate()) return approximate(a.to_double() + b.to_double());
        return exact(a.exact_ + b.exact_);
    }
    friend Dist operator*(long long k, const Dist& d) {
        if (d.is_infinite()) return infinity();
        if (d.is_approximate()) return approximate(static_cast<double>(k) * d.approx_);
        return exact(Rational(k) * d.exact_);
    }

    friend bool operator==(const Dist& a, const Dist& b) {
        if (a.kind_ != b.kind_) return false;
        if (a.kind_ == Kind::Exact) return a.exact_ == b.exact_;
        if (a.kind_ == Kind::Approx) return a.approx_ == b.approx_;
        return true;
    }
    friend bool operator!=(const Dist& a, const Dist& b) { return !(a == b); }
    friend bool operator<(const Dist& a, const Dist& b) {
        if (a.is_infinite()) return false;
        if (b.is_infinite()) return true;
        if (a.is_approximate() || b.is_approximate()) return a.to_double() < b.to_double();
        return a.exact_ < b.exact_;
    }
    friend bool operator<=(const Dist& a, const Dist& b) { return !(b < a); }
    friend bool operator>(const Dist& a, const Dist& b) { return b < a; }
    friend bool operator>=(const Dist& a, const Dist& b) { return !(a < b); }

    std::string str() const {
        switch (kind_) {
            case Kind::Exact: return exact_.str();
            case Kind::Approx: { std::ostringstream os; os << approx_ << "~"; return os.str(); }
            default: return "inf";
        }
    }

private:
    enum class Kind { Exact, Infinite, Approx };
    Kind kind_;
    Rational exact_;
    double approx_;
};

inline std::ostream& operator<<(std::ostream& os, const Dist& d) { return os << d.str(); }

}  // namespace pingpong
