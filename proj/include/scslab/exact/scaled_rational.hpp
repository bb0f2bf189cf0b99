#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace scslab {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

struct IncompatibleRadicals : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedArgument : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact number of the form q * (sqrt2)^s * (sqrtpi)^p * pi^w with
/// rational q and s,p in {0,1} after normalization. This closed family
/// covers every coefficient produced by the symbolic pipeline
/// (rational * (sqrt2)^{0,1} * pi^{j/2}).
class ScaledRational {
public:
    ScaledRational() = default;
    ScaledRational(Rational q) : q_(std::move(q)) { normalize(); }
    ScaledRational(long n) : q_(n) {}
    ScaledRational(Rational q, int sqrt2_pow, int sqrtpi_pow, int pi_pow = 0)
        : q_(std::move(q)), s_(sqrt2_pow), p_(sqrtpi_pow), w_(pi_pow) {
        normalize();
    }

    const Rational& q() const { return q_; }
    int sqrt2_pow() const { return s_; }
    int sqrtpi_pow() const { return p_; }
    int pi_pow() const { return w_; }

    bool is_zero() const { return q_ == 0; }
    bool is_rational() const { return s_ == 0 && p_ == 0 && w_ == 0; }

    /// Defined only between values with identical radical class (s,p,w).
    ScaledRational& operator+=(const ScaledRational& o) {
        if (is_zero()) { *this = o; return *this; }
        if (o.is_zero()) return *this;
        if (s_ != o.s_ || p_ != o.p_ || w_ != o.w_)
            throw IncompatibleRadicals("cannot add values with different radical parts");
        q_ += o.q_;
        normalize();
        return *this;
    }
    ScaledRational& operator-=(const ScaledRational& o) { return *this += -o; }
    ScaledRational& operator*=(const ScaledRational& o) {
        q_ *= o.q_;
        s_ += o.s_;
        p_ += o.p_;
        w_ += o.w_;
        normalize();
        return *this;
    }
    ScaledRational& operator/=(const ScaledRational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero ScaledRational");
        q_ /= o.q_;
        s_ -= o.s_;
        p_ -= o.p_;
        w_ -= o.w_;
        normalize();
        return *this;
    }

    ScaledRational operator-() const {
        ScaledRational r = *this;
        r.q_ = -r.q_;
        return r;
    }
    friend ScaledRational operator+(ScaledRational a, const ScaledRational& b) { return a += b; }
    friend ScaledRational operator-(ScaledRational a, const ScaledRational& b) { return a -= b; }
    friend ScaledRational operator*(ScaledRational a, const ScaledRational& b) { return a *= b; }
    friend ScaledRational operator/(ScaledRational a, const ScaledRational& b) { return a /= b; }

    /// Structural equality; values are kept normalized so this is exact.
    friend bool operator==(const ScaledRational& a, const ScaledRational& b) {
        return a.q_ == b.q_ && a.s_ == b.s_ && a.p_ == b.p_ && a.w_ == b.w_;
    }
    friend bool operator!=(const ScaledRational& a, const ScaledRational& b) { return !(a == b); }

    ScaledRational pow(int e) const;

    double to_double() const;
    std::string to_string() const;

private:
    void normalize();

    Rational q_{0};
    int s_ = 0;  // power of sqrt(2), {0,1} when normalized
    int p_ = 0;  // power of sqrt(pi), {0,1} when normalized
    int w_ = 0;  // whole-pi power absorbed from even p
};

/// Gamma(k + 1/2) = (2k)! / (4^k k!) * sqrt(pi), exact.
ScaledRational gamma_half(int k);

/// Gamma(n) for integer n >= 1, exact (rational).
ScaledRational gamma_int(long n);

/// Gamma(x) for x > 0 integer or half-integer.
ScaledRational gamma_exact(const Rational& x);

/// Gamma(a1+1) Gamma(a2+1) / Gamma(a1+a2+2) for (half-)integer a1,a2 > -1.
ScaledRational beta_ratio(const Rational& a1, const Rational& a2);

Rational rational_from_string(const std::string& s);

}  // namespace scslab
