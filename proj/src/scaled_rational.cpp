#include "scslab/exact/scaled_rational.hpp"

#include <cmath>
#include <sstream>

namespace scslab {

void ScaledRational::normalize() {
    if (q_ == 0) {
        s_ = p_ = w_ = 0;
        return;
    }
    // Absorb even powers of sqrt(2) into q.
    while (s_ >= 2) {
        q_ *= 2;
        s_ -= 2;
    }
    while (s_ < 0) {
        q_ /= 2;
        s_ += 2;
    }
    // Even powers of sqrt(pi) become whole-pi powers; pi stays symbolic.
    while (p_ >= 2) {
        w_ += 1;
        p_ -= 2;
    }
    while (p_ < 0) {
        w_ -= 1;
        p_ += 2;
    }
}

ScaledRational ScaledRational::pow(int e) const {
    if (e == 0) return ScaledRational(Rational(1));
    ScaledRational base = *this;
    if (e < 0) {
        base = ScaledRational(Rational(1)) / base;
        e = -e;
    }
    ScaledRational r(Rational(1));
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

double ScaledRational::to_double() const {
    double v = static_cast<double>(q_);
    if (s_) v *= std::sqrt(2.0);
    if (p_) v *= std::sqrt(M_PI);
    if (w_) v *= std::pow(M_PI, w_);
    return v;
}

std::string ScaledRational::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    os << q_;
    if (s_) os << "*sqrt(2)";
    // Print the combined pi power p/2 + w as one factor.
    int twice_pi_pow = p_ + 2 * w_;
    if (twice_pi_pow == 2) {
        os << "*pi";
    } else if (twice_pi_pow != 0) {
        if (twice_pi_pow % 2 == 0)
            os << "*pi^" << twice_pi_pow / 2;
        else
            os << "*pi^(" << twice_pi_pow << "/2)";
    }
    return os.str();
}

ScaledRational gamma_half(int k) {
    if (k < 0) throw UnsupportedArgument("gamma_half requires k >= 0");
    // Gamma(k+1/2) = (2k)!/(4^k k!) * sqrt(pi)
    BigInt num = 1, den = 1;
    for (int i = 1; i <= 2 * k; ++i) num *= i;
    for (int i = 1; i <= k; ++i) den *= i;
    BigInt four_k = 1;
    for (int i = 0; i < k; ++i) four_k *= 4;
    return ScaledRational(Rational(num, den * four_k), 0, 1);
}

ScaledRational gamma_int(long n) {
    if (n < 1) throw UnsupportedArgument("gamma_int requires n >= 1");
    BigInt f = 1;
    for (long i = 2; i < n; ++i) f *= i;
    return ScaledRational(Rational(f));
}

ScaledRational gamma_exact(const Rational& x) {
    if (x <= 0) throw UnsupportedArgument("gamma_exact requires x > 0");
    const BigInt num = numerator(x);
    const BigInt den = denominator(x);
    if (den == 1) {
        return gamma_int(static_cast<long>(num));
    }
    if (den == 2) {
        // x = k + 1/2 with k = (num - 1) / 2
        BigInt k2 = num - 1;
        return gamma_half(static_cast<int>(k2 / 2));
    }
    throw UnsupportedArgument("gamma_exact supports integer and half-integer arguments only");
}

ScaledRational beta_ratio(const Rational& a1, const Rational& a2) {
    if (a1 <= -1 || a2 <= -1)
        throw UnsupportedArgument("beta_ratio requires a1, a2 > -1");
    if (denominator(a1) > 2 || denominator(a2) > 2)
        throw UnsupportedArgument("beta_ratio supports (half-)integer arguments only");
    return gamma_exact(a1 + 1) * gamma_exact(a2 + 1) / gamma_exact(a1 + a2 + 2);
}

Rational rational_from_string(const std::string& s) {
    return Rational(s);
}

}  // namespace scslab
