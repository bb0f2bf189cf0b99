#include "scslab/series/power_series.hpp"

#include <algorithm>
#include <cmath>

namespace scslab {

namespace {

std::size_t common_order(const PowerSeries& a, const PowerSeries& b) {
    return std::min(a.order(), b.order());
}

void require_same_lead(const PowerSeries& a, const PowerSeries& b) {
    if (a.lead_exp() != b.lead_exp())
        throw UnsupportedArgument("series arithmetic requires equal lead_exp");
}

}  // namespace

PowerSeries PowerSeries::truncated(std::size_t n) const {
    std::vector<ScaledRational> c(coeffs_.begin(),
                                  coeffs_.begin() + std::min(n, coeffs_.size()));
    c.resize(n);
    return PowerSeries(std::move(c), lead_);
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    require_same_lead(a, b);
    std::size_t n = common_order(a, b);
    PowerSeries r(n, a.lead_exp());
    for (std::size_t i = 0; i < n; ++i) r[i] = a[i] + b[i];
    return r;
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    require_same_lead(a, b);
    std::size_t n = common_order(a, b);
    PowerSeries r(n, a.lead_exp());
    for (std::size_t i = 0; i < n; ++i) r[i] = a[i] - b[i];
    return r;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    return series_mul(a, b);
}

double PowerSeries::eval_double(double x) const {
    double sum = 0.0;
    double xp = 1.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        sum += coeffs_[i].to_double() * xp;
        xp *= x;
    }
    if (lead_ != 0) sum *= std::pow(x, static_cast<double>(lead_));
    return sum;
}

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) {
    // The product shifts the lead exponent additively.
    std::size_t n = common_order(a, b);
    PowerSeries r(n, a.lead_exp() + b.lead_exp());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j < n; ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

PowerSeries series_div(const PowerSeries& a, const PowerSeries& b) {
    std::size_t n = common_order(a, b);
    if (n == 0 || b[0].is_zero())
        throw DivByZeroSeries("series_div: divisor has zero constant term");
    PowerSeries r(n, a.lead_exp() - b.lead_exp());
    for (std::size_t i = 0; i < n; ++i) {
        ScaledRational acc = a[i];
        for (std::size_t j = 0; j < i; ++j) acc -= r[j] * b[i - j];
        r[i] = acc / b[0];
    }
    return r;
}

PowerSeries series_exp(const PowerSeries& s) {
    if (s.lead_exp() != 0)
        throw UnsupportedArgument("series_exp requires lead_exp = 0");
    std::size_t n = s.order();
    if (n == 0) return s;
    if (!s[0].is_zero())
        throw UnsupportedArgument("series_exp requires zero constant term");
    // r' = s' r, giving n r_n = sum_{k=1}^{n} k s_k r_{n-k}.
    PowerSeries r(n);
    r[0] = ScaledRational(Rational(1));
    for (std::size_t i = 1; i < n; ++i) {
        ScaledRational acc;
        for (std::size_t k = 1; k <= i; ++k)
            acc += ScaledRational(Rational(static_cast<long>(k))) * s[k] * r[i - k];
        r[i] = acc / ScaledRational(Rational(static_cast<long>(i)));
    }
    return r;
}

PowerSeries series_sqrt(const PowerSeries& s) {
    std::size_t n = s.order();
    if (n == 0 || s[0].is_zero())
        throw NonRepresentableSqrt("series_sqrt requires nonzero constant term");
    // The constant term must be a perfect square within the family:
    // q*(sqrt2)^s*(sqrtpi)^p*pi^w is a square iff p = 0, w even, and
    // (for s=0) q a rational square, or (for s=1) q/sqrt2... handled by
    // trying y0^2 == s[0] for y0 built from the square roots of the parts.
    const ScaledRational& c0 = s[0];
    if (c0.sqrtpi_pow() != 0 || c0.pi_pow() % 2 != 0)
        throw NonRepresentableSqrt("constant term has no square root in the family");
    Rational q = c0.q();
    int s2 = c0.sqrt2_pow();
    // Candidate root: sqrt(q) * (sqrt2)^{s2/2}; when s2 = 1 write
    // q*sqrt2 = (2q) / sqrt2 and take sqrt(q/1) * 2^{1/4}? Not in family,
    // unless q = r^2/2 so that q*sqrt2 = (r*sqrt2/... ). Concretely:
    // value = q * 2^{s2/2}; need value = (y_q * 2^{y_s/2})^2 = y_q^2 * 2^{y_s}.
    // s2 in {0,1}; s2 = 1 forces y not in family unless we absorb: y_s = 1
    // gives y^2 = 2 y_q^2 (s2 = 0 case with q even-ish). So:
    ScaledRational y0;
    auto rational_sqrt = [](const Rational& v) -> Rational {
        BigInt num = numerator(v), den = denominator(v);
        if (num < 0) throw NonRepresentableSqrt("negative constant term");
        BigInt rn = sqrt(num), rd = sqrt(den);
        if (rn * rn != num || rd * rd != den)
            throw NonRepresentableSqrt("constant term is not a perfect square");
        return Rational(rn, rd);
    };
    if (s2 == 0) {
        // Try plain rational sqrt; else try q = y^2 / 2 (root has a sqrt2 factor).
        BigInt num = numerator(q), den = denominator(q);
        BigInt anum = abs(num);
        BigInt rn = sqrt(anum), rd = sqrt(den);
        if (num >= 0 && rn * rn == num && rd * rd == den) {
            y0 = ScaledRational(Rational(rn, rd), 0, 0, c0.pi_pow() / 2);
        } else {
            // q * 1 = (y_q * sqrt2)^2 = 2 y_q^2  =>  y_q = sqrt(q/2)
            Rational half_q = q / 2;
            y0 = ScaledRational(rational_sqrt(half_q), 1, 0, c0.pi_pow() / 2);
        }
    } else {
        throw NonRepresentableSqrt("constant term with odd sqrt2 power has no root in the family");
    }

    // Newton iteration y <- (y + s/y)/2, doubling correct order each pass.
    PowerSeries y(std::vector<ScaledRational>{y0});
    std::size_t cur = 1;
    const ScaledRational half(Rational(1, 2));
    while (cur < n) {
        cur = std::min(2 * cur, n);
        PowerSeries yc = y.truncated(cur);
        PowerSeries sc = s.truncated(cur);
        PowerSeries next = series_div(sc, yc);
        PowerSeries acc(cur);
        for (std::size_t i = 0; i < cur; ++i) acc[i] = (yc[i] + next[i]) * half;
        y = std::move(acc);
    }
    return PowerSeries(y.coeffs(), Rational(0));
}

PowerSeries expm1_over_x_series(std::size_t order) {
    PowerSeries g(order);
    Rational c(2);  // 2^{n+1}/(n+1)! starting at n = 0
    for (std::size_t i = 0; i < order; ++i) {
        g[i] = ScaledRational(c);
        c = c * 2 / Rational(static_cast<long>(i) + 2);
    }
    return g;
}

PowerSeries v_coefficients(std::size_t order) {
    if (order < 1) throw UnsupportedArgument("v_coefficients requires order >= 1");
    // v(x) = sqrt(x/(e^{2x}-1)) = sqrt(1/g) with g = (e^{2x}-1)/x analytic,
    // g(0) = 2, so the constant term of 1/g is 1/2 = (sqrt2/2)^2.
    PowerSeries g = expm1_over_x_series(order);
    PowerSeries one(order);
    one[0] = ScaledRational(Rational(1));
    return series_sqrt(series_div(one, g));
}

}  // namespace scslab
