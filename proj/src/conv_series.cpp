#include "scslab/series/conv_series.hpp"

#include <cmath>
#include <functional>

namespace scslab {

double ConvCoefficients::eval(double x, std::size_t n_terms) const {
    double sum = 0.0;
    double base = static_cast<double>(exponent_base);
    for (std::size_t n = 0; n < n_terms && n < coeffs.size(); ++n)
        sum += coeffs[n].to_double() * std::pow(x, static_cast<double>(n) + base);
    if (sqrt_prefactor) sum /= std::sqrt(static_cast<double>(t_abs_prod));
    return sign * sum;
}

ConvCoefficients conv_series_pair(const ConvCoefficients& f1, const ConvCoefficients& f2) {
    const Rational& a1 = f1.exponent_base;
    const Rational& a2 = f2.exponent_base;
    if (a1 <= -1 || a2 <= -1 || denominator(a1) > 2 || denominator(a2) > 2)
        throw UnsupportedArgument("conv_series_pair requires (half-)integer bases > -1");
    std::size_t n_out = std::min(f1.coeffs.size(), f2.coeffs.size());

    ConvCoefficients r;
    r.d = f1.d + f2.d;
    r.exponent_base = a1 + a2 + 1;
    r.coeffs.resize(n_out);
    r.t_abs_prod = f1.t_abs_prod * f2.t_abs_prod;
    r.sqrt_prefactor = f1.sqrt_prefactor || f2.sqrt_prefactor;
    r.sign = f1.sign * f2.sign;
    for (std::size_t n = 0; n < n_out; ++n) {
        ScaledRational acc;
        ScaledRational denom = gamma_exact(Rational(static_cast<long>(n)) + a1 + a2 + 2);
        for (std::size_t k = 0; k <= n; ++k) {
            acc += f1.coeffs[k] * f2.coeffs[n - k] *
                   gamma_exact(Rational(static_cast<long>(k)) + a1 + 1) *
                   gamma_exact(Rational(static_cast<long>(n - k)) + a2 + 1);
        }
        r.coeffs[n] = acc / denom;
    }
    return r;
}

ConvCoefficients conv_series_pair(const Rational& a1, const PowerSeries& s1,
                                  const Rational& a2, const PowerSeries& s2) {
    ConvCoefficients f1{1, a1, s1.coeffs()};
    ConvCoefficients f2{1, a2, s2.coeffs()};
    return conv_series_pair(f1, f2);
}

ConvCoefficients conv_series_rescaled(int d, const Rational& a, const PowerSeries& coeffs,
                                      const std::vector<Rational>& t) {
    if (d < 1 || static_cast<std::size_t>(d) != t.size())
        throw UnsupportedArgument("conv_series_rescaled: t must have d entries");
    if (!(a == 0 || a == Rational(-1, 2)))
        throw UnsupportedArgument("conv_series_rescaled supports a in {0, -1/2}");
    bool negative = t[0] < 0;
    Rational t_prod(1);
    for (const Rational& ti : t) {
        if (ti == 0 || (ti < 0) != negative)
            throw MixedSigns("conv_series_rescaled requires all t_i of one sign");
        t_prod *= ti;
    }

    std::size_t n_out = coeffs.order();
    ConvCoefficients r;
    r.d = d;
    r.exponent_base = Rational(d) * (a + 1) - 1;
    r.coeffs.resize(n_out);

    // Powers 1/t_i^{k} and factors a_k Gamma(k+1+a), precomputed.
    std::vector<ScaledRational> weight(n_out);
    for (std::size_t k = 0; k < n_out; ++k)
        weight[k] = coeffs[k] * gamma_exact(Rational(static_cast<long>(k)) + 1 + a);
    std::vector<std::vector<Rational>> inv_t_pow(d, std::vector<Rational>(n_out));
    for (int i = 0; i < d; ++i) {
        Rational p(1);
        for (std::size_t k = 0; k < n_out; ++k) {
            inv_t_pow[i][k] = p;
            p /= t[i];
        }
    }

    // Recursive enumeration of compositions k_1 + ... + k_d = n.
    std::vector<ScaledRational> sums(n_out);
    std::function<void(int, std::size_t, ScaledRational)> rec =
        [&](int i, std::size_t used, ScaledRational prod) {
            if (i == d - 1) {
                for (std::size_t k = 0; used + k < n_out; ++k) {
                    ScaledRational term =
                        prod * weight[k] * ScaledRational(inv_t_pow[i][k]);
                    sums[used + k] += term;
                }
                return;
            }
            for (std::size_t k = 0; used + k < n_out; ++k)
                rec(i + 1, used + k,
                    prod * weight[k] * ScaledRational(inv_t_pow[i][k]));
        };
    rec(0, 0, ScaledRational(Rational(1)));

    for (std::size_t n = 0; n < n_out; ++n)
        r.coeffs[n] =
            sums[n] / gamma_exact(Rational(static_cast<long>(n) + d) + Rational(d) * a);

    if (a == 0) {
        // Rational prefactor 1/(t_1...t_d) (with the extra minus for t_i < 0)
        // folds directly into the coefficients.
        ScaledRational pref(Rational(1) / t_prod);
        if (negative) pref = -pref;
        for (auto& c : r.coeffs) c = c * pref;
        r.sign = 1;
        r.t_abs_prod = 1;
        r.sqrt_prefactor = false;
    } else {
        r.sqrt_prefactor = true;
        r.t_abs_prod = abs(t_prod);
        r.sign = 1;
        if (negative) {
            // Parity sign factors of the negative-t expansions.
            int e = (d % 2 == 0) ? (d - 2) / 2 : (-d + 1) / 2;
            if (((e % 2) + 2) % 2 == 1) r.sign = -1;
        }
    }
    return r;
}

std::pair<ConvCoefficients, ConvCoefficients>
mixed_sign_combine(const ConvCoefficients& pos, const ConvCoefficients& neg) {
    ConvCoefficients a = conv_series_pair(pos, neg);
    ConvCoefficients b = a;
    b.sign = -b.sign;
    return {a, b};
}

std::vector<ScaledRational>
sign_resolve(const std::pair<ConvCoefficients, ConvCoefficients>& pair,
             const ScaledRational& a0) {
    if (a0.is_zero())
        throw ZeroLeadingCoefficient("sign_resolve requires a0 != 0");
    const ConvCoefficients& cand = pair.first;
    if (cand.coeffs.empty() || cand.coeffs[0].is_zero())
        throw ZeroLeadingCoefficient("leading convolution coefficient vanishes");
    // Expected sign of A_0 is the sign of a0^d: the remaining factors
    // Gamma(1/2)^d / (Gamma(d/2) sqrt|t|) are positive.
    int expect = (a0.q() > 0) ? 1 : -1;
    if (cand.d % 2 == 0 && expect < 0) expect = 1;
    int have = cand.sign * ((cand.coeffs[0].q() > 0) ? 1 : -1);
    const ConvCoefficients& pick = (have == expect) ? pair.first : pair.second;

    // B_n = A_n * sqrt|t| * Gamma(n + d/2); the stored coefficients already
    // exclude the sqrt prefactor, so only the Gamma factor is applied.
    std::vector<ScaledRational> b(pick.coeffs.size());
    for (std::size_t n = 0; n < b.size(); ++n) {
        ScaledRational v = pick.coeffs[n];
        if (pick.sign < 0) v = -v;
        b[n] = v * gamma_exact(Rational(static_cast<long>(n)) + Rational(pick.d, 2));
    }
    return b;
}

}  // namespace scslab
