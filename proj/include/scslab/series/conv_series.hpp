#pragma once

#include "scslab/series/power_series.hpp"

#include <utility>
#include <vector>

namespace scslab {

struct MixedSigns : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroLeadingCoefficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Local expansion of a d-fold convolution of rescaled copies of a density
/// x^a * analytic near zero. The represented function near zero is
///
///   sign * |t_1...t_d|^{-1/2 * sqrt_prefactor} * sum_n coeffs[n] x^{n+exponent_base}
///
/// where sqrt_prefactor marks the (t_1...t_d)^{-1/2} factor of the a=-1/2
/// family (rational prefactors of the a=0 family are folded into coeffs).
struct ConvCoefficients {
    int d = 1;
    Rational exponent_base{0};
    std::vector<ScaledRational> coeffs;
    Rational t_abs_prod{1};   // |t_1 * ... * t_d|, prefactor |.|^{-1/2}
    bool sqrt_prefactor = false;
    int sign = 1;

    double eval(double x, std::size_t n_terms) const;
    double eval(double x) const { return eval(x, coeffs.size()); }
};

/// Expansion of F1*F2 near zero from the expansions of F1 and F2:
/// coefficient n is sum_k B_k C_{n-k} G(k+a1+1)G(n-k+a2+1)/G(n+a1+a2+2)
/// with exponent base a1+a2+1. Requires (half-)integer bases > -1.
ConvCoefficients conv_series_pair(const ConvCoefficients& f1, const ConvCoefficients& f2);
ConvCoefficients conv_series_pair(const Rational& a1, const PowerSeries& s1,
                                  const Rational& a2, const PowerSeries& s2);

/// Expansion of F_{t_1}*...*F_{t_d} near zero for F = x^a * series, all t_i
/// of one sign, a in {0, -1/2}. Covers the positive and negative sign cases
/// including the parity sign factors.
ConvCoefficients conv_series_rescaled(int d, const Rational& a, const PowerSeries& coeffs,
                                      const std::vector<Rational>& t);

/// Combines a positive-t block and a negative-t block. The wrapped density
/// only determines the result up to a global sign, so this returns the two
/// candidates {A_n} and {-A_n}.
std::pair<ConvCoefficients, ConvCoefficients>
mixed_sign_combine(const ConvCoefficients& pos, const ConvCoefficients& neg);

/// Picks the candidate whose leading coefficient matches the sign of a_0^d
/// and strips the |t|^{-1/2} and 1/Gamma(n+d/2) factors, returning the
/// rescale-invariant sequence B_n = sum over compositions of
/// prod a_{k_i} Gamma(k_i+1/2) / t_i^{k_i}.
std::vector<ScaledRational>
sign_resolve(const std::pair<ConvCoefficients, ConvCoefficients>& pair,
             const ScaledRational& a0);

}  // namespace scslab
