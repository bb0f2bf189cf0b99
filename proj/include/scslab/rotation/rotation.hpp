#pragma once

#include "scslab/exact/scaled_rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace scslab {

using HighFloat = boost::multiprecision::mpfr_float;  // variable precision

struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AllPointsSkipped : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Continued fraction [0; a_1, a_2, ...] of a number in (0,1), with the
/// convergent recurrences p_{n+1} = a_{n+1} p_n + p_{n-1} (and likewise q)
/// carried in exact big integers.
struct ContinuedFraction {
    std::vector<BigInt> quotients;  // a_1..a_m
    std::vector<BigInt> p;          // p_1..p_m
    std::vector<BigInt> q;          // q_1..q_m
    HighFloat alpha;

    std::size_t depth() const { return quotients.size(); }

    /// Certified exact bracket for ||q_n alpha|| (n is 1-based, n+2 levels
    /// must exist): alpha lies strictly between the convergents n+1 and n+2,
    /// giving the rational bounds (a_{n+2}/q_{n+2}, 1/q_{n+1}).
    std::pair<Rational, Rational> norm_dist_bracket(std::size_t n) const;
};

/// Expands alpha (in (0,1)) to the requested depth; halts with
/// PrecisionExhausted when the Gauss map leaves fewer significant digits
/// than the safety margin.
ContinuedFraction cf_expand(const HighFloat& alpha, std::size_t depth);

/// Builds the continued fraction with the given partial quotients; alpha is
/// evaluated bottom-up in high precision.
ContinuedFraction cf_build(const std::vector<BigInt>& quotients);

/// Liouville-type construction: a_1 = 1, a_{n+1} = q_n^growth_exponent.
/// The resulting alpha satisfies q_n^3 ||q_n alpha|| -> 0 for exponent 3.
ContinuedFraction cf_build_liouville(int growth_exponent, std::size_t depth);

/// The roof function f(x) = -ln x - ln(1-x) - 2 on (0,1).
double roof(double x);

struct BirkhoffSample {
    long long q = 0;
    std::vector<double> xs;
    std::vector<double> values;
    long long skipped = 0;
};

/// f^{(q)}(x) = sum_{k<q} f({x + k alpha}); orbit points entering
/// (0,eps) u (1-eps,1) cause the sample point to be skipped and counted.
BirkhoffSample birkhoff_sum(double alpha, long long q, const std::vector<double>& xs,
                            double eps_guard = 1e-12);

/// ftilde_q(x) = f_q(x/q), computed both by direct summation and via the
/// closed log-Gamma form; returns {direct, gamma_form}.
std::pair<double, double> ftilde_q(long long q, double x);

/// f_q(x) = sum_{k<q} f(x + k/q) for x in (0, 1/q).
double f_q(long long q, double x);

/// CDF of nu_m, the pushforward of Lebesgue under m * ln(1/(2 sin pi x)):
/// F(y) = 1 - (2/pi) asin(e^{-y/m}/2) for y >= -m ln 2, m >= 1.
double nu_cdf(int m, double y);

/// Kolmogorov-Smirnov distance between the empirical CDF of the samples and
/// the given CDF.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

struct KSReport {
    double ks = 0.0;
    long long samples = 0;
    long long skipped = 0;
};

/// KS distance between the empirical distribution of f^{(m q)} over uniform
/// random points (seeded) and the exact CDF of nu_m.
KSReport empirical_vs_nu(double alpha, int m, long long q, long long n_samples,
                         std::uint64_t seed);

}  // namespace scslab
