#include "scslab/rotation/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace scslab {

std::pair<Rational, Rational> ContinuedFraction::norm_dist_bracket(std::size_t n) const {
    if (n < 1 || n + 2 > q.size())
        throw UnsupportedArgument("norm_dist_bracket: need levels up to n+2");
    // alpha lies strictly between p_{n+1}/q_{n+1} and p_{n+2}/q_{n+2}, so
    // ||q_n alpha|| = |q_n alpha - p_n| is strictly between the values of
    // |q_n x - p_n| at those endpoints: a_{n+2}/q_{n+2} and 1/q_{n+1}.
    const BigInt& qn1 = q[n];      // q_{n+1} (0-based storage)
    const BigInt& qn2 = q[n + 1];  // q_{n+2}
    const BigInt& an2 = quotients[n + 1];
    Rational lo(an2, qn2);
    Rational hi(BigInt(1), qn1);
    return {lo, hi};
}

namespace {

void push_level(ContinuedFraction& cf, const BigInt& a) {
    // Seeds p_{-1} = 1, p_0 = 0, q_{-1} = 0, q_0 = 1 for the standard
    // convergent recurrence of [0; a_1, a_2, ...].
    std::size_t m = cf.quotients.size();
    BigInt pm1 = m >= 1 ? cf.p[m - 1] : BigInt(0);
    BigInt pm2 = m >= 2 ? cf.p[m - 2] : BigInt(m == 1 ? 0 : 1);
    BigInt qm1 = m >= 1 ? cf.q[m - 1] : BigInt(1);
    BigInt qm2 = m >= 2 ? cf.q[m - 2] : BigInt(m == 1 ? 1 : 0);
    cf.quotients.push_back(a);
    cf.p.push_back(a * pm1 + pm2);
    cf.q.push_back(a * qm1 + qm2);
}

}  // namespace

ContinuedFraction cf_expand(const HighFloat& alpha, std::size_t depth) {
    if (!(alpha > 0 && alpha < 1))
        throw UnsupportedArgument("cf_expand: alpha must lie in (0,1)");
    ContinuedFraction cf;
    cf.alpha = alpha;
    HighFloat x = alpha;
    HighFloat eps = pow(HighFloat(10),
                        -static_cast<int>(HighFloat::default_precision()) + 10);
    for (std::size_t i = 0; i < depth; ++i) {
        if (x < eps)
            throw PrecisionExhausted("cf_expand: remaining digits below safety margin");
        HighFloat inv = 1 / x;
        HighFloat fl = floor(inv);
        BigInt a = static_cast<BigInt>(fl);
        push_level(cf, a);
        x = inv - fl;
    }
    return cf;
}

ContinuedFraction cf_build(const std::vector<BigInt>& quotients) {
    ContinuedFraction cf;
    HighFloat x = 0;
    for (auto it = quotients.rbegin(); it != quotients.rend(); ++it)
        x = 1 / (HighFloat(it->str()) + x);
    cf.alpha = x;
    for (const BigInt& a : quotients) push_level(cf, a);
    return cf;
}

ContinuedFraction cf_build_liouville(int growth_exponent, std::size_t depth) {
    std::vector<BigInt> quotients{BigInt(1)};
    BigInt qm1(1), qm2(0);  // q_0 = 1, q_{-1} = 0
    BigInt q_cur = quotients[0] * qm1 + qm2;
    qm2 = qm1;
    qm1 = q_cur;
    for (std::size_t n = 1; n < depth; ++n) {
        BigInt a = pow(qm1, growth_exponent);
        quotients.push_back(a);
        q_cur = a * qm1 + qm2;
        qm2 = qm1;
        qm1 = q_cur;
    }
    return cf_build(quotients);
}

double roof(double x) { return -std::log(x) - std::log1p(-x) - 2.0; }

BirkhoffSample birkhoff_sum(double alpha, long long q, const std::vector<double>& xs,
                            double eps_guard) {
    BirkhoffSample out;
    out.q = q;
    for (double x0 : xs) {
        double x = x0 - std::floor(x0);
        double s = 0.0;
        bool ok = true;
        double y = x;
        for (long long k = 0; k < q; ++k) {
            if (y < eps_guard || y > 1.0 - eps_guard) {
                ok = false;
                break;
            }
            s += roof(y);
            y += alpha;
            if (y >= 1.0) y -= 1.0;
        }
        if (!ok) {
            ++out.skipped;
            continue;
        }
        out.xs.push_back(x);
        out.values.push_back(s);
    }
    if (out.xs.empty())
        throw AllPointsSkipped("birkhoff_sum: every sample point hit the guard band");
    return out;
}

std::pair<double, double> ftilde_q(long long q, double x) {
    if (!(x > 0.0 && x < 1.0))
        throw UnsupportedArgument("ftilde_q: x must lie in (0,1)");
    double direct = 0.0;
    for (long long k = 0; k < q; ++k)
        direct += roof((x + static_cast<double>(k)) / static_cast<double>(q));
    double qd = static_cast<double>(q);
    double gamma_form = -2.0 * qd + 2.0 * qd * std::log(qd) - std::lgamma(qd + x) -
                        std::lgamma(qd + 1.0 - x) +
                        std::log(M_PI / std::sin(M_PI * x));
    return {direct, gamma_form};
}

double f_q(long long q, double x) {
    double s = 0.0;
    for (long long k = 0; k < q; ++k) {
        double y = x + static_cast<double>(k) / static_cast<double>(q);
        y -= std::floor(y);  // the summed grid is 1/q-periodic on the circle
        s += roof(y);
    }
    return s;
}

double nu_cdf(int m, double y) {
    double md = static_cast<double>(m);
    if (y <= -md * std::log(2.0)) return 0.0;
    return 1.0 - (2.0 / M_PI) * std::asin(0.5 * std::exp(-y / md));
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double F = cdf(samples[i]);
        d = std::max(d, std::abs(F - static_cast<double>(i) / n));
        d = std::max(d, std::abs(F - static_cast<double>(i + 1) / n));
    }
    return d;
}

KSReport empirical_vs_nu(double alpha, int m, long long q, long long n_samples,
                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(n_samples));
    long long skipped = 0;
    for (long long i = 0; i < n_samples; ++i) {
        double x = unif(rng);
        double s = 0.0;
        bool ok = true;
        double y = x;
        long long len = static_cast<long long>(m) * q;
        for (long long k = 0; k < len; ++k) {
            if (y < 1e-12 || y > 1.0 - 1e-12) {
                ok = false;
                break;
            }
            s += roof(y);
            y += alpha;
            if (y >= 1.0) y -= 1.0;
        }
        if (!ok) {
            ++skipped;
            continue;
        }
        vals.push_back(s);
    }
    if (vals.empty())
        throw AllPointsSkipped("empirical_vs_nu: no usable sample points");
    KSReport rep;
    rep.samples = static_cast<long long>(vals.size());
    rep.skipped = skipped;
    rep.ks = ks_distance(std::move(vals), [m](double y) { return nu_cdf(m, y); });
    return rep;
}

}  // namespace scslab
