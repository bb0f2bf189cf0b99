#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scslab/exact/scaled_rational.hpp"
#include "scslab/io/json_io.hpp"
#include "scslab/numerics/numerics.hpp"
#include "scslab/series/conv_series.hpp"
#include "scslab/series/power_series.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <random>

using namespace scslab;

namespace {

ScaledRational sr(long num, long den = 1, int s = 0, int p = 0, int w = 0) {
    return ScaledRational(Rational(num, den), s, p, w);
}

}  // namespace

TEST_CASE("normalization absorbs even radical powers") {
    CHECK(ScaledRational(Rational(1), 2, 0, 0) == sr(2));
    CHECK(ScaledRational(Rational(1), 0, 2, 0) == sr(1, 1, 0, 0, 1));
    CHECK(ScaledRational(Rational(1), 3, 3, 0) == sr(2, 1, 1, 1, 1));
    CHECK(ScaledRational(Rational(1), -1, 0, 0) == sr(1, 2, 1, 0, 0));
    // Idempotence: re-normalizing a normalized value changes nothing.
    ScaledRational a = sr(3, 4, 1, 1, 2);
    CHECK(ScaledRational(a.q(), a.sqrt2_pow(), a.sqrtpi_pow(), a.pi_pow()) == a);
}

TEST_CASE("normalization preserves the numeric value") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> qd(-50, 50), ed(-3, 4);
    for (int i = 0; i < 200; ++i) {
        int num = qd(rng);
        if (num == 0) num = 1;
        int den = std::abs(qd(rng)) + 1;
        int s = ed(rng), p = ed(rng), w = ed(rng) / 2;
        double direct = (static_cast<double>(num) / den) * std::pow(2.0, s / 2.0) *
                        std::pow(M_PI, p / 2.0 + w);
        ScaledRational v(Rational(num, den), s, p, w);
        CHECK(v.to_double() == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("ring laws on random exact values") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> qd(-20, 20), bit(0, 1);
    auto rnd = [&](int s, int p, int w) {
        int num = qd(rng);
        if (num == 0) num = 3;
        return ScaledRational(Rational(num, std::abs(qd(rng)) + 1), s, p, w);
    };
    for (int i = 0; i < 100; ++i) {
        int s = bit(rng), p = bit(rng), w = qd(rng) % 2;
        ScaledRational a = rnd(s, p, w), b = rnd(s, p, w), c = rnd(s, p, w);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        ScaledRational x = rnd(bit(rng), bit(rng), 0), y = rnd(bit(rng), bit(rng), 0);
        CHECK(x * y == y * x);
        CHECK((x * y) * a == x * (y * a));
        CHECK(x * (a + b) == x * a + x * b);
    }
}

TEST_CASE("addition across radical classes is rejected") {
    CHECK_THROWS_AS(sr(1, 1, 1) + sr(1), IncompatibleRadicals);
    CHECK_THROWS_AS(sr(1, 1, 0, 1) + sr(1, 1, 0, 0, 1), IncompatibleRadicals);
    CHECK((sr(0) + sr(5, 1, 1)) == sr(5, 1, 1));  // zero is class-neutral
}

TEST_CASE("gamma_half recurrence and base values") {
    CHECK(gamma_half(0) == sr(1, 1, 0, 1));      // Gamma(1/2) = sqrt(pi)
    CHECK(gamma_half(1) == sr(1, 2, 0, 1));      // Gamma(3/2) = sqrt(pi)/2
    for (int k = 0; k <= 50; ++k) {
        ScaledRational lhs = gamma_half(k + 1);
        ScaledRational rhs = gamma_half(k) * ScaledRational(Rational(2 * k + 1, 2));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("gamma_exact on integers and half-integers") {
    CHECK(gamma_exact(Rational(1)) == sr(1));
    CHECK(gamma_exact(Rational(5)) == sr(24));
    CHECK(gamma_exact(Rational(1, 2)) == sr(1, 1, 0, 1));
    CHECK(gamma_exact(Rational(7, 2)) == sr(15, 8, 0, 1));
    CHECK_THROWS_AS(gamma_exact(Rational(-1, 2)), UnsupportedArgument);
    CHECK_THROWS_AS(gamma_exact(Rational(1, 3)), UnsupportedArgument);
}

TEST_CASE("beta_ratio closed forms") {
    CHECK(beta_ratio(Rational(0), Rational(0)) == sr(1));
    CHECK(beta_ratio(Rational(-1, 2), Rational(-1, 2)) == sr(1, 1, 0, 0, 1));  // pi
    CHECK(beta_ratio(Rational(-1, 2), Rational(0)) == sr(2));
    CHECK_THROWS_AS(beta_ratio(Rational(-1), Rational(0)), UnsupportedArgument);
}

TEST_CASE("beta_ratio agrees with gamma_half ratios") {
    for (int i = 0; i <= 6; ++i) {
        for (int j = 0; j <= 6; ++j) {
            Rational a1 = Rational(i) - Rational(1, 2), a2 = Rational(j) - Rational(1, 2);
            ScaledRational direct =
                gamma_half(i) * gamma_half(j) /
                gamma_exact(a1 + a2 + 2);
            CHECK(beta_ratio(a1, a2) == direct);
        }
    }
}

TEST_CASE("ScaledRational JSON round trip") {
    ScaledRational v = sr(-399, 32768, 1, 1, 1);
    CHECK(scaled_rational_from_json(to_json(v)) == v);
}

TEST_CASE("series exponential of x") {
    PowerSeries x(4);
    x[1] = sr(1);
    PowerSeries e = series_exp(x);
    CHECK(e[0] == sr(1));
    CHECK(e[1] == sr(1));
    CHECK(e[2] == sr(1, 2));
    CHECK(e[3] == sr(1, 6));
}

TEST_CASE("series sqrt of one is one") {
    PowerSeries one(5);
    one[0] = sr(1);
    PowerSeries r = series_sqrt(one);
    CHECK(r[0] == sr(1));
    for (std::size_t i = 1; i < 5; ++i) CHECK(r[i].is_zero());
}

TEST_CASE("series sqrt squares back to its argument") {
    // s = x/(e^{2x}-1) = 1/g with g_n = 2^{n+1}/(n+1)!.
    PowerSeries g = expm1_over_x_series(12);
    PowerSeries one(12);
    one[0] = sr(1);
    PowerSeries s = series_div(one, g);
    PowerSeries r = series_sqrt(s);
    PowerSeries sq = r * r;
    for (std::size_t i = 0; i < 12; ++i) CHECK(sq[i] == s[i]);
}

TEST_CASE("series div and mul round trip on random input") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> qd(-9, 9);
    PowerSeries a(10), b(10);
    for (int i = 0; i < 10; ++i) {
        a[i] = sr(qd(rng));
        b[i] = sr(qd(rng));
    }
    b[0] = sr(qd(rng) == 0 ? 1 : 5);
    PowerSeries q = series_div(a, b);
    PowerSeries back = q * b;
    for (std::size_t i = 0; i < 10; ++i) CHECK(back[i] == a[i]);
}

TEST_CASE("v coefficients reproduce the closed forms") {
    PowerSeries a = v_coefficients(4);
    CHECK(a[0] == sr(1, 2, 1));
    CHECK(a[1] == sr(-1, 4, 1));
    CHECK(a[2] == sr(1, 48, 1));
    CHECK(a[3] == sr(1, 96, 1));
}

TEST_CASE("v defining identity v^2 (e^{2x}-1)/x = 1") {
    PowerSeries v = v_coefficients(21);
    PowerSeries g = expm1_over_x_series(21);
    PowerSeries prod = v * v * g;
    CHECK(prod[0] == sr(1));
    for (std::size_t i = 1; i < 21; ++i) CHECK(prod[i].is_zero());
}

TEST_CASE("v coefficients match a high-precision numeric oracle") {
    using HP = boost::multiprecision::mpfr_float;
    HP::default_precision(120);
    PowerSeries a = v_coefficients(21);
    for (double xd : {1e-3, 5e-3, 2e-2}) {
        HP x(xd);
        HP direct = sqrt(x / expm1(2 * x));
        HP series = 0;
        HP xp = 1;
        for (std::size_t n = 0; n < 21; ++n) {
            HP c = HP(numerator(a[n].q()).str()) / HP(denominator(a[n].q()).str());
            if (a[n].sqrt2_pow()) c *= sqrt(HP(2));
            series += c * xp;
            xp *= x;
        }
        HP err = abs(direct - series) / abs(direct);
        // Truncation at order 21 dominates; far below double precision.
        CHECK(err < HP("1e-30"));
    }
}

TEST_CASE("conv_series_pair trivial cases") {
    PowerSeries one(1);
    one[0] = sr(1);
    ConvCoefficients c0 = conv_series_pair(Rational(0), one, Rational(0), one);
    CHECK(c0.exponent_base == Rational(1));
    CHECK(c0.coeffs[0] == sr(1));

    ConvCoefficients ch = conv_series_pair(Rational(-1, 2), one, Rational(-1, 2), one);
    CHECK(ch.exponent_base == Rational(0));
    CHECK(ch.coeffs[0] == sr(1, 1, 0, 0, 1));  // Gamma(1/2)^2 = pi
}

TEST_CASE("conv_series_pair is symmetric in its arguments") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> qd(-7, 7);
    PowerSeries s1(6), s2(6);
    for (int i = 0; i < 6; ++i) {
        s1[i] = sr(qd(rng));
        s2[i] = sr(qd(rng));
    }
    ConvCoefficients a = conv_series_pair(Rational(-1, 2), s1, Rational(0), s2);
    ConvCoefficients b = conv_series_pair(Rational(0), s2, Rational(-1, 2), s1);
    REQUIRE(a.coeffs.size() == b.coeffs.size());
    CHECK(a.exponent_base == b.exponent_base);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) CHECK(a.coeffs[i] == b.coeffs[i]);
}

TEST_CASE("conv_series_pair matches quadrature for a singular-polynomial pair") {
    // F1(x) = x^{-1/2} (1 + 2x + 3x^2), F2(x) = 1 - x + x^2/2: both are
    // polynomials, so padding to order 5 makes the expansion exact.
    PowerSeries s1(5), s2(5);
    s1[0] = sr(1); s1[1] = sr(2); s1[2] = sr(3);
    s2[0] = sr(1); s2[1] = sr(-1); s2[2] = sr(1, 2);
    ConvCoefficients cc = conv_series_pair(Rational(-1, 2), s1, Rational(0), s2);
    auto F1 = [](double y) { return std::pow(y, -0.5) * (1 + 2 * y + 3 * y * y); };
    auto F2 = [](double y) { return 1 - y + 0.5 * y * y; };
    for (double x : {0.01, 0.02, 0.05}) {
        double numeric = integrate_sqrt_sing_left(
            [&](double y) { return F1(y) * F2(x - y); }, 0.0, x, 1e-13);
        double series = cc.eval(x);
        CHECK(std::abs(numeric - series) / numeric < 1e-9);
    }
}

TEST_CASE("conv_series_rescaled d=1 identity") {
    PowerSeries v = v_coefficients(6);
    ConvCoefficients c = conv_series_rescaled(1, Rational(-1, 2), v, {Rational(1)});
    CHECK(c.exponent_base == Rational(-1, 2));
    for (std::size_t n = 0; n < 6; ++n) CHECK(c.coeffs[n] == v[n]);
}

TEST_CASE("conv_series_rescaled d=2 equals the direct pair formula") {
    PowerSeries v = v_coefficients(8);
    ConvCoefficients two =
        conv_series_rescaled(2, Rational(-1, 2), v, {Rational(1), Rational(1)});
    for (std::size_t n = 0; n < 8; ++n) {
        ScaledRational acc;
        for (std::size_t k = 0; k <= n; ++k)
            acc += v[k] * v[n - k] * gamma_half(static_cast<int>(k)) *
                   gamma_half(static_cast<int>(n - k));
        acc /= gamma_int(static_cast<long>(n) + 1);
        CHECK(two.coeffs[n] == acc);
    }
}

TEST_CASE("conv_series_rescaled a=0 reduces to iterated pair composition") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> qd(-5, 5);
    PowerSeries s(5);
    for (int i = 0; i < 5; ++i) s[i] = sr(qd(rng));
    s[0] = sr(2);
    for (int d = 2; d <= 4; ++d) {
        std::vector<Rational> t(d, Rational(1));
        ConvCoefficients direct = conv_series_rescaled(d, Rational(0), s, t);
        ConvCoefficients iter{1, Rational(0), s.coeffs()};
        for (int i = 1; i < d; ++i)
            iter = conv_series_pair(iter, ConvCoefficients{1, Rational(0), s.coeffs()});
        for (std::size_t n = 0; n < direct.coeffs.size(); ++n)
            CHECK(direct.coeffs[n] == iter.coeffs[n]);
    }
}

TEST_CASE("conv_series_rescaled t=(1,2) matches singular quadrature") {
    PowerSeries v = v_coefficients(21);
    ConvCoefficients cc =
        conv_series_rescaled(2, Rational(-1, 2), v, {Rational(1), Rational(2)});
    HalfLineDensity f1 = make_hbar();
    HalfLineDensity f2;
    f2.edge = 0.0;
    f2.dir = +1;
    f2.sqrt_singular = true;
    f2.f = [](double x) { return 0.5 * hbar(x / 2.0); };
    f2.decay_rate = 0.5;
    for (double x : {0.005, 0.01, 0.05}) {
        double numeric = num_convolve_at(f1, f2, x, 1e-13);
        double series = cc.eval(x);
        CHECK(std::abs(numeric - series) / numeric < 1e-8);
    }
}

TEST_CASE("negative-t expansion is the reflection of the positive one") {
    PowerSeries v = v_coefficients(21);
    ConvCoefficients pos =
        conv_series_rescaled(2, Rational(-1, 2), v, {Rational(1), Rational(1)});
    ConvCoefficients neg =
        conv_series_rescaled(2, Rational(-1, 2), v, {Rational(-1), Rational(-1)});
    // The negative block is stored in the signed-x convention: the value at
    // the point -x (x > 0) is sign * |t|^{-1/2} |x|^{base} sum c_n (-x)^n.
    auto eval_at_minus = [](const ConvCoefficients& c, double x) {
        double s = 0.0;
        for (std::size_t n = 0; n < c.coeffs.size(); ++n)
            s += c.coeffs[n].to_double() * std::pow(-x, static_cast<double>(n));
        s *= std::pow(x, static_cast<double>(c.exponent_base));
        if (c.sqrt_prefactor) s /= std::sqrt(static_cast<double>(c.t_abs_prod));
        return c.sign * s;
    };
    for (int i = 1; i <= 20; ++i) {
        double x = 0.004 * i;
        // F_{-1}*F_{-1}(-x) = F_1*F_1(x); the series encode each side.
        CHECK(eval_at_minus(neg, x) == doctest::Approx(pos.eval(x)).epsilon(1e-10));
    }
}

TEST_CASE("sign_resolve returns the rescale-invariant sequence") {
    PowerSeries v = v_coefficients(8);
    ConvCoefficients pos =
        conv_series_rescaled(1, Rational(-1, 2), v, {Rational(1)});
    ConvCoefficients neg =
        conv_series_rescaled(1, Rational(-1, 2), v, {Rational(-1)});
    auto pair = mixed_sign_combine(pos, neg);
    std::vector<ScaledRational> b = sign_resolve(pair, v[0]);
    // d=2 with t=(1,-1): B_n = sum_k a_k a_{n-k} G(k+1/2) G(n-k+1/2) (-1)^{-(n-k)}.
    for (std::size_t n = 0; n < b.size(); ++n) {
        ScaledRational acc;
        for (std::size_t k = 0; k <= n; ++k) {
            ScaledRational term = v[k] * v[n - k] * gamma_half(static_cast<int>(k)) *
                                  gamma_half(static_cast<int>(n - k));
            if ((n - k) % 2 == 1) term = -term;
            acc += term;
        }
        CHECK(b[n] == acc);
    }
    CHECK(b[0] == sr(1, 2, 0, 0, 1));  // a_0^2 Gamma(1/2)^2 = pi/2
}

TEST_CASE("sign_resolve rejects a vanishing leading coefficient") {
    PowerSeries v = v_coefficients(4);
    ConvCoefficients pos = conv_series_rescaled(1, Rational(-1, 2), v, {Rational(1)});
    auto pair = mixed_sign_combine(pos, pos);
    CHECK_THROWS_AS(sign_resolve(pair, ScaledRational()), ZeroLeadingCoefficient);
}
