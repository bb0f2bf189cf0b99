#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scslab/numerics/numerics.hpp"
#include "scslab/series/conv_series.hpp"

#include <cmath>
#include <random>

using namespace scslab;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;
}  // namespace

TEST_CASE("h density pointwise values and support") {
    CHECK(h_density(0.0) == doctest::Approx((2.0 / kPi) / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(h_density(-kLn2) == 0.0);
    CHECK(h_density(-kLn2 - 1e-9) == 0.0);
    CHECK(h_density(-10.0) == 0.0);
    for (double x : {1e-4, 0.1, 0.5, 1.0, 3.0, 10.0})
        CHECK(h_density(x - kLn2) ==
              doctest::Approx((2.0 / kPi) * hbar(x)).epsilon(1e-11));
    // Rescaling: h_t(x) = (1/|t|) h(x/t); for t < 0 the support is
    // (-inf, |t| ln 2).
    CHECK(h_t(2.0, 0.6) == doctest::Approx(0.5 * h_density(0.3)).epsilon(1e-14));
    CHECK(h_t(-1.0, 0.8) == 0.0);
    CHECK(h_t(-1.0, -0.5) == doctest::Approx(h_density(0.5)).epsilon(1e-14));
}

TEST_CASE("h integrates to one") {
    double head = integrate_sqrt_sing_left([](double x) { return h_density(x); },
                                           -kLn2, 2.0, 1e-12);
    double tail = integrate_to_inf([](double x) { return h_density(x); }, 2.0, 1e-12);
    CHECK(head + tail == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("hbar derivative weights and values") {
    CHECK(hbar_derivative_weights(0) == std::vector<long long>{1});
    CHECK(hbar_derivative_weights(1) == (std::vector<long long>{0, -1}));
    // Closed form: hbar'(x) = -e^{2x} (e^{2x}-1)^{-3/2}.
    for (double x : {0.05, 0.3, 1.0, 4.0}) {
        double e2x = std::exp(2.0 * x);
        CHECK(hbar_derivative(1, x) ==
              doctest::Approx(-e2x * std::pow(e2x - 1.0, -1.5)).epsilon(1e-13));
        CHECK(hbar_derivative(0, x) == doctest::Approx(hbar(x)).epsilon(1e-13));
    }
    // n = 3 against a central finite-difference stencil of hbar'.
    for (double x : {0.5, 1.5}) {
        double d = 1e-3;
        double fd = (hbar_derivative(1, x + d) - hbar_derivative(1, x - d)) / (2.0 * d);
        double fd3 = (hbar_derivative(1, x + d) - 2.0 * hbar_derivative(1, x) +
                      hbar_derivative(1, x - d)) /
                     (d * d);
        CHECK(hbar_derivative(2, x) == doctest::Approx(fd).epsilon(1e-5));
        CHECK(hbar_derivative(3, x) == doctest::Approx(fd3).epsilon(1e-4));
    }
    // No overflow far out: the value decays like e^{-x}.
    CHECK(std::isfinite(hbar_derivative(6, 300.0)));
    CHECK(std::abs(hbar_derivative(6, 300.0)) < 1e-100);
    CHECK_THROWS_AS(hbar_derivative(13, 1.0), UnsupportedOrder);
}

TEST_CASE("convolution of exponential half-line densities") {
    // (e^{-x} 1_{x>0}) * (e^{-x} 1_{x>0}) = x e^{-x} 1_{x>0}.
    HalfLineDensity e1{0.0, +1, false, [](double x) { return std::exp(-x); }, 1.0};
    for (double x : {0.3, 1.0, 2.5})
        CHECK(num_convolve_at(e1, e1, x) ==
              doctest::Approx(x * std::exp(-x)).epsilon(1e-9));
    CHECK(num_convolve_at(e1, e1, -0.5) == 0.0);
}

TEST_CASE("hbar*hbar matches its symbolic expansion near zero") {
    ConvCoefficients cc =
        conv_series_rescaled(2, Rational(-1, 2), v_coefficients(21), {Rational(1), Rational(1)});
    HalfLineDensity f = make_hbar();
    for (double x : {0.01, 0.05, 0.2}) {
        double sym = cc.eval(x);
        double num = num_convolve_at(f, f, x, 1e-11);
        CHECK(num == doctest::Approx(sym).epsilon(1e-8));
    }
}

TEST_CASE("mass conservation for h_1 * h_2") {
    HalfLineDensity f1 = make_h_t(1.0), f2 = make_h_t(2.0);
    double edge = -3.0 * kLn2;
    auto conv = [&](double x) { return num_convolve_at(f1, f2, x, 1e-9); };
    double mass = integrate(conv, edge, 30.0, 1e-7);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("support additivity") {
    HalfLineDensity f1 = make_h_t(1.0), f2 = make_h_t(2.0);
    CHECK(num_convolve_at(f1, f2, -3.0 * kLn2 - 0.01) == 0.0);
    CHECK(num_convolve_at(f1, f2, -3.0 * kLn2 + 0.05) > 0.0);
}

TEST_CASE("reflection identity for negative scalings") {
    // h_{-1} * h_{-1} at -x equals h_1 * h_1 at x: the (-,-) case is computed
    // by reflecting to the (+,+) case, and both sides must agree.
    HalfLineDensity p = make_h_t(1.0), n = make_h_t(-1.0);
    for (int i = 1; i <= 20; ++i) {
        double x = -2.0 * kLn2 + 0.2 * i;
        CHECK(num_convolve_at(n, n, -x) ==
              doctest::Approx(num_convolve_at(p, p, x)).epsilon(1e-10));
    }
}

TEST_CASE("mixed-sign convolution matches a sampling oracle") {
    // If U is uniform on (0,1) then ln(1/(2 sin pi U)) has density h, so
    // h_1 * h_{-1} is the density of the difference of two independent
    // copies. Compare interval probabilities with Monte Carlo.
    HalfLineDensity f1 = make_h_t(1.0), f2 = make_h_t(-1.0);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto draw = [&]() { return std::log(1.0 / (2.0 * std::sin(kPi * unif(rng)))); };
    const int n_samples = 4000000;
    double lo = 0.2, hi = 0.6;
    int hits = 0;
    for (int i = 0; i < n_samples; ++i) {
        double x = draw() - draw();
        if (x >= lo && x <= hi) ++hits;
    }
    double mc = static_cast<double>(hits) / n_samples;
    double integral = integrate(
        [&](double x) { return num_convolve_at(f1, f2, x, 1e-9); }, lo, hi, 1e-7);
    CHECK(integral == doctest::Approx(mc).epsilon(1.5e-3));
}

TEST_CASE("derivatives of the convolution against finite differences") {
    SmoothHalfLineDensity f = make_smooth_hbar();
    HalfLineDensity fb = make_hbar();
    double x = 0.8, d = 1e-4;
    auto c0 = [&](double y) { return num_convolve_at(fb, fb, y, 1e-12); };
    double fd1 = (c0(x + d) - c0(x - d)) / (2.0 * d);
    CHECK(conv_derivative(f, f, 0, x) == doctest::Approx(c0(x)).epsilon(1e-9));
    CHECK(conv_derivative(f, f, 1, x) == doctest::Approx(fd1).epsilon(1e-6));
    // Higher orders against stencils of the analytic k = 1 values (plain
    // second differences of the quadrature values are noise-limited).
    auto c1 = [&](double y) { return conv_derivative(f, f, 1, y); };
    double fd2 = (c1(x + d) - c1(x - d)) / (2.0 * d);
    CHECK(conv_derivative(f, f, 2, x) == doctest::Approx(fd2).epsilon(1e-6));
    double fd3 = (c1(x + d) - 2.0 * c1(x) + c1(x - d)) / (d * d);
    CHECK(conv_derivative(f, f, 3, x) == doctest::Approx(fd3).epsilon(1e-4));
}

TEST_CASE("mixed-direction derivative, both branches") {
    SmoothHalfLineDensity f = make_smooth_hbar();
    // Left-supported analytic partner: e^{2y} on y < 0 (all derivatives
    // extend continuously to the edge).
    SmoothHalfLineDensity g{0.0, -1, false,
                            [](int n, double y) {
                                return std::pow(2.0, n) * std::exp(2.0 * y);
                            },
                            2.0};
    HalfLineDensity fb = make_hbar();
    HalfLineDensity gb{0.0, -1, false, [](double y) { return std::exp(2.0 * y); }, 2.0};
    double d = 1e-4;
    auto c0 = [&](double y) { return num_convolve_at(fb, gb, y, 1e-12); };
    for (double x : {0.7, -0.7}) {
        double fd1 = (c0(x + d) - c0(x - d)) / (2.0 * d);
        CHECK(conv_derivative_mixed(f, g, 0, x) == doctest::Approx(c0(x)).epsilon(1e-9));
        CHECK(conv_derivative_mixed(f, g, 1, x) == doctest::Approx(fd1).epsilon(1e-6));
    }
}

TEST_CASE("decay probe certifies hbar and rejects a polynomial tail") {
    WReport rep = probe_W([](double x) { return hbar(x); });
    CHECK(rep.pass);
    CHECK(rep.small_x_limit == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-3));
    CHECK(rep.A >= 1.0);
    CHECK_THROWS_AS(probe_W([](double x) { return 1.0 / x; }), BoundViolation);
}

TEST_CASE("wrapping a function supported in a unit cell is the identity there") {
    auto bump = [](double x) {
        if (x <= 0.05 || x >= 0.45) return 0.0;
        return std::exp(-1.0 / ((x - 0.05) * (0.45 - x)));
    };
    for (double x : {0.1, 0.2, 0.3, 0.4})
        CHECK(wrap_eval(bump, x, 10, 5.0, 1.0, 1e-6) == doctest::Approx(bump(x)).epsilon(1e-14));
}

TEST_CASE("wrapped h has unit mass over one period") {
    auto W = [](double x) { return wrap_eval(h_density, x, 40, 1.0, 2.0, 1e-12); };
    double s = 1.0 - kLn2;  // wrapped location of the support edge
    double left = integrate(W, 1e-12, s - 0.02, 1e-9);
    double bridge = integrate_sqrt_sing_right(W, s - 0.02, s, 1e-9);
    double right = integrate_sqrt_sing_left(W, s, 1.0 - 1e-12, 1e-9);
    CHECK(left + bridge + right == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("wrap rejects a tail bound above tolerance") {
    CHECK_THROWS_AS(wrap_eval([](double x) { return std::exp(-std::abs(x)); }, 0.3,
                              3, 1.0, 1.0, 1e-10),
                    TailBoundTooLoose);
}

TEST_CASE("fit_extrapolate recovers exact polynomial data") {
    std::vector<double> s, vals;
    for (int j = 0; j < 8; ++j) {
        double x = 0.02 * std::pow(0.5, j);
        s.push_back(x);
        vals.push_back(2.0 + 3.0 * x - x * x);
    }
    auto c = fit_extrapolate(s, vals, {0.0, 1.0, 2.0});
    CHECK(c[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(c[1] == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(c[2] == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("edge coefficient recovery from the wrapped density") {
    // Shift so the inverse-square-root edge sits at 0; then
    // W(s) - W(-s) ~ s^{-1/2} (2/pi)(a_0 + a_1 s + ...) with
    // a_0 = sqrt2/2, a_1 = -sqrt2/4 from the v expansion.
    auto W = [](double s) { return wrap_eval(h_density, s - kLn2, 40, 1.0, 2.0, 1e-12); };
    auto Wp = [](double s) { return wrap_eval(h_deriv, s - kLn2, 40, 1.0, 8.0, 1e-10); };
    auto [A0, A1] = recover_A0_A1(W, Wp, -0.5);
    double ref0 = (2.0 / kPi) * std::sqrt(2.0) / 2.0;
    double ref1 = -(2.0 / kPi) * std::sqrt(2.0) / 4.0;
    CHECK(A0 == doctest::Approx(ref0).epsilon(1e-4));
    CHECK(A1 == doctest::Approx(ref1).epsilon(1e-3));
}
