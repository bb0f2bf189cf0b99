#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scslab {

struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedOrder : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BoundViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TailBoundTooLoose : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ExtrapolationDivergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sampled real function with singularity and tail metadata.
struct GridFunction {
    std::vector<double> nodes;
    std::vector<double> values;
    std::optional<std::pair<double, double>> sing;  // (location, exponent)
    std::optional<std::pair<double, double>> tail;  // (amplitude A, decay rate)
};

// ---- densities -----------------------------------------------------------

/// hbar(x) = 1/sqrt(e^{2x}-1) on (0, inf); 0 outside; +inf at the edge.
double hbar(double x);

/// h(x) = (2/pi) (4 e^{2x} - 1)^{-1/2} on (-ln 2, inf); 0 outside.
/// Satisfies h(x - ln 2) = (2/pi) hbar(x).
double h_density(double x);

/// Rescaled density h_t(x) = (1/|t|) h(x/t).
double h_t(double t, double x);

/// Closed-form first derivative of h on its support.
double h_deriv(double x);

/// n-th derivative of hbar: sum_k w_k e^{2kx} / (e^{2x}-1)^{n+1/2} with
/// integer weights from the term-splitting recurrence. n <= 12.
double hbar_derivative(int n, double x);

/// The integer weights w_0..w_n of hbar_derivative at level n (for tests).
std::vector<long long> hbar_derivative_weights(int n);

// ---- quadrature ----------------------------------------------------------

/// Adaptive Simpson on [a, b] for a smooth integrand.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-11);

/// Integral over [a, inf) for an exponentially decaying integrand: unit
/// panels are summed until they fall below the tolerance.
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double tol = 1e-11);

/// Integral of g over [a, b] where g ~ (x-a)^{-1/2} near a: substitutes
/// u = sqrt(x-a), making the integrand analytic at the edge.
double integrate_sqrt_sing_left(const std::function<double(double)>& g, double a,
                                double b, double tol = 1e-11);

/// Same with the singularity at the right edge b.
double integrate_sqrt_sing_right(const std::function<double(double)>& g, double a,
                                 double b, double tol = 1e-11);

// ---- densities as objects, convolution -----------------------------------

/// Density supported on a half line with an optional inverse-square-root
/// singularity at the finite edge. dir = +1: support (edge, inf);
/// dir = -1: support (-inf, edge).
struct HalfLineDensity {
    double edge = 0.0;
    int dir = +1;
    bool sqrt_singular = true;
    std::function<double(double)> f;  // raw formula, no support clamping
    double decay_rate = 1.0;          // |f| <~ C e^{-decay_rate |x - edge|}
    // Optional: value at distance y > 0 from the edge, into the support.
    // Avoids the catastrophic absorption of edge + y in doubles when y is
    // far below the edge's ulp, which matters right at the singularity.
    std::function<double(double)> f_off;

    double operator()(double x) const {
        if (dir > 0 ? (x <= edge) : (x >= edge)) return 0.0;
        return f(x);
    }

    /// Value at edge + dir * y for y > 0 (0 outside).
    double off(double y) const {
        if (y <= 0.0) return 0.0;
        if (f_off) return f_off(y);
        return f(edge + dir * y);
    }
};

HalfLineDensity make_hbar();
HalfLineDensity make_h();
HalfLineDensity make_h_t(double t);

/// Pointwise numerical convolution of two half-line densities with
/// singularity-aware quadrature. Supported direction pairs: (+,+), (+,-).
double num_convolve_at(const HalfLineDensity& f, const HalfLineDensity& g, double x,
                       double tol = 1e-10);

GridFunction num_convolve(const HalfLineDensity& f, const HalfLineDensity& g,
                          const std::vector<double>& nodes, double tol = 1e-10);

/// Density together with closed-form derivatives, for the derivative-of-
/// convolution formulas. deriv(0, x) is the value.
struct SmoothHalfLineDensity {
    double edge = 0.0;
    int dir = +1;
    bool sqrt_singular = true;
    std::function<double(int, double)> deriv;
    double decay_rate = 1.0;
    // Optional edge-relative evaluator, as in HalfLineDensity::f_off.
    std::function<double(int, double)> deriv_off;

    double eval(int order, double x) const {
        if (dir > 0 ? (x <= edge) : (x >= edge)) return 0.0;
        return deriv(order, x);
    }

    /// order-th derivative at edge + dir * y for y > 0 (0 outside).
    double eval_off(int order, double y) const {
        if (y <= 0.0) return 0.0;
        if (deriv_off) return deriv_off(order, y);
        return deriv(order, edge + dir * y);
    }
};

SmoothHalfLineDensity make_smooth_hbar();
SmoothHalfLineDensity make_smooth_h_t(double t);

/// k-th derivative of (f*g)(x) for two right-supported densities via the
/// split-at-z0 formula (integral terms plus explicit boundary terms);
/// k = 0 falls back to plain convolution. k <= 4.
double conv_derivative(const SmoothHalfLineDensity& f, const SmoothHalfLineDensity& g,
                       int k, double x, double tol = 1e-10);

/// k-th derivative for f right-supported, g left-supported: the two-branch
/// formula (x above / below the support split) with boundary terms only on
/// the upper branch.
double conv_derivative_mixed(const SmoothHalfLineDensity& f,
                             const SmoothHalfLineDensity& g, int k, double x,
                             double tol = 1e-10);

// ---- decay probes --------------------------------------------------------

struct WReport {
    bool pass = false;
    double A = 0.0;   // constant certified on the grids
    double r = -0.5;  // singularity exponent probed
    double t = 1.0;   // crossover between the two regimes
    double small_x_limit = 0.0;  // extrapolated lim x^{1/2} |f(x)|, x -> 0+
    double tail_limit = 0.0;     // e^{x/2} f(x) at the far end of the grid
    std::optional<double> violation_x;
};

/// Grid search for the two-sided decay bound: |f| < A|x|^{-1/2} on (0, t]
/// and |f| < A e^{-x/A} on [t, inf-grid]. Throws BoundViolation when no
/// constant up to a_max works.
WReport probe_W(const std::function<double(double)>& f, double t = 1.0,
                double a_max = 1e6);

// ---- wrapping and coefficient recovery -----------------------------------

/// W(x) = sum_{|k| <= K} f(x+k). Checks that the geometric tail bound
/// implied by decay_rate is below tol, else throws TailBoundTooLoose.
double wrap_eval(const std::function<double(double)>& f, double x, int K,
                 double decay_rate, double amplitude, double tol = 1e-10);

GridFunction wrap_mod1(const std::function<double(double)>& f,
                       const std::vector<double>& nodes, int K, double decay_rate,
                       double amplitude, double tol = 1e-10);

/// Least-squares fit of values(s_j) against sum_i c_i s_j^{exps_i}; returns
/// the coefficient vector. Used to extrapolate s -> 0 limits.
std::vector<double> fit_extrapolate(const std::vector<double>& s,
                                    const std::vector<double>& values,
                                    const std::vector<double>& exps);

/// Recovers (A_0, A_1) of F(x) = x^a sum A_n x^n from the wrapped density:
/// A_0 = lim s^{-a} (W(s) - W(-s)); A_1 from the derivative difference with
/// the A_0 correction term removed. Requires the analytic derivative W'.
/// a in {-1/2, 0} (the concrete density families: single copy and pair
/// convolution).
std::pair<double, double>
recover_A0_A1(const std::function<double(double)>& W,
              const std::function<double(double)>& Wp, double a);

}  // namespace scslab
