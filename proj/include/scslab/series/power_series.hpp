#pragma once

#include "scslab/exact/scaled_rational.hpp"

#include <vector>

namespace scslab {

struct DivByZeroSeries : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonRepresentableSqrt : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Truncated formal power series x^{lead_exp} * sum_{n<order} coeffs[n] x^n
/// over ScaledRational. lead_exp is a rational tag (0, -1/2, 1/2, ...) used
/// for singular expansions; plain arithmetic requires matching tags.
class PowerSeries {
public:
    PowerSeries() = default;
    explicit PowerSeries(std::size_t order, Rational lead_exp = Rational(0))
        : coeffs_(order), lead_(std::move(lead_exp)) {}
    PowerSeries(std::vector<ScaledRational> coeffs, Rational lead_exp = Rational(0))
        : coeffs_(std::move(coeffs)), lead_(std::move(lead_exp)) {}

    std::size_t order() const { return coeffs_.size(); }
    const Rational& lead_exp() const { return lead_; }
    const ScaledRational& operator[](std::size_t i) const { return coeffs_[i]; }
    ScaledRational& operator[](std::size_t i) { return coeffs_[i]; }
    const std::vector<ScaledRational>& coeffs() const { return coeffs_; }

    PowerSeries truncated(std::size_t n) const;

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);

    /// Evaluate the truncated sum at a double x (including the x^{lead_exp}
    /// prefactor, which requires x > 0 when lead_exp is fractional).
    double eval_double(double x) const;

private:
    std::vector<ScaledRational> coeffs_;
    Rational lead_{0};
};

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b);
PowerSeries series_div(const PowerSeries& a, const PowerSeries& b);
PowerSeries series_exp(const PowerSeries& s);
PowerSeries series_sqrt(const PowerSeries& s);

/// Taylor series of (e^{2x}-1)/x: coefficient n is 2^{n+1}/(n+1)!.
PowerSeries expm1_over_x_series(std::size_t order);

/// Taylor coefficients a_0..a_{N-1} of v(x) = sqrt(x/(e^{2x}-1)), exact.
PowerSeries v_coefficients(std::size_t order);

}  // namespace scslab
