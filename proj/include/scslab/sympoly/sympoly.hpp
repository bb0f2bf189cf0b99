#pragma once

#include "scslab/exact/scaled_rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace scslab {

/// Weakly decreasing tuple of positive integers.
struct Partition {
    std::vector<int> parts;

    int sum() const {
        int s = 0;
        for (int p : parts) s += p;
        return s;
    }
    int length() const { return static_cast<int>(parts.size()); }
    bool operator==(const Partition& o) const = default;
    auto operator<=>(const Partition& o) const = default;
    std::string to_string() const;
};

/// All partitions of n with at most d parts, in descending lexicographic order.
std::vector<Partition> partitions_le(int n, int d);

/// Sparse multivariate polynomial in x_1..x_d over ScaledRational.
/// Exponent vectors are dense with length exactly d; zero coefficients are
/// never stored.
class SymPoly {
public:
    explicit SymPoly(int d) : d_(d) {}

    int d() const { return d_; }
    const std::map<std::vector<int>, ScaledRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const std::vector<int>& exp, const ScaledRational& c);
    const ScaledRational* coeff(const std::vector<int>& exp) const;

    friend SymPoly operator+(const SymPoly& a, const SymPoly& b);
    friend SymPoly operator-(const SymPoly& a, const SymPoly& b);
    friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
    SymPoly operator*(const ScaledRational& c) const;
    SymPoly pow(int e) const;
    bool operator==(const SymPoly& o) const = default;

    ScaledRational evaluate(const std::vector<Rational>& point) const;

private:
    int d_;
    std::map<std::vector<int>, ScaledRational> terms_;
};

/// Monomial symmetric polynomial m_lambda in d variables: the sum of all
/// distinct monomials whose exponent multiset is lambda.
SymPoly monomial_sym(const Partition& lambda, int d);

/// The x_i of index i (1-based), as a SymPoly.
SymPoly sym_variable(int i, int d);

/// Degree-n layer of prod_i sum_k b_k x_i^k:
///   sum over partitions lambda of n with <= d parts of
///   b_0^{d - len(lambda)} * prod_j b_{lambda_j} * m_lambda.
SymPoly build_cn(int d, int n, const std::vector<ScaledRational>& b);

/// True iff lhs == rhs as polynomials; otherwise returns a rational point
/// where the two sides evaluate differently.
struct IdentityCheck {
    bool equal;
    std::optional<std::vector<Rational>> witness;
};
IdentityCheck verify_identity(const SymPoly& lhs, const SymPoly& rhs);

/// Writes a homogeneous symmetric polynomial of degree n in the m-basis:
/// returns the coefficient of m_lambda for each lambda of n with <= d parts.
/// Throws UnsupportedArgument if p has a term whose sorted exponent vector
/// has more than d positive entries (cannot happen for d-variate input) or
/// if p is not symmetric/homogeneous of degree n.
std::map<Partition, ScaledRational> m_basis_coefficients(const SymPoly& p, int n);

}  // namespace scslab
