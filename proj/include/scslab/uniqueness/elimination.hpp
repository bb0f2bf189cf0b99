#pragma once

#include "scslab/sympoly/sympoly.hpp"

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace scslab {

struct MissingPrerequisite : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StructurallySingular : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IdentityFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sparse polynomial in the symbols b_0, b_1, ... with rational coefficients,
/// used for the symbolic degeneracy thresholds.
class BPoly {
public:
    BPoly() = default;
    static BPoly monomial(const std::vector<int>& exps, const Rational& c);
    static BPoly constant(const Rational& c);

    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Rational>& terms() const { return terms_; }

    void add_term(std::vector<int> exps, const Rational& c);
    friend BPoly operator+(const BPoly& a, const BPoly& b);
    friend BPoly operator-(const BPoly& a, const BPoly& b);
    friend BPoly operator*(const BPoly& a, const BPoly& b);
    bool operator==(const BPoly& o) const = default;

    /// Splits into (P, Q) with *this = b_i * P + Q and Q free of b_i.
    std::pair<BPoly, BPoly> split_on(int i) const;

    Rational evaluate(const std::vector<Rational>& b) const;
    std::string to_string() const;

private:
    // keys: exponent vectors (trailing zeros trimmed)
    std::map<std::vector<int>, Rational> terms_;
};

/// Rational function C_n(b_0..b_{n-1}): the step-n system is singular iff
/// b_n = num/den at the given lower coefficients.
struct CnThreshold {
    int n = 0;
    BPoly num;
    BPoly den;

    /// Equality as rational functions (cross multiplication).
    bool same_as(const BPoly& other_num, const BPoly& other_den) const {
        return num * other_den == other_num * den;
    }
    Rational evaluate(const std::vector<Rational>& b) const;
    std::string to_string() const;
};

/// The step-n linear system: unknowns m_lambda for lambda of n with <= d
/// parts; one row per usable product of lower monomial symmetric values plus
/// the c_n row built from b.
struct LinearSystem {
    int n = 0;
    int d = 0;
    std::vector<Partition> unknowns;
    std::vector<std::vector<Rational>> product_rows;
    std::vector<std::string> product_labels;  // e.g. "m2*m1"
    std::vector<ScaledRational> c_row;

    /// The c_n row entries share one radical class (products of d values of
    /// b); this strips it, yielding a rational row for exact elimination.
    std::vector<Rational> c_row_rational() const;
};

struct StepReport {
    int n = 0;
    bool degenerate = false;  // the c_n row adds no new information
    std::vector<Partition> determined;
    std::vector<Partition> undetermined;
};

struct EliminationState {
    int d = 0;
    std::vector<StepReport> steps;
    std::set<Partition> known;
    std::vector<int> degenerate_steps;
    bool elementary_recovered = false;  // m_1, m_{1,1}, ..., m_{1^d} all known
};

/// Certificate that the inputs c_{i} (i in inputs_used) pin down the variable
/// multiset off the genericity variety.
struct Certificate {
    std::vector<std::string> recovered;    // e.g. {"e1","e2","e3"}
    SymPoly genericity{3};                 // must be nonzero at the point
    std::vector<int> inputs_used;
    std::vector<std::string> verified_identities;
};

/// Rank of a rational matrix (exact Gaussian elimination).
int rational_rank(std::vector<std::vector<Rational>> m);

/// True iff target is in the row space of rows.
bool in_row_space(const std::vector<std::vector<Rational>>& rows,
                  const std::vector<Rational>& target);

/// Builds the step-n system. known_parts lists the sizes k for which the
/// single-part value m_k is already determined; products over partitions
/// needing an undetermined part are omitted (or, when require_all is set,
/// raise MissingPrerequisite).
LinearSystem step_system(int n, int d, const std::vector<ScaledRational>& b,
                         const std::set<int>& known_parts);

/// Symbolic threshold: the step-n system (with all lower values known) is
/// singular iff b_n = C_n(b_0..b_{n-1}). Throws StructurallySingular when it
/// is singular for every b_n.
CnThreshold independence_threshold(int n, int d);

/// Runs the inductive elimination for steps 1..max_n with numeric exact b.
EliminationState run_elimination(int d, const std::vector<ScaledRational>& b, int max_n);

/// The d=3 certificate: verifies the polynomial identities behind the
/// c_1/c_3/c_5 recovery for the given b (instantiated from v in production).
/// Throws IdentityFailure naming the first failing identity.
Certificate kod_certificate(const std::vector<ScaledRational>& b);

/// Recovery pipeline for d=3: from the values of c_1, c_3, c_5 at an unknown
/// point, computes the elementary symmetric values (e1, e2, e3) of the point.
/// b must be the v-derived coefficient family. Throws UnsupportedArgument if
/// the genericity expression (x1+x2)(x1+x3)(x2+x3) vanishes.
std::array<Rational, 3> kod_recover(const ScaledRational& c1, const ScaledRational& c3,
                                    const ScaledRational& c5,
                                    const std::vector<ScaledRational>& b);

/// b_k = a_k * Gamma(k+1/2) for the v-coefficient family, length = order.
std::vector<ScaledRational> v_b_sequence(std::size_t order);

}  // namespace scslab
