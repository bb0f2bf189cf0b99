#include "scslab/uniqueness/elimination.hpp"

#include "scslab/series/power_series.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace scslab {

namespace {

std::vector<int> trim(std::vector<int> e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
    return e;
}

}  // namespace

BPoly BPoly::monomial(const std::vector<int>& exps, const Rational& c) {
    BPoly p;
    p.add_term(exps, c);
    return p;
}

BPoly BPoly::constant(const Rational& c) { return monomial({}, c); }

void BPoly::add_term(std::vector<int> exps, const Rational& c) {
    if (c == 0) return;
    exps = trim(std::move(exps));
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(std::move(exps), c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

BPoly operator+(const BPoly& a, const BPoly& b) {
    BPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

BPoly operator-(const BPoly& a, const BPoly& b) {
    BPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
}

BPoly operator*(const BPoly& a, const BPoly& b) {
    BPoly r;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            std::vector<int> e(std::max(ea.size(), eb.size()), 0);
            for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
            for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
            r.add_term(std::move(e), ca * cb);
        }
    }
    return r;
}

std::pair<BPoly, BPoly> BPoly::split_on(int i) const {
    BPoly with, without;
    for (const auto& [e, c] : terms_) {
        int deg = (static_cast<std::size_t>(i) < e.size()) ? e[i] : 0;
        if (deg == 0) {
            without.add_term(e, c);
        } else if (deg == 1) {
            std::vector<int> red = e;
            red[i] = 0;
            with.add_term(std::move(red), c);
        } else {
            throw UnsupportedArgument("split_on: higher powers of b_n not expected");
        }
    }
    return {with, without};
}

Rational BPoly::evaluate(const std::vector<Rational>& b) const {
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational m = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (i >= b.size()) throw UnsupportedArgument("BPoly::evaluate: missing b value");
            for (int k = 0; k < e[i]; ++k) m *= b[i];
        }
        acc += m;
    }
    return acc;
}

std::string BPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*b" << i;
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

Rational CnThreshold::evaluate(const std::vector<Rational>& b) const {
    Rational d = den.evaluate(b);
    if (d == 0) throw StructurallySingular("threshold denominator vanishes at given b");
    return num.evaluate(b) / d;
}

std::string CnThreshold::to_string() const {
    return "(" + num.to_string() + ") / (" + den.to_string() + ")";
}

std::vector<Rational> LinearSystem::c_row_rational() const {
    // All entries are products of exactly d coefficients b_k of one radical
    // class, so they share a class; dividing it out leaves exact rationals.
    std::vector<Rational> out(c_row.size(), Rational(0));
    int s = 0, p = 0, w = 0;
    bool found = false;
    for (const auto& v : c_row) {
        if (v.is_zero()) continue;
        if (!found) {
            s = v.sqrt2_pow();
            p = v.sqrtpi_pow();
            w = v.pi_pow();
            found = true;
        } else if (v.sqrt2_pow() != s || v.sqrtpi_pow() != p || v.pi_pow() != w) {
            throw IncompatibleRadicals("c_n row entries do not share a radical class");
        }
    }
    for (std::size_t i = 0; i < c_row.size(); ++i)
        if (!c_row[i].is_zero()) out[i] = c_row[i].q();
    return out;
}

int rational_rank(std::vector<std::vector<Rational>> m) {
    int rank = 0;
    if (m.empty()) return 0;
    std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[row]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col] / m[row][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

bool in_row_space(const std::vector<std::vector<Rational>>& rows,
                  const std::vector<Rational>& target) {
    std::vector<std::vector<Rational>> with = rows;
    with.push_back(target);
    return rational_rank(rows) == rational_rank(with);
}

namespace {

/// Finds y with sum_i y_i rows[i] = target (exact), if it exists.
std::optional<std::vector<Rational>>
solve_combination(const std::vector<std::vector<Rational>>& rows,
                  const std::vector<Rational>& target) {
    // Solve rows^T y = target by elimination on the (cols x nrows | 1) system.
    std::size_t nr = rows.size();
    if (nr == 0) return std::nullopt;
    std::size_t nc = rows[0].size();
    std::vector<std::vector<Rational>> aug(nc, std::vector<Rational>(nr + 1, Rational(0)));
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) aug[j][i] = rows[i][j];
    for (std::size_t j = 0; j < nc; ++j) aug[j][nr] = target[j];

    std::vector<int> pivot_col(nc, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < nr && row < nc; ++col) {
        std::size_t piv = row;
        while (piv < nc && aug[piv][col] == 0) ++piv;
        if (piv == nc) continue;
        std::swap(aug[piv], aug[row]);
        for (std::size_t r = 0; r < nc; ++r) {
            if (r == row || aug[r][col] == 0) continue;
            Rational f = aug[r][col] / aug[row][col];
            for (std::size_t c = col; c <= nr; ++c) aug[r][c] -= f * aug[row][c];
        }
        pivot_col[row] = static_cast<int>(col);
        ++row;
    }
    // Inconsistent if a zero row has nonzero rhs.
    for (std::size_t r = row; r < nc; ++r)
        if (aug[r][nr] != 0) return std::nullopt;
    std::vector<Rational> y(nr, Rational(0));
    for (std::size_t r = 0; r < row; ++r)
        y[pivot_col[r]] = aug[r][nr] / aug[r][pivot_col[r]];
    return y;
}

std::vector<Rational> partition_row(const Partition& mu, int n, int d,
                                    const std::vector<Partition>& unknowns) {
    // Expansion of prod_j m_{mu_j} in the m-basis of degree n.
    SymPoly prod(d);
    prod.add_term(std::vector<int>(d, 0), ScaledRational(Rational(1)));
    for (int part : mu.parts) prod = prod * monomial_sym(Partition{{part}}, d);
    auto coeffs = m_basis_coefficients(prod, n);
    std::vector<Rational> row(unknowns.size(), Rational(0));
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
        auto it = coeffs.find(unknowns[j]);
        if (it != coeffs.end()) {
            if (!it->second.is_rational())
                throw UnsupportedArgument("product row coefficient not rational");
            row[j] = it->second.q();
        }
    }
    return row;
}

std::string partition_product_label(const Partition& mu) {
    std::ostringstream os;
    for (std::size_t i = 0; i < mu.parts.size(); ++i) {
        if (i) os << "*";
        os << "m" << mu.parts[i];
    }
    return os.str();
}

}  // namespace

LinearSystem step_system(int n, int d, const std::vector<ScaledRational>& b,
                         const std::set<int>& known_parts) {
    if (static_cast<int>(b.size()) <= n)
        throw MissingPrerequisite("step_system requires b_0..b_n");
    LinearSystem sys;
    sys.n = n;
    sys.d = d;
    sys.unknowns = partitions_le(n, d);

    // Product identities from the non-trivial partitions of n whose single
    // parts are all already determined.
    for (const Partition& mu : partitions_le(n, n)) {
        if (mu.length() == 1) continue;  // the trivial partition (n)
        bool usable = true;
        for (int part : mu.parts)
            if (!known_parts.count(part)) usable = false;
        if (!usable) continue;
        sys.product_rows.push_back(partition_row(mu, n, d, sys.unknowns));
        sys.product_labels.push_back(partition_product_label(mu));
    }

    // The c_n row: coefficient of m_lambda is b_0^{d-len} prod_j b_{lambda_j}.
    sys.c_row.resize(sys.unknowns.size());
    for (std::size_t j = 0; j < sys.unknowns.size(); ++j) {
        const Partition& lam = sys.unknowns[j];
        ScaledRational c = b[0].pow(d - lam.length());
        for (int part : lam.parts) c *= b[part];
        sys.c_row[j] = c;
    }
    return sys;
}

CnThreshold independence_threshold(int n, int d) {
    if (n < 2) throw UnsupportedArgument("independence_threshold requires n >= 2");
    std::vector<Partition> unknowns = partitions_le(n, d);
    std::size_t u = unknowns.size();

    std::vector<std::vector<Rational>> prows;
    for (const Partition& mu : partitions_le(n, n)) {
        if (mu.length() == 1) continue;
        prows.push_back(partition_row(mu, n, d, unknowns));
    }

    if (prows.size() + 1 != u) {
        // Non-square: if the product rows alone span everything, the c_n row
        // is dependent for every b.
        if (rational_rank(prows) == static_cast<int>(u))
            throw StructurallySingular(
                "product identities alone determine step " + std::to_string(n));
        throw UnsupportedArgument("independence_threshold: non-square system");
    }

    // Symbolic c row entries: monomials b_0^{d-len} prod b_{lambda_j}.
    std::vector<BPoly> c_entries(u);
    for (std::size_t j = 0; j < u; ++j) {
        std::vector<int> exps(n + 1, 0);
        exps[0] = d - unknowns[j].length();
        for (int part : unknowns[j].parts) exps[part] += 1;
        c_entries[j] = BPoly::monomial(exps, Rational(1));
    }

    // det of [product rows; c row], expanded along the c row: the minors are
    // exact rational determinants of the integer block.
    BPoly det;
    for (std::size_t j = 0; j < u; ++j) {
        // minor: product rows with column j removed
        std::vector<std::vector<Rational>> minor;
        for (const auto& row : prows) {
            std::vector<Rational> r;
            for (std::size_t c = 0; c < u; ++c)
                if (c != j) r.push_back(row[c]);
            minor.push_back(r);
        }
        // determinant of minor via exact elimination
        Rational mdet(1);
        {
            std::size_t m = minor.size();
            bool singular = false;
            for (std::size_t col = 0; col < m; ++col) {
                std::size_t piv = col;
                while (piv < m && minor[piv][col] == 0) ++piv;
                if (piv == m) {
                    singular = true;
                    break;
                }
                if (piv != col) {
                    std::swap(minor[piv], minor[col]);
                    mdet = -mdet;
                }
                mdet *= minor[col][col];
                for (std::size_t r = col + 1; r < m; ++r) {
                    if (minor[r][col] == 0) continue;
                    Rational f = minor[r][col] / minor[col][col];
                    for (std::size_t c = col; c < m; ++c) minor[r][c] -= f * minor[col][c];
                }
            }
            if (singular) mdet = 0;
        }
        if (mdet == 0) continue;
        int sign = ((u - 1 + j) % 2 == 0) ? 1 : -1;
        det = det + c_entries[j] * BPoly::constant(sign > 0 ? mdet : -mdet);
    }

    // det is linear in b_n (only the single-part column carries it):
    // det = b_n * P + Q, singular iff b_n = -Q/P.
    auto [P, Q] = det.split_on(n);
    if (P.is_zero())
        throw StructurallySingular("step " + std::to_string(n) +
                                   " is singular for every b_n");
    CnThreshold t;
    t.n = n;
    t.num = BPoly() - Q;
    t.den = P;
    return t;
}

EliminationState run_elimination(int d, const std::vector<ScaledRational>& b, int max_n) {
    if (b.size() < 2 || b[0].is_zero() || b[1].is_zero())
        throw UnsupportedArgument("run_elimination requires b_0, b_1 != 0");
    EliminationState st;
    st.d = d;
    std::set<int> known_parts;

    for (int n = 1; n <= max_n; ++n) {
        LinearSystem sys = step_system(n, d, b, known_parts);
        std::vector<std::vector<Rational>> rows = sys.product_rows;
        std::vector<Rational> c = sys.c_row_rational();

        bool c_nonzero = std::any_of(c.begin(), c.end(),
                                     [](const Rational& v) { return v != 0; });
        bool degenerate = !c_nonzero || in_row_space(rows, c);
        if (!degenerate) rows.push_back(c);

        StepReport rep;
        rep.n = n;
        rep.degenerate = degenerate;
        for (std::size_t j = 0; j < sys.unknowns.size(); ++j) {
            std::vector<Rational> e(sys.unknowns.size(), Rational(0));
            e[j] = 1;
            if (in_row_space(rows, e)) {
                rep.determined.push_back(sys.unknowns[j]);
                st.known.insert(sys.unknowns[j]);
            } else {
                rep.undetermined.push_back(sys.unknowns[j]);
            }
        }
        if (degenerate) st.degenerate_steps.push_back(n);
        for (const Partition& lam : rep.determined)
            if (lam.length() == 1) known_parts.insert(lam.parts[0]);
        st.steps.push_back(std::move(rep));
    }

    st.elementary_recovered = true;
    for (int k = 1; k <= d; ++k) {
        Partition ek{std::vector<int>(k, 1)};
        if (!st.known.count(ek)) st.elementary_recovered = false;
    }
    return st;
}

std::vector<ScaledRational> v_b_sequence(std::size_t order) {
    PowerSeries a = v_coefficients(order);
    std::vector<ScaledRational> b(order);
    for (std::size_t k = 0; k < order; ++k)
        b[k] = a[k] * gamma_half(static_cast<int>(k));
    return b;
}

namespace {

const ScaledRational kUnitSqrt2Pi32{Rational(1), 1, 1, 1};  // sqrt2 * pi^{3/2}

SymPoly genericity_poly() {
    SymPoly g = (sym_variable(1, 3) + sym_variable(2, 3)) *
                (sym_variable(1, 3) + sym_variable(3, 3)) *
                (sym_variable(2, 3) + sym_variable(3, 3));
    return g;
}

}  // namespace

Certificate kod_certificate(const std::vector<ScaledRational>& b) {
    if (b.size() < 6)
        throw UnsupportedArgument("kod_certificate requires b_0..b_5");
    const int d = 3;
    auto m = [&](std::initializer_list<int> parts) {
        return monomial_sym(Partition{std::vector<int>(parts)}, d);
    };
    auto require = [](bool ok, const std::string& name) {
        if (!ok) throw IdentityFailure("identity failed: " + name);
    };
    Certificate cert;
    auto record = [&](const std::string& name) { cert.verified_identities.push_back(name); };

    SymPoly m1 = m({1});

    // Power-product expansions used by the elimination steps.
    require(verify_identity(m1.pow(2), m({2}) + m({1, 1}) * ScaledRational(Rational(2))).equal,
            "m1^2 = m2 + 2 m_{1,1}");
    record("m1^2 = m2 + 2 m_{1,1}");
    require(verify_identity(m1.pow(3),
                            m({3}) + m({2, 1}) * ScaledRational(Rational(3)) +
                                m({1, 1, 1}) * ScaledRational(Rational(6)))
                .equal,
            "m1^3 = m3 + 3 m_{2,1} + 6 m_{1,1,1}");
    record("m1^3 = m3 + 3 m_{2,1} + 6 m_{1,1,1}");
    require(verify_identity(m1.pow(5),
                            m({5}) + m({4, 1}) * ScaledRational(Rational(5)) +
                                m({3, 2}) * ScaledRational(Rational(10)) +
                                m({3, 1, 1}) * ScaledRational(Rational(20)) +
                                m({2, 2, 1}) * ScaledRational(Rational(30)))
                .equal,
            "m1^5 = m5 + 5 m_{4,1} + 10 m_{3,2} + 20 m_{3,1,1} + 30 m_{2,2,1}");
    record("m1^5 = m5 + 5 m_{4,1} + 10 m_{3,2} + 20 m_{3,1,1} + 30 m_{2,2,1}");

    // The three input layers in closed form.
    SymPoly c1 = build_cn(d, 1, b);
    SymPoly c3 = build_cn(d, 3, b);
    SymPoly c5 = build_cn(d, 5, b);

    require(verify_identity(
                c1, m1 * (kUnitSqrt2Pi32 * ScaledRational(Rational(-1, 16)))).equal,
            "c1 = -(sqrt2 pi^{3/2}/16) m1");
    record("c1 = -(sqrt2 pi^{3/2}/16) m1");
    require(verify_identity(c3, (m({3}) * ScaledRational(Rational(5)) -
                                 m({2, 1}) - m({1, 1, 1}) * ScaledRational(Rational(2))) *
                                    (kUnitSqrt2Pi32 * ScaledRational(Rational(1, 512))))
                .equal,
            "c3 = (sqrt2 pi^{3/2}/512)(5 m3 - m_{2,1} - 2 m_{1,1,1})");
    record("c3 = (sqrt2 pi^{3/2}/512)(5 m3 - m_{2,1} - 2 m_{1,1,1})");

    // The degree-5 factorization driving the m2 / m_{1,1} recovery:
    // -(32768/(sqrt2 pi^{3/2})) c5 - 399 m1^5
    //    = -32 (m_{2,1} + 2 m_{1,1,1}) (63 m2 + 62 m_{1,1}).
    SymPoly lhs = c5 * (ScaledRational(Rational(-32768)) / kUnitSqrt2Pi32) -
                  m1.pow(5) * ScaledRational(Rational(399));
    SymPoly u = m({2, 1}) + m({1, 1, 1}) * ScaledRational(Rational(2));
    SymPoly w = m({2}) * ScaledRational(Rational(63)) +
                m({1, 1}) * ScaledRational(Rational(62));
    require(verify_identity(lhs, (u * w) * ScaledRational(Rational(-32))).equal,
            "-(32768/(sqrt2 pi^{3/2})) c5 - 399 m1^5 = -32 (m_{2,1}+2m_{1,1,1})(63 m2+62 m_{1,1})");
    record("-(32768/(sqrt2 pi^{3/2})) c5 - 399 m1^5 = -32 (m_{2,1}+2m_{1,1,1})(63 m2+62 m_{1,1})");

    // The factored carrier of the genericity condition.
    require(verify_identity(u, genericity_poly()).equal,
            "m_{2,1} + 2 m_{1,1,1} = (x1+x2)(x1+x3)(x2+x3)");
    record("m_{2,1} + 2 m_{1,1,1} = (x1+x2)(x1+x3)(x2+x3)");

    // Final 2x2 solve {m2 + 2 m_{1,1} = m1^2, 63 m2 + 62 m_{1,1} = w} is
    // nonsingular: det [[1,2],[63,62]] = -64.
    require(Rational(1) * 62 - Rational(2) * 63 != 0, "det [[1,2],[63,62]] != 0");
    record("det [[1,2],[63,62]] = -64 != 0");

    cert.recovered = {"e1", "e2", "e3"};
    cert.genericity = genericity_poly();
    cert.inputs_used = {1, 3, 5};
    return cert;
}

std::array<Rational, 3> kod_recover(const ScaledRational& c1, const ScaledRational& c3,
                                    const ScaledRational& c5,
                                    const std::vector<ScaledRational>& b) {
    if (b.size() < 6)
        throw UnsupportedArgument("kod_recover requires b_0..b_5");

    // Step 1: c1 = b0^2 b1 m1.
    ScaledRational m1s = c1 / (b[0] * b[0] * b[1]);
    if (!m1s.is_rational()) throw UnsupportedArgument("c1 inconsistent with b");
    Rational m1 = m1s.q();

    // Step 3: rationalized c3 together with m1^3 = m3 + 3 m_{2,1} + 6 m_{1,1,1}
    // determines m3 and u = m_{2,1} + 2 m_{1,1,1}.
    LinearSystem s3 = step_system(3, 3, b, {1, 2});
    std::vector<Rational> c3row = s3.c_row_rational();
    // radical unit of the c3 row, to rationalize the c3 value consistently
    ScaledRational unit3;
    for (const auto& v : s3.c_row)
        if (!v.is_zero()) {
            unit3 = v / ScaledRational(v.q());
            break;
        }
    ScaledRational k3s = c3 / unit3;
    if (!k3s.is_rational()) throw UnsupportedArgument("c3 inconsistent with b");
    Rational K3 = k3s.q();

    std::vector<Rational> m13row{1, 3, 6};  // m3 + 3 m_{2,1} + 6 m_{1,1,1}
    Rational m13 = m1 * m1 * m1;
    std::vector<std::vector<Rational>> rows{m13row, c3row};
    std::vector<Rational> rhs{m13, K3};
    auto solve_value = [&](const std::vector<Rational>& target) {
        auto y = solve_combination(rows, target);
        if (!y) throw StructurallySingular("step-3 system cannot express target");
        Rational v(0);
        for (std::size_t i = 0; i < y->size(); ++i) v += (*y)[i] * rhs[i];
        return v;
    };
    Rational m3 = solve_value({1, 0, 0});
    Rational u = solve_value({0, 1, 2});  // m_{2,1} + 2 m_{1,1,1}
    if (u == 0)
        throw UnsupportedArgument("genericity violated: (x1+x2)(x1+x3)(x2+x3) = 0");

    // Step 5: the factorization reduces c5 to w = 63 m2 + 62 m_{1,1}.
    ScaledRational k5s = c5 * (ScaledRational(Rational(-32768)) / kUnitSqrt2Pi32);
    if (!k5s.is_rational()) throw UnsupportedArgument("c5 inconsistent with b");
    Rational lhs = k5s.q() - 399 * m13 * m1 * m1;  // -32768 c5/unit - 399 m1^5
    Rational w = lhs / (Rational(-32) * u);

    // {m2 + 2 m_{1,1} = m1^2, 63 m2 + 62 m_{1,1} = w}, det = -64.
    Rational m1sq = m1 * m1;
    Rational m2 = (Rational(62) * m1sq - Rational(2) * w) / Rational(-64);
    Rational m11 = (m1sq - m2) / 2;

    // m1 m2 = m3 + m_{2,1}  =>  m_{2,1} = m1 m2 - m3; e3 = (u - m_{2,1}) / 2.
    Rational m21 = m1 * m2 - m3;
    Rational e3 = (u - m21) / 2;
    return {m1, m11, e3};
}

}  // namespace scslab
