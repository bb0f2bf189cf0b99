#include "scslab/sympoly/sympoly.hpp"

#include <algorithm>
#include <sstream>

namespace scslab {

std::string Partition::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) os << ",";
        os << parts[i];
    }
    os << "]";
    return os.str();
}

namespace {

void partitions_rec(int n, int max_part, int slots, std::vector<int>& cur,
                    std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(Partition{cur});
        return;
    }
    if (slots == 0) return;
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(n - p, p, slots - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_le(int n, int d) {
    if (n < 1 || d < 1) throw UnsupportedArgument("partitions_le requires n, d >= 1");
    std::vector<Partition> out;
    std::vector<int> cur;
    partitions_rec(n, n, d, cur, out);
    return out;
}

void SymPoly::add_term(const std::vector<int>& exp, const ScaledRational& c) {
    if (static_cast<int>(exp.size()) != d_)
        throw UnsupportedArgument("exponent vector length must equal d");
    if (c.is_zero()) return;
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
        terms_.emplace(exp, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

const ScaledRational* SymPoly::coeff(const std::vector<int>& exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? nullptr : &it->second;
}

SymPoly operator+(const SymPoly& a, const SymPoly& b) {
    if (a.d_ != b.d_) throw UnsupportedArgument("SymPoly arity mismatch");
    SymPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

SymPoly operator-(const SymPoly& a, const SymPoly& b) {
    if (a.d_ != b.d_) throw UnsupportedArgument("SymPoly arity mismatch");
    SymPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
}

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
    if (a.d_ != b.d_) throw UnsupportedArgument("SymPoly arity mismatch");
    SymPoly r(a.d_);
    std::vector<int> e(a.d_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < a.d_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

SymPoly SymPoly::operator*(const ScaledRational& c) const {
    SymPoly r(d_);
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

SymPoly SymPoly::pow(int e) const {
    SymPoly r(d_);
    r.add_term(std::vector<int>(d_, 0), ScaledRational(Rational(1)));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

ScaledRational SymPoly::evaluate(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != d_)
        throw UnsupportedArgument("evaluation point length must equal d");
    ScaledRational acc;
    for (const auto& [e, c] : terms_) {
        Rational mono(1);
        for (int i = 0; i < d_; ++i) {
            for (int k = 0; k < e[i]; ++k) mono *= point[i];
        }
        acc += c * ScaledRational(mono);
    }
    return acc;
}

SymPoly monomial_sym(const Partition& lambda, int d) {
    if (lambda.length() > d)
        throw UnsupportedArgument("monomial_sym: partition longer than d");
    std::vector<int> exp(lambda.parts);
    exp.resize(d, 0);
    std::sort(exp.begin(), exp.end());
    SymPoly r(d);
    const ScaledRational one{Rational(1)};
    do {
        r.add_term(exp, one);
    } while (std::next_permutation(exp.begin(), exp.end()));
    return r;
}

SymPoly sym_variable(int i, int d) {
    SymPoly r(d);
    std::vector<int> e(d, 0);
    e[i - 1] = 1;
    r.add_term(e, ScaledRational(Rational(1)));
    return r;
}

SymPoly build_cn(int d, int n, const std::vector<ScaledRational>& b) {
    if (static_cast<int>(b.size()) <= n)
        throw UnsupportedArgument("build_cn requires b_0..b_n");
    SymPoly r(d);
    for (const Partition& lam : partitions_le(n, d)) {
        ScaledRational c = b[0].pow(d - lam.length());
        for (int part : lam.parts) c *= b[part];
        r = r + monomial_sym(lam, d) * c;
    }
    return r;
}

IdentityCheck verify_identity(const SymPoly& lhs, const SymPoly& rhs) {
    SymPoly diff = lhs - rhs;
    if (diff.is_zero()) return {true, std::nullopt};
    // Deterministic witness search on points (t, t^2, ..., t^d), t = 1, 2, ...
    // A nonzero polynomial vanishes on only finitely many of these.
    int d = lhs.d();
    for (long t = 1; t <= 1000; ++t) {
        std::vector<Rational> pt(d);
        Rational v(t);
        for (int i = 0; i < d; ++i) {
            pt[i] = v;
            v *= t;
        }
        if (!diff.evaluate(pt).is_zero()) return {false, pt};
    }
    return {false, std::nullopt};
}

std::map<Partition, ScaledRational> m_basis_coefficients(const SymPoly& p, int n) {
    std::map<Partition, ScaledRational> out;
    for (const Partition& lam : partitions_le(n, p.d())) {
        std::vector<int> exp(lam.parts);
        exp.resize(p.d(), 0);
        std::sort(exp.begin(), exp.end());  // map keys store any one ordering
        if (const ScaledRational* c = p.coeff(exp)) out[lam] = *c;
    }
    // Consistency: reassembling from the extracted coefficients must give p
    // back exactly, otherwise p was not symmetric homogeneous of degree n.
    SymPoly re(p.d());
    for (const auto& [lam, c] : out) re = re + monomial_sym(lam, p.d()) * c;
    if (!(re == p))
        throw UnsupportedArgument("m_basis_coefficients: input is not a symmetric "
                                  "homogeneous polynomial of the stated degree");
    return out;
}

}  // namespace scslab
