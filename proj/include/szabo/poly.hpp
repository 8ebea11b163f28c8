#pragma once

#include "szabo/errors.hpp"
#include "szabo/rational.hpp"
#include "szabo/varid.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace szabo {

/// A power product: sorted (variable, exponent>0) pairs with a cached total
/// degree. The empty product is the unit monomial.
class Monomial {
public:
    using Factors = std::vector<std::pair<VarId, int>>;

    Monomial() = default;

    static Monomial var(VarId v, int exp = 1) {
        Monomial m;
        if (exp < 0) throw NegativeExponent(0);
        if (exp > 0) {
            m.factors_.emplace_back(v, exp);
            m.degree_ = exp;
        }
        return m;
    }

    const Factors& factors() const { return factors_; }
    int degree() const { return degree_; }
    bool is_unit() const { return factors_.empty(); }

    int exponent_of(VarId v) const {
        for (const auto& [var, exp] : factors_)
            if (var == v) return exp;
        return 0;
    }

    Monomial times(const Monomial& o) const {
        Monomial r;
        r.factors_.reserve(factors_.size() + o.factors_.size());
        auto a = factors_.begin(), b = o.factors_.begin();
        while (a != factors_.end() || b != o.factors_.end()) {
            if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first))
                r.factors_.push_back(*a++);
            else if (a == factors_.end() || b->first < a->first)
                r.factors_.push_back(*b++);
            else {
                r.factors_.emplace_back(a->first, a->second + b->second);
                ++a, ++b;
            }
        }
        r.degree_ = degree_ + o.degree_;
        return r;
    }

    /// Exponent-wise min; the gcd of two power products.
    Monomial gcd(const Monomial& o) const {
        Monomial r;
        for (const auto& [var, exp] : factors_) {
            int e = std::min(exp, o.exponent_of(var));
            if (e > 0) {
                r.factors_.emplace_back(var, e);
                r.degree_ += e;
            }
        }
        return r;
    }

    /// Exact division; caller guarantees divisibility.
    Monomial divided_by(const Monomial& o) const {
        Monomial r;
        for (const auto& [var, exp] : factors_) {
            int e = exp - o.exponent_of(var);
            if (e > 0) {
                r.factors_.emplace_back(var, e);
                r.degree_ += e;
            }
        }
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.factors_ == b.factors_;
    }

    /// Graded lexicographic order: total degree first; on ties, walk the
    /// variables in ascending VarId order and let the first differing
    /// exponent decide (larger exponent on an earlier variable wins).
    static std::strong_ordering grlex(const Monomial& a, const Monomial& b) {
        if (a.degree_ != b.degree_)
            return a.degree_ < b.degree_ ? std::strong_ordering::less : std::strong_ordering::greater;
        auto ia = a.factors_.begin(), ib = b.factors_.begin();
        while (ia != a.factors_.end() && ib != b.factors_.end()) {
            if (ia->first != ib->first) {
                // The monomial owning the smaller variable has a positive
                // exponent where the other has zero.
                return ia->first < ib->first ? std::strong_ordering::greater
                                             : std::strong_ordering::less;
            }
            if (ia->second != ib->second)
                return ia->second > ib->second ? std::strong_ordering::greater
                                               : std::strong_ordering::less;
            ++ia, ++ib;
        }
        if (ia != a.factors_.end()) return std::strong_ordering::greater;
        if (ib != b.factors_.end()) return std::strong_ordering::less;
        return std::strong_ordering::equal;
    }

private:
    Factors factors_;
    int degree_ = 0;
};

struct MonomialGrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return Monomial::grlex(a, b) == std::strong_ordering::less;
    }
};

/// Sparse multivariate polynomial over the rationals: a map from monomials
/// to nonzero coefficients, ordered by grlex so iteration (and therefore
/// formatting) is canonical.
class Poly {
public:
    using Terms = std::map<Monomial, Rational, MonomialGrlexLess>;

    Poly() = default;

    static Poly constant(Rational c) {
        Poly p;
        if (c != 0) p.terms_.emplace(Monomial(), std::move(c));
        return p;
    }
    static Poly of_int(long n) { return constant(Rational(n)); }
    static Poly var(VarId v, int exp = 1) {
        Poly p;
        p.terms_.emplace(Monomial::var(v, exp), Rational(1));
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
    }
    /// The value when is_constant(); zero polynomial yields 0.
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        return terms_.begin()->second;
    }

    int total_degree() const {
        return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    Poly operator-() const {
        Poly r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
        return r;
    }

    Poly scaled(const Rational& s) const {
        Poly r;
        if (s == 0) return r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
        return r;
    }

    Poly pow(unsigned e) const {
        Poly r = constant(1);
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    Poly differentiate(VarId v) const {
        Poly r;
        for (const auto& [m, c] : terms_) {
            int e = m.exponent_of(v);
            if (e == 0) continue;
            Monomial dm = m.divided_by(Monomial::var(v));
            r.add_term(dm, c * e);
        }
        return r;
    }

    Rational evaluate(const std::map<VarId, Rational>& bindings) const {
        Rational total(0);
        for (const auto& [m, c] : terms_) {
            Rational term = c;
            for (const auto& [var, exp] : m.factors()) {
                auto it = bindings.find(var);
                if (it == bindings.end()) throw UnboundVariable(var_name(var));
                term *= rational_pow(it->second, static_cast<unsigned>(exp));
            }
            total += term;
        }
        return total;
    }

    std::set<VarId> vars() const {
        std::set<VarId> vs;
        for (const auto& [m, c] : terms_)
            for (const auto& [var, exp] : m.factors()) vs.insert(var);
        return vs;
    }

    /// Greatest power product dividing every term (unit for the zero poly).
    Monomial monomial_content() const {
        Monomial g;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (first) {
                g = m;
                first = false;
            } else {
                g = g.gcd(m);
            }
            if (g.is_unit()) break;
        }
        return g;
    }

    Poly divided_by_monomial(const Monomial& m) const {
        Poly r;
        for (const auto& [mono, c] : terms_) r.terms_.emplace(mono.divided_by(m), c);
        return r;
    }

    /// LCM of the coefficient denominators (1 for the zero polynomial).
    Int coeff_denominator_lcm() const {
        Int l(1);
        for (const auto& [m, c] : terms_) l = lcm_int(l, Int(denominator(c)));
        return l;
    }

    /// GCD of the coefficient numerators, for integer-coefficient polys.
    Int integer_content() const {
        Int g(0);
        for (const auto& [m, c] : terms_) g = gcd_int(g, Int(numerator(c)));
        return g;
    }

    const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

} // namespace szabo
