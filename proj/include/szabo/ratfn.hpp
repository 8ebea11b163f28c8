#pragma once

#include "szabo/errors.hpp"
#include "szabo/poly.hpp"

#include <map>
#include <utility>

namespace szabo {

/// Rational function num/den in canonical form: den is never the zero
/// polynomial; num == 0 forces den == 1; the common monomial content and the
/// joint integer content of num and den are divided out; den's leading
/// coefficient is positive. Equality is semantic (cross multiplication), so
/// no multivariate gcd is ever needed.
class RatFn {
public:
    RatFn() : num_(), den_(Poly::constant(1)) {}
    /*implicit*/ RatFn(Poly p) : num_(std::move(p)), den_(Poly::constant(1)) { normalize(); }
    RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero("denominator polynomial is zero");
        normalize();
    }

    static RatFn constant(const Rational& c) { return RatFn(Poly::constant(c)); }
    static RatFn of_int(long n) { return RatFn(Poly::of_int(n)); }
    static RatFn var(VarId v, int exp = 1) { return RatFn(Poly::var(v, exp)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }
    bool is_one() const { return is_constant() && !is_zero() && constant_value() == 1; }

    friend RatFn operator+(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator-(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    RatFn operator-() const {
        RatFn r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFn operator*(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFn operator/(const RatFn& a, const RatFn& b) {
        if (b.is_zero()) throw DivisionByZero("division by the zero expression");
        return RatFn(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
    RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
    RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
    RatFn& operator/=(const RatFn& o) { return *this = *this / o; }

    RatFn pow(unsigned e) const {
        RatFn r = of_int(1);
        for (unsigned i = 0; i < e; ++i) r *= *this;
        return r;
    }

    /// Quotient rule; exact.
    RatFn differentiate(VarId v) const {
        return RatFn(num_.differentiate(v) * den_ - num_ * den_.differentiate(v), den_ * den_);
    }

    Rational evaluate(const std::map<VarId, Rational>& bindings) const {
        Rational d = den_.evaluate(bindings);
        if (d == 0) throw DivisionByZero("denominator vanishes at the evaluation point");
        return num_.evaluate(bindings) / d;
    }

    RatFn substitute(const std::map<VarId, RatFn>& bindings) const;

    /// Semantic equality via cross multiplication.
    bool equals(const RatFn& o) const { return (num_ * o.den_ - o.num_ * den_).is_zero(); }
    friend bool operator==(const RatFn& a, const RatFn& b) { return a.equals(b); }

    std::set<VarId> vars() const {
        std::set<VarId> vs = num_.vars();
        for (VarId v : den_.vars()) vs.insert(v);
        return vs;
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly::constant(1);
            return;
        }
        Monomial mc = num_.monomial_content().gcd(den_.monomial_content());
        if (!mc.is_unit()) {
            num_ = num_.divided_by_monomial(mc);
            den_ = den_.divided_by_monomial(mc);
        }
        // Joint scalar content: make all coefficients integral, then divide
        // out their common gcd, then fix the sign of den's leading term.
        Int l = lcm_int(num_.coeff_denominator_lcm(), den_.coeff_denominator_lcm());
        Rational scale(l);
        Poly n = num_.scaled(scale), d = den_.scaled(scale);
        Int g = gcd_int(n.integer_content(), d.integer_content());
        if (g > 1) {
            Rational inv = Rational(1) / Rational(g);
            n = n.scaled(inv);
            d = d.scaled(inv);
        }
        if (d.leading_coefficient() < 0) {
            n = -n;
            d = -d;
        }
        num_ = std::move(n);
        den_ = std::move(d);
    }

    Poly num_, den_;
};

/// Substitution on a bare polynomial; absent variables stay themselves.
/// Every term is rewritten over the one common denominator
/// prod_v den(v)^max_exp(v), so the sum is a single polynomial merge rather
/// than a chain of rational-function additions (which would renormalize the
/// growing partial sum once per term).
inline RatFn substitute(const Poly& p, const std::map<VarId, RatFn>& bindings) {
    // Largest exponent each bound variable carries anywhere in p.
    std::map<VarId, int> max_exp;
    for (const auto& [m, c] : p.terms())
        for (const auto& [var, exp] : m.factors())
            if (bindings.count(var)) {
                int& e = max_exp[var];
                if (exp > e) e = exp;
            }
    if (max_exp.empty()) return RatFn(p);

    // Power tables num(v)^0..E and den(v)^0..E for each bound variable.
    std::map<VarId, std::vector<Poly>> npow, dpow;
    Poly common = Poly::constant(1);
    for (const auto& [var, e] : max_exp) {
        const RatFn& b = bindings.at(var);
        auto& ns = npow[var];
        auto& ds = dpow[var];
        ns.push_back(Poly::constant(1));
        ds.push_back(Poly::constant(1));
        for (int i = 1; i <= e; ++i) {
            ns.push_back(ns.back() * b.num());
            ds.push_back(ds.back() * b.den());
        }
        common = common * ds[static_cast<std::size_t>(e)];
    }

    Poly acc; // numerator over `common`
    for (const auto& [m, c] : p.terms()) {
        Poly term = Poly::constant(c);
        for (const auto& [var, exp] : m.factors())
            if (!max_exp.count(var)) term = term * Poly::var(var, exp);
        for (const auto& [var, e] : max_exp) {
            int exp = m.exponent_of(var);
            if (exp > 0) term = term * npow[var][static_cast<std::size_t>(exp)];
            if (e > exp) term = term * dpow[var][static_cast<std::size_t>(e - exp)];
        }
        for (const auto& [tm, tc] : term.terms()) acc.add_term(tm, tc);
    }
    return RatFn(std::move(acc), std::move(common));
}

inline RatFn RatFn::substitute(const std::map<VarId, RatFn>& bindings) const {
    RatFn n = szabo::substitute(num_, bindings);
    RatFn d = szabo::substitute(den_, bindings);
    if (d.is_zero()) throw DenominatorVanishes();
    return n / d;
}

} // namespace szabo
