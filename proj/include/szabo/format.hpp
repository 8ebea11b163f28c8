#pragma once

#include "szabo/ratfn.hpp"

#include <string>

namespace szabo {

namespace detail {

inline std::string format_monomial(const Monomial& m) {
    std::string out;
    bool first = true;
    for (const auto& [var, exp] : m.factors()) {
        if (!first) out += "*";
        out += var_name(var);
        if (exp > 1) out += "^" + std::to_string(exp);
        first = false;
    }
    return out;
}

// One term, without any sign: the absolute coefficient and power product.
inline std::string format_term_abs(const Rational& coeff, const Monomial& m) {
    Rational c = rational_abs(coeff);
    if (m.is_unit()) return rational_to_string(c);
    if (c == 1) return format_monomial(m);
    return rational_to_string(c) + "*" + format_monomial(m);
}

// A leading "-x^k" would re-parse as (-x)^k, so when the formatted leading
// term starts with a bare power of exponent >= 2 we spell the sign as -1*.
inline bool needs_explicit_minus_one(const Rational& coeff, const Monomial& m) {
    if (rational_abs(coeff) != 1 || m.is_unit()) return false;
    return m.factors().front().second >= 2;
}

} // namespace detail

/// Canonical rendering: terms in descending graded-lex order, explicit '*',
/// '^' only for exponents above one. Guaranteed to re-parse to an equal
/// expression under the expression grammar.
inline std::string format_poly(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        if (first) {
            if (c < 0) out += detail::needs_explicit_minus_one(c, m) ? "-1*" : "-";
            first = false;
        } else {
            out += (c < 0) ? " - " : " + ";
        }
        out += detail::format_term_abs(c, m);
    }
    return out;
}

namespace detail {

// A denominator may be printed without parentheses only when it is a single
// parse-time factor: a positive constant, or one variable power.
inline bool den_is_single_factor(const Poly& d) {
    if (d.terms().size() != 1) return false;
    const auto& [m, c] = *d.terms().begin();
    if (m.is_unit()) return true; // positive constant by normalization
    return c == 1 && m.factors().size() == 1;
}

} // namespace detail

inline std::string format_expr(const RatFn& f) {
    const Poly& den = f.den();
    bool den_is_one = den.is_constant() && den.constant_value() == 1;
    std::string num = format_poly(f.num());
    if (den_is_one) return num;
    if (f.num().terms().size() > 1) num = "(" + num + ")";
    std::string d = format_poly(den);
    if (!detail::den_is_single_factor(den)) d = "(" + d + ")";
    return num + "/" + d;
}

inline std::string format_rational(const Rational& q) { return rational_to_string(q); }

} // namespace szabo
