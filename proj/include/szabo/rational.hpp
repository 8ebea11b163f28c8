#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace szabo {

/// Arbitrary-precision integer and rational scalars. Rationals are kept in
/// lowest terms with a positive denominator by the backing type.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_to_string(const Rational& q) { return q.str(); }

inline Rational rational_pow(const Rational& q, unsigned e) {
    Rational r(1);
    for (unsigned i = 0; i < e; ++i) r *= q;
    return r;
}

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Int gcd_int(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    return boost::multiprecision::gcd(a, b);
}

inline Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::lcm(a, b);
}

} // namespace szabo
