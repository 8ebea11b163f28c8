#pragma once

#include "szabo/szabo_op.hpp"
#include "szabo/tensorcalc.hpp"

#include <array>
#include <vector>

namespace szabo {

/// Six-coefficient data for the 2D homogeneous families. Type A: constant
/// Christoffel symbols. Type B: the same shape divided by u1.
///   G^1_11 = a   G^2_11 = b   G^1_12 = c   G^2_12 = d   G^1_22 = e   G^2_22 = f
struct FamilyParams {
    Rational a, b, c, d, e, f;
};
using TypeAParams = FamilyParams;
using TypeBParams = FamilyParams;

namespace detail {

inline Connection family_connection(const std::array<RatFn, 6>& p, const RatFn& scale) {
    Connection c(2);
    c.gamma(0, 0, 0) = p[0] * scale;
    c.gamma(1, 0, 0) = p[1] * scale;
    c.gamma(0, 0, 1) = p[2] * scale;
    c.gamma(0, 1, 0) = p[2] * scale;
    c.gamma(1, 0, 1) = p[3] * scale;
    c.gamma(1, 1, 0) = p[3] * scale;
    c.gamma(0, 1, 1) = p[4] * scale;
    c.gamma(1, 1, 1) = p[5] * scale;
    return c;
}

inline std::array<RatFn, 6> lift(const FamilyParams& p) {
    return {RatFn::constant(p.a), RatFn::constant(p.b), RatFn::constant(p.c),
            RatFn::constant(p.d), RatFn::constant(p.e), RatFn::constant(p.f)};
}

/// The six coefficients as the symbolic parameters a..f.
inline std::array<RatFn, 6> symbolic_params() {
    std::array<RatFn, 6> p;
    for (int i = 0; i < 6; ++i) p[static_cast<std::size_t>(i)] = RatFn::var(VarId::parameter(i + 1));
    return p;
}

} // namespace detail

inline Connection type_a_connection(const TypeAParams& p) {
    return detail::family_connection(detail::lift(p), RatFn::of_int(1));
}
inline Connection type_a_connection_symbolic() {
    return detail::family_connection(detail::symbolic_params(), RatFn::of_int(1));
}

inline Connection type_b_connection(const TypeBParams& p) {
    return detail::family_connection(detail::lift(p),
                                     RatFn::of_int(1) / RatFn::var(VarId::base(1)));
}
inline Connection type_b_connection_symbolic() {
    return detail::family_connection(detail::symbolic_params(),
                                     RatFn::of_int(1) / RatFn::var(VarId::base(1)));
}

/// The six covariant-derivative components of the Type A Ricci tensor, as
/// polynomials in the parameters a..f. Order:
///   (n1 Ric)_11, (n1 Ric)_12, (n1 Ric)_22, (n2 Ric)_11, (n2 Ric)_12, (n2 Ric)_22.
/// The middle pairs coincide: (n1 Ric)_12 = (n2 Ric)_11 and
/// (n1 Ric)_22 = (n2 Ric)_12 (and Ric itself is symmetric), which is what
/// makes "parallel" and "cyclic parallel" agree on this family.
inline std::array<RatFn, 6> type_a_ricci_derivative_polys() {
    auto P = detail::symbolic_params();
    const RatFn &a = P[0], &b = P[1], &c = P[2], &d = P[3], &e = P[4], &f = P[5];
    RatFn two = RatFn::of_int(2);
    RatFn p11 = two * (a * b * c + a * d * d - a * a * d - a * b * f + b * b * e - b * c * d);
    RatFn p12 = two * (b * c * c + b * d * e - a * c * d - b * c * f);
    RatFn p22 = two * (b * c * e - a * d * e - c * d * f + d * d * e);
    RatFn q22 = two * (b * e * e + c * c * f - c * f * f - a * e * f - c * d * e + d * e * f);
    return {p11, p12, p22, p12, p22, q22};
}

struct TypeAClassification {
    bool parallel_ricci = false;     // equivalently: affine Szabo, for this family
    std::array<Rational, 6> residuals{};
};

/// Evaluate the six residual polynomials at a concrete tuple and
/// cross-check them against the machinery's cov_deriv_ricci on the actual
/// connection; a disagreement would mean the frozen polynomials are wrong,
/// so it is reported as an internal error, never as a verdict.
inline TypeAClassification type_a_parallel_ricci(const TypeAParams& p) {
    TypeAClassification out;
    std::map<VarId, Rational> bind = {
        {VarId::parameter(1), p.a}, {VarId::parameter(2), p.b}, {VarId::parameter(3), p.c},
        {VarId::parameter(4), p.d}, {VarId::parameter(5), p.e}, {VarId::parameter(6), p.f}};
    auto polys = type_a_ricci_derivative_polys();
    out.parallel_ricci = true;
    for (int i = 0; i < 6; ++i) {
        out.residuals[static_cast<std::size_t>(i)] = polys[static_cast<std::size_t>(i)].evaluate(bind);
        if (out.residuals[static_cast<std::size_t>(i)] != 0) out.parallel_ricci = false;
    }
    TensorField dric = cov_deriv_ricci(type_a_connection(p));
    static const int slots[6][3] = {{0, 0, 0}, {0, 0, 1}, {0, 1, 1},
                                    {1, 0, 0}, {1, 0, 1}, {1, 1, 1}};
    for (int i = 0; i < 6; ++i) {
        const RatFn& component = dric.at({slots[i][0], slots[i][1], slots[i][2]});
        if (!(component == RatFn::constant(out.residuals[static_cast<std::size_t>(i)])))
            throw Error("type A residual polynomials disagree with cov_deriv_ricci");
    }
    if (out.parallel_ricci != dric.is_zero())
        throw Error("type A parallel verdict disagrees with cov_deriv_ricci");
    return out;
}

/// The four Szabo residual polynomials for the Type B family under its
/// compatibility constraint f = -c, as polynomials in a..e (f eliminated).
/// The connection is affine Szabo exactly when all four vanish.
inline std::array<RatFn, 4> type_b_szabo_polys() {
    auto P = detail::symbolic_params();
    const RatFn &a = P[0], &b = P[1], &c = P[2], &d = P[3], &e = P[4];
    RatFn one = RatFn::of_int(1), two = RatFn::of_int(2), three = RatFn::of_int(3);
    RatFn q1 = two * a * b * c + three * b * c - d - two * a * d - a * a * d - b * c * d +
               d * d + a * d * d + b * b * e;
    RatFn q2 = two * c + a * c + (three + three) * b * c * c - two * c * d -
               three * a * c * d + three * b * e + three * b * d * e;
    RatFn q3 = three * c * c + three * c * c * d + e - a * e + three * b * c * e + two * d * e -
               three * a * d * e + three * d * d * e;
    RatFn q4 = -two * c * c * c + a * c * e - two * c * d * e + b * e * e;
    return {q1, q2, q3, q4};
}

struct TypeBClassification {
    bool szabo = false;
    std::array<Rational, 4> residuals{};
};

/// Requires f = -c (the family's Ricci-symmetry constraint); rejects other
/// tuples so a failed precondition is distinguishable from a non-Szabo
/// verdict. The four-polynomial verdict is cross-checked against the
/// operator machinery; a disagreement is an internal error.
inline TypeBClassification type_b_szabo_residuals(const TypeBParams& p) {
    if (p.f != -p.c)
        throw ValidationError("type B classification requires f = -c");
    TypeBClassification out;
    std::map<VarId, Rational> bind = {
        {VarId::parameter(1), p.a}, {VarId::parameter(2), p.b}, {VarId::parameter(3), p.c},
        {VarId::parameter(4), p.d}, {VarId::parameter(5), p.e}};
    auto polys = type_b_szabo_polys();
    out.szabo = true;
    for (int i = 0; i < 4; ++i) {
        out.residuals[static_cast<std::size_t>(i)] = polys[static_cast<std::size_t>(i)].evaluate(bind);
        if (out.residuals[static_cast<std::size_t>(i)] != 0) out.szabo = false;
    }
    if (out.szabo != is_affine_szabo(type_b_connection(p)).szabo)
        throw Error("type B residual polynomials disagree with the operator verdict");
    return out;
}

/// Residual of the affine Killing equations for a vector field X = X^k d_k:
///   res^k_{ij} = d_i d_j X^k + X^m d_m Gamma^k_{ij} - Gamma^m_{ij} d_m X^k
///              + Gamma^k_{im} d_j X^m + Gamma^k_{mj} d_i X^m.
/// X is affine Killing exactly when the residual vanishes identically.
inline TensorField killing_residual(const Connection& c, const std::vector<RatFn>& X) {
    int n = c.dim();
    if (static_cast<int>(X.size()) != n)
        throw DimensionMismatch("vector field component count does not match dimension");
    TensorField res(n, 1, 2);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                RatFn v = c.d(c.d(X[static_cast<std::size_t>(k)], j), i);
                for (int m = 0; m < n; ++m) {
                    const RatFn& Xm = X[static_cast<std::size_t>(m)];
                    v += Xm * c.d(c.gamma(k, i, j), m) -
                         c.gamma(m, i, j) * c.d(X[static_cast<std::size_t>(k)], m) +
                         c.gamma(k, i, m) * c.d(Xm, j) + c.gamma(k, m, j) * c.d(Xm, i);
                }
                res(k, i, j) = v;
            }
    return res;
}

} // namespace szabo
