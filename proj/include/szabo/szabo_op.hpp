#pragma once

#include "szabo/matrix.hpp"
#include "szabo/tensorcalc.hpp"

#include <map>
#include <optional>
#include <vector>

namespace szabo {

/// Matrix of the Szabo operator S(X)Y = (nabla_X R)(Y,X)X for the generic
/// direction X = sum_i a_i d_i, with the direction components a1..an kept
/// symbolic. Column m holds the components of S(X) d_m, so
///   entry(l,m) = sum_{i,j,k} a_i a_j a_k DR(l,i,m,j,k).
/// Every entry is a homogeneous cubic in the direction variables, and
/// S(X) X = 0 identically.
struct SzaboMatrix {
    int dim = 0;
    std::vector<RatFn> entries; // row-major

    explicit SzaboMatrix(int n) : dim(n), entries(static_cast<std::size_t>(n) * n) {}

    RatFn& at(int row, int col) { return entries[static_cast<std::size_t>(row) * dim + col]; }
    const RatFn& at(int row, int col) const {
        return entries[static_cast<std::size_t>(row) * dim + col];
    }

    detail::RatMatrix as_matrix() const {
        detail::RatMatrix m(dim);
        m.a = entries;
        return m;
    }
};

inline SzaboMatrix szabo_matrix(const Connection& c, const TensorField& covR) {
    int n = c.dim();
    SzaboMatrix s(n);
    // Group by the unordered alpha-monomial only through commutativity of
    // the sum; the straightforward triple loop stays exact and simple.
    for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
            RatFn v;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        const RatFn& d = covR.at({l, i, m, j, k});
                        if (d.is_zero()) continue;
                        RatFn cube = RatFn::var(VarId::direction(i + 1)) *
                                     RatFn::var(VarId::direction(j + 1)) *
                                     RatFn::var(VarId::direction(k + 1));
                        v += cube * d;
                    }
            s.at(l, m) = v;
        }
    return s;
}
inline SzaboMatrix szabo_matrix(const Connection& c) {
    return szabo_matrix(c, cov_deriv_curvature(c));
}

/// Apply the operator to a vector field given by components y^m.
inline std::vector<RatFn> szabo_apply(const SzaboMatrix& s, const std::vector<RatFn>& y) {
    if (static_cast<int>(y.size()) != s.dim)
        throw DimensionMismatch("vector length does not match operator dimension");
    std::vector<RatFn> out(static_cast<std::size_t>(s.dim));
    for (int l = 0; l < s.dim; ++l) {
        RatFn v;
        for (int m = 0; m < s.dim; ++m) {
            if (s.at(l, m).is_zero() || y[static_cast<std::size_t>(m)].is_zero()) continue;
            v += s.at(l, m) * y[static_cast<std::size_t>(m)];
        }
        out[static_cast<std::size_t>(l)] = v;
    }
    return out;
}

/// Coefficients sigma_1..sigma_n of the characteristic polynomial
///   det(lambda I - S) = lambda^n - sigma_1 lambda^{n-1} + sigma_2
///   lambda^{n-2} - ... + (-1)^n sigma_n,
/// so sigma_k is the sum of the k-by-k principal minors.
struct CharPolyCoeffs {
    std::vector<RatFn> sigma; // sigma[k-1] = sigma_k

    bool all_zero() const {
        for (const auto& s : sigma)
            if (!s.is_zero()) return false;
        return true;
    }
};

/// Faddeev-LeVerrier recurrence, division-light and exact over RatFn:
///   B_1 = A, c_1 = -tr(B_1), B_k = A (B_{k-1} + c_{k-1} I),
///   c_k = -tr(B_k)/k; then sigma_k = (-1)^k c_k.
inline CharPolyCoeffs char_poly(const SzaboMatrix& s) {
    int n = s.dim;
    CharPolyCoeffs out;
    out.sigma.reserve(static_cast<std::size_t>(n));
    detail::RatMatrix A = s.as_matrix();
    detail::RatMatrix B = A;
    RatFn c = -B.trace();
    out.sigma.push_back(-c); // sigma_1 = (-1)^1 c_1 = tr(A)
    for (int k = 2; k <= n; ++k) {
        B = A * B.plus_scalar_on_diagonal(c);
        c = -(B.trace() / RatFn::of_int(k));
        out.sigma.push_back(k % 2 == 0 ? c : -c);
    }
    return out;
}

struct SzaboVerdict {
    bool szabo = false;
    CharPolyCoeffs coeffs;
};

/// A connection is affine Szabo exactly when every sigma_k of the symbolic
/// Szabo matrix vanishes identically in the direction variables (and the
/// coordinates), i.e. the characteristic polynomial is lambda^n for every
/// direction at every point.
inline SzaboVerdict is_affine_szabo(const Connection& c) {
    SzaboVerdict v;
    v.coeffs = char_poly(szabo_matrix(c));
    v.szabo = v.coeffs.all_zero();
    return v;
}

namespace detail {

inline std::optional<int> nilpotency_of_matrix(const RatMatrix& m) {
    RatMatrix power = m;
    for (int k = 1; k <= m.n; ++k) {
        if (power.is_zero()) return k;
        power = power * m;
    }
    return std::nullopt;
}

} // namespace detail

/// Degree of nilpotency of S(X) at a concrete point and direction: the
/// least k with S^k = 0, after substituting every variable by a rational
/// value. Returns nullopt if S is not nilpotent there.
inline std::optional<int> nilpotency_degree(const SzaboMatrix& s,
                                            const std::map<VarId, Rational>& bindings) {
    detail::RatMatrix m(s.dim);
    for (int i = 0; i < s.dim; ++i)
        for (int j = 0; j < s.dim; ++j)
            m.at(i, j) = RatFn::constant(s.at(i, j).evaluate(bindings));
    return detail::nilpotency_of_matrix(m);
}

/// Convenience split form: direction bindings (the alpha variables) and
/// coordinate bindings given as separate maps.
inline std::optional<int> nilpotency_degree(const SzaboMatrix& s,
                                            const std::map<VarId, Rational>& direction,
                                            const std::map<VarId, Rational>& point) {
    std::map<VarId, Rational> merged = point;
    for (const auto& [id, v] : direction) merged[id] = v;
    return nilpotency_degree(s, merged);
}

/// Symbolic variant: substitute the given bindings (typically pinning the
/// direction, keeping coordinates and parameters symbolic) and test matrix
/// powers for identical vanishing.
inline std::optional<int> nilpotency_degree_symbolic(const SzaboMatrix& s,
                                                     const std::map<VarId, RatFn>& bindings) {
    detail::RatMatrix m(s.dim);
    for (int i = 0; i < s.dim; ++i)
        for (int j = 0; j < s.dim; ++j) m.at(i, j) = s.at(i, j).substitute(bindings);
    return detail::nilpotency_of_matrix(m);
}

} // namespace szabo
